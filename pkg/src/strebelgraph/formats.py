"""JSON and DOT serialization, and atomic file writes."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .metric import MetricRibbonGraph, fraction_str, residue_vector, zero_partition


def metric_graph_json(mg: MetricRibbonGraph) -> dict:
    return mg.to_dict()


def load_metric_graph(path: str | os.PathLike) -> MetricRibbonGraph:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if "graph" in data and isinstance(data["graph"], dict):
        data = data["graph"]
    return MetricRibbonGraph.from_dict(data)


def to_dot(mg: MetricRibbonGraph, name: str = "ribbon") -> str:
    """
    DOT rendering of a metric ribbon graph.

    DOT has no notion of cyclic order, so each vertex carries its
    counterclockwise half-edge list in a ``rotation`` attribute and each edge
    its two half-edges in ``halfedges``.
    """
    g = mg.graph
    res = residue_vector(mg).entries
    try:
        orders = dict(zip((c[0] for c in g.vertices), zero_partition(mg).parts))
    except ValueError:
        orders = {c[0]: len(c) - 2 for c in g.vertices}
    face_labels = []
    for j, (face, a) in enumerate(zip(mg.labeled_faces, res)):
        face_labels.append(f"F{j}={fraction_str(a)} [{' '.join(map(str, face.walk))}]")
    lines = [f"graph {name} {{"]
    lines.append(f'  label="faces: {"; ".join(face_labels)}";')
    for cycle in g.vertices:
        v = cycle[0]
        lines.append(f'  v{v} [label="v{v}\\nm={orders[v]}", rotation="{" ".join(map(str, cycle))}"];')
    for k, (h, hb) in enumerate(g.edges):
        lines.append(
            f'  v{g.vertex_of[h]} -- v{g.vertex_of[hb]} '
            f'[label="{fraction_str(mg.lengths[k])}", edge_id={k}, halfedges="{h} {hb}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
