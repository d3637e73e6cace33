"""
Degeneracy of a Strebel differential read off its critical graph.

The square root of ``q`` is single-valued around a double pole and changes
sign around a zero of odd order. Away from branch points it defines a Z/2
local system on the critical graph: in the local model ``w^m dw^2`` the
branch restricted to the ``j``-th horizontal ray is ``(-1)^j t^(m/2) dt``,
so an edge leaving its endpoints at sector positions ``p`` and ``p'`` carries
the sign ``(-1)^(p + p' + 1)``. The spectral cover is the double graph of
this local system; ``q`` is a global square exactly when it splits.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .metric import MetricRibbonGraph, require_admissible
from .ribbon import RibbonGraph


class BranchPointError(ValueError):
    pass


@dataclass(frozen=True)
class SpectralCoverResult:
    branch_vertices: tuple[int, ...]
    edge_signs: dict[int, int] | None
    component_count: int
    degenerate: bool

    def __post_init__(self):
        if self.branch_vertices:
            assert not self.degenerate and self.component_count == 1
        else:
            assert self.degenerate == (self.component_count == 2)

    def to_dict(self) -> dict:
        return {
            "branch_vertices": list(self.branch_vertices),
            "degenerate": self.degenerate,
            "components": self.component_count,
            "edge_signs": None if self.edge_signs is None else {str(k): v for k, v in sorted(self.edge_signs.items())},
        }


def sector_positions(graph: RibbonGraph, origins: Mapping[int, int] | None = None) -> list[int]:
    """
    Position of each half-edge in the cyclic order at its vertex.

    Position 0 is the vertex's minimal half-edge unless ``origins`` maps the
    vertex id to another half-edge of that vertex (a gauge change).
    """
    pos = [0] * graph.half_edge_count
    for cycle in graph.vertices:
        start = cycle[0] if origins is None else origins.get(cycle[0], cycle[0])
        if start not in cycle:
            raise ValueError(f"origin {start} is not at vertex {cycle[0]}")
        h = start
        for i in range(len(cycle)):
            pos[h] = i
            h = graph.sigma[h]
    return pos


def edge_signs(graph: RibbonGraph, origins: Mapping[int, int] | None = None) -> dict[int, int]:
    pos = sector_positions(graph, origins)
    return {k: (-1) ** (pos[h] + pos[hb] + 1) for k, (h, hb) in enumerate(graph.edges)}


def _find(parent: dict, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def degeneracy_check(mg: MetricRibbonGraph, origins: Mapping[int, int] | None = None) -> SpectralCoverResult:
    """
    Decide whether the differential of ``mg`` is the square of an abelian differential.

        >>> from .constructors import build_three_pole
        >>> degeneracy_check(build_three_pole(1, 1, 2)[0]).degenerate
        True
    """
    require_admissible(mg)
    g = mg.graph
    branch = tuple(c[0] for c in g.vertices if len(c) % 2)
    if branch:
        return SpectralCoverResult(branch, None, 1, False)
    signs = edge_signs(g, origins)
    parent = {(c[0], s): (c[0], s) for c in g.vertices for s in (1, -1)}
    for k, (h, hb) in enumerate(g.edges):
        u, v = g.vertex_of[h], g.vertex_of[hb]
        for s in (1, -1):
            a, b = _find(parent, (u, s)), _find(parent, (v, s * signs[k]))
            if a != b:
                parent[a] = b
    roots = {_find(parent, x) for x in parent}
    return SpectralCoverResult((), signs, len(roots), len(roots) == 2)


def cycle_holonomy(mg: MetricRibbonGraph, cycle: Sequence[int], origins: Mapping[int, int] | None = None) -> int:
    """
    Product of edge signs along a closed walk given as half-edges.

    Half-edge ``h`` in the walk is traversed from its own vertex to the vertex
    of ``alpha(h)``.
    """
    g = mg.graph
    if any(len(c) % 2 for c in g.vertices):
        raise BranchPointError("holonomy undefined through branch points")
    if not cycle:
        raise ValueError("empty walk")
    for h, nxt in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        if g.vertex_of[g.alpha[h]] != g.vertex_of[nxt]:
            raise ValueError(f"walk is not closed: half-edge {h} does not end where {nxt} starts")
    signs = edge_signs(g, origins)
    out = 1
    for h in cycle:
        out *= signs[g.edge_of[h]]
    return out
