"""
Metric ribbon graphs with exact rational edge lengths.

Lengths are stored in normalized units (geometric q-length divided by 2*pi),
so a face perimeter *is* the residue of the corresponding double pole.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .ribbon import (
    DisconnectedGraphError,
    FaceWalk,
    RibbonGraph,
    disjoint_union,
    face_cycles,
    genus,
    relabel,
    require_valid,
    validate,
    vertex_valencies,
)


class NotStrebelError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    """
    Exact rational from an int, Fraction or decimal/ratio string.

    Binary floats are refused: they would silently carry representation error.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not lengths")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {x!r}") from exc
    raise TypeError(f"expected int, Fraction or str, got {type(x).__name__}")


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class ResidueVector:
    """
    Residues in face-label order.

    ``stable=False`` skips the ``2 - 2g - n < 0`` check; perimeters of small
    unstable graphs (a single loop, say) are still well defined.
    """

    entries: tuple[Fraction, ...]
    genus: int
    stable: bool = field(default=True, compare=False)

    def __post_init__(self):
        n = len(self.entries)
        if n < 1 or (self.stable and 2 - 2 * self.genus - n >= 0):
            raise ValueError(f"need n >= 1 and 2 - 2g - n < 0 (g={self.genus}, n={n})")
        if any(a <= 0 for a in self.entries):
            raise ValueError("residues must be positive")

    def __len__(self) -> int:
        return len(self.entries)

    def sorted(self) -> tuple[Fraction, ...]:
        return tuple(sorted(self.entries))


@dataclass(frozen=True)
class ZeroPartition:
    parts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.parts)


@dataclass(frozen=True)
class MetricRibbonGraph:
    """
    Ribbon graph plus a positive length per edge.

    ``lengths[k]`` belongs to edge ``k`` (edges numbered by ascending minimal
    half-edge). ``face_order``, when set, lists one half-edge per labeled
    face: label ``j`` is the face containing ``face_order[j]``. Without it
    faces are labeled by ascending minimal half-edge.
    """

    graph: RibbonGraph
    lengths: tuple[Fraction, ...]
    face_order: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(as_fraction(x) for x in self.lengths))
        if self.face_order is not None:
            object.__setattr__(self, "face_order", tuple(int(h) for h in self.face_order))

    def length_of(self, h: int) -> Fraction:
        return self.lengths[self.graph.edge_of[h]]

    @cached_property
    def labeled_faces(self) -> list[FaceWalk]:
        """Face walks in label order."""
        faces = face_cycles(self.graph)
        if self.face_order is None:
            return faces
        by_id = {f.face_id: f for f in faces}
        return [by_id[self.graph.face_of[h]] for h in self.face_order]

    def perimeter(self, face: FaceWalk) -> Fraction:
        return sum((self.length_of(h) for h in face.walk), Fraction(0))

    def relabel(self, perm: Sequence[int]) -> "MetricRibbonGraph":
        g = relabel(self.graph, perm)
        old_edges = self.graph.edges
        lengths = [Fraction(0)] * len(old_edges)
        for k, (h, _) in enumerate(old_edges):
            lengths[g.edge_of[perm[h]]] = self.lengths[k]
        order = None if self.face_order is None else tuple(perm[h] for h in self.face_order)
        return MetricRibbonGraph(g, tuple(lengths), order)

    def to_dict(self) -> dict:
        out = self.graph.to_dict()
        out["lengths"] = [fraction_str(x) for x in self.lengths]
        if self.face_order is not None:
            out["face_order"] = list(self.face_order)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "MetricRibbonGraph":
        graph = RibbonGraph.from_dict(data)
        order = data.get("face_order")
        return cls(graph, tuple(as_fraction(x) for x in data["lengths"]), None if order is None else tuple(order))


def structure_violations(mg: MetricRibbonGraph) -> list[str]:
    reasons = list(validate(mg.graph).violations)
    if reasons:
        return reasons
    if len(mg.lengths) != mg.graph.num_edges:
        reasons.append(f"{len(mg.lengths)} lengths for {mg.graph.num_edges} edges")
    if mg.face_order is not None:
        faces = [mg.graph.face_of[h] for h in mg.face_order if 0 <= h < mg.graph.half_edge_count]
        if len(faces) != len(mg.face_order) or sorted(faces) != sorted({c[0] for c in mg.graph.faces}):
            reasons.append("face_order does not pick each face exactly once")
    return reasons


def _require_structure(mg: MetricRibbonGraph) -> None:
    reasons = structure_violations(mg)
    if reasons:
        raise ValueError("invalid metric ribbon graph: " + "; ".join(reasons))


def residue_vector(mg: MetricRibbonGraph) -> ResidueVector:
    """Face perimeters in label order; an edge traversed twice by a walk counts twice."""
    _require_structure(mg)
    if not mg.graph.is_connected():
        raise DisconnectedGraphError("residue vector needs a connected graph")
    entries = tuple(mg.perimeter(f) for f in mg.labeled_faces)
    g = genus(mg.graph)
    return ResidueVector(entries, g, stable=2 - 2 * g - len(entries) < 0)


def zero_partition(mg: MetricRibbonGraph) -> ZeroPartition:
    """Zero orders ``valency - 2`` by ascending vertex id."""
    _require_structure(mg)
    val = vertex_valencies(mg.graph)
    low = sorted(v for v, d in val.items() if d < 3)
    if low:
        raise NotStrebelError(f"not a Strebel critical graph: vertices {low} have valency < 3")
    zp = ZeroPartition(tuple(val[v] - 2 for v in sorted(val)))
    n = mg.graph.num_faces
    g = genus(mg.graph)
    assert zp.total == 2 * n + 4 * g - 4, (zp, n, g)
    return zp


@dataclass(frozen=True)
class Admissibility:
    admissible: bool
    reasons: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.admissible


def strebel_admissible(mg: MetricRibbonGraph) -> Admissibility:
    """Connected, every vertex of valency >= 3, every length > 0."""
    reasons = structure_violations(mg)
    if reasons:
        return Admissibility(False, tuple(reasons))
    if not mg.graph.is_connected():
        reasons.append("disconnected")
    for v, d in sorted(vertex_valencies(mg.graph).items()):
        if d < 3:
            reasons.append(f"vertex {v}: valency {d} < 3")
    for k, x in enumerate(mg.lengths):
        if x <= 0:
            reasons.append(f"edge {k}: length {x} not positive")
    return Admissibility(not reasons, tuple(reasons))


def require_admissible(mg: MetricRibbonGraph) -> None:
    verdict = strebel_admissible(mg)
    if not verdict:
        raise NotStrebelError("graph is not Strebel-admissible: " + "; ".join(verdict.reasons))


def metric_disjoint_union(*graphs: MetricRibbonGraph) -> MetricRibbonGraph:
    g = disjoint_union(*(m.graph for m in graphs))
    lengths: list[Fraction] = []
    for m in graphs:
        lengths.extend(m.lengths)
    return MetricRibbonGraph(g, tuple(lengths))


def uniform(graph: RibbonGraph, length) -> MetricRibbonGraph:
    require_valid(graph)
    return MetricRibbonGraph(graph, (as_fraction(length),) * graph.num_edges)


def with_lengths(graph: RibbonGraph, lengths: Iterable) -> MetricRibbonGraph:
    return MetricRibbonGraph(graph, tuple(as_fraction(x) for x in lengths))
