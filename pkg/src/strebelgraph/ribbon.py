r"""
Ribbon graphs encoded as rotation systems.

A ribbon graph on ``2E`` half-edges is a pair of permutations:

- ``sigma`` sends a half-edge to the next half-edge counterclockwise around
  the same vertex;
- ``alpha`` is a fixed-point-free involution pairing the two halves of an
  edge.

Vertices are the cycles of ``sigma``, edges the orbits of ``alpha`` and faces
the cycles of ``phi = sigma o alpha`` (``alpha`` applied first). Every
vertex, edge and face is identified by the minimal half-edge it contains.

EXAMPLES::

    >>> loop = RibbonGraph((1, 0), (1, 0))
    >>> [f.walk for f in face_cycles(loop)]
    [(0,), (1,)]
    >>> genus(loop)
    0
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class InvalidGraphError(ValueError):
    """Raised when an operation receives a structurally invalid rotation system."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("invalid ribbon graph: " + "; ".join(report.violations))


class DisconnectedGraphError(ValueError):
    pass


def perm_cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """
    Cycles of ``perm``, each starting at its minimal element, sorted by that element.

        >>> perm_cycles([1, 2, 0, 4, 3])
        [(0, 1, 2), (3, 4)]
    """
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        h = start
        while not seen[h]:
            seen[h] = True
            cycle.append(h)
            h = perm[h]
        cycles.append(tuple(cycle))
    return cycles


def _is_permutation(perm: Sequence[int], n: int) -> bool:
    return len(perm) == n and sorted(perm) == list(range(n))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class FaceWalk:
    face_id: int
    walk: tuple[int, ...]
    edge_multiplicity: dict[int, int] = field(compare=False)


@dataclass(frozen=True)
class RibbonGraph:
    """
    Rotation system on ``len(sigma)`` half-edges.

    Construction does not validate; call :func:`validate` or any operation
    that needs a valid graph.
    """

    sigma: tuple[int, ...]
    alpha: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(int(x) for x in self.sigma))
        object.__setattr__(self, "alpha", tuple(int(x) for x in self.alpha))

    @property
    def half_edge_count(self) -> int:
        return len(self.sigma)

    @cached_property
    def phi(self) -> tuple[int, ...]:
        return tuple(self.sigma[self.alpha[h]] for h in range(self.half_edge_count))

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        return perm_cycles(self.sigma)

    @cached_property
    def faces(self) -> list[tuple[int, ...]]:
        return perm_cycles(self.phi)

    @cached_property
    def edges(self) -> list[tuple[int, int]]:
        return [(h, self.alpha[h]) for h in range(self.half_edge_count) if h < self.alpha[h]]

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        """Vertex id (minimal half-edge of its sigma-cycle) of every half-edge."""
        out = [0] * self.half_edge_count
        for cycle in self.vertices:
            for h in cycle:
                out[h] = cycle[0]
        return tuple(out)

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        out = [0] * self.half_edge_count
        for cycle in self.faces:
            for h in cycle:
                out[h] = cycle[0]
        return tuple(out)

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        """Edge index of every half-edge; edges are numbered by ascending minimal half-edge."""
        out = [0] * self.half_edge_count
        for k, (h, hb) in enumerate(self.edges):
            out[h] = out[hb] = k
        return tuple(out)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return self.half_edge_count // 2

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces

    def is_connected(self) -> bool:
        n = self.half_edge_count
        if n == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            h = queue.popleft()
            for k in (self.sigma[h], self.alpha[h]):
                if k not in seen:
                    seen.add(k)
                    queue.append(k)
        return len(seen) == n

    def to_dict(self) -> dict:
        return {
            "half_edge_count": self.half_edge_count,
            "sigma": list(self.sigma),
            "alpha": list(self.alpha),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RibbonGraph":
        graph = cls(tuple(data["sigma"]), tuple(data["alpha"]))
        if data.get("half_edge_count", graph.half_edge_count) != graph.half_edge_count:
            raise InvalidGraphError(ValidationReport(("half_edge_count disagrees with array length",)))
        return graph


def validate(graph: RibbonGraph) -> ValidationReport:
    n = graph.half_edge_count
    violations = []
    if len(graph.alpha) != n:
        violations.append("sigma and alpha have different lengths")
    if n % 2:
        violations.append("half-edge count is odd")
    if not _is_permutation(graph.sigma, n):
        violations.append("sigma not a permutation")
    if not _is_permutation(graph.alpha, len(graph.alpha)):
        violations.append("alpha not a permutation")
    else:
        alpha = graph.alpha
        if any(alpha[h] == h for h in range(len(alpha))):
            violations.append("alpha not fixed-point-free")
        if any(alpha[alpha[h]] != h for h in range(len(alpha))):
            violations.append("alpha not an involution")
    return ValidationReport(tuple(violations))


def require_valid(graph: RibbonGraph) -> None:
    report = validate(graph)
    if not report.ok:
        raise InvalidGraphError(report)


def face_cycles(graph: RibbonGraph) -> list[FaceWalk]:
    """Faces of ``graph`` as walks of ``phi``, ordered by minimal half-edge."""
    require_valid(graph)
    out = []
    for walk in graph.faces:
        mult: dict[int, int] = {}
        for h in walk:
            e = graph.edge_of[h]
            mult[e] = mult.get(e, 0) + 1
        out.append(FaceWalk(walk[0], walk, mult))
    return out


def genus(graph: RibbonGraph) -> int:
    require_valid(graph)
    if not graph.is_connected():
        raise DisconnectedGraphError("genus defined per connected closed surface; graph disconnected")
    chi = graph.euler_characteristic()
    assert chi % 2 == 0 and chi <= 2, chi
    return (2 - chi) // 2


def vertex_valencies(graph: RibbonGraph) -> dict[int, int]:
    require_valid(graph)
    return {cycle[0]: len(cycle) for cycle in graph.vertices}


def relabel(graph: RibbonGraph, perm: Sequence[int]) -> RibbonGraph:
    """Image of ``graph`` under the half-edge bijection ``h -> perm[h]``."""
    n = graph.half_edge_count
    sigma = [0] * n
    alpha = [0] * n
    for h in range(n):
        sigma[perm[h]] = perm[graph.sigma[h]]
        alpha[perm[h]] = perm[graph.alpha[h]]
    return RibbonGraph(tuple(sigma), tuple(alpha))


def disjoint_union(*graphs: RibbonGraph) -> RibbonGraph:
    sigma: list[int] = []
    alpha: list[int] = []
    for g in graphs:
        off = len(sigma)
        sigma.extend(h + off for h in g.sigma)
        alpha.extend(h + off for h in g.alpha)
    return RibbonGraph(tuple(sigma), tuple(alpha))


def from_vertices(rotations: Iterable[Sequence[int]], pairs: Iterable[tuple[int, int]]) -> RibbonGraph:
    """
    Build a graph from counterclockwise half-edge lists per vertex and edge pairs.

        >>> g = from_vertices([(0, 1, 2, 3)], [(0, 1), (2, 3)])
        >>> g.num_faces
        3
    """
    rotations = [tuple(r) for r in rotations]
    n = sum(len(r) for r in rotations)
    sigma = [-1] * n
    alpha = [-1] * n
    for r in rotations:
        for i, h in enumerate(r):
            sigma[h] = r[(i + 1) % len(r)]
    for h, k in pairs:
        alpha[h] = k
        alpha[k] = h
    return RibbonGraph(tuple(sigma), tuple(alpha))


# -- enumeration ----------------------------------------------------------------


def _canonical_code(sigma: Sequence[int], alpha: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """
    Canonical relabeling of a connected rotation system.

    For every root half-edge the graph is relabeled in breadth-first order
    (following sigma, then alpha); the lexicographically smallest resulting
    ``(sigma, alpha)`` is a complete isomorphism invariant for connected maps.
    Returns ``(sigma, alpha, perm)`` with ``perm`` the relabeling achieving it.
    """
    n = len(sigma)
    best = None
    for root in range(n):
        label = [-1] * n
        label[root] = 0
        order = [root]
        i = 0
        while i < len(order):
            h = order[i]
            i += 1
            for k in (sigma[h], alpha[h]):
                if label[k] < 0:
                    label[k] = len(order)
                    order.append(k)
        s = tuple(label[sigma[h]] for h in order)
        a = tuple(label[alpha[h]] for h in order)
        if best is None or (s, a) < best[:2]:
            best = (s, a, tuple(label))
    return best


def enumerate_small(edge_count: int) -> list[RibbonGraph]:
    """
    All connected rotation systems with ``edge_count`` edges, one per isomorphism class.

    Representatives are in canonical (breadth-first) labeling and sorted
    lexicographically by ``(sigma, alpha)``.
    """
    if not 1 <= edge_count <= 4:
        raise ValueError(f"edge_count must be in 1..4, got {edge_count}")
    n = 2 * edge_count
    alpha = tuple(h ^ 1 for h in range(n))
    classes = set()
    for sigma in itertools.permutations(range(n)):
        g = RibbonGraph(sigma, alpha)
        if not g.is_connected():
            continue
        s, a, _ = _canonical_code(sigma, alpha)
        classes.add((s, a))
    return [RibbonGraph(s, a) for s, a in sorted(classes)]


def canonical_form(graph: RibbonGraph) -> RibbonGraph:
    """Canonical representative of a connected graph (isomorphic graphs give equal results)."""
    require_valid(graph)
    if not graph.is_connected():
        raise DisconnectedGraphError("canonical form implemented for connected graphs only")
    s, a, _ = _canonical_code(graph.sigma, graph.alpha)
    return RibbonGraph(s, a)
