"""
Trivalent metric ribbon graphs with a prescribed residue vector.

All graphs are assembled on a :class:`_Builder`, a mutable rotation system
supporting three local moves whose effect on faces is fixed:

``split(h, near)``
    subdivide the edge of half-edge ``h`` by a new trivalent vertex whose
    third half-edge points into the face that contains ``h``;
``lollipop(t, loop)``
    attach, at the dangling half-edge ``t``, a connector ending in a new
    vertex that carries a loop; the loop interior becomes a new face;
``join(t, u, length)``
    pair two dangling half-edges into an edge.

With ``phi = sigma o alpha`` the corner of a face at a vertex lies between
``alpha(h)`` and ``sigma(alpha(h))`` for ``h`` on that face, which is where
these moves insert.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .metric import (
    MetricRibbonGraph,
    as_fraction,
    fraction_str,
    residue_vector,
)
from .ribbon import RibbonGraph


class ExcludedCaseError(ValueError):
    pass


class ThreePoleClass(enum.Enum):
    THETA = "Theta"
    TANGENT = "Tangent"
    DUMBBELL = "Dumbbell"


def three_pole_class(a1, a2, a3) -> ThreePoleClass:
    b1, b2, b3 = sorted(as_fraction(a) for a in (a1, a2, a3))
    s = b1 + b2 - b3
    if s > 0:
        return ThreePoleClass.THETA
    if s == 0:
        return ThreePoleClass.TANGENT
    return ThreePoleClass.DUMBBELL


@dataclass(frozen=True)
class TraceStep:
    name: str
    params: dict
    residues: tuple[Fraction, ...]
    graph: MetricRibbonGraph = field(repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "step": self.name,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "residues": [fraction_str(x) for x in self.residues],
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return fraction_str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, enum.Enum):
        return v.value
    return v


@dataclass(frozen=True)
class SurgeryTrace:
    steps: tuple[TraceStep, ...]

    @property
    def final(self) -> MetricRibbonGraph:
        return self.steps[-1].graph

    def to_list(self) -> list[dict]:
        return [s.to_dict() for s in self.steps]


class _Builder:
    def __init__(self):
        self.sigma: dict[int, int] = {}
        self.alpha: dict[int, int] = {}
        self.length: dict[int, Fraction] = {}
        self._next = 0

    @classmethod
    def from_metric(cls, mg: MetricRibbonGraph) -> "_Builder":
        b = cls()
        g = mg.graph
        b.sigma = dict(enumerate(g.sigma))
        b.alpha = dict(enumerate(g.alpha))
        b.length = {h: mg.length_of(h) for h in range(g.half_edge_count)}
        b._next = g.half_edge_count
        return b

    def _new(self) -> int:
        h = self._next
        self._next += 1
        return h

    def edge(self, length) -> tuple[int, int]:
        h, k = self._new(), self._new()
        self._pair(h, k, length)
        return h, k

    def dangling(self) -> int:
        return self._new()

    def _pair(self, h: int, k: int, length) -> None:
        length = as_fraction(length)
        assert length > 0, length
        self.alpha[h] = k
        self.alpha[k] = h
        self.length[h] = self.length[k] = length

    def vertex(self, *half_edges: int) -> None:
        for i, h in enumerate(half_edges):
            self.sigma[h] = half_edges[(i + 1) % len(half_edges)]

    def split(self, h: int, near) -> int:
        """Subdivide at distance ``near`` from the tail of ``h``; return the new inward half-edge."""
        near = as_fraction(near)
        far = self.length[h] - near
        hb = self.alpha[h]
        s1, t, s2 = self._new(), self._new(), self._new()
        self._pair(h, s1, near)
        self._pair(s2, hb, far)
        self.vertex(s1, t, s2)
        return t

    def join(self, t: int, u: int, length) -> None:
        self._pair(t, u, length)

    def lollipop(self, t: int, connector, loop) -> int:
        """Connector from ``t`` to a new vertex holding a loop; returns the loop's inner half-edge."""
        tp, c1, c2 = self._new(), self._new(), self._new()
        self._pair(c1, c2, loop)
        self.vertex(tp, c1, c2)
        self.join(t, tp, connector)
        return c2

    def walk(self, h: int) -> list[int]:
        out = [h]
        k = self.sigma[self.alpha[h]]
        while k != h:
            out.append(k)
            k = self.sigma[self.alpha[k]]
        return out

    def perimeter(self, h: int) -> Fraction:
        return sum((self.length[k] for k in self.walk(h)), Fraction(0))

    def finish(self, markers: Sequence[int] | None = None) -> MetricRibbonGraph:
        ids = sorted(self.sigma)
        assert ids == sorted(self.alpha), "dangling half-edges remain"
        index = {h: i for i, h in enumerate(ids)}
        sigma = tuple(index[self.sigma[h]] for h in ids)
        alpha = tuple(index[self.alpha[h]] for h in ids)
        g = RibbonGraph(sigma, alpha)
        lengths = tuple(self.length[ids[h]] for h, _ in g.edges)
        order = None if markers is None else tuple(index[h] for h in markers)
        return MetricRibbonGraph(g, lengths, order)


def _snapshot(b: _Builder, markers: Sequence[int], name: str, **params) -> TraceStep:
    mg = b.finish(markers)
    assert all(x > 0 for x in mg.lengths), (name, mg.lengths)
    res = tuple(b.perimeter(h) for h in markers)
    return TraceStep(name, params, res, mg)


def _sort_with_perm(alpha: Sequence) -> tuple[list[Fraction], list[int]]:
    vals = [as_fraction(a) for a in alpha]
    if any(a <= 0 for a in vals):
        raise ValueError(f"residues must be positive: {[str(a) for a in vals]}")
    order = sorted(range(len(vals)), key=lambda i: (vals[i], i))
    return [vals[i] for i in order], order


def _unsort(markers_sorted: Sequence[int], order: Sequence[int]) -> list[int]:
    """``markers_sorted[k]`` belongs to input position ``order[k]``; return markers in input order."""
    out = [0] * len(order)
    for k, i in enumerate(order):
        out[i] = markers_sorted[k]
    return out


# -- genus zero, three poles ----------------------------------------------------


def _three_pole_on(b: _Builder, b1: Fraction, b2: Fraction, b3: Fraction) -> tuple[list[int], ThreePoleClass]:
    """Add the three-pole graph for sorted perimeters; return face markers for (b1, b2, b3)."""
    cls = three_pole_class(b1, b2, b3)
    if cls is ThreePoleClass.THETA:
        mid = b.edge((b1 + b2 - b3) / 2)
        left = b.edge((b1 + b3 - b2) / 2)
        right = b.edge((b2 + b3 - b1) / 2)
        b.vertex(left[0], mid[0], right[0])
        b.vertex(left[1], right[1], mid[1])
        by_edges = {}
        for h in (*left, *mid, *right):
            by_edges.setdefault(frozenset(_edge_key(b, k) for k in b.walk(h)), h)
        L, M, R = (_edge_key(b, e[0]) for e in (left, mid, right))
        markers = [by_edges[frozenset({L, M})], by_edges[frozenset({M, R})], by_edges[frozenset({L, R})]]
    elif cls is ThreePoleClass.TANGENT:
        p, pb = b.edge(b1)
        q, qb = b.edge(b2)
        b.vertex(p, pb, q, qb)
        markers = [pb, qb, p]
    else:
        p, pb = b.edge(b1)
        q, qb = b.edge(b2)
        x, y = b.edge((b3 - b1 - b2) / 2)
        b.vertex(p, pb, x)
        b.vertex(q, qb, y)
        markers = [pb, qb, p]
    return markers, cls


def _edge_key(b: _Builder, h: int) -> int:
    return min(h, b.alpha[h])


def build_three_pole(a1, a2, a3) -> tuple[MetricRibbonGraph, ThreePoleClass]:
    """
    Critical graph of the Strebel differential with three double poles on the sphere.

    Face labels follow the input order. The class only depends on the sign of
    ``b1 + b2 - b3`` for the sorted residues.

        >>> mg, cls = build_three_pole(1, 1, 3)
        >>> cls.value, [str(x) for x in sorted(mg.lengths)]
        ('Dumbbell', ['1/2', '1', '1'])
    """
    vals, order = _sort_with_perm((a1, a2, a3))
    b = _Builder()
    markers, cls = _three_pole_on(b, *vals)
    return b.finish(_unsort(markers, order)), cls


# -- genus zero, n >= 4 ---------------------------------------------------------


def _chain_lengths(a: Sequence[Fraction], delta: Fraction | None) -> dict[int, Fraction]:
    """Circle lengths l_i (1-based) for the nested construction; ``delta`` selects the equal case."""
    n = len(a)
    l: dict[int, Fraction] = {}
    if delta is None:
        l[1] = a[0]
        start = 2
    else:
        l[1] = a[0] / 2 + delta
        l[2] = a[1] - 2 * delta
        start = 3
    for i in range(start, n - 1):
        l[i] = a[i - 1] - l[i - 1]
    return l


def _place_chord(b: _Builder, marker: int, chord) -> tuple[int, int]:
    """
    Chord across the face of ``marker`` between two boundary points half a perimeter apart.

    Returns the chord's two half-edges; they lie on the two new faces.
    """
    walk = b.walk(marker)
    starts = []
    pos = Fraction(0)
    for h in walk:
        starts.append(pos)
        pos += b.length[h]
    total = pos
    half = total / 2
    forbidden = sorted({s % half for s in starts})
    gaps = [(forbidden[i], (forbidden[i + 1] if i + 1 < len(forbidden) else forbidden[0] + half)) for i in range(len(forbidden))]
    lo, hi = max(gaps, key=lambda g: (g[1] - g[0], -g[0]))
    s_a = ((lo + hi) / 2) % half
    s_b = s_a + half

    def locate(s):
        for i, h in enumerate(walk):
            if starts[i] < s < starts[i] + b.length[h]:
                return h, s - starts[i]
        raise AssertionError("chord endpoint landed on a vertex")

    hb, db = locate(s_b)
    ha, da = locate(s_a)
    tb = b.split(hb, db)
    ta = b.split(ha, da)
    b.join(ta, tb, chord)
    return ta, tb


def _sphere_sorted(a: list[Fraction]) -> tuple[_Builder, list[int], list[TraceStep]]:
    """Nested-circle construction for sorted ``a`` with ``len(a) >= 4``."""
    n = len(a)
    steps: list[TraceStep] = []
    if a[0] < a[1]:
        delta = None
        first = 1
    else:
        delta = a[0] / 8  # slack: l_2 = a_1 - 2 delta > 0
        first = 2
    l = _chain_lengths(a, delta)
    if delta is not None and first == n - 2 and l[n - 2] + a[n - 2] == a[n - 1]:
        # the chord sits directly in the base face, so the base must not be tangent
        delta = a[0] / 16
        l = _chain_lengths(a, delta)
    assert all(x > 0 for x in l.values()), l
    top = n - 2

    eps: dict[int, Fraction] = {first: Fraction(0)}
    for i in range(first + 1, top):
        eps[i] = l[i] / 8  # slack l_i / 2
    if top > first:
        slack = l[top] / 2
        excess = l[top] + a[n - 2] - a[n - 1]
        if excess > 0:
            slack = min(slack, excess / 2)
        eps[top] = slack / 4
    x = {i: l[i] - 2 * eps.get(i, Fraction(0)) for i in l}

    b = _Builder()
    base = (x[top], a[n - 2], a[n - 1])
    base_markers, base_cls = _three_pole_on(b, *base)
    markers: dict[int, int] = {top: base_markers[0], n - 1: base_markers[1], n: base_markers[2]}
    steps.append(_snapshot(
        b, [markers[k] for k in sorted(markers)], "base_three_pole",
        chain=[l[i] for i in sorted(l)], delta=delta, base=list(base), base_class=base_cls,
        unperturbed_class=three_pole_class(l[top], a[n - 2], a[n - 1]),
        eps_top=eps.get(top, Fraction(0)),
    ))

    inner = markers[top]
    for i in range(top - 1, first - 1, -1):
        t = b.split(inner, b.length[inner] / 2)
        connector = eps[i] + eps[i + 1]
        inner = b.lollipop(t, connector, x[i])
        markers[i] = inner
        steps.append(_snapshot(
            b, [markers[k] for k in sorted(markers)], "circle",
            index=i, length=x[i], eps=eps[i], connector=connector,
        ))

    if delta is not None:
        ta, tb = _place_chord(b, inner, l[1])
        markers[1], markers[2] = ta, tb
        steps.append(_snapshot(b, [markers[k] for k in sorted(markers)], "chord", length=l[1], delta=delta))
    return b, [markers[k] for k in range(1, n + 1)], steps


def build_sphere_simple(alpha: Sequence) -> tuple[MetricRibbonGraph, SurgeryTrace]:
    """
    Trivalent genus-0 metric ribbon graph with residue vector ``alpha``.

    For ``n = 3`` this is the Theta or Dumbbell three-pole graph; the tangent
    case ``a1 + a2 = a3`` admits no trivalent realization.
    """
    vals, order = _sort_with_perm(alpha)
    n = len(vals)
    if n < 3:
        raise ValueError(f"need at least 3 poles on the sphere, got {n}")
    if n == 3:
        if vals[0] + vals[1] == vals[2]:
            raise ExcludedCaseError("trivalent realization excluded: (g, n) = (0, 3) with a1 + a2 = a3")
        b = _Builder()
        markers, cls = _three_pole_on(b, *vals)
        steps = [_snapshot(b, markers, "base_three_pole", base=vals, base_class=cls)]
    else:
        b, markers, steps = _sphere_sorted(vals)
    final = b.finish(_unsort(markers, order))
    steps.append(TraceStep("relabel", {"order": order}, residue_vector(final).entries, final))
    return final, SurgeryTrace(tuple(steps))


# -- positive genus ---------------------------------------------------------------


def _torus_one_face(b: _Builder, perimeter: Fraction) -> int:
    e = perimeter / 6
    x, y, z = b.edge(e), b.edge(e), b.edge(e)
    b.vertex(x[0], y[0], z[0])
    b.vertex(x[1], y[1], z[1])
    return x[0]


def _torus_two_faces(b: _Builder, r1: Fraction, r2: Fraction) -> tuple[int, int]:
    s = min(r1, r2) / 2
    a1, a2 = b.edge(s / 4), b.edge(s / 4)
    b1, b2 = b.edge(s / 4), b.edge(s / 4)
    t1, t2 = b.edge((r1 - s) / 2), b.edge((r2 - s) / 2)
    b.vertex(a2[1], a1[0], t1[0])
    b.vertex(a1[1], t2[0], a2[0])
    b.vertex(b2[1], b1[0], t1[1])
    b.vertex(b1[1], t2[1], b2[0])
    return t1[0], t2[0]


def build_torus_gadget(face_perimeters: Sequence) -> MetricRibbonGraph:
    """
    Trivalent genus-1 graph with one or two faces of the given perimeters.

    One face: a theta graph embedded with a single face, every edge ``P/6``.
    Two faces: two parallel circles of length ``s/2`` each (``s = min/2``)
    joined by one connecting arc in each of the two annuli between them.
    """
    per = [as_fraction(p) for p in face_perimeters]
    if any(p <= 0 for p in per):
        raise ValueError("perimeters must be positive")
    b = _Builder()
    if len(per) == 1:
        return b.finish([_torus_one_face(b, per[0])])
    if len(per) == 2:
        return b.finish(list(_torus_two_faces(b, per[0], per[1])))
    raise ValueError(f"torus gadget takes 1 or 2 perimeters, got {len(per)}")


def bridge_handle(mg: MetricRibbonGraph, face: int, eta, beta) -> MetricRibbonGraph:
    """
    Add a handle inside face ``face`` (label index, 0-based).

    A one-face torus gadget of perimeter ``eta`` is attached by a bridge of
    length ``beta`` to the midpoint of the first edge on the target face's
    walk. Genus rises by one and the target perimeter by ``eta + 2*beta``.
    """
    eta, beta = as_fraction(eta), as_fraction(beta)
    if eta <= 0 or beta <= 0:
        raise ValueError("eta and beta must be positive")
    faces = mg.labeled_faces
    if not 0 <= face < len(faces):
        raise IndexError(f"face {face} out of range 0..{len(faces) - 1}")
    markers = list(mg.face_order) if mg.face_order is not None else [f.face_id for f in faces]
    b = _Builder.from_metric(mg)
    h = faces[face].walk[0]
    t = b.split(h, b.length[h] / 2)
    g0 = _torus_one_face(b, eta)
    u = b.split(g0, b.length[g0] / 2)
    b.join(t, u, beta)
    return b.finish(markers)


def handle_budget(smallest: Fraction, g: int) -> Fraction:
    """``eta + 2*beta`` per handle: a fixed fraction of the smallest residue."""
    return smallest / (4 * g + 4)


def build(g: int, alpha: Sequence) -> tuple[MetricRibbonGraph, SurgeryTrace]:
    """
    Trivalent metric ribbon graph of genus ``g`` with residue vector ``alpha``.

    Handles are bridged into the face of the smallest residue, which is first
    reduced by ``g`` handle budgets.
    """
    if isinstance(g, bool) or not isinstance(g, int) or g < 0:
        raise ValueError(f"genus must be a non-negative integer, got {g!r}")
    vals, order = _sort_with_perm(alpha)
    n = len(vals)
    if n < 1 or 2 - 2 * g - n >= 0:
        raise ValueError(f"need 2 - 2g - n < 0 (g={g}, n={n})")
    if g == 0:
        if n == 3 and vals[0] + vals[1] == vals[2]:
            raise ExcludedCaseError("excluded case (0,3) with a1+a2=a3")
        return build_sphere_simple(alpha)

    budget = handle_budget(vals[0], g)
    handles = g if n >= 3 else g - 1
    reduced = vals[0] - handles * budget
    if n == 3 and reduced + vals[1] == vals[2]:
        budget = budget / 2
        reduced = vals[0] - handles * budget
    eta, beta = budget / 2, budget / 4
    base_vals = [reduced] + vals[1:]

    if n >= 3:
        base, trace = build_sphere_simple(base_vals)
        steps = list(trace.steps[:-1])
        mg = base
    else:
        mg = build_torus_gadget(base_vals)
        steps = [TraceStep("torus_gadget", {"perimeters": base_vals}, residue_vector(mg).entries, mg)]
    for k in range(handles):
        mg = bridge_handle(mg, 0, eta, beta)
        steps.append(TraceStep("bridge_handle", {"face": 0, "eta": eta, "beta": beta},
                               residue_vector(mg).entries, mg))
    final = MetricRibbonGraph(mg.graph, mg.lengths, tuple(_unsort(list(mg.face_order), order)))
    steps.append(TraceStep("relabel", {"order": order}, residue_vector(final).entries, final))
    return final, SurgeryTrace(tuple(steps))
