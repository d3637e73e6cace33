"""
Numerics for the Strebel differential with double poles at 0, 1 and infinity.

    q = -P(z) / (z^2 (z - 1)^2) dz^2,
    P(z) = a1^2 (z - 1)^2 + a2^2 z^2 + (a3^2 - a1^2 - a2^2) z (z - 1).

The developing map is ``F = exp(int sqrt(-q))``. This module checks the
multiplier of ``F`` around each pole and the curvature of ``F^* g_st``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .constructors import ThreePoleClass, three_pole_class

POLES = ("0", "1", "inf")

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


class ContourError(ValueError):
    pass


class BranchTrackingError(ValueError):
    pass


def _exact(x) -> Fraction:
    return Fraction(x.strip()) if isinstance(x, str) else Fraction(x)


@dataclass(frozen=True)
class ThreePoleDifferential:
    a1: Fraction
    a2: Fraction
    a3: Fraction

    @property
    def residues(self) -> tuple[float, float, float]:
        return float(self.a1), float(self.a2), float(self.a3)

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction]:
        """``(A, B, C)`` with ``P(z) = A z^2 + B z + C``, exact."""
        a1, a2, a3 = self.a1 ** 2, self.a2 ** 2, self.a3 ** 2
        c = a3 - a1 - a2
        return a1 + a2 + c, -2 * a1 - c, a1

    @property
    def discriminant(self) -> Fraction:
        A, B, C = self.coefficients
        return B * B - 4 * A * C

    @property
    def zeros(self) -> tuple[complex, complex]:
        A, B, C = (float(x) for x in self.coefficients)
        s = cmath.sqrt(complex(B * B - 4 * A * C))
        if (B * s.conjugate()).real < 0:
            s = -s
        q = -(B + s) / 2
        return q / A, C / q

    def P(self, z):
        A, B, C = (float(x) for x in self.coefficients)
        return (A * z + B) * z + C

    def Q(self, w):
        """Numerator of ``-q`` in the chart ``w = 1/z`` at infinity."""
        a1, a2, a3 = self.residues
        c = a3 * a3 - a1 * a1 - a2 * a2
        u = 1 - w
        return a1 * a1 * u * u + a2 * a2 + c * u

    def critical_points(self) -> list[complex]:
        """Finite critical points in the z-chart: the two poles and the zeros."""
        return [0j, 1 + 0j, *self.zeros]

    def has_double_zero(self) -> bool:
        return self.discriminant == 0

    def to_dict(self) -> dict:
        A, B, C = self.coefficients
        return {
            "residues": [str(self.a1), str(self.a2), str(self.a3)],
            "P_coefficients": [str(A), str(B), str(C)],
            "zeros": [[z.real, z.imag] for z in self.zeros],
            "poles": ["0", "1", "inf"],
        }


def q_poly(a1, a2, a3) -> ThreePoleDifferential:
    """
    Assemble the three-pole differential; inputs are converted to exact rationals.

        >>> d = q_poly(1, 1, 2)
        >>> [str(c) for c in d.coefficients]
        ['4', '-4', '1']
    """
    vals = tuple(_exact(a) for a in (a1, a2, a3))
    if any(a <= 0 for a in vals):
        raise ValueError("residues must be positive")
    return ThreePoleDifferential(*vals)


# -- branch tracking ------------------------------------------------------------


def _track(values: Iterable[complex], start: complex | None = None) -> list[complex]:
    """Continue a square root along samples of its radicand, never jumping by half its size."""
    out: list[complex] = []
    prev = start
    for v in values:
        s = cmath.sqrt(v)
        if prev is not None:
            if abs(s + prev) < abs(s - prev):
                s = -s
            if abs(s - prev) >= 0.5 * abs(prev):
                raise BranchTrackingError("square root changed by more than 50% between nodes; refine the path")
        out.append(s)
        prev = s
    return out


# -- monodromy ------------------------------------------------------------------


@dataclass(frozen=True)
class MonodromyResult:
    pole: str
    residue: float
    integral: complex
    multiplier: complex
    unit_deviation: float
    phase_over_2pi: float
    phase_error: float

    def to_dict(self) -> dict:
        return {
            "pole": self.pole,
            "residue": self.residue,
            "multiplier": [self.multiplier.real, self.multiplier.imag],
            "unit_deviation": self.unit_deviation,
            "phase_over_2pi": self.phase_over_2pi,
            "phase_error": self.phase_error,
        }


def _chart(d: ThreePoleDifferential, pole: str) -> tuple[complex, Callable, Callable, list[complex], float]:
    """Center, radicand, denominator, other critical points and residue for ``pole``."""
    a1, a2, a3 = d.residues
    if pole == "0":
        return 0j, d.P, lambda z: z * (z - 1), [1 + 0j, *d.zeros], a1
    if pole == "1":
        return 1 + 0j, d.P, lambda z: z * (z - 1), [0j, *d.zeros], a2
    if pole == "inf":
        return 0j, d.Q, lambda w: w * (1 - w), [1 + 0j, *(1 / z for z in d.zeros)], a3
    raise ValueError(f"pole must be one of {POLES}, got {pole!r}")


def nearest_critical_distance(d: ThreePoleDifferential, pole: str) -> float:
    center, _, _, others, _ = _chart(d, pole)
    return min(abs(c - center) for c in others)


def _circular_distance(x: float, y: float) -> float:
    t = (x - y) % 1.0
    return min(t, 1.0 - t)


def pole_monodromy_numeric(d: ThreePoleDifferential, pole: str, radius: float | None = None,
                           steps: int = 4096) -> MonodromyResult:
    """
    Multiplier of ``F`` around ``pole`` by the trapezoid rule on a circle.

    ``radius`` defaults to 0.4 of the distance to the nearest other critical
    point (chart ``w = 1/z`` for the pole at infinity).
    """
    center, radicand, denom, others, residue = _chart(d, pole)
    nearest = min(abs(c - center) for c in others)
    if radius is None:
        radius = 0.4 * nearest
    if radius <= 0 or steps < 3:
        raise ValueError("need radius > 0 and steps >= 3")
    if min(abs(abs(c - center) - radius) for c in others) < 1e-3 * radius:
        raise ContourError("contour too close to critical point")
    if nearest < radius:
        raise ContourError("contour encloses another critical point")

    theta = 2 * np.pi * np.arange(steps) / steps
    nodes = center + radius * np.exp(1j * theta)
    roots = _track(radicand(w) for w in nodes)
    closing = _track([radicand(nodes[0])], start=roots[-1])[0]
    if abs(closing - roots[0]) > 1e-6 * abs(roots[0]):
        raise ContourError("square root does not close up on the contour")
    roots = np.asarray(roots)
    integrand = roots / denom(nodes) * 1j * radius * np.exp(1j * theta)
    integral = complex(integrand.sum() * (2 * np.pi / steps))
    multiplier = cmath.exp(integral)
    phase = (integral.imag / (2 * np.pi)) % 1.0
    error = min(_circular_distance(phase, residue), _circular_distance(phase, -residue))
    return MonodromyResult(pole, residue, integral, multiplier, abs(multiplier) - 1.0, phase, error)


# -- curvature ------------------------------------------------------------------


def _segment_distance(p: complex, q: complex, c: complex) -> float:
    v = q - p
    if v == 0:
        return abs(c - p)
    t = max(0.0, min(1.0, ((c - p) * v.conjugate()).real / abs(v) ** 2))
    return abs(p + t * v - c)


class _Developer:
    """Branch of ``log F`` continued along straight segments from a base point."""

    def __init__(self, d: ThreePoleDifferential, base: complex):
        self.d = d
        self.crit = d.critical_points()
        self.base = base
        self.root = cmath.sqrt(d.P(base))

    def _f(self, z: complex, root: complex) -> complex:
        return root / (z * (z - 1))

    def integrate(self, p: complex, q: complex, root: complex) -> tuple[complex, complex]:
        """Integral of ``sqrt(-q)`` from ``p`` to ``q`` and the continued root at ``q``."""
        gap = min(_segment_distance(p, q, c) for c in self.crit)
        if gap <= 0:
            raise ContourError("path passes through a critical point")
        pieces = max(1, math.ceil(4 * abs(q - p) / gap))
        total = 0j
        a = p
        for k in range(1, pieces + 1):
            b = p + (q - p) * k / pieces
            half = (b - a) / 2
            mid = (a + b) / 2
            zs = mid + half * _GL_NODES
            tracked = _track((self.d.P(z) for z in zs), start=root)
            vals = np.asarray(tracked) / (zs * (zs - 1))
            total += complex(half * np.dot(_GL_WEIGHTS, vals))
            root = _track([self.d.P(b)], start=tracked[-1])[0]
            a = b
        return total, root

    def route(self, z: complex, margin: float) -> list[complex]:
        """Polyline from the base to ``z`` staying ``margin`` away from critical points."""
        candidates = [
            [self.base, z],
            [self.base, complex(z.real, self.base.imag), z],
            [self.base, complex(self.base.real, z.imag), z],
        ]
        for lift in (1.5, -1.5, 3.0, -3.0):
            candidates.append([self.base, complex(self.base.real, lift), complex(z.real, lift), z])
        for path in candidates:
            if all(_segment_distance(p, q, c) >= margin for p, q in zip(path, path[1:]) for c in self.crit):
                return path
        raise ContourError(f"no safe path from base point to {z}")

    def log_developing(self, z: complex, margin: float) -> tuple[complex, complex]:
        """``log F(z)`` and the branch of ``sqrt P`` at ``z``."""
        path = self.route(z, margin)
        total, root = 0j, self.root
        for p, q in zip(path, path[1:]):
            piece, root = self.integrate(p, q, root)
            total += piece
        return total, root


def default_base_point(d: ThreePoleDifferential) -> complex:
    candidates = [complex(x, y) for x in (-0.5, 0.5, 1.5) for y in (-1.0, -0.5, 0.5, 1.0)]
    crit = d.critical_points()
    return max(candidates, key=lambda c: (min(abs(c - p) for p in crit), -abs(c - 0.5)))


def _log_rho(log_f: complex, root: complex, z: complex) -> float:
    # rho = 2 |F'| / (1 + |F|^2) with F' = F * sqrt(P) / (z (z - 1))
    re = log_f.real
    return math.log(2.0) + re + math.log(abs(root / (z * (z - 1)))) - float(np.logaddexp(0.0, 2.0 * re))


def curvature_probe(d: ThreePoleDifferential, sample_points: Sequence[complex], h: float = 1e-3,
                    base: complex | None = None, rescale: bool = True) -> list[tuple[complex, float]]:
    """
    Gaussian curvature of ``F^* (4|dw|^2 / (1 + |w|^2)^2)`` by the five-point Laplacian.

    Each sample must be at least ``10 h`` away from the poles and zeros.
    With ``rescale`` the developing map is replaced by ``F / |F(z)|`` near
    each sample ``z``. That is a Moebius change of the developing map, so the
    curvature is unchanged, but it keeps ``rho`` of order one and stops the
    ``rho^-2`` factor from amplifying the finite-difference error.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    crit = d.critical_points()
    dev = _Developer(d, default_base_point(d) if base is None else base)
    out = []
    for z in sample_points:
        z = complex(z)
        gap = min(abs(z - c) for c in crit)
        if gap < 10 * h:
            raise ContourError(f"sample {z} within {gap:.3g} < 10h of a critical point")
        log_f, root = dev.log_developing(z, margin=min(0.5 * gap, 0.05))
        if rescale:
            log_f -= log_f.real
        center = _log_rho(log_f, root, z)
        lap = -4.0 * center
        for step in (h, -h, 1j * h, -1j * h):
            piece, r = dev.integrate(z, z + step, root)
            lap += _log_rho(log_f + piece, r, z + step)
        lap /= h * h
        out.append((z, -lap / math.exp(2 * center)))
    return out


def safe_sample_points(d: ThreePoleDifferential, count: int, rng: np.random.Generator,
                       min_gap: float = 0.25, box: float = 1.5) -> list[complex]:
    """Random points in ``[-box+0.5, box+0.5] x [-box, box]`` at least ``min_gap`` from critical points."""
    crit = d.critical_points()
    pts: list[complex] = []
    while len(pts) < count:
        z = complex(0.5 + rng.uniform(-box, box), rng.uniform(-box, box))
        if min(abs(z - c) for c in crit) >= min_gap:
            pts.append(z)
    return pts


# -- exact / numeric cross-check ------------------------------------------------


def heron_product(a1, a2, a3) -> Fraction:
    a1, a2, a3 = (_exact(a) for a in (a1, a2, a3))
    return (a1 + a2 - a3) * (a1 - a2 + a3) * (-a1 + a2 + a3) * (a1 + a2 + a3)


def classify_crosscheck(a1, a2, a3, tol: float = 1e-9) -> bool:
    """
    Compare the root picture of ``P`` with the three-pole graph class.

    Exact part: ``disc(P) = -heron_product`` and the class is Tangent, Theta
    or Dumbbell as ``disc`` is zero, negative or positive. Numeric part: a
    double root, a non-real conjugate pair, or two real roots in ``(0, 1)``.
    """
    d = q_poly(a1, a2, a3)
    disc = d.discriminant
    if disc != -heron_product(a1, a2, a3):
        return False
    cls = three_pole_class(a1, a2, a3)
    expected = {ThreePoleClass.TANGENT: 0, ThreePoleClass.THETA: -1, ThreePoleClass.DUMBBELL: 1}[cls]
    if (disc > 0) - (disc < 0) != expected:
        return False
    r1, r2 = d.zeros
    scale = max(abs(r1), abs(r2), 1.0)
    if cls is ThreePoleClass.TANGENT:
        return abs(r1 - r2) < 1e-6 * scale
    if cls is ThreePoleClass.THETA:
        return abs(r1.imag) > tol * scale and abs(r1 - r2.conjugate()) < 1e-9 * scale
    if any(abs(r.imag) > tol * scale for r in (r1, r2)):
        return False
    if d.a3 >= max(d.a1, d.a2):
        # the bridge runs between the loops around 0 and 1
        return all(0 < r.real < 1 for r in (r1, r2))
    return True
