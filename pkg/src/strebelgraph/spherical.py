"""
Cone spherical metric data carried by a Strebel critical graph.

A double pole of residue ``a`` becomes a cone point of angle ``2*pi*a`` and
a zero of order ``m`` one of angle ``(m + 2)*pi``; the divisor weights are
``a - 1`` and ``m / 2``. Angles are kept as exact multiples of pi.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .metric import (
    MetricRibbonGraph,
    fraction_str,
    require_admissible,
    residue_vector,
    zero_partition,
)
from .ribbon import genus
from .spectral import SpectralCoverResult


@dataclass(frozen=True)
class PoleSite:
    face: int
    residue: Fraction

    @property
    def weight(self) -> Fraction:
        return self.residue - 1

    @property
    def angle_over_pi(self) -> Fraction:
        return 2 * self.residue


@dataclass(frozen=True)
class ZeroSite:
    vertex: int
    order: int

    @property
    def weight(self) -> Fraction:
        return Fraction(self.order, 2)

    @property
    def angle_over_pi(self) -> Fraction:
        return Fraction(self.order + 2)


@dataclass(frozen=True)
class SphericalDivisorData:
    poles: tuple[PoleSite, ...]
    zeros: tuple[ZeroSite, ...]
    genus: int

    @property
    def degree(self) -> Fraction:
        return sum((p.weight for p in self.poles), Fraction(0)) + sum((z.weight for z in self.zeros), Fraction(0))

    @property
    def gauss_bonnet(self) -> Fraction:
        return 2 - 2 * self.genus + self.degree

    def cone_angles_over_pi(self) -> list[Fraction]:
        return [p.angle_over_pi for p in self.poles] + [z.angle_over_pi for z in self.zeros]

    def cone_point_count(self) -> int:
        """Cone points proper: poles of residue 1 are marked smooth points."""
        return sum(1 for p in self.poles if p.residue != 1) + len(self.zeros)

    def to_dict(self) -> dict:
        return {
            "poles": [{"face": p.face, "residue": fraction_str(p.residue), "angle_over_pi": fraction_str(p.angle_over_pi)}
                      for p in self.poles],
            "zeros": [{"vertex": z.vertex, "order": z.order, "angle_over_pi": fraction_str(z.angle_over_pi)}
                      for z in self.zeros],
            "gauss_bonnet": fraction_str(self.gauss_bonnet),
        }


def divisor_and_angles(mg: MetricRibbonGraph) -> SphericalDivisorData:
    require_admissible(mg)
    res = residue_vector(mg)
    zp = zero_partition(mg)
    vertex_ids = [c[0] for c in mg.graph.vertices]
    poles = tuple(PoleSite(j, a) for j, a in enumerate(res.entries))
    zeros = tuple(ZeroSite(v, m) for v, m in zip(vertex_ids, zp.parts))
    return SphericalDivisorData(poles, zeros, res.genus)


def gauss_bonnet_check(data: SphericalDivisorData, g: int) -> Fraction:
    """``chi(X) + deg D``; it must equal the residue sum and be positive."""
    chi = 2 - 2 * g + data.degree
    total = sum((p.residue for p in data.poles), Fraction(0))
    assert chi == total, f"Gauss-Bonnet mismatch: chi(X, D) = {chi}, sum of residues = {total}"
    assert chi > 0, chi
    return chi


class Reducibility(enum.Enum):
    REDUCIBLE = "Reducible"
    IRREDUCIBLE = "Irreducible"
    UNKNOWN = "Unknown"


RULE_DEGENERATE = "R1: degenerate differential, square of an abelian differential gives co-axial monodromy"
RULE_NON_INTEGRAL = "R2: genus 0, more than two cone points, no angle in 2*pi*Z_{>1}"
RULE_THREE_INTEGRAL = "R3: genus 0, three integral residues, two simple zeros; monodromy group Z/2"


@dataclass(frozen=True)
class ReducibilityVerdict:
    tag: Reducibility
    rule: str | None = None

    def __post_init__(self):
        if self.tag is not Reducibility.UNKNOWN:
            assert self.rule in (RULE_DEGENERATE, RULE_NON_INTEGRAL, RULE_THREE_INTEGRAL)

    def to_dict(self) -> dict:
        return {"tag": self.tag.value, "rule": self.rule}


def reducibility_classify(mg: MetricRibbonGraph, cover: SpectralCoverResult) -> ReducibilityVerdict:
    if cover.degenerate:
        return ReducibilityVerdict(Reducibility.REDUCIBLE, RULE_DEGENERATE)
    data = divisor_and_angles(mg)
    if data.genus != 0:
        return ReducibilityVerdict(Reducibility.UNKNOWN)
    residues = [p.residue for p in data.poles]
    orders = [z.order for z in data.zeros]
    if (data.cone_point_count() > 2
            and all(a.denominator != 1 for a in residues)
            and all(m % 2 for m in orders)):
        return ReducibilityVerdict(Reducibility.IRREDUCIBLE, RULE_NON_INTEGRAL)
    if len(residues) == 3 and all(a.denominator == 1 for a in residues) and sorted(orders) == [1, 1]:
        return ReducibilityVerdict(Reducibility.REDUCIBLE, RULE_THREE_INTEGRAL)
    return ReducibilityVerdict(Reducibility.UNKNOWN)


def spherical_report(mg: MetricRibbonGraph, cover: SpectralCoverResult) -> dict:
    data = divisor_and_angles(mg)
    gauss_bonnet_check(data, data.genus)
    out = data.to_dict()
    out["reducibility"] = reducibility_classify(mg, cover).to_dict()
    return out
