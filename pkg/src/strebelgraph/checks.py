"""
Property suite behind ``strebelgraph check``.

Each ``criterion_*`` function returns a :class:`CriterionResult`; the
random ones take an explicit ``random.Random`` so a seed reproduces a run.
"""
from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .constructors import ThreePoleClass, build, build_three_pole
from .metric import MetricRibbonGraph, residue_vector, strebel_admissible, uniform, zero_partition
from .numeric import POLES, curvature_probe, pole_monodromy_numeric, q_poly, safe_sample_points
from .ribbon import RibbonGraph, enumerate_small, genus, relabel
from .spectral import cycle_holonomy, degeneracy_check
from .spherical import (
    RULE_DEGENERATE,
    RULE_NON_INTEGRAL,
    RULE_THREE_INTEGRAL,
    Reducibility,
    divisor_and_angles,
    gauss_bonnet_check,
    reducibility_classify,
)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number}. {self.name}: {self.detail} ({self.seconds:.3f}s)"


def _timed(number: int, name: str, fn: Callable[[], tuple[bool, str]]) -> CriterionResult:
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except AssertionError as exc:
        ok, detail = False, f"assertion failed: {exc}"
    return CriterionResult(number, name, ok, detail, time.perf_counter() - start)


# -- random inputs --------------------------------------------------------------


def random_residues(rng: random.Random, n: int, top: int = 20) -> list[Fraction]:
    """Rationals in (0, top]; about a third of the vectors repeat an entry to hit the equal-pair branch."""
    den = rng.choice([1, 2, 3, 4, 5, 6, 8, 10, 12])
    vals = [Fraction(rng.randint(1, top * den), den) for _ in range(n)]
    if n >= 2 and rng.random() < 0.35:
        vals[rng.randrange(n)] = vals[rng.randrange(n)]
    return vals


def random_build_cases(rng: random.Random, count: int) -> Iterator[tuple[int, list[Fraction]]]:
    made = 0
    while made < count:
        g = rng.randint(0, 3)
        n = rng.randint(1, 8)
        if 2 - 2 * g - n >= 0:
            continue
        alpha = random_residues(rng, n)
        s = sorted(alpha)
        if (g, n) == (0, 3) and s[0] + s[1] == s[2]:
            continue
        made += 1
        yield g, alpha


def random_triple(rng: random.Random) -> tuple[str, str, str]:
    return tuple(f"{rng.uniform(0.1, 3.0):.3f}" for _ in range(3))


def random_relabeling(rng: random.Random, n: int) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def random_origins(rng: random.Random, graph: RibbonGraph) -> dict[int, int]:
    return {c[0]: rng.choice(c) for c in graph.vertices}


# -- independent counts -----------------------------------------------------------


def orbit_count(perm) -> int:
    """Number of cycles as the sum over points of 1 / (orbit size)."""
    total = Fraction(0)
    for h in range(len(perm)):
        size, k = 1, perm[h]
        while k != h:
            size += 1
            k = perm[k]
        total += Fraction(1, size)
    assert total.denominator == 1
    return int(total)


# -- criteria -------------------------------------------------------------------


BASIC_TRIPLES = {
    (1, 1, 1): (ThreePoleClass.THETA, [Fraction(1, 2)] * 3),
    (1, 1, 2): (ThreePoleClass.TANGENT, [Fraction(1), Fraction(1)]),
    (1, 1, 3): (ThreePoleClass.DUMBBELL, [Fraction(1, 2), Fraction(1), Fraction(1)]),
}


def criterion_three_pole_classes(time_limit: float = 1e-3) -> CriterionResult:
    def run():
        notes = []
        for a, (cls, lengths) in BASIC_TRIPLES.items():
            times = []
            for _ in range(7):
                t0 = time.perf_counter()
                mg, got = build_three_pole(*a)
                times.append(time.perf_counter() - t0)
            t = statistics.median(times)
            if got is not cls or sorted(mg.lengths) != lengths:
                return False, f"{a}: got {got.value} with lengths {[str(x) for x in mg.lengths]}"
            if list(residue_vector(mg).entries) != [Fraction(x) for x in a]:
                return False, f"{a}: residues {residue_vector(mg).entries}"
            if t >= time_limit:
                return False, f"{a}: {t * 1e3:.3f} ms >= {time_limit * 1e3:.3f} ms"
            notes.append(f"{cls.value} {t * 1e6:.0f}us")
        return True, ", ".join(notes)
    return _timed(1, "three-pole graph classes", run)


def criterion_simple_zeros(rng: random.Random, count: int = 500, time_limit: float = 5.0) -> CriterionResult:
    def run():
        start = time.perf_counter()
        for g, alpha in random_build_cases(rng, count):
            mg, _ = build(g, alpha)
            verdict = strebel_admissible(mg)
            if not verdict:
                return False, f"(g={g}, alpha={alpha}) inadmissible: {verdict.reasons}"
            if genus(mg.graph) != g:
                return False, f"(g={g}, alpha={alpha}) genus {genus(mg.graph)}"
            if list(residue_vector(mg).entries) != alpha:
                return False, f"(g={g}, alpha={alpha}) residues {residue_vector(mg).entries}"
            if zero_partition(mg).parts != (1,) * (4 * g + 2 * len(alpha) - 4):
                return False, f"(g={g}, alpha={alpha}) zero partition {zero_partition(mg).parts}"
        elapsed = time.perf_counter() - start
        return elapsed < time_limit, f"{count} cases in {elapsed:.2f}s (limit {time_limit}s)"
    return _timed(2, "trivalent realization of random residue vectors", run)


def criterion_enumeration(max_edges: int = 3, time_limit: float = 1.0) -> CriterionResult:
    def run():
        start = time.perf_counter()
        total = 0
        for e in range(1, max_edges + 1):
            for g in enumerate_small(e):
                total += 1
                v = orbit_count(g.sigma)
                f = orbit_count([g.sigma[g.alpha[h]] for h in range(g.half_edge_count)])
                if (v, f) != (g.num_vertices, g.num_faces):
                    return False, f"cycle counts disagree on {g}"
                chi = v - e + f
                gen = genus(g)
                if chi != 2 - 2 * gen or gen < 0:
                    return False, f"Euler relation fails on {g}"
        elapsed = time.perf_counter() - start
        return elapsed < time_limit, f"{total} classes with E <= {max_edges} in {elapsed:.3f}s"
    return _timed(3, "Euler relation on enumerated rotation systems", run)


def admissible_corpus(rng: random.Random, build_count: int, max_edges: int = 3) -> list[MetricRibbonGraph]:
    """Graphs with min valency >= 3 from criteria 1-3."""
    corpus = [build_three_pole(*a)[0] for a in BASIC_TRIPLES]
    corpus += [build(g, alpha)[0] for g, alpha in random_build_cases(rng, build_count)]
    for e in range(1, max_edges + 1):
        for g in enumerate_small(e):
            if min(len(c) for c in g.vertices) >= 3:
                corpus.append(uniform(g, 1))
    return corpus


def criterion_gauss_bonnet(corpus: list[MetricRibbonGraph]) -> CriterionResult:
    def run():
        for mg in corpus:
            data = divisor_and_angles(mg)
            chi = gauss_bonnet_check(data, genus(mg.graph))
            if chi != sum(residue_vector(mg).entries):
                return False, f"chi(X, D) = {chi} on {mg}"
        return True, f"{len(corpus)} graphs"
    return _timed(4, "Gauss-Bonnet identity", run)


def even_valency_graphs(corpus: list[MetricRibbonGraph]) -> list[MetricRibbonGraph]:
    return [mg for mg in corpus if all(len(c) % 2 == 0 for c in mg.graph.vertices)]


def criterion_degeneracy(rng: random.Random, corpus: list[MetricRibbonGraph], trials: int = 100) -> CriterionResult:
    def run():
        tangent = build_three_pole(1, 1, 2)[0]
        cover = degeneracy_check(tangent)
        if not (cover.degenerate and cover.component_count == 2):
            return False, "Tangent graph not degenerate"
        for a in ((1, 1, 1), (1, 1, 3)):
            if degeneracy_check(build_three_pole(*a)[0]).degenerate:
                return False, f"{a} reported degenerate"
        evens = even_valency_graphs(corpus + [tangent])
        for mg in evens:
            for face in mg.labeled_faces:
                if cycle_holonomy(mg, face.walk) != 1:
                    return False, f"face holonomy -1 on {mg}"
        probes = [tangent] + [build_three_pole(*a)[0] for a in ((1, 1, 1), (1, 1, 3))] + evens
        for mg in probes:
            ref = degeneracy_check(mg)
            for _ in range(trials):
                origins = random_origins(rng, mg.graph)
                gauged = degeneracy_check(mg, origins)
                perm = random_relabeling(rng, mg.graph.half_edge_count)
                moved = degeneracy_check(mg.relabel(perm))
                for other in (gauged, moved):
                    if (other.degenerate, other.component_count, len(other.branch_vertices)) != (
                            ref.degenerate, ref.component_count, len(ref.branch_vertices)):
                        return False, f"verdict changed under gauge/relabeling on {mg}"
                if not ref.branch_vertices:
                    for face in mg.labeled_faces:
                        if cycle_holonomy(mg, face.walk, origins) != 1:
                            return False, "face holonomy not gauge invariant"
        return True, f"{len(evens)} even-valency graphs, {len(probes)} graphs x {trials} gauge changes/relabelings"
    return _timed(5, "degeneracy via the spectral double cover", run)


def criterion_monodromy(rng: random.Random, count: int = 20, steps: int = 4096,
                        ladder: tuple[int, ...] = (16, 32, 64), time_limit: float = 10.0) -> CriterionResult:
    def run():
        start = time.perf_counter()
        worst_dev = worst_phase = 0.0
        for _ in range(count):
            a = random_triple(rng)
            d = q_poly(*a)
            for pole in POLES:
                r = pole_monodromy_numeric(d, pole, steps=steps)
                worst_dev = max(worst_dev, abs(r.unit_deviation))
                worst_phase = max(worst_phase, r.phase_error)
                if abs(r.unit_deviation) >= 1e-8 or r.phase_error >= 1e-6:
                    return False, f"{a} pole {pole}: deviation {r.unit_deviation:.3g}, phase error {r.phase_error:.3g}"
                errs = [pole_monodromy_numeric(d, pole, steps=n) for n in ladder]
                for coarse, fine in zip(errs, errs[1:]):
                    for name in ("phase_error", "unit_deviation"):
                        e0, e1 = abs(getattr(coarse, name)), abs(getattr(fine, name))
                        if e0 > 1e-12 and e1 > e0 / 4:
                            return False, f"{a} pole {pole}: {name} {e0:.3g} -> {e1:.3g} on doubling"
        elapsed = time.perf_counter() - start
        ok = elapsed < time_limit
        return ok, f"{count} triples, max ||lambda|-1| {worst_dev:.2g}, max phase error {worst_phase:.2g}, {elapsed:.2f}s"
    return _timed(6, "unitary monodromy around the three poles", run)


def criterion_curvature(rng: random.Random, count: int = 10, points: int = 5, h: float = 1e-3,
                        ratio_band: tuple[float, float] = (3.0, 5.0), time_limit: float = 30.0) -> CriterionResult:
    def run():
        start = time.perf_counter()
        nprng = np.random.default_rng(rng.randrange(2 ** 32))
        worst = 0.0
        ratios = []
        for _ in range(count):
            a = random_triple(rng)
            d = q_poly(*a)
            pts = safe_sample_points(d, points, nprng)
            coarse = [abs(k - 1) for _, k in curvature_probe(d, pts, h)]
            fine = [abs(k - 1) for _, k in curvature_probe(d, pts, h / 2)]
            worst = max(worst, max(coarse))
            if max(coarse) >= 1e-3:
                return False, f"{a}: |K-1| = {max(coarse):.3g} at h = {h}"
            ratio = statistics.median(coarse) / statistics.median(fine)
            ratios.append(ratio)
            if not ratio_band[0] <= ratio <= ratio_band[1]:
                return False, f"{a}: median |K-1| shrank by {ratio:.2f} at h/2"
        elapsed = time.perf_counter() - start
        return elapsed < time_limit, (f"{count}x{points} samples, max |K-1| {worst:.2g}, "
                                      f"h/2 ratios {min(ratios):.2f}..{max(ratios):.2f}, {elapsed:.2f}s")
    return _timed(7, "constant curvature one", run)


def criterion_reducibility(corpus: list[MetricRibbonGraph]) -> CriterionResult:
    def run():
        expected = [
            ((1, 1, 2), Reducibility.REDUCIBLE, RULE_DEGENERATE),
            ((Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)), Reducibility.IRREDUCIBLE, RULE_NON_INTEGRAL),
            ((1, 1, 1), Reducibility.REDUCIBLE, RULE_THREE_INTEGRAL),
        ]
        for a, tag, rule in expected:
            mg = build_three_pole(*a)[0]
            v = reducibility_classify(mg, degeneracy_check(mg))
            if (v.tag, v.rule) != (tag, rule):
                return False, f"{a}: {v.tag.value} by {v.rule}"
        counts: dict[str, int] = {}
        for mg in corpus:
            cover = degeneracy_check(mg)
            v = reducibility_classify(mg, cover)
            if cover.degenerate and v.tag is not Reducibility.REDUCIBLE:
                return False, f"degenerate graph classified {v.tag.value}"
            if v.tag is not Reducibility.UNKNOWN and v.rule not in (RULE_DEGENERATE, RULE_NON_INTEGRAL, RULE_THREE_INTEGRAL):
                return False, f"verdict without a rule: {v}"
            key = v.tag.value if v.rule is None else f"{v.tag.value}({v.rule[:2]})"
            counts[key] = counts.get(key, 0) + 1
        return True, ", ".join(f"{k}: {c}" for k, c in sorted(counts.items()))
    return _timed(8, "reducibility rules", run)


def run_suite(seed: int = 0, suite_size: int = 500) -> list[CriterionResult]:
    rng = random.Random(seed)
    results = [
        criterion_three_pole_classes(),
        criterion_simple_zeros(rng, suite_size, time_limit=5.0 * suite_size / 500),
        criterion_enumeration(),
    ]
    corpus = admissible_corpus(rng, min(suite_size, 200))
    results.append(criterion_gauss_bonnet(corpus))
    results.append(criterion_degeneracy(rng, corpus))
    results.append(criterion_monodromy(rng))
    results.append(criterion_curvature(rng))
    results.append(criterion_reducibility(corpus))
    return results
