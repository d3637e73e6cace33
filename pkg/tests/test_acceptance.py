"""One test per acceptance criterion, at the stated sizes, tolerances and time limits."""
import random

import pytest

from conftest import ACCEPTANCE_LINES
from strebelgraph.checks import (
    admissible_corpus,
    criterion_curvature,
    criterion_degeneracy,
    criterion_enumeration,
    criterion_three_pole_classes,
    criterion_gauss_bonnet,
    criterion_monodromy,
    criterion_reducibility,
    criterion_simple_zeros,
)

SEED = 20240917


@pytest.fixture(scope="module")
def corpus():
    return admissible_corpus(random.Random(SEED), 500)


def _report(result):
    line = result.line()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.passed, line


def test_criterion_1_three_pole_classes():
    _report(criterion_three_pole_classes(time_limit=1e-3))


def test_criterion_2_random_residue_vectors():
    _report(criterion_simple_zeros(random.Random(SEED), count=500, time_limit=5.0))


def test_criterion_3_enumeration():
    _report(criterion_enumeration(max_edges=3, time_limit=1.0))


def test_criterion_4_gauss_bonnet(corpus):
    _report(criterion_gauss_bonnet(corpus))


def test_criterion_5_degeneracy(corpus):
    _report(criterion_degeneracy(random.Random(SEED + 5), corpus, trials=100))


def test_criterion_6_monodromy():
    _report(criterion_monodromy(random.Random(SEED + 6), count=20, steps=4096, time_limit=10.0))


def test_criterion_7_curvature():
    _report(criterion_curvature(random.Random(SEED + 7), count=10, points=5, h=1e-3, time_limit=30.0))


def test_criterion_8_reducibility(corpus):
    _report(criterion_reducibility(corpus))
