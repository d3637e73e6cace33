from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strebelgraph.constructors import build, build_three_pole
from strebelgraph.metric import (
    MetricRibbonGraph,
    NotStrebelError,
    ResidueVector,
    as_fraction,
    fraction_str,
    metric_disjoint_union,
    residue_vector,
    strebel_admissible,
    uniform,
    with_lengths,
    zero_partition,
)
from strebelgraph.ribbon import RibbonGraph, from_vertices

F = Fraction
THETA = from_vertices([(0, 2, 4), (1, 5, 3)], [(0, 1), (2, 3), (4, 5)])
TWO_LOOPS = from_vertices([(0, 1, 2, 3)], [(0, 1), (2, 3)])
LOOP = RibbonGraph((1, 0), (1, 0))


def test_exact_parsing():
    assert as_fraction("0.7") == F(7, 10)
    assert as_fraction("3/4") == F(3, 4)
    assert as_fraction(2) == F(2)
    with pytest.raises(TypeError):
        as_fraction(0.7)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_fraction_strings():
    assert fraction_str(F(1, 2)) == "1/2"
    assert fraction_str(F(3)) == "3/1"


def test_theta_lengths_give_unit_residues():
    a = (F(1), F(1), F(1))
    lengths = [(a[0] + a[1] - a[2]) / 2, (a[0] + a[2] - a[1]) / 2, (a[1] + a[2] - a[0]) / 2]
    mg = with_lengths(THETA, lengths)
    assert residue_vector(mg).entries == (1, 1, 1)


def test_dumbbell_residues():
    mg, _ = build_three_pole(1, 1, 3)
    assert residue_vector(mg).entries == (1, 1, 3)


def test_loop_residues():
    mg = uniform(LOOP, F(5, 3))
    assert residue_vector(mg).entries == (F(5, 3), F(5, 3))


def test_zero_partitions():
    assert zero_partition(uniform(THETA, F(1, 2))).parts == (1, 1)
    assert zero_partition(uniform(TWO_LOOPS, 1)).parts == (2,)
    mg, _ = build(1, [1, 1, 1, 1])
    zp = zero_partition(mg)
    assert zp.parts == (1,) * 8 and zp.total == 8


def test_zero_partition_rejects_low_valency():
    with pytest.raises(NotStrebelError, match="not a Strebel critical graph"):
        zero_partition(uniform(LOOP, 1))


def test_admissibility():
    assert strebel_admissible(uniform(THETA, F(1, 2)))
    loop = strebel_admissible(uniform(LOOP, 1))
    assert not loop and any("valency 2 < 3" in r for r in loop.reasons)
    pair = strebel_admissible(metric_disjoint_union(uniform(THETA, 1), uniform(THETA, 1)))
    assert not pair and "disconnected" in pair.reasons


def test_residue_vector_validation():
    with pytest.raises(ValueError):
        ResidueVector((F(1), F(1)), 0)
    with pytest.raises(ValueError):
        ResidueVector((F(1), F(-1), F(1)), 0)


def test_json_round_trip_keeps_face_labels():
    mg, _ = build(0, ["5", "1/2", "3", "2"])
    data = mg.to_dict()
    assert all("/" in x for x in data["lengths"])
    back = MetricRibbonGraph.from_dict(data)
    assert back == mg
    assert residue_vector(back).entries == (5, F(1, 2), 3, 2)


def test_relabel_keeps_residues():
    mg, _ = build(1, [2, 3, 5])
    perm = list(reversed(range(mg.graph.half_edge_count)))
    assert residue_vector(mg.relabel(perm)) == residue_vector(mg)


@given(st.lists(st.fractions(min_value=F(1, 30), max_value=20, max_denominator=30), min_size=3, max_size=6))
def test_residue_sum_is_twice_total_length(alpha):
    s = sorted(alpha)
    if len(alpha) == 3 and s[0] + s[1] == s[2]:
        return
    mg, _ = build(0, alpha)
    assert sum(residue_vector(mg).entries) == 2 * sum(mg.lengths)
    assert zero_partition(mg).total == 2 * len(alpha) - 4


def test_zero_sum_identity_on_enumerated_graphs():
    from strebelgraph.ribbon import enumerate_small, genus

    for e in (1, 2, 3, 4):
        for g in enumerate_small(e):
            if min(len(c) for c in g.vertices) < 3:
                continue
            mg = uniform(g, 1)
            assert zero_partition(mg).total == 2 * g.num_faces + 4 * genus(g) - 4
