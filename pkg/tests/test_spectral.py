import random

import pytest
from hypothesis import given, settings, strategies as st

from strebelgraph.constructors import build, build_three_pole
from strebelgraph.metric import uniform
from strebelgraph.ribbon import enumerate_small, from_vertices
from strebelgraph.spectral import (
    BranchPointError,
    cycle_holonomy,
    degeneracy_check,
    edge_signs,
    sector_positions,
)

ROSE = uniform(from_vertices([(0, 1, 2, 3)], [(0, 2), (1, 3)]), 1)
TANGENT = build_three_pole(1, 1, 2)[0]

EVEN = [uniform(g, 1) for e in (2, 3, 4) for g in enumerate_small(e)
        if all(len(c) % 2 == 0 and len(c) >= 4 for c in g.vertices)]


def _double_cover_components(mg, signs):
    # breadth-first search on the two sheets, independent of the union-find in the library
    g = mg.graph
    adj = {}
    for k, (h, hb) in enumerate(g.edges):
        u, v = g.vertex_of[h], g.vertex_of[hb]
        for s in (1, -1):
            adj.setdefault((u, s), []).append((v, s * signs[k]))
            adj.setdefault((v, s * signs[k]), []).append((u, s))
    nodes = {(c[0], s) for c in g.vertices for s in (1, -1)}
    seen, comps = set(), 0
    for start in sorted(nodes):
        if start in seen:
            continue
        comps += 1
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in adj.get(x, []):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return comps


def _random_closed_walk(mg, rng, max_len=30):
    g = mg.graph
    h = rng.randrange(g.half_edge_count)
    start = g.vertex_of[h]
    walk = [h]
    while len(walk) < max_len:
        here = g.vertex_of[g.alpha[walk[-1]]]
        if here == start and rng.random() < 0.3:
            return walk
        cycle = next(c for c in g.vertices if c[0] == here)
        walk.append(rng.choice(cycle))
    return None


def test_tangent_is_degenerate():
    cover = degeneracy_check(TANGENT)
    assert cover.degenerate and cover.component_count == 2
    assert set(cover.edge_signs.values()) == {1}


@pytest.mark.parametrize("a", [(1, 1, 1), (1, 1, 3), (2, 3, 4)])
def test_odd_valency_is_non_degenerate(a):
    cover = degeneracy_check(build_three_pole(*a)[0])
    assert not cover.degenerate and cover.branch_vertices and cover.component_count == 1


def test_interleaved_rose():
    assert sector_positions(ROSE.graph) == [0, 1, 2, 3]
    assert edge_signs(ROSE.graph) == {0: -1, 1: -1}
    cover = degeneracy_check(ROSE)
    assert not cover.degenerate and cover.component_count == 1
    assert cycle_holonomy(ROSE, [0]) == -1
    assert cycle_holonomy(ROSE, [1]) == -1


def test_tangent_loops_have_trivial_holonomy():
    g = TANGENT.graph
    for h, _ in g.edges:
        assert cycle_holonomy(TANGENT, [h]) == 1


def test_holonomy_errors():
    with pytest.raises(BranchPointError, match="holonomy undefined through branch points"):
        cycle_holonomy(build_three_pole(1, 1, 1)[0], [0])
    two_vertex = next(mg for mg in EVEN if mg.graph.num_vertices == 2)
    g = two_vertex.graph
    h = next(h for h in range(g.half_edge_count) if g.vertex_of[h] != g.vertex_of[g.alpha[h]])
    with pytest.raises(ValueError, match="not closed"):
        cycle_holonomy(two_vertex, [h])


def test_even_graph_corpus_is_nonempty():
    assert len(EVEN) >= 5
    assert any(mg.graph.num_vertices > 1 for mg in EVEN)


@pytest.mark.parametrize("idx", range(len(EVEN)))
def test_face_holonomy_trivial(idx):
    mg = EVEN[idx]
    for face in mg.labeled_faces:
        assert cycle_holonomy(mg, face.walk) == 1


@pytest.mark.parametrize("idx", range(len(EVEN)))
def test_components_match_independent_search(idx):
    mg = EVEN[idx]
    cover = degeneracy_check(mg)
    assert cover.component_count == _double_cover_components(mg, cover.edge_signs)


def test_gauge_step_flips_signs_at_vertex():
    mg = next(mg for mg in EVEN if mg.graph.num_vertices == 2)
    g = mg.graph
    v = g.vertices[0]
    base = edge_signs(g)
    shifted = edge_signs(g, {v[0]: v[1]})
    for k, (h, hb) in enumerate(g.edges):
        ends_at_v = (g.vertex_of[h] == v[0]) + (g.vertex_of[hb] == v[0])
        assert shifted[k] == base[k] * (-1) ** ends_at_v


@settings(max_examples=100, deadline=None)
@given(st.integers(0, len(EVEN) - 1), st.integers(0, 2 ** 31))
def test_gauge_invariance(idx, seed):
    rng = random.Random(seed)
    mg = EVEN[idx]
    origins = {c[0]: rng.choice(c) for c in mg.graph.vertices}
    ref, moved = degeneracy_check(mg), degeneracy_check(mg, origins)
    assert (ref.degenerate, ref.component_count) == (moved.degenerate, moved.component_count)
    for _ in range(5):
        walk = _random_closed_walk(mg, rng)
        if walk is not None:
            assert cycle_holonomy(mg, walk) == cycle_holonomy(mg, walk, origins)
            if ref.degenerate:
                assert cycle_holonomy(mg, walk) == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, len(EVEN)), st.randoms(use_true_random=False))
def test_relabel_invariance(idx, rng):
    mg = (EVEN + [TANGENT])[idx]
    perm = list(range(mg.graph.half_edge_count))
    rng.shuffle(perm)
    a, b = degeneracy_check(mg), degeneracy_check(mg.relabel(perm))
    assert (a.degenerate, a.component_count) == (b.degenerate, b.component_count)


def test_built_graphs_have_branch_points():
    mg, _ = build(1, [1, 2, 3])
    cover = degeneracy_check(mg)
    assert len(cover.branch_vertices) == mg.graph.num_vertices and not cover.degenerate


def test_to_dict_keys():
    d = degeneracy_check(TANGENT).to_dict()
    assert d["degenerate"] is True and d["components"] == 2
