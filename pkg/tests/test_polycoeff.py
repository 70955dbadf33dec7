import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from alontarsi import polycoeff as pc
from alontarsi.checks import compositions
from alontarsi.eisenstein import OMEGA, OMEGA2, ONE, EisensteinInt
from alontarsi.graphs import Graph, make_complete, make_cycle, make_torus


def k2():
    return Graph.from_edges(2, [(0, 1)])


# (x0 - x1)(x0 - x2)(x1 - x2) multiplied out by hand
C3_BY_HAND = {
    (2, 1, 0): 1,
    (2, 0, 1): -1,
    (1, 0, 2): 1,
    (1, 2, 0): -1,
    (0, 2, 1): 1,
    (0, 1, 2): -1,
}


def test_expand_c3_matches_hand_expansion():
    assert pc.expand(make_cycle(3)) == C3_BY_HAND


def test_expand_k2():
    assert pc.expand(k2()) == {(1, 0): 1, (0, 1): -1}


def test_c4_all_ones():
    # two indegree-1 orientations (the cyclic ones), each with three ascending arcs or one: both sign -1
    assert pc.coefficient_of(make_cycle(4), (1, 1, 1, 1)) == -2


@pytest.mark.parametrize("name", ["C3", "C4", "C5", "K4", "K23"])
def test_expand_matches_literal_enumeration(small_graphs, name):
    g = small_graphs[name]
    assert pc.expand(g) == pc.brute_expand(g)


@pytest.mark.parametrize("name", ["C4", "C5", "K4", "K23"])
def test_coefficient_of_matches_table(small_graphs, name):
    g = small_graphs[name]
    table = pc.brute_expand(g)
    for t in product(range(g.m + 1), repeat=g.n):
        if sum(t) == g.m:
            assert pc.coefficient_of(g, t) == table.get(t, 0)
            assert pc.brute_coefficient(g, t) == table.get(t, 0)


def test_coefficient_of_examples():
    c3 = make_cycle(3)
    assert pc.coefficient_of(c3, (2, 1, 0)) == 1
    assert pc.coefficient_of(c3, (1, 1, 1)) == 0
    assert pc.coefficient_of(c3, (2, 2, 0)) == 0  # wrong degree
    c4 = make_cycle(4)
    want = pc.coefficient_of(c4, (2, 2, 0, 0))
    assert want == pc.brute_expand(c4).get((2, 2, 0, 0), 0)
    assert pc.coefficient_formula(c4, (2, 2, 0, 0), [[0, 1, 2], [0, 1, 2], [0], [0]]) == want


@pytest.mark.parametrize("cap", [0, 1, 2, 3])
@pytest.mark.parametrize("name", ["C4", "C5", "K4"])
def test_cap_keeps_exactly_the_small_monomials(small_graphs, name, cap):
    g = small_graphs[name]
    full = pc.expand(g)
    assert pc.expand(g, cap) == {t: c for t, c in full.items() if max(t) <= cap}


@pytest.mark.parametrize("name", ["C3", "C4", "C5", "K4", "K23"])
def test_homogeneity_and_l1_bound(small_graphs, name):
    g = small_graphs[name]
    table = pc.expand(g)
    assert all(sum(t) == g.m for t in table)
    assert all(c != 0 for c in table.values())
    assert sum(abs(c) for c in table.values()) <= 2**g.m


def test_homogeneity_torus(t33):
    assert all(sum(t) == t33.m for t in pc.expand(t33, 3))


@pytest.mark.parametrize("name", ["C3", "C4", "C5", "K4", "K23"])
def test_table_evaluates_like_product(small_graphs, name):
    g = small_graphs[name]
    table = pc.expand(g)
    rng = random.Random(name)
    for _ in range(100):
        point = [rng.randint(-20, 20) for _ in range(g.n)]
        assert pc.evaluate_table(table, point) == pc.evaluate(g, point)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_nonzero_exactly_on_proper_colorings(n):
    g = make_cycle(n)
    for point in product(range(3), repeat=n):
        assert (pc.evaluate(g, point) != 0) == g.is_proper(point)


def test_weight_N():
    assert pc.weight_N((1, 1), [{0, 1}, {0, 1}]) == 1
    assert pc.weight_N((0,), [[0, 1, 2]]) == 2
    assert pc.weight_N((OMEGA,), [[ONE, OMEGA, OMEGA2]]) == (OMEGA - ONE) * (OMEGA - OMEGA2)
    with pytest.raises(pc.MembershipError):
        pc.weight_N((5,), [[0, 1]])


def test_coefficient_formula_examples():
    assert pc.coefficient_formula(k2(), (1, 0), [[0, 1], [0]]) == 1
    c3 = make_cycle(3)
    assert pc.coefficient_formula(c3, (2, 1, 0), [[0, 1, 2], [0, 1], [0]]) == 1
    assert pc.coefficient_formula(c3, (1, 1, 1), [[0, 5], [2, 3], [-1, 4]]) == 0
    with pytest.raises(pc.SetSizeError):
        pc.coefficient_formula(c3, (1, 1, 1), [[0], [2, 3], [-1, 4]])


@pytest.mark.parametrize("name", ["C3", "C4", "K4"])
def test_formula_equals_expansion_on_every_monomial(small_graphs, name):
    g = small_graphs[name]
    rng = random.Random(name)
    table = pc.expand(g)
    for t in compositions(g.m, g.n):
        sets = [rng.sample(range(-7, 8), ti + 1) for ti in t]
        assert pc.coefficient_formula(g, t, sets) == table.get(t, 0)


def test_formula_on_higher_degree_target_is_zero():
    c3 = make_cycle(3)
    assert pc.coefficient_formula(c3, (2, 2, 0), [[0, 1, 2], [3, 4, 5], [7]]) == 0


@pytest.mark.parametrize("shape, want", [((3, 3), 0), ((3, 4), -36)])
def test_formula_on_torus_all_twos(shape, want):
    g = make_torus(shape)
    t = (2,) * g.n
    assert pc.coefficient_of(g, t) == want
    assert pc.coefficient_formula(g, t, [[0, 1, 2]] * g.n) == want
    assert pc.coefficient_formula(g, t, pc.cube_root_sets(g.n)) == EisensteinInt(want, 0)


def test_alon_tarsi_number_examples(t33):
    assert pc.alon_tarsi_number(make_cycle(4)) == (2, (1, 1, 1, 1), -2)
    k, t, c = pc.alon_tarsi_number(make_cycle(5))
    assert k == 3 and max(t) <= 2 and c == pc.coefficient_of(make_cycle(5), t) != 0
    k, t, c = pc.alon_tarsi_number(t33)
    assert k == 4 and max(t) == 3 and pc.coefficient_of(t33, t) == c != 0
    assert pc.alon_tarsi_number(Graph(3, ())) == (1, (0, 0, 0), 1)


@pytest.mark.parametrize("g", [make_complete(5), make_torus((3, 3))])
def test_four_regular_pigeonhole(g):
    assert pc.alon_tarsi_number(g)[0] >= 3


def test_cn_point_search_examples():
    c3 = make_cycle(3)
    p = pc.cn_point_search(c3, (2, 1, 0), [[0, 1, 2], [0, 1], [0]])
    assert p is not None and c3.is_proper(p)
    assert pc.cn_point_search(k2(), (1, 0), [[0, 1], [0]]) == (1, 0)
    c5 = make_cycle(5)
    _, t, _ = pc.alon_tarsi_number(c5)
    p = pc.cn_point_search(c5, t, [[0, 1, 2]] * 5)
    assert p is not None and c5.is_proper(p)
    with pytest.raises(pc.SetSizeError):
        pc.cn_point_search(c3, (2, 1, 0), [[0, 1], [0, 1], [0]])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_nullstellensatz_property(data):
    n = data.draw(st.integers(2, 5))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(pairs), min_size=1, unique=True))
    g = Graph.from_edges(n, edges)
    table = pc.expand(g)
    t = data.draw(st.sampled_from(sorted(table)))
    sets = [data.draw(st.lists(st.integers(-10, 10), min_size=ti + 1, max_size=ti + 3, unique=True)) for ti in t]
    p = pc.cn_point_search(g, t, sets)
    assert p is not None and pc.evaluate(g, p) != 0


def test_guards():
    g = make_torus((3, 5))
    with pytest.raises(pc.SizeGuardError):
        pc.expand(g)
    assert pc.coefficient_of(g, (2,) * g.n, max_edges=30) == 0


def test_jsonl_round_trip():
    table = pc.expand(make_complete(4))
    assert pc.table_from_jsonl(pc.table_to_jsonl(table)) == table
