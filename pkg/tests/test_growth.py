import pytest
from hypothesis import given, settings, strategies as st

from oracles import bfs_ball_sizes, bicyclic_ball, lattice_ball
from semitop.action import PartialAction, automorphism_group, regular_action
from semitop.complex import Edge, TwoComplex, action_graph, schutzenberger_graph
from semitop.fundamental import HypothesisNotMet
from semitop.green import green_relations, schutzenberger_group
from semitop.growth import (DIRECTED, UNDIRECTED, GrowthSeries, estimate_degree, graph_growth,
                            regular_growth_theorem_harness, reverse_constant, semigroup_growth,
                            verify_growth_equivalence)
from semitop.semigroup import Semigroup, enumerate_semigroup, parse_rees
from semitop.words import parse_presentation

from conftest import GROUPS, cyclic_presentation
from test_action import bicyclic_window, rank2

# a < A < b < B keeps the shortlex system finite
Z2 = "monoid\ngenerators: a A b B\na b = b a\na A = 1\nA a = 1\nb B = 1\nB b = 1\nA B = B A\na B = B a\nA b = b A"


def cycle(n):
    return TwoComplex(("a",), n, tuple(Edge(i, i, (i + 1) % n, 0) for i in range(n)))


def test_semigroup_growth_examples(bicyclic, t3):
    assert semigroup_growth(bicyclic, 4).values == [1, 3, 6, 10, 15]
    assert [len(bicyclic_ball(n)) for n in range(5)] == [1, 3, 6, 10, 15]
    free = Semigroup.from_presentation(parse_presentation("monoid\ngenerators: a b"))
    assert semigroup_growth(free, 3).values == [1, 3, 7, 15]
    g = semigroup_growth(t3, 10)
    assert g.values[0] == 0 and g.values[-1] == 27 and g.kind == "semigroup"


def test_growth_series_monotone():
    with pytest.raises(ValueError):
        GrowthSeries([1, 3, 2], "x")


def test_graph_growth_isolated_vertex():
    assert graph_growth(TwoComplex(("a",), 1, ()), 0, 4).values == [1] * 5


def test_bicyclic_ray(bicyclic_p):
    a = bicyclic_window(bicyclic_p, 30)
    for mode in (UNDIRECTED, DIRECTED):
        g = graph_growth(a, 0, 10, mode, safe_radius=29)
        assert g.values == [n + 1 for n in range(11)]
        assert g.exact_range == 10
    assert graph_growth(a, 0, 40, safe_radius=29).exact_range == 29


def test_z2_lattice_balls():
    s = Semigroup.from_presentation(parse_presentation(Z2))
    assert s.backend.exact
    enum = enumerate_semigroup(s, 8)
    a = PartialAction(s.alphabet, tuple(tuple(row[x] for row in enum.right) for x in range(4)))
    g = graph_growth(a, enum.identity_index, 8, UNDIRECTED)
    assert g.values == [2 * n * n + 2 * n + 1 for n in range(9)] == [lattice_ball(n) for n in range(9)]


def test_reverse_constants():
    loop = TwoComplex(("a",), 1, (Edge(0, 0, 0, 0),))
    assert reverse_constant(loop) == 1
    assert reverse_constant(cycle(5)) == 5
    s = Semigroup.from_presentation(cyclic_presentation(6))
    a = regular_action(green_relations(s))
    assert reverse_constant(action_graph(a), automorphism_group(a)) == 6


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_growth_equivalence_on_groups(name):
    s = Semigroup.from_presentation(parse_presentation(GROUPS[name][0]))
    a = regular_action(green_relations(s))
    g = action_graph(a)
    cmp = verify_growth_equivalence(g, 0, automorphism_group(a), 8, semigroup_growth(s, 8), True)
    assert cmp.ok, cmp.witness_failures


def test_growth_equivalence_single_vertex():
    k = TwoComplex(("a",), 1, (Edge(0, 0, 0, 0),))
    cmp = verify_growth_equivalence(k, 0, None, 5)
    assert cmp.ok and cmp.undirected.values == cmp.directed.values == [1] * 6


def test_growth_equivalence_t3_rank2(t3):
    green, r = rank2(t3)
    g = schutzenberger_graph(green, r)
    cmp = verify_growth_equivalence(g, 0, schutzenberger_group(green, r).permutations, 10,
                                    semigroup_growth(t3, 10))
    assert cmp.ok
    adj = [[] for _ in range(g.n_vertices)]
    for e in g.edges:
        adj[e.src].append(e.dst)
        adj[e.dst].append(e.src)
    assert cmp.undirected.values == bfs_ball_sizes(adj, 0, 10)


def test_degree_examples():
    quad = [(n + 1) * (n + 2) // 2 for n in range(65)]
    assert abs(estimate_degree(quad, (8, 64)).degree - 2) < 0.15
    assert abs(estimate_degree([7] * 65, (8, 64)).degree) < 1e-9
    exp = estimate_degree([2 ** n for n in range(21)], (8, 20))
    assert exp.superpolynomial
    assert not estimate_degree(quad, (8, 64)).superpolynomial
    with pytest.raises(ValueError):
        estimate_degree(quad, (8, 10))


@settings(max_examples=40)
@given(st.integers(0, 4), st.integers(1, 9), st.lists(st.integers(0, 9), min_size=4, max_size=4))
def test_degree_calibration(d, lead, lower):
    # lead n^d plus non-negative lower-order terms
    coeffs = [lead] + lower[:d]
    series = [sum(c * n ** (d - k) for k, c in enumerate(coeffs)) for n in range(65)]
    assert abs(estimate_degree(series, (8, 64)).degree - d) < 0.15


def test_harness_t3(t3):
    rep = regular_growth_theorem_harness(t3, 8)
    assert rep.ok and rep.lhs.values[-1] == 27
    assert len(rep.representatives) == 5


def test_harness_refuses_non_regular():
    s = Semigroup.from_presentation(parse_presentation("semigroup\ngenerators: a\na a a a a = a a a"))
    with pytest.raises(HypothesisNotMet, match="not regular"):
        regular_growth_theorem_harness(s, 5)


def test_harness_rees(data_dir):
    s = parse_rees((data_dir / "rees1.rees").read_text())
    rep = regular_growth_theorem_harness(s, 12)
    assert rep.ok
    assert abs(rep.lhs_degree.degree - 1) < 0.3
