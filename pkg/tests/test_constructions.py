from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import dissociation.constructions as cons
from dissociation.graph import GraphError, complement, is_isomorphic
from dissociation.solvers import d_independence_number, tau
from dissociation.spectral import is_equitable, spectral_radius

from conftest import to_nx


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_cocktail_party_is_regular(d):
    g = cons.cocktail_party(d)
    assert g.is_regular() and g.degree(0) == d - 2
    assert g.num_edges() == d * (d - 2) // 2


@pytest.mark.parametrize("d", [3, 5, 7, 9])
def test_odd_cocktail_party_has_an_apex(d):
    g = cons.odd_cocktail_party(d)
    assert g.degree(d - 1) == d - 1
    assert is_isomorphic(g.induced(list(range(d - 1))), cons.cocktail_party(d - 1))


def test_complete_multipartite_matches_networkx():
    g = cons.complete_multipartite([1, 2, 3])
    assert nx.is_isomorphic(to_nx(g), nx.complete_multipartite_graph(1, 2, 3))


@pytest.mark.parametrize("n,k,expected", [
    (5, 2, [(2, 3)]),
    (6, 2, [(2, 4), (3, 3)]),
    (8, 2, [(4, 4)]),
    (9, 3, [(2, 3, 4), (3, 3, 3)]),
    (10, 3, [(2, 4, 4), (3, 3, 4)]),
])
def test_valid_part_sizes(n, k, expected):
    assert cons.valid_part_sizes(n, k) == expected


@pytest.mark.parametrize("n,k", [(5, 2), (6, 2), (7, 2), (8, 2), (7, 3), (9, 3)])
def test_turan_family_members_are_free_and_maximal(n, k):
    pattern = to_nx(cons.odd_cocktail_party(2 * k + 1))
    for g in cons.turan_family(n, k):
        host = to_nx(g)
        assert not nx.algorithms.isomorphism.GraphMatcher(host, pattern).subgraph_is_monomorphic()
        for u, v in complement(g).edges():
            bigger = to_nx(g.add_edge(u, v))
            assert nx.algorithms.isomorphism.GraphMatcher(bigger, pattern).subgraph_is_monomorphic()


def test_turan_family_edges_equal_across_members():
    members = cons.turan_family(10, 3)
    assert len({g.num_edges() for g in members}) == 1
    assert cons.turan_family_edges(10, 3) == members[0].num_edges()


@pytest.mark.parametrize("n,k", [(6, 2), (7, 2), (8, 2), (9, 3), (10, 3)])
def test_minimizer_family_shape(n, k):
    members = cons.minimizer_family(n, k)
    assert members
    pairs = n * (n - 1) // 2
    for g in members:
        assert g.is_connected()
        assert tau(g) == 2 * k
        assert g.num_edges() == pairs - cons.turan_family_edges(n, k) + k - 1
    for g, h in combinations(members, 2):
        assert not is_isomorphic(g, h)


def test_minimizer_family_representatives_are_members():
    full = cons.minimizer_family(9, 2)
    reps = cons.minimizer_family(9, 2, representative_only=True)
    for r in reps:
        assert any(is_isomorphic(r, g) for g in full)


@pytest.mark.parametrize("n", range(8, 17))
def test_hat_minimizer(n):
    c = cons.build_hat_minimizer_4(n)
    g = c.graph
    assert g.n == n and g.is_connected() and tau(g) == 4
    assert sorted(len(b) for b in c.landmarks["blocks"]) == sorted(cons.hat_block_sizes(n))
    if n % 4 in (0, 2):
        assert is_equitable(g, c.landmarks["partition"])


def test_hat_needs_eight_vertices():
    with pytest.raises(ValueError):
        cons.build_hat_minimizer_4(7)


def test_two_block_endpoints():
    g = cons.two_block_graph(5, 4, 4, 0)
    assert g.has_edge(4, 5)
    assert g.num_edges() == cons.cocktail_block(5).num_edges() + cons.cocktail_block(4).num_edges() + 1


@pytest.mark.parametrize("l,m", [(2, 4), (3, 4), (3, 6), (4, 6)])
def test_cp_cycle_and_path(l, m):
    cyc = cons.build_cp_cycle(l, m)
    path = cons.build_cp_path(l, m)
    assert cyc.graph.n == l * m == path.graph.n
    assert cyc.graph.num_edges() == path.graph.num_edges() + 1
    assert cyc.graph.is_connected() and path.graph.is_connected()
    assert is_equitable(cyc.graph, cons.cp_cycle_partition(l, m))
    for u, v in zip(cyc.landmarks["u"], cyc.landmarks["v"]):
        assert not cyc.graph.has_edge(u, v)


def test_connector_validation():
    with pytest.raises(ValueError):
        cons.cp_cycle(2, 4, cons.ConnectorSpec(((0, 2), (0, 1)), aligned=True))
    with pytest.raises(ValueError):
        cons.cp_cycle(2, 4, cons.ConnectorSpec(((0, 1),)))
    with pytest.raises(ValueError):
        cons.cp_cycle(2, 5)
    with pytest.raises(GraphError):
        cons.cp_cycle(20, 4)


@pytest.mark.parametrize("kind", cons.GADGET_KINDS)
@pytest.mark.parametrize("m", [4, 6, 8])
def test_gadgets(kind, m):
    c = cons.build_connector_gadget(kind, m)
    g = c.graph
    assert g.n == 5 * m and g.is_connected()
    assert g.num_edges() == 5 * cons.cocktail_party(m).num_edges() + 4
    if kind != "fig9":
        assert is_equitable(g, c.landmarks["partition"])
    else:
        assert not is_equitable(g, c.landmarks["partition"])


def test_unknown_gadget():
    with pytest.raises(ValueError):
        cons.build_connector_gadget("fig1", 4)


@pytest.mark.parametrize("s,d", [(4, 1), (5, 2), (6, 3), (7, 4), (8, 3)])
def test_circulant_is_regular(s, d):
    g = cons.circulant_regular(s, d)
    assert g.is_regular() and g.degree(0) == d


def test_circulant_rejects_odd_product():
    with pytest.raises(ValueError):
        cons.circulant_regular(5, 3)


@pytest.mark.parametrize("n,s,d", [(7, 4, 1), (6, 4, 2), (7, 5, 2), (8, 6, 1), (9, 5, 4)])
def test_spectral_maximizer_has_the_target_value(n, s, d):
    assert d_independence_number(cons.spectral_maximizer(n, s, d), d).value == s


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.sampled_from([4, 6]), st.randoms(use_true_random=False))
def test_misaligned_cycles_are_not_smaller(l, m, rnd):
    pairs = []
    for _ in range(l):
        u, v = rnd.sample(range(m), 2)
        pairs.append((u, v))
    g = cons.cp_cycle(l, m, cons.ConnectorSpec(tuple(pairs), aligned=False))
    assert spectral_radius(g) >= spectral_radius(cons.cp_cycle(l, m)) - 1e-9
