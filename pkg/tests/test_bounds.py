import math

import networkx as nx
import pytest
from hypothesis import given, settings

from dissociation.bounds import (
    complement_free_upper,
    hoffman_type_upper,
    multipartite_relaxation,
    probabilistic_lower,
    residue_part,
    spectral_lower_from_excc,
)
from dissociation.constructions import cocktail_party
from dissociation.extremal import connected_tau_table
from dissociation.graph import Graph, GraphError
from dissociation.solvers import tau
from dissociation.spectral import spectral_radius

from conftest import from_nx, graphs


def test_petersen_regular_bound():
    g = from_nx(nx.petersen_graph())
    b = hoffman_type_upper(g)
    assert b.applicable
    assert b.details["lambda_min"] == pytest.approx(-2.0, abs=1e-9)
    assert b.value == pytest.approx(6.0, abs=1e-9)
    assert tau(g) <= b.value


@pytest.mark.parametrize("n", range(2, 9))
def test_regular_bound_is_tight_on_complete_graphs(n):
    assert hoffman_type_upper(Graph.complete(n)).value == pytest.approx(2.0, abs=1e-9)


def test_regular_bound_hypotheses():
    assert not hoffman_type_upper(Graph.path(4)).applicable
    assert not hoffman_type_upper(Graph.empty(3)).applicable
    assert hoffman_type_upper(Graph.path(4)).to_json()["value"] is None


def test_probabilistic_bound_on_complete_graph():
    # each of C(n,2) edges contributes 1 / ((2n-2)(n-1) - 1)
    n = 6
    b = probabilistic_lower(Graph.complete(n))
    total = (n * (n - 1) // 2) / ((2 * n - 2) * (n - 1) - 1)
    assert b.value == 2 * math.ceil(total)


def test_probabilistic_bound_hypotheses():
    with pytest.raises(ValueError):
        probabilistic_lower(Graph.empty(3))
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not probabilistic_lower(g).applicable


@settings(max_examples=150, deadline=None)
@given(graphs(min_n=2, max_n=10, connected=True))
def test_probabilistic_bound_never_exceeds_tau(g):
    assert probabilistic_lower(g).value <= tau(g)


@settings(max_examples=150, deadline=None)
@given(graphs(min_n=2, max_n=10))
def test_complement_free_bound_holds(g):
    for d in (4, 5, 6):
        b = complement_free_upper(g, d)
        if b.applicable:
            assert tau(g) <= b.value


def test_complement_free_bound_guards():
    with pytest.raises(ValueError):
        complement_free_upper(Graph.path(4), 2)
    with pytest.raises(ValueError):
        complement_free_upper(Graph.path(4), 3)
    assert not complement_free_upper(Graph.empty(4), 4).applicable
    assert complement_free_upper(cocktail_party(6), 4).applicable


@pytest.mark.parametrize("s,d,a", [(4, 1, 1), (5, 1, 2), (3, 2, 1), (5, 2, 3), (2, 0, 1), (7, 3, 4)])
def test_residue_part(s, d, a):
    assert residue_part(s, d) == a
    assert 1 <= a <= d + 1
    assert (a - (s + 1)) % (d + 1) == 0


def test_multipartite_relaxation_sums():
    for s in range(2, 10):
        for d in range(0, s):
            parts = multipartite_relaxation(s, d)
            assert sum(parts) == s + 1
            assert len(parts) == -(-(s + 1) // (d + 1))


@pytest.mark.parametrize("n,s,d", [(6, 3, 1), (7, 4, 1), (7, 4, 2)])
def test_excc_bound_holds_on_every_connected_graph(n, s, d):
    from dissociation.solvers import d_independence_number

    b = spectral_lower_from_excc(n, s, d)
    assert b.details["h_family_bound"] >= b.details["relaxation_bound"]
    for g, t in connected_tau_table(n):
        if d_independence_number(g, d).value == s:
            assert spectral_radius(g) >= b.value - 1e-9


def test_excc_bound_guards():
    with pytest.raises(ValueError):
        spectral_lower_from_excc(6, 1, 1)
    with pytest.raises(GraphError):
        spectral_lower_from_excc(10, 4, 1)
