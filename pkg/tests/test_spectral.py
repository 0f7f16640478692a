import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dissociation.constructions import cp_cycle, cp_cycle_partition
from dissociation.graph import Graph, GraphError, automorphism_orbits
from dissociation.spectral import (
    char_poly,
    cp_cycle_rho_bound,
    cp_cycle_rho_closed_form,
    eigenvalues,
    is_equitable,
    largest_root,
    poly_eval,
    quotient,
    quotient_rho,
    spectral_radius,
    spectrum,
    sturm_sequence,
    symmetric_eigen,
)

from conftest import graphs


def test_known_radii():
    assert spectral_radius(Graph.complete(4)) == pytest.approx(3.0, abs=1e-12)
    assert spectral_radius(Graph.path(5)) == pytest.approx(math.sqrt(3), abs=1e-12)
    assert spectral_radius(Graph.cycle(7)) == pytest.approx(2.0, abs=1e-12)
    assert spectral_radius(Graph.empty(3)) == 0.0


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=14))
def test_eigenvalues_match_numpy(g):
    ours = eigenvalues(g)
    theirs = np.linalg.eigvalsh(np.array(g.adjacency_matrix(), dtype=float))
    assert np.allclose(ours, theirs, atol=1e-9)


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=1, max_n=12))
def test_spectrum_residual_and_perron_vector(g):
    s = spectrum(g)
    assert s.residual < 1e-9
    assert s.lambda_min <= s.rho
    assert abs(sum(x * x for x in s.principal_vector) - 1) < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.floats(-5, 5), min_size=6, max_size=6), min_size=6, max_size=6))
def test_symmetric_eigen_decomposition(rows):
    a = np.array(rows)
    a = (a + a.T) / 2
    values, vecs = symmetric_eigen(a.tolist())
    v = np.array(vecs)
    assert np.allclose(v @ np.diag(values) @ v.T, a, atol=1e-8)
    assert np.allclose(values, np.linalg.eigvalsh(a), atol=1e-9)


def test_symmetric_eigen_rejects_asymmetric():
    with pytest.raises(ValueError):
        symmetric_eigen([[0, 1], [0, 0]])


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6).flatmap(lambda k: st.lists(
    st.lists(st.integers(-4, 6), min_size=k, max_size=k), min_size=k, max_size=k)))
def test_char_poly_matches_sympy(rows):
    x = sympy.Symbol("x")
    expected = [int(c) for c in sympy.Matrix(rows).charpoly(x).all_coeffs()]
    assert list(char_poly(rows).coeffs) == expected


def test_char_poly_fraction_mode():
    rows = [[Fraction(1, 2), 1], [1, 0]]
    with pytest.raises(ValueError):
        char_poly(rows)
    assert char_poly(rows, strict=False).coeffs == (1, Fraction(-1, 2), -1)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=2, max_size=6))
def test_largest_root_matches_numpy(roots):
    coeffs = [int(c) for c in np.poly(roots).round()]
    assert largest_root(coeffs) == pytest.approx(max(roots), abs=1e-9)


def test_largest_root_handles_repeated_and_missing_roots():
    assert largest_root([1, -4, 4]) == pytest.approx(2.0, abs=1e-9)
    with pytest.raises(ValueError):
        largest_root([1, 0, 1])
    assert largest_root([1, -1, -4, 2]) == pytest.approx(max(np.roots([1, -1, -4, 2]).real), abs=1e-9)


@pytest.mark.parametrize("roots", [[-2, -1, 1, 2], [0, 0, 3], [1, 1, 1, -4], [5]])
def test_sturm_sequence_counts_distinct_roots(roots):
    coeffs = [int(c) for c in np.poly(roots).round()]
    seq = sturm_sequence(coeffs)

    def changes(x):
        signs = [v > 0 for v in (poly_eval(p, Fraction(x)) for p in seq) if v != 0]
        return sum(a != b for a, b in zip(signs, signs[1:]))

    assert changes(-100) - changes(100) == len(set(roots))


def test_quotient_of_regular_graph():
    q = quotient(Graph.cycle(6), [list(range(6))])
    assert q.as_ints() == [[2]]
    assert quotient_rho(q) == pytest.approx(2.0)


def test_quotient_strictness():
    g = Graph.path(4)
    parts = [[0, 1], [2, 3]]
    assert not is_equitable(g, parts)
    with pytest.raises(GraphError):
        quotient(g, parts)
    lenient = quotient(g, parts, strict=False)
    assert lenient.matrix == ((Fraction(1), Fraction(1, 2)), (Fraction(1, 2), Fraction(1)))
    with pytest.raises(GraphError):
        quotient_rho(lenient)
    with pytest.raises(GraphError):
        quotient(g, [[0, 1], [1, 2, 3]])
    with pytest.raises(GraphError):
        quotient(g, [[0, 1], [2]])


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=10))
def test_orbit_partition_keeps_the_radius(g):
    orbit = automorphism_orbits(g)
    parts = [[v for v in range(g.n) if orbit[v] == label] for label in sorted(set(orbit))]
    assert is_equitable(g, parts)
    q = quotient(g, parts)
    assert quotient_rho(q) == pytest.approx(spectral_radius(g), abs=1e-9)


@pytest.mark.parametrize("l,m", [(3, 4), (3, 6), (4, 4), (5, 4), (2, 8)])
def test_cp_cycle_quotient_and_closed_form(l, m):
    g = cp_cycle(l, m)
    q = quotient(g, cp_cycle_partition(l, m))
    assert q.as_ints() == [[1, m - 2], [2, m - 4]]
    rho = spectral_radius(g)
    assert quotient_rho(q) == pytest.approx(rho, abs=1e-9)
    assert largest_root(char_poly(q)) == pytest.approx(rho, abs=1e-9)
    assert cp_cycle_rho_closed_form(m) == pytest.approx(rho, abs=1e-9)
    assert rho < cp_cycle_rho_bound(l * m, l)


def test_closed_form_guards():
    with pytest.raises(ValueError):
        cp_cycle_rho_closed_form(3)
    with pytest.raises(ValueError):
        cp_cycle_rho_bound(3, 3)
