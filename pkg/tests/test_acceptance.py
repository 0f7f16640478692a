"""One test per acceptance criterion. Each prints a PASS/FAIL line, and the
lines are repeated in the pytest terminal summary."""
import json
import math
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

import dissociation.constructions as cons
from dissociation.extremal import FamilySpec, canonical_code, emin_search, ex_bruteforce, predicted_join_edges, rhomin_search
from dissociation.graph import Graph, complement, kelmans
from dissociation.spectral import (
    char_poly,
    cp_cycle_rho_bound,
    cp_cycle_rho_closed_form,
    largest_root,
    quotient,
    quotient_rho,
    spectral_radius,
)
from dissociation.verify import verify

from conftest import ACCEPTANCE_LINES

TOL = 1e-9
MARGIN = 1e-7
L5 = FamilySpec.odd_cocktail(5)


@contextmanager
def criterion(label: str):
    notes: list[str] = []
    ok = False
    try:
        yield notes
        ok = True
    finally:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {label}" + (f"  ({'; '.join(notes)})" if notes else "")
        ACCEPTANCE_LINES.append(line)
        print(line)


def _codes(graphs):
    return {canonical_code(g) for g in graphs}


def test_criterion_01_turan_values():
    with criterion("1: ex(n, L5) and extremal families, n = 5..8") as notes:
        expected = {5: 8, 6: 11, 7: 15, 8: 20}
        classes = {5: 1, 6: 2, 7: 1, 8: 1}
        for n in (5, 6, 7):
            res = ex_bruteforce(n, L5)
            assert res.value == expected[n]
            assert set(res.witnesses) == _codes(cons.turan_family(n, 2))
            assert len(res.witnesses) == classes[n]
        start = time.perf_counter()
        res = ex_bruteforce(8, L5, jobs=4)
        elapsed = time.perf_counter() - start
        notes.append(f"n=8 took {elapsed:.1f}s with 4 workers")
        assert res.value == expected[8]
        assert set(res.witnesses) == _codes(cons.turan_family(8, 2))
        assert len(res.witnesses) == classes[8]
        assert elapsed <= 300


def test_criterion_02_edge_minimizers():
    with criterion("2: emin(n, 4) = C(n,2) - ex(n, L5) + 1, n = 6..9") as notes:
        for n in range(6, 10):
            ex = ex_bruteforce(n, L5).value
            res = emin_search(n, 4)
            notes.append(f"n={n}: {res.value}")
            assert res.value == n * (n - 1) // 2 - ex + 1
            if n in (8, 9):
                assert set(res.witnesses) == _codes(cons.minimizer_family(n, 2))


@pytest.mark.xfail(strict=True, reason="the listed value 12 disagrees with the formula it is stated with (36 - 24 + 1 = 13)")
def test_criterion_02_listed_value_at_nine():
    observed = emin_search(9, 4).value
    ACCEPTANCE_LINES.append(f"[FAIL] criterion 2 listed value: emin(9, 4) listed as 12, observed {observed} (kept as strict xfail)")
    assert observed == 12


def test_criterion_03_spectral_minimizers():
    with criterion("3: unique spectral minimizers in D(n, 4), n = 5..8") as notes:
        wanted = {5: Graph.path(5), 6: Graph.path(6), 7: Graph.cycle(7), 8: cons.hat_minimizer_4(8)}
        for n, g in wanted.items():
            res = rhomin_search(n, 4)
            assert not res.warn
            assert list(res.witnesses) == [canonical_code(g)]
            notes.append(f"n={n}: {res.value:.9f}")
        assert rhomin_search(5, 4).value == pytest.approx(math.sqrt(3), abs=TOL)
        assert rhomin_search(7, 4).value == pytest.approx(2.0, abs=TOL)
        root = largest_root([1, -1, -4, 2])
        assert abs(root - rhomin_search(8, 4).value) <= TOL


def _zero_mod_four(n):
    h = n // 2
    return [[0, 0, h - 2], [0, 1, h - 2], [1, 1, h - 4]], [1, 3 - h, -h, h - 2]


def _two_mod_four(n):
    h = n // 2
    return ([[0, 0, 1, h - 3], [0, 1, 1, h - 3], [1, 1, 0, h - 3], [1, 1, 1, h - 5]],
            [1, 4 - h, 2 - n, -3, h - 1])


def test_criterion_04_quotients():
    with criterion("4: equitable quotients and polynomials for n = 8, 12, 16, 10, 14"):
        for n in (8, 12, 16, 10, 14):
            c = cons.build_hat_minimizer_4(n)
            matrix, poly = _zero_mod_four(n) if n % 4 == 0 else _two_mod_four(n)
            q = quotient(c.graph, c.landmarks["partition"])
            assert q.equitable
            assert q.as_ints() == matrix
            assert list(char_poly(q).coeffs) == poly
            rho = spectral_radius(c.graph)
            assert abs(quotient_rho(q) - rho) <= TOL
            assert abs(largest_root(poly) - rho) <= TOL


def test_criterion_05_cp_cycle_closed_form():
    with criterion("5: aligned CP-cycle radius and upper bound") as notes:
        for k, m in [(3, 4), (3, 6), (4, 4), (5, 4)]:
            rho = spectral_radius(cons.cp_cycle(k, m))
            closed = (m - 3 + math.sqrt((m - 1) ** 2 + 8)) / 2
            assert abs(rho - closed) <= TOL
            assert abs(cp_cycle_rho_closed_form(m) - closed) <= 1e-15
            n = k * m
            assert rho < m - 2 + 2 * k / (n - k)
            assert cp_cycle_rho_bound(n, k) == pytest.approx(m - 2 + 2 * k / (n - k))
            notes.append(f"({k},{m}): {rho:.6f}")


def test_criterion_06_lemma_and_gadget_suite():
    with criterion("6: degree criterion, connector swap, aligned cycles, gadgets") as notes:
        for tid, params in [("L3.2", {"k": [2]}), ("L7.2", None), ("L7.4", None), ("P7.7", None)]:
            report = verify(tid, params)
            notes.append(f"{tid} {report.verdict}")
            assert report.verdict == "PASS", report.notes
        assert verify("L3.2", {"k": [2]}).observed["k=2"]["classes"] == 34
        for m in (4, 6):
            closed = cp_cycle_rho_closed_form(m)
            for kind in cons.GADGET_KINDS:
                assert spectral_radius(cons.connector_gadget(kind, m)) > closed + MARGIN


def test_criterion_07_bounds_suite():
    with criterion("7: regular and edge-sum bounds, complement lemmas, trees") as notes:
        for tid in ("P9.2", "P9.3", "L2.1", "L2.2", "P4.4"):
            report = verify(tid)
            notes.append(f"{tid} {report.verdict}")
            assert report.verdict == "PASS", report.notes


def _random_connected(rng: random.Random, n: int) -> Graph:
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    p = rng.random()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def test_criterion_08_kelmans():
    with criterion("8: Kelmans operation never lowers the radius (10^4 triples)") as notes:
        rng = random.Random(20251017)
        worst = math.inf
        for _ in range(10_000):
            g = _random_connected(rng, rng.randint(3, 10))
            u, v = rng.sample(range(g.n), 2)
            diff = spectral_radius(kelmans(g, u, v)) - spectral_radius(g)
            worst = min(worst, diff)
            assert diff >= -TOL
        notes.append(f"smallest change {worst:.3e}")


def test_criterion_09_connected_complement_consistency():
    with criterion("9: ex_cc, randomized joins, bipartite bound, join prediction") as notes:
        for n in (8, 9):
            ex = ex_bruteforce(n, L5).value
            cc = ex_bruteforce(n, L5, connected_complement=True)
            assert cc.value == ex - 1
            assert _codes(complement(g) for g in cc.graphs()) <= _codes(cons.minimizer_family(n, 2))
            notes.append(f"ex_cc({n})={cc.value}")
        for tid in ("L6.1", "L6.6"):
            report = verify(tid)
            notes.append(f"{tid} {report.verdict}")
            assert report.verdict == "PASS", report.notes
        assert predicted_join_edges([3, 3], 1, 2) == ex_bruteforce(6, L5).value
        assert predicted_join_edges([4, 4], 1, 2) == ex_bruteforce(8, L5).value


def test_criterion_10_full_registry():
    with criterion("10: verify all --max-n 8") as notes:
        start = time.perf_counter()
        proc = subprocess.run(
            [sys.executable, "-m", "dissociation.cli", "verify", "all", "--max-n", "8", "--jobs", "4"],
            capture_output=True, text=True, timeout=1800,
        )
        elapsed = time.perf_counter() - start
        reports = [json.loads(line)["results"] for line in proc.stdout.splitlines() if line.strip()]
        failed = [r["theorem_id"] for r in reports if r["verdict"] == "FAIL"]
        notes.append(f"{len(reports)} checks in {elapsed:.0f}s, exit {proc.returncode}")
        if failed:
            notes.append("failed: " + ", ".join(failed))
        assert len(reports) == 28
        assert elapsed <= 1800
        assert proc.returncode == 0
