"""Adjacency spectra, equitable partitions and exact characteristic polynomials.

The eigensolver is a Householder reduction to tridiagonal form followed by the
implicit-shift QL iteration, written in plain Python floats so the result is
reproducible bit for bit on a given platform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import Graph, GraphError, bit_list

EPS = 2.0 ** -52
COMPARE_TOL = 1e-9
STRICT_MARGIN = 1e-7
ROOT_TOL = 1e-12


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    rho: float
    lambda_min: float
    principal_vector: tuple[float, ...]
    residual: float


def _tridiagonalize(a: list[list[float]], vectors: bool) -> tuple[list[float], list[float], list[list[float]]]:
    """Householder reduction of a symmetric matrix; returns diagonal, off-diagonal
    and (optionally) the accumulated orthogonal transform."""
    n = len(a)
    v = [row[:] for row in a]
    d = v[n - 1][:]
    e = [0.0] * n
    for i in range(n - 1, 0, -1):
        scale = 0.0
        h = 0.0
        for k in range(i):
            scale += abs(d[k])
        if scale == 0.0:
            e[i] = d[i - 1]
            for j in range(i):
                d[j] = v[i - 1][j]
                v[i][j] = 0.0
                v[j][i] = 0.0
        else:
            for k in range(i):
                d[k] /= scale
                h += d[k] * d[k]
            f = d[i - 1]
            g = math.sqrt(h)
            if f > 0:
                g = -g
            e[i] = scale * g
            h -= f * g
            d[i - 1] = f - g
            for j in range(i):
                e[j] = 0.0
            for j in range(i):
                f = d[j]
                v[j][i] = f
                g = e[j] + v[j][j] * f
                for k in range(j + 1, i):
                    g += v[k][j] * d[k]
                    e[k] += v[k][j] * f
                e[j] = g
            f = 0.0
            for j in range(i):
                e[j] /= h
                f += e[j] * d[j]
            hh = f / (h + h)
            for j in range(i):
                e[j] -= hh * d[j]
            for j in range(i):
                f = d[j]
                g = e[j]
                for k in range(j, i):
                    v[k][j] -= f * e[k] + g * d[k]
                d[j] = v[i - 1][j]
                v[i][j] = 0.0
        d[i] = h
    if vectors:
        for i in range(n - 1):
            v[n - 1][i] = v[i][i]
            v[i][i] = 1.0
            h = d[i + 1]
            if h != 0.0:
                for k in range(i + 1):
                    d[k] = v[k][i + 1] / h
                for j in range(i + 1):
                    g = 0.0
                    for k in range(i + 1):
                        g += v[k][i + 1] * v[k][j]
                    for k in range(i + 1):
                        v[k][j] -= g * d[k]
            for k in range(i + 1):
                v[k][i + 1] = 0.0
        for j in range(n):
            d[j] = v[n - 1][j]
            v[n - 1][j] = 0.0
        v[n - 1][n - 1] = 1.0
    else:
        d = [v[j][j] for j in range(n)]
    e[0] = 0.0
    return d, e, v


def _ql_implicit(d: list[float], e: list[float], v: list[list[float]] | None) -> None:
    """Diagonalize a symmetric tridiagonal matrix in place (values in d, vectors in v)."""
    n = len(d)
    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0
    f = 0.0
    tst1 = 0.0
    for l in range(n):
        tst1 = max(tst1, abs(d[l]) + abs(e[l]))
        m = l
        while m < n:
            if abs(e[m]) <= EPS * tst1:
                break
            m += 1
        if m > l:
            for _ in range(200):
                g = d[l]
                p = (d[l + 1] - g) / (2.0 * e[l])
                r = math.hypot(p, 1.0)
                if p < 0:
                    r = -r
                d[l] = e[l] / (p + r)
                d[l + 1] = e[l] * (p + r)
                dl1 = d[l + 1]
                h = g - d[l]
                for i in range(l + 2, n):
                    d[i] -= h
                f += h
                p = d[m]
                c = c2 = c3 = 1.0
                el1 = e[l + 1]
                s = s2 = 0.0
                for i in range(m - 1, l - 1, -1):
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * e[i]
                    h = c * p
                    r = math.hypot(p, e[i])
                    e[i + 1] = s * r
                    s = e[i] / r
                    c = p / r
                    p = c * d[i] - s * g
                    d[i + 1] = h + s * (c * g + s * d[i])
                    if v is not None:
                        for row in v:
                            h = row[i + 1]
                            row[i + 1] = s * row[i] + c * h
                            row[i] = c * row[i] - s * h
                p = -s * s2 * c3 * el1 * e[l] / dl1
                e[l] = s * p
                d[l] = c * p
                if not abs(e[l]) > EPS * tst1:
                    break
            else:
                raise ArithmeticError("QL iteration did not converge")
        d[l] += f
        e[l] = 0.0


def symmetric_eigen(matrix: Sequence[Sequence[float]], vectors: bool = True):
    """Eigenvalues in ascending order and, if asked, the matching unit eigenvectors
    as columns of a list-of-rows matrix."""
    n = len(matrix)
    if n == 0:
        return [], []
    a = [[float(x) for x in row] for row in matrix]
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix is not symmetric")
    d, e, v = _tridiagonalize(a, vectors)
    _ql_implicit(d, e, v if vectors else None)
    order = sorted(range(n), key=lambda i: d[i])
    values = [d[i] for i in order]
    if not vectors:
        return values, None
    vecs = [[row[i] for i in order] for row in v]
    return values, vecs


def eigenvalues(g: Graph) -> list[float]:
    return symmetric_eigen(_adjacency_rows(g), vectors=False)[0]


def spectral_radius(g: Graph) -> float:
    if g.n == 0:
        return 0.0
    return eigenvalues(g)[-1]


def _adjacency_rows(g: Graph) -> list[list[float]]:
    return [[1.0 if row >> j & 1 else 0.0 for j in range(g.n)] for row in g.adj]


def spectrum(g: Graph) -> Spectrum:
    if g.n == 0:
        raise GraphError("empty vertex set has no spectrum")
    values, vecs = symmetric_eigen(_adjacency_rows(g))
    x = [row[-1] for row in vecs]
    if sum(x) < 0:
        x = [-t for t in x]
    rho = values[-1]
    residual = 0.0
    for v in range(g.n):
        ax = sum(x[w] for w in bit_list(g.adj[v]))
        residual = max(residual, abs(ax - rho * x[v]))
    return Spectrum(tuple(values), rho, values[0], tuple(x), residual)


# ---------------------------------------------------------------- quotients


@dataclass(frozen=True)
class QuotientMatrix:
    matrix: tuple[tuple[Fraction, ...], ...]
    parts: tuple[tuple[int, ...], ...]
    equitable: bool

    def as_ints(self) -> list[list[int]]:
        if any(x.denominator != 1 for row in self.matrix for x in row):
            raise ValueError("quotient has non-integer entries")
        return [[int(x) for x in row] for row in self.matrix]

    def symmetrized(self) -> list[list[float]]:
        """Similar symmetric matrix diag(s)^(1/2) B diag(s)^(-1/2), s = part sizes.

        Valid (symmetric) for equitable partitions, where |V_i| B_ij = |V_j| B_ji.
        """
        sizes = [len(p) for p in self.parts]
        k = len(sizes)
        return [
            [float(self.matrix[i][j]) * math.sqrt(sizes[i] / sizes[j]) for j in range(k)]
            for i in range(k)
        ]


def _check_partition(g: Graph, parts: Sequence[Sequence[int]]) -> list[int]:
    masks = []
    seen = 0
    for part in parts:
        if not part:
            raise GraphError("partition has an empty part")
        m = 0
        for v in part:
            if not 0 <= v < g.n:
                raise GraphError(f"vertex {v} out of range")
            m |= 1 << v
        if m & seen or m.bit_count() != len(part):
            raise GraphError("partition parts overlap or repeat a vertex")
        seen |= m
        masks.append(m)
    if seen != g.full_mask:
        raise GraphError("partition does not cover every vertex")
    return masks


def is_equitable(g: Graph, parts: Sequence[Sequence[int]]) -> bool:
    masks = _check_partition(g, parts)
    for part in parts:
        for mask in masks:
            counts = {(g.adj[v] & mask).bit_count() for v in part}
            if len(counts) > 1:
                return False
    return True


def quotient(g: Graph, parts: Sequence[Sequence[int]], strict: bool = True) -> QuotientMatrix:
    """Quotient matrix of a partition. In strict mode the partition must be
    equitable; otherwise entries are averaged neighbor counts."""
    masks = _check_partition(g, parts)
    equitable = is_equitable(g, parts)
    if strict and not equitable:
        raise GraphError("partition is not equitable")
    rows = []
    for part in parts:
        rows.append(tuple(
            Fraction(sum((g.adj[v] & mask).bit_count() for v in part), len(part)) for mask in masks
        ))
    return QuotientMatrix(tuple(rows), tuple(tuple(p) for p in parts), equitable)


def quotient_rho(q: QuotientMatrix) -> float:
    """Largest eigenvalue of an equitable quotient via its symmetrized form."""
    if not q.equitable:
        raise GraphError("spectral radius of a lenient quotient is not defined here")
    return symmetric_eigen(q.symmetrized(), vectors=False)[0][-1]


# ---------------------------------------------------------------- polynomials


@dataclass(frozen=True)
class CharPoly:
    coeffs: tuple[int, ...]  # highest degree first, leading 1

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return poly_eval(self.coeffs, x)


def poly_eval(coeffs: Sequence, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def char_poly(q: QuotientMatrix | Sequence[Sequence], strict: bool = True) -> CharPoly:
    """det(xI - B) by the Faddeev-LeVerrier recurrence in exact rational arithmetic."""
    rows = q.matrix if isinstance(q, QuotientMatrix) else q
    a = [[Fraction(x) for x in row] for row in rows]
    k = len(a)
    if k == 0 or any(len(row) != k for row in a):
        raise ValueError("char_poly needs a non-empty square matrix")
    if k > 8:
        raise ValueError("char_poly is limited to matrices of size <= 8")
    if strict and any(x.denominator != 1 for row in a for x in row):
        raise ValueError("strict mode needs integer entries")
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * k for _ in range(k)]
    for step in range(1, k + 1):
        # m <- A m + c I, then c_next = -tr(A m) / step
        am = [[sum(a[i][t] * m[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
        for i in range(k):
            am[i][i] += coeffs[-1]
        m = am
        trace = sum(sum(a[i][t] * m[t][i] for t in range(k)) for i in range(k))
        coeffs.append(-trace / step)
    if strict:
        if any(c.denominator != 1 for c in coeffs):
            raise ArithmeticError("non-integer coefficient from integer matrix")
        return CharPoly(tuple(int(c) for c in coeffs))
    return CharPoly(tuple(coeffs))


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return p[i:]


def _poly_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = num[:]
    den = _poly_trim(den)
    if len(num) < len(den):
        return [Fraction(0)], num
    quot = []
    for i in range(len(num) - len(den) + 1):
        c = num[i] / den[0]
        quot.append(c)
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    rem = _poly_trim(num[len(num) - len(den) + 1:] or [Fraction(0)])
    return quot, rem


def _poly_derivative(p: list[Fraction]) -> list[Fraction]:
    deg = len(p) - 1
    return [c * (deg - i) for i, c in enumerate(p[:-1])] or [Fraction(0)]


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _poly_trim(a), _poly_trim(b)
    while not (len(b) == 1 and b[0] == 0):
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return [c / a[0] for c in a]


def sturm_sequence(coeffs: Sequence) -> list[list[Fraction]]:
    p = _poly_trim([Fraction(c) for c in coeffs])
    if len(p) > 1:
        g = _poly_gcd(p, _poly_derivative(p))
        if len(g) > 1:
            p, _ = _poly_divmod(p, g)
    seq = [p]
    if len(p) == 1:
        return seq
    seq.append(_poly_derivative(p))
    while len(seq[-1]) > 1:
        _, r = _poly_divmod(seq[-2], seq[-1])
        if len(r) == 1 and r[0] == 0:
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for p in seq:
        val = poly_eval(p, x)
        if val != 0:
            signs.append(val > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def largest_root(coeffs: CharPoly | Sequence, tol: float = ROOT_TOL) -> float:
    """Largest real root by Sturm-guided bisection started from the Cauchy bound."""
    if isinstance(coeffs, CharPoly):
        coeffs = coeffs.coeffs
    p = _poly_trim([Fraction(c) for c in coeffs])
    if len(p) < 2:
        raise ValueError("constant polynomial has no roots")
    bound = 1 + max(abs(c / p[0]) for c in p[1:])
    seq = sturm_sequence(p)
    hi = Fraction(bound)
    lo = -hi
    at_hi = _sign_changes(seq, hi)
    if _sign_changes(seq, lo) - at_hi == 0:
        raise ValueError("polynomial has no real root")
    # invariant: a root lies in (lo, hi] and none lies in (hi, bound]
    while hi - lo > tol:
        mid = Fraction((float(lo) + float(hi)) / 2)
        if mid <= lo or mid >= hi:
            break
        if _sign_changes(seq, mid) - at_hi > 0:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


# ---------------------------------------------------------------- closed forms


def cp_cycle_rho_closed_form(m: float) -> float:
    """Spectral radius of the aligned ring of cocktail party blocks of order m."""
    if m < 4:
        raise ValueError("block order must be at least 4")
    return (m - 3 + math.sqrt((m - 1) ** 2 + 8)) / 2


def cp_cycle_rho_bound(n: int, k: int) -> float:
    if not n > k > 0:
        raise ValueError("need n > k > 0")
    return n / k - 2 + 2 * k / (n - k)
