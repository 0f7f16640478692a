"""Closed-form bounds on the dissociation number and the spectral radius.

Each bound reports whether its hypothesis holds for the given input; an
inapplicable bound is a normal result, not an error.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import ENUMERATION_CAP, Graph, GraphError, complement
from .solvers import cocktail_sizes, contains_complete_multipartite, odd_cocktail_sizes
from .spectral import spectrum


@dataclass(frozen=True)
class BoundResult:
    name: str
    value: float
    applicable: bool
    hypothesis_note: str
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        value = self.value if self.applicable and math.isfinite(self.value) else None
        return {
            "name": self.name,
            "value": value,
            "applicable": self.applicable,
            "hypothesis_note": self.hypothesis_note,
            **self.details,
        }


def hoffman_type_upper(g: Graph) -> BoundResult:
    """n(1 - lambda_min) / (k - lambda_min) for a k-regular graph with at least one edge."""
    name = "regular_eigenvalue_upper"
    if not g.is_regular():
        return BoundResult(name, math.nan, False, "graph is not regular")
    k = g.degree(0)
    if k == 0:
        return BoundResult(name, math.nan, False, "graph has no edges")
    lam = spectrum(g).lambda_min
    value = g.n * (1 - lam) / (k - lam)
    return BoundResult(name, value, True, f"{k}-regular", {"lambda_min": lam, "degree": k})


def probabilistic_lower(g: Graph) -> BoundResult:
    """2 * ceil(sum over edges uv of 1 / ((d(u) + d(v)) * Delta - 1)), for connected g."""
    name = "edge_ordering_lower"
    edges = g.edges()
    if not edges:
        raise ValueError("bound needs at least one edge")
    if not g.is_connected():
        return BoundResult(name, math.nan, False, "graph is not connected")
    delta = g.max_degree()
    deg = g.degrees()
    total = sum(Fraction(1, (deg[u] + deg[v]) * delta - 1) for u, v in edges)
    value = 2 * math.ceil(total)
    return BoundResult(name, value, True, "connected", {"edge_sum": str(total)})


def _pattern_sizes(d: int) -> tuple[str, list[int]]:
    if d % 2 == 0:
        if d <= 2:
            raise ValueError("even order must exceed 2")
        return f"CP_{d}", cocktail_sizes(d)
    if d <= 3:
        raise ValueError("odd order must exceed 3")
    return f"L_{d}", odd_cocktail_sizes(d)


def complement_free_upper(g: Graph, d: int) -> BoundResult:
    """d - 1 whenever the complement avoids the cocktail party graph of order d
    (odd d: the odd cocktail party graph)."""
    label, sizes = _pattern_sizes(d)
    name = "complement_free_upper"
    if contains_complete_multipartite(complement(g), sizes):
        return BoundResult(name, math.nan, False, f"complement contains {label}")
    return BoundResult(name, d - 1, True, f"complement is {label}-free")


def residue_part(s: int, d: int) -> int:
    """a = s + 1 mod (d + 1), taken in 1..d+1."""
    a = (s + 1) % (d + 1)
    return a if a else d + 1


def multipartite_relaxation(s: int, d: int) -> list[int]:
    """Parts (a, d+1, ..., d+1) with ceil((s+1)/(d+1)) parts in total."""
    parts = -(-(s + 1) // (d + 1))
    return sorted([residue_part(s, d)] + [d + 1] * (parts - 1))


def spectral_lower_from_excc(n: int, s: int, d: int, jobs: int = 1, cap: int = ENUMERATION_CAP) -> BoundResult:
    """Average-degree lower bound for connected graphs with i_d = s, from the
    connected-complement extremal numbers of the H-family and of its complete
    multipartite relaxation. The larger of the two is returned."""
    from .extremal import FamilySpec, ex_bruteforce

    if not s > d >= 0:
        raise ValueError("need s > d >= 0")
    if n > cap:
        raise GraphError(f"extremal search capped at n <= {cap}, got {n}")
    if n < s + 1:
        raise ValueError("need n >= s + 1")
    pairs = n * (n - 1) // 2
    h_ex = ex_bruteforce(n, FamilySpec.h_family(s, d), connected_complement=True, jobs=jobs, cap=cap).value
    parts = multipartite_relaxation(s, d)
    if sum(parts) > n:
        # the relaxed pattern does not fit, so every connected-complement host is free
        k_ex = pairs - (n - 1)
    else:
        k_ex = ex_bruteforce(n, FamilySpec.multipartite(parts), connected_complement=True,
                             jobs=jobs, cap=cap).value
    h_bound = 2 * (pairs - h_ex) / n
    k_bound = 2 * (pairs - k_ex) / n
    return BoundResult(
        "excc_spectral_lower", max(h_bound, k_bound), True, "connected graphs with i_d = s",
        {"h_family_ex_cc": h_ex, "h_family_bound": h_bound,
         "relaxation_parts": parts, "relaxation_ex_cc": k_ex, "relaxation_bound": k_bound},
    )
