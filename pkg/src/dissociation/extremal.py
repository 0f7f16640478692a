"""Exhaustive Turán-type searches and minimizer searches over isomorphism classes.

Hosts are scanned from the complete graph downward by enumerating their
complements with few edges, so the first edge level that contains a free host
gives the extremal number and every free host at that level is a witness.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Sequence

import networkx as nx

from .graph import (
    ENUMERATION_CAP,
    Graph,
    GraphError,
    canonical_graph,
    complement,
    enumerate_graphs,
    from_graph6,
    graphs_with_edges,
    to_graph6,
)
from .solvers import (
    cocktail_sizes,
    contains_complete_multipartite,
    d_independence_number,
    odd_cocktail_sizes,
    tau,
)
from .spectral import STRICT_MARGIN, spectral_radius

SPECTRAL_CAP = 8
ZARANKIEWICZ_CAP = 7
JOBS_ENV = "DISSOCIATION_JOBS"


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def parallel_map(func: Callable, items: Sequence, jobs: int = 1) -> list:
    """Order-preserving map; identical results for any worker count."""
    if jobs <= 1 or len(items) < 64:
        return [func(x) for x in items]
    chunk = max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=chunk))


# ---------------------------------------------------------------- forbidden families

FAMILY_KINDS = ("multipartite", "odd_cocktail", "cocktail", "h_family", "explicit")


@dataclass(frozen=True)
class FamilySpec:
    """A forbidden family. `params` holds part sizes, the order d, (s, d) for
    the H-family, or graph6 strings for an explicit list."""

    kind: str
    params: tuple

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.kind == "multipartite":
            if not self.params or any(int(s) < 1 for s in self.params):
                raise ValueError("part sizes must be positive")
            object.__setattr__(self, "params", tuple(sorted(int(s) for s in self.params)))
        elif self.kind == "odd_cocktail":
            odd_cocktail_sizes(self.params[0])
        elif self.kind == "cocktail":
            cocktail_sizes(self.params[0])
        elif self.kind == "h_family":
            s, d = self.params
            if not s > d >= 0:
                raise ValueError("need s > d >= 0")
        elif not self.params:
            raise ValueError("explicit family needs at least one graph")

    @classmethod
    def multipartite(cls, sizes: Iterable[int]) -> FamilySpec:
        return cls("multipartite", tuple(sizes))

    @classmethod
    def odd_cocktail(cls, d: int) -> FamilySpec:
        return cls("odd_cocktail", (d,))

    @classmethod
    def cocktail(cls, d: int) -> FamilySpec:
        return cls("cocktail", (d,))

    @classmethod
    def h_family(cls, s: int, d: int) -> FamilySpec:
        """Graphs on s+1 vertices whose complement has maximum degree at most d."""
        return cls("h_family", (s, d))

    @classmethod
    def explicit(cls, graphs: Iterable[Graph | str]) -> FamilySpec:
        codes = []
        for g in graphs:
            codes.append(g if isinstance(g, str) else to_graph6(g).decode())
        return cls("explicit", tuple(codes))

    def part_sizes(self) -> list[int] | None:
        if self.kind == "multipartite":
            return list(self.params)
        if self.kind == "odd_cocktail":
            return odd_cocktail_sizes(self.params[0])
        if self.kind == "cocktail":
            return cocktail_sizes(self.params[0])
        return None

    def contained_in(self, g: Graph) -> bool:
        sizes = self.part_sizes()
        if sizes is not None:
            return contains_complete_multipartite(g, sizes)
        if self.kind == "h_family":
            s, d = self.params
            if g.n < s + 1:
                return False
            return d_independence_number(complement(g), d).value >= s + 1
        return any(_has_monomorphism(g, from_graph6(code)) for code in self.params)

    def is_free(self, g: Graph) -> bool:
        return not self.contained_in(g)

    def label(self) -> str:
        if self.kind == "multipartite":
            return "K(" + ",".join(map(str, self.params)) + ")"
        if self.kind == "odd_cocktail":
            return f"L_{self.params[0]}"
        if self.kind == "cocktail":
            return f"CP_{self.params[0]}"
        if self.kind == "h_family":
            return f"H_{self.params[0] + 1},{self.params[1]}"
        return "explicit[" + ",".join(self.params) + "]"

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": list(self.params), "label": self.label()}


def _has_monomorphism(host: Graph, pattern: Graph) -> bool:
    if pattern.n > host.n or pattern.num_edges() > host.num_edges():
        return False
    h = nx.Graph()
    h.add_nodes_from(range(host.n))
    h.add_edges_from(host.edges())
    p = nx.Graph()
    p.add_nodes_from(range(pattern.n))
    p.add_edges_from(pattern.edges())
    return nx.algorithms.isomorphism.GraphMatcher(h, p).subgraph_is_monomorphic()


def parse_family(text: str) -> FamilySpec:
    """`L5`, `CP4`, `K1,2,2`, `H5,1` (s+1=5, d=1) or `G:<graph6>[;<graph6>...]`."""
    t = text.strip()
    if t.startswith("G:"):
        return FamilySpec.explicit(t[2:].split(";"))
    if t.startswith("CP"):
        return FamilySpec.cocktail(int(t[2:]))
    if t.startswith("L"):
        return FamilySpec.odd_cocktail(int(t[1:]))
    if t.startswith("K"):
        return FamilySpec.multipartite(int(x) for x in t[1:].strip("()").split(","))
    if t.startswith("H"):
        t_size, d = (int(x) for x in t[1:].split(","))
        return FamilySpec.h_family(t_size - 1, d)
    raise ValueError(f"cannot parse family {text!r}")


# ---------------------------------------------------------------- results


MODES = ("ex", "ex_cc", "emin", "rhomin")


@dataclass(frozen=True)
class ExtremalResult:
    n: int
    family: FamilySpec | None
    value: float
    witnesses: tuple[str, ...]
    mode: str
    warn: bool = False
    extra: dict = field(default_factory=dict)

    def graphs(self) -> list[Graph]:
        return [from_graph6(w) for w in self.witnesses]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "family": self.family.to_json() if self.family else None,
            "value": self.value,
            "witnesses": list(self.witnesses),
            "mode": self.mode,
            "warn": self.warn,
            **self.extra,
        }


def canonical_code(g: Graph) -> str:
    return to_graph6(canonical_graph(g)).decode()


def _codes(graphs: Iterable[Graph]) -> tuple[str, ...]:
    return tuple(sorted({canonical_code(g) for g in graphs}))


# ---------------------------------------------------------------- Turán numbers


class _FreeCheck:
    """Picklable predicate so the worker pool can evaluate hosts."""

    def __init__(self, family: FamilySpec) -> None:
        self.family = family

    def __call__(self, g: Graph) -> bool:
        return self.family.is_free(g)


def ex_bruteforce(
    n: int,
    family: FamilySpec,
    connected_complement: bool = False,
    jobs: int = 1,
    cap: int = ENUMERATION_CAP,
) -> ExtremalResult:
    """Exact ex(n, F) or ex_cc(n, F) with every extremal class as a witness."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise GraphError(f"extremal search capped at n <= {cap}, got {n}")
    total = n * (n - 1) // 2
    check = _FreeCheck(family)
    for missing in range(total + 1):
        lows = graphs_with_edges(n, missing, cap)
        if connected_complement:
            lows = [h for h in lows if h.is_connected()]
        hosts = [complement(h) for h in lows]
        flags = parallel_map(check, hosts, jobs)
        winners = [g for g, ok in zip(hosts, flags) if ok]
        if winners:
            mode = "ex_cc" if connected_complement else "ex"
            return ExtremalResult(n, family, total - missing, _codes(winners), mode)
    raise ValueError(f"no {family.label()}-free host on {n} vertices"
                     + (" with connected complement" if connected_complement else ""))


def ex_L5_closed_form(n: int) -> int:
    if n < 4:
        raise ValueError("closed form needs n >= 4")
    base = (n * n + 2 * n) // 4
    return base - 1 if n % 4 == 2 else base


def emin_formula(n: int, k: int) -> int:
    """Edge count of the connected minimizers with dissociation number 2k, using the
    part structure of the Turán-type extremal graphs for the odd cocktail party graph."""
    from .constructions import turan_family_edges

    return n * (n - 1) // 2 - turan_family_edges(n, k) + k - 1


# ---------------------------------------------------------------- minimizers


def _tau_of(g: Graph) -> int:
    return tau(g)


@lru_cache(maxsize=None)
def connected_tau_table(n: int, cap: int = ENUMERATION_CAP) -> tuple[tuple[Graph, int], ...]:
    """Every connected class on n vertices with its dissociation number."""
    graphs = list(enumerate_graphs(n, connected_only=True, cap=cap))
    return tuple(zip(graphs, (tau(g) for g in graphs)))


def emin_search(n: int, tau_value: int, jobs: int = 1, cap: int = ENUMERATION_CAP) -> ExtremalResult:
    """Fewest edges of a connected graph on n vertices with the given dissociation number.

    Levels are taken from both ends, cheapest first. Graphs with tau <= t are
    closed under adding edges, so once a dense level has none of them, no level
    below it can hold a hit and the upward scan may skip ahead.
    """
    if n > cap:
        raise GraphError(f"edge-minimizer search capped at n <= {cap}, got {n}")
    total = n * (n - 1) // 2
    lo, hi = max(n - 1, 0), total
    floor = lo
    hits_at: dict[int, list[Graph]] = {}

    def scan(e: int) -> bool:
        """Record connected hits at level e; report whether any graph has tau <= t."""
        graphs = graphs_with_edges(n, e, cap)
        values = parallel_map(_tau_of, graphs, jobs)
        hits_at[e] = [g for g, t in zip(graphs, values) if t == tau_value and g.is_connected()]
        return any(t <= tau_value for t in values)

    while lo <= hi:
        if abs(lo - total / 2) >= abs(hi - total / 2):
            if lo >= floor:
                scan(lo)
                if hits_at[lo]:
                    break
            lo += 1
        else:
            if not scan(hi):
                floor = hi + 1
                lo = max(lo, floor)
                break
            hi -= 1
    for e in range(max(lo, floor), total + 1):
        if e not in hits_at:
            scan(e)
        if hits_at[e]:
            return ExtremalResult(n, None, e, _codes(hits_at[e]), "emin", extra={"tau": tau_value})
    raise ValueError(f"no connected graph on {n} vertices has dissociation number {tau_value}")


def _tau_and_rho(g: Graph) -> tuple[int, float]:
    t = tau(g)
    return t, spectral_radius(g)


def rhomin_search(
    n: int,
    tau_value: int,
    jobs: int = 1,
    cap: int = SPECTRAL_CAP,
    margin: float = STRICT_MARGIN,
) -> ExtremalResult:
    """Smallest spectral radius of a connected graph on n vertices with the given
    dissociation number.

    Edge levels are scanned upward and the scan stops once the average degree
    2e/n, a lower bound on the spectral radius, exceeds the best value plus the
    margin. Classes within the margin of the minimum are all reported and the
    result is flagged when there is more than one.
    """
    if n > cap:
        raise GraphError(f"spectral search capped at n <= {cap}, got {n}")
    total = n * (n - 1) // 2
    found: list[tuple[float, Graph]] = []
    best = math.inf
    for e in range(max(n - 1, 0), total + 1):
        if 2 * e / n > best + margin:
            break
        graphs = [g for g in graphs_with_edges(n, e, max(cap, ENUMERATION_CAP)) if g.is_connected()]
        taus = parallel_map(_tau_of, graphs, jobs)
        keep = [g for g, t in zip(graphs, taus) if t == tau_value]
        rhos = parallel_map(spectral_radius, keep, jobs)
        for g, r in zip(keep, rhos):
            found.append((r, g))
            best = min(best, r)
    if not found:
        raise ValueError(f"no connected graph on {n} vertices has dissociation number {tau_value}")
    winners = [(r, g) for r, g in found if r <= best + margin]
    spread = max(r for r, _ in winners) - best
    return ExtremalResult(
        n, None, best, _codes(g for _, g in winners), "rhomin",
        warn=len(winners) > 1, extra={"tau": tau_value, "tie_spread": spread},
    )


# ---------------------------------------------------------------- Zarankiewicz and friends


def zarankiewicz_bipartite(a: int, b: int, s: int, t: int) -> int:
    """Most edges in a subgraph of K_{a,b} with no K_{s,t} having its s-side among
    the a rows and its t-side among the b columns.

    Rows are b-bit masks placed in non-increasing (popcount, mask) order, which
    removes row permutations and gives the bound current + remaining * popcount.
    """
    if min(a, b, s, t) < 1:
        raise ValueError("sizes must be positive")
    if max(a, b) > ZARANKIEWICZ_CAP:
        raise GraphError(f"bipartite search capped at sides <= {ZARANKIEWICZ_CAP}")
    if s > a or t > b:
        return a * b
    masks = sorted(range(1 << b), key=lambda m: (m.bit_count(), m), reverse=True)
    best = 0
    rows: list[int] = []

    def ok(row: int) -> bool:
        if s == 1:
            return row.bit_count() < t
        for group in combinations(rows, s - 1):
            common = row
            for r in group:
                common &= r
            if common.bit_count() >= t:
                return False
        return True

    def go(start: int, edges: int) -> None:
        nonlocal best
        if len(rows) == a:
            best = max(best, edges)
            return
        left = a - len(rows)
        for i in range(start, len(masks)):
            m = masks[i]
            if edges + left * m.bit_count() <= best:
                return
            if ok(m):
                rows.append(m)
                go(i, edges + m.bit_count())
                rows.pop()

    go(0, 0)
    return best


def zarankiewicz_lemma_bound(n: int, s: int, t: int) -> float:
    return (t - 1) ** (1 / s) * n ** (2 - 1 / s)


def kst_bound(n: int, s: int, t: int) -> float:
    """Kővári–Sós–Turán estimate without its lower-order term."""
    if not 2 <= s <= t:
        raise ValueError("need 2 <= s <= t")
    return (t - 1) ** (1 / s) / 2 * n ** (2 - 1 / s)


def predicted_join_edges(part_sizes: Sequence[int], r1: int, r2: int, cap: int = ENUMERATION_CAP) -> int:
    """Cross pairs of the join plus the brute-force extremal numbers of its parts:
    K(r1, r2) for the first part and the star K(1, r2) for the rest."""
    if r1 > r2:
        raise ValueError("need r1 <= r2")
    if any(p > cap for p in part_sizes):
        raise GraphError(f"part sizes capped at {cap}")
    total = sum(part_sizes)
    cross = (total * total - sum(p * p for p in part_sizes)) // 2
    inside = ex_bruteforce(part_sizes[0], FamilySpec.multipartite([r1, r2]), cap=cap).value
    for p in part_sizes[1:]:
        inside += ex_bruteforce(p, FamilySpec.multipartite([1, r2]), cap=cap).value
    return cross + inside
