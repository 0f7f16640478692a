"""Exact solvers for the NP-hard invariants used throughout the package.

All searches work on adjacency bitsets and return a witness that can be
re-checked cheaply.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import networkx as nx

from .graph import Graph, GraphError, bit_list, complement

SOLVER_CAP = 40
QGOOD_CAP = 16


@dataclass(frozen=True)
class WitnessedValue:
    value: int
    witness: tuple


def max_induced_degree(g: Graph, vertices: Sequence[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return max(((g.adj[v] & mask).bit_count() for v in vertices), default=0)


def _saturated(adj: Sequence[int], chosen: int, d: int) -> int:
    sat = 0
    for v in bit_list(chosen):
        if (adj[v] & chosen).bit_count() >= d:
            sat |= 1 << v
    return sat


def _allowed(adj: Sequence[int], chosen: int, cand: int, d: int) -> int:
    """Candidates that can still join `chosen` without breaking the degree cap."""
    sat = _saturated(adj, chosen, d)
    out = 0
    for v in bit_list(cand):
        row = adj[v]
        if row & sat or (row & chosen).bit_count() > d:
            continue
        out |= 1 << v
    return out


def _max_bounded_size(adj: Sequence[int], n: int, d: int) -> int:
    best = 0

    def go(chosen: int, size: int, cand: int) -> None:
        nonlocal best
        # vertices with no neighbor among chosen or candidates can always be taken
        free = 0
        live = chosen | cand
        for v in bit_list(cand):
            if not adj[v] & live:
                free |= 1 << v
        if free:
            chosen |= free
            size += free.bit_count()
            cand &= ~free
        if size > best:
            best = size
        if not cand or size + cand.bit_count() <= best:
            return
        v = max(bit_list(cand), key=lambda x: ((adj[x] & cand).bit_count(), -x))
        rest = cand & ~(1 << v)
        go(chosen | (1 << v), size + 1, _allowed(adj, chosen | (1 << v), rest, d))
        go(chosen, size, rest)

    go(0, 0, (1 << n) - 1)
    return best


def _lex_first_of_size(adj: Sequence[int], n: int, d: int, target: int) -> tuple[int, ...]:
    """Lexicographically smallest vertex set of size `target` with induced max degree <= d."""

    def go(v: int, chosen: int, size: int, cand: int) -> int | None:
        if size == target:
            return chosen
        if size + (cand >> v).bit_count() < target:
            return None
        while v < n and not cand >> v & 1:
            v += 1
        if v >= n:
            return None
        bit = 1 << v
        nxt = chosen | bit
        found = go(v + 1, nxt, size + 1, _allowed(adj, nxt, cand & ~bit, d))
        if found is not None:
            return found
        return go(v + 1, chosen, size, cand & ~bit)

    mask = go(0, 0, 0, (1 << n) - 1)
    assert mask is not None
    return tuple(bit_list(mask))


def d_independence_number(g: Graph, d: int, cap: int = SOLVER_CAP) -> WitnessedValue:
    """Largest vertex set whose induced subgraph has maximum degree at most d."""
    if g.n > cap:
        raise GraphError(f"solver capped at n <= {cap}, got {g.n}")
    if d < 0:
        raise ValueError("d must be non-negative")
    if g.n == 0:
        return WitnessedValue(0, ())
    value = _max_bounded_size(g.adj, g.n, d)
    return WitnessedValue(value, _lex_first_of_size(g.adj, g.n, d, value))


def dissociation_number(g: Graph, cap: int = SOLVER_CAP) -> WitnessedValue:
    return d_independence_number(g, 1, cap)


def tau(g: Graph) -> int:
    return d_independence_number(g, 1).value


def max_matching(g: Graph) -> WitnessedValue:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    matching = nx.max_weight_matching(h, maxcardinality=True)
    edges = tuple(sorted((min(u, v), max(u, v)) for u, v in matching))
    return WitnessedValue(len(edges), edges)


# ---------------------------------------------------------------- containment


def find_complete_multipartite(g: Graph, sizes: Sequence[int]) -> tuple[tuple[int, ...], ...] | None:
    """Disjoint vertex sets with the given sizes, every cross pair adjacent, or None.

    Parts are searched largest first. Vertices of a part are chosen from the
    common neighborhood of everything placed so far; equal-size parts are
    ordered by their smallest vertex to avoid revisiting swapped copies.
    """
    if any(s < 1 for s in sizes):
        raise ValueError("part sizes must be positive")
    order = sorted(range(len(sizes)), key=lambda i: -sizes[i])
    parts_sorted = [sizes[i] for i in order]
    total = sum(parts_sorted)
    if total > g.n:
        return None
    adj = g.adj
    need_deg = [total - s for s in parts_sorted]
    degs = [row.bit_count() for row in adj]
    found: list[tuple[int, ...]] = []

    def place(i: int, cand: int, used: int, prev_min: int) -> bool:
        if i == len(parts_sorted):
            return True
        s = parts_sorted[i]
        remaining = sum(parts_sorted[i:])
        pool = cand & ~used
        if pool.bit_count() < remaining:
            return False
        eligible = [v for v in bit_list(pool) if degs[v] >= need_deg[i]]
        same_as_prev = i > 0 and parts_sorted[i - 1] == s
        for combo in combinations(eligible, s):
            if same_as_prev and combo[0] < prev_min:
                continue
            common = cand
            for v in combo:
                common &= adj[v]
            nxt_used = used
            for v in combo:
                nxt_used |= 1 << v
            if (common & ~nxt_used).bit_count() < remaining - s:
                continue
            found.append(combo)
            if place(i + 1, common, nxt_used, combo[0]):
                return True
            found.pop()
        return False

    if not place(0, g.full_mask, 0, -1):
        return None
    result: list[tuple[int, ...]] = [()] * len(sizes)
    for slot, part in zip(order, found):
        result[slot] = part
    return tuple(result)


def contains_complete_multipartite(g: Graph, sizes: Sequence[int]) -> bool:
    return find_complete_multipartite(g, sizes) is not None


def odd_cocktail_sizes(d: int) -> list[int]:
    """Part sizes of the odd cocktail party graph on d vertices: one apex plus pairs."""
    if d < 3 or d % 2 == 0:
        raise ValueError("odd cocktail party order must be odd and at least 3")
    return [1] + [2] * ((d - 1) // 2)


def cocktail_sizes(d: int) -> list[int]:
    if d < 2 or d % 2:
        raise ValueError("cocktail party order must be even and at least 2")
    return [2] * (d // 2)


def is_L_free_by_degree(g: Graph, k: int) -> bool:
    """Minimum-degree test for freeness of the odd cocktail party graph on 2k+1 vertices,
    valid only for hosts on exactly 2k+1 vertices."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if g.n != 2 * k + 1:
        raise GraphError(f"host must have {2 * k + 1} vertices, got {g.n}")
    return g.min_degree() <= 2 * k - 2


def is_H_family_free(g: Graph, s: int, d: int) -> bool:
    """True when no (s+1)-vertex set of g misses a graph of max degree <= d,
    i.e. the complement has d-independence number at most s."""
    if not s > d >= 0:
        raise ValueError("need s > d >= 0")
    return d_independence_number(complement(g), d).value <= s


# ---------------------------------------------------------------- q-good partitions


def internal_edges(g: Graph, parts: Sequence[Sequence[int]]) -> int:
    total = 0
    for part in parts:
        mask = 0
        for v in part:
            mask |= 1 << v
        total += sum((g.adj[v] & mask).bit_count() for v in part)
    return total // 2


def is_locally_good(g: Graph, parts: Sequence[Sequence[int]]) -> bool:
    """Every vertex has no more neighbors in its own part than in any other part."""
    masks = []
    for part in parts:
        m = 0
        for v in part:
            m |= 1 << v
        masks.append(m)
    for i, part in enumerate(parts):
        for v in part:
            own = (g.adj[v] & masks[i]).bit_count()
            if any((g.adj[v] & masks[j]).bit_count() < own for j in range(len(parts)) if j != i):
                return False
    return True


def q_good_partition(
    g: Graph, q: int, nonempty: bool = False, cap: int = QGOOD_CAP
) -> WitnessedValue:
    """Partition into q parts minimizing internal edges.

    Branch and bound over vertex assignments in index order; a new part index
    is opened only when all lower ones are in use, which removes relabelings of
    the parts. The witness is the first optimum in that order.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    if g.n > cap:
        raise GraphError(f"q-good search capped at n <= {cap}, got {g.n}")
    if nonempty and q > g.n:
        raise ValueError("cannot split into more nonempty parts than vertices")
    n = g.n
    adj = g.adj
    best = [g.num_edges() + 1]
    best_assign: list[list[int]] = [[]]
    masks = [0] * q
    assign = [0] * n

    def go(v: int, cost: int, used: int) -> None:
        if cost >= best[0]:
            return
        if nonempty and q - used > n - v:
            return
        if v == n:
            best[0] = cost
            best_assign[0] = assign[:]
            return
        row = adj[v]
        options = sorted(range(min(used + 1, q)), key=lambda p: ((row & masks[p]).bit_count(), p))
        for p in options:
            assign[v] = p
            masks[p] |= 1 << v
            go(v + 1, cost + (row & masks[p]).bit_count(), max(used, p + 1))
            masks[p] &= ~(1 << v)

    go(0, 0, 0)
    parts = tuple(tuple(v for v in range(n) if best_assign[0][v] == p) for p in range(q))
    return WitnessedValue(best[0], parts)
