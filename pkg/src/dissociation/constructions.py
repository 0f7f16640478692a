"""Builders for the named graph families.

Vertex conventions used everywhere:

* cocktail party graph of order d: vertices 0..d-1, the missing pairs are (2i, 2i+1),
  so the unique non-neighbor of v is v ^ 1.
* odd cocktail party graph of order d: cocktail party graph on 0..d-2 plus the
  apex d-1 adjacent to everything.
* multipartite parts occupy consecutive vertex ranges in the order given.

Compound builders return a `Construction` whose landmarks dict names the
connector vertices, apexes and block ranges.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .graph import (
    CANONICAL_CAP,
    MAX_VERTICES,
    Graph,
    GraphError,
    canonical_form,
    disjoint_union,
    join,
)


@dataclass(frozen=True)
class Construction:
    graph: Graph
    landmarks: dict = field(default_factory=dict)


def cocktail_party(d: int) -> Graph:
    if d % 2 or d < 2:
        raise ValueError(f"cocktail party order must be even and >= 2, got {d}")
    if d > MAX_VERTICES:
        raise GraphError(f"order {d} exceeds {MAX_VERTICES}")
    full = (1 << d) - 1
    return Graph(d, tuple(full & ~(1 << v) & ~(1 << (v ^ 1)) for v in range(d)))


def odd_cocktail_party(d: int) -> Graph:
    if d % 2 == 0 or d < 3:
        raise ValueError(f"odd cocktail party order must be odd and >= 3, got {d}")
    return join(cocktail_party(d - 1), Graph.empty(1))


def cocktail_block(size: int) -> Graph:
    """Cocktail party graph for even size, odd cocktail party graph for odd size."""
    return cocktail_party(size) if size % 2 == 0 else odd_cocktail_party(size)


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    if any(s < 1 for s in sizes):
        raise ValueError("part sizes must be positive")
    n = sum(sizes)
    if n > MAX_VERTICES:
        raise GraphError(f"{n} vertices exceeds {MAX_VERTICES}")
    rows = []
    start = 0
    full = (1 << n) - 1
    for s in sizes:
        part = ((1 << s) - 1) << start
        rows.extend([full & ~part] * s)
        start += s
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------- Turán-type family


def valid_part_sizes(n: int, k: int) -> list[tuple[int, ...]]:
    """Nondecreasing k-tuples of positive sizes summing to n in which any two sizes
    differ by at most 2, and by exactly 2 only when both are even."""
    if k < 1 or n < k:
        return []
    out = []

    def ok(a: int, b: int) -> bool:
        diff = abs(a - b)
        return diff <= 1 or (diff == 2 and a % 2 == 0 and b % 2 == 0)

    def go(prefix: list[int], remaining: int) -> None:
        slots = k - len(prefix)
        if slots == 0:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        low = prefix[-1] if prefix else 1
        for s in range(low, remaining - (slots - 1) * low + 1):
            if all(ok(s, p) for p in prefix):
                go(prefix + [s], remaining - s)

    go([], n)
    return out


def turan_member(sizes: Sequence[int]) -> Graph:
    """Complete multipartite graph plus a maximum matching inside every part; in an
    odd part the last vertex stays unmatched."""
    g = complete_multipartite(sizes)
    pairs = []
    start = 0
    for s in sizes:
        pairs.extend((start + 2 * i, start + 2 * i + 1) for i in range(s // 2))
        start += s
    return g.add_edges(pairs)


def turan_family(n: int, k: int) -> list[Graph]:
    """Edge maximizers for the odd cocktail party graph of order 2k+1, one per
    admissible part-size multiset (k parts)."""
    sizes = valid_part_sizes(n, k)
    if not sizes:
        raise ValueError(f"no admissible part sizes for n={n}, k={k}")
    return [turan_member(s) for s in sizes]


def turan_family_edges(n: int, k: int) -> int:
    return turan_family(n, k)[0].num_edges()


# ---------------------------------------------------------------- edge minimizers


def _blocks_union(sizes: Sequence[int]) -> tuple[Graph, list[int]]:
    offsets = list(itertools.accumulate([0, *sizes[:-1]]))
    return disjoint_union(*(cocktail_block(s) for s in sizes)), offsets


def _labeled_trees(k: int) -> list[list[tuple[int, int]]]:
    if k == 1:
        return [[]]
    if k == 2:
        return [[(0, 1)]]
    trees = []
    for seq in itertools.product(range(k), repeat=k - 2):
        degree = [1] * k
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(i for i in range(k) if degree[i] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = [i for i in range(k) if degree[i] == 1]
        edges.append((u, w))
        trees.append(edges)
    return trees


def _leaf_choices(size: int) -> list[int]:
    # a block touched by a single connecting edge only matters up to its vertex orbits
    return [0] if size % 2 == 0 else [0, size - 1]


def minimizer_family(n: int, k: int, representative_only: bool | None = None) -> list[Graph]:
    """Connected edge minimizers with dissociation number 2k.

    Each member is a disjoint union of k cocktail-party-type blocks (the
    complement of a k-component member of the Turán-type family) joined into a
    tree by k-1 extra edges. For k <= 4 and n <= 12 every tree shape and every
    choice of endpoints is generated and deduplicated up to isomorphism.
    Otherwise a single representative per part-size multiset is returned: the
    blocks chained in a path through non-adjacent pairs of good connectors.
    """
    if n < 3 * k:
        raise ValueError(f"need n >= 3k, got n={n}, k={k}")
    multisets = [s for s in valid_part_sizes(n, k) if min(s) >= 3]
    if not multisets:
        raise ValueError(f"no admissible part sizes >= 3 for n={n}, k={k}")
    if representative_only is None:
        representative_only = k > 4 or n > CANONICAL_CAP
    if representative_only:
        return [cp_path_blocks(sizes).graph for sizes in multisets]
    members: dict = {}
    for sizes in multisets:
        base, offsets = _blocks_union(sizes)
        for tree in _labeled_trees(k):
            tree_degree = [0] * k
            for a, b in tree:
                tree_degree[a] += 1
                tree_degree[b] += 1
            per_edge = []
            for a, b in tree:
                ends_a = _leaf_choices(sizes[a]) if tree_degree[a] == 1 else range(sizes[a])
                ends_b = _leaf_choices(sizes[b]) if tree_degree[b] == 1 else range(sizes[b])
                per_edge.append([(offsets[a] + x, offsets[b] + y) for x in ends_a for y in ends_b])
            for links in itertools.product(*per_edge):
                g = base.add_edges(links)
                key = canonical_form(g)
                if key not in members:
                    members[key] = g
    return [members[key] for key in sorted(members, key=lambda c: c.data)]


def cp_path_blocks(sizes: Sequence[int]) -> Construction:
    """Blocks of the given orders chained in a path; block i is joined to block i+1
    by an edge from local vertex 1 of block i to local vertex 0 of block i+1.
    Both are non-apex vertices and are non-adjacent to each other inside the block."""
    base, offsets = _blocks_union(sizes)
    links = [(offsets[i] + 1, offsets[i + 1]) for i in range(len(sizes) - 1)]
    return Construction(base.add_edges(links), {
        "blocks": [list(range(o, o + s)) for o, s in zip(offsets, sizes)],
        "links": links,
    })


# ---------------------------------------------------------------- two-block minimizer


def hat_block_sizes(n: int) -> tuple[int, int]:
    r = n % 4
    if r == 0:
        return n // 2, n // 2
    if r == 1:
        return (n - 1) // 2, (n + 1) // 2
    if r == 2:
        return n // 2, n // 2
    return (n + 1) // 2, (n - 1) // 2


def build_hat_minimizer_4(n: int) -> Construction:
    """Two cocktail-party-type blocks joined by one edge between vertices whose
    degree inside their block is the block order minus 2.

    Landmarks: u, v are the link endpoints, u_prime and v_prime their
    non-neighbors inside their blocks, apexes the full-degree vertices of odd
    blocks, and partition the equitable partition used for the quotient matrix.
    """
    if n < 8:
        raise ValueError(f"need n >= 8, got {n}")
    n1, n2 = hat_block_sizes(n)
    base = disjoint_union(cocktail_block(n1), cocktail_block(n2))
    u, v = 0, n1
    g = base.add_edge(u, v)
    apexes = [off + s - 1 for off, s in ((0, n1), (n1, n2)) if s % 2]
    marks = {
        "blocks": [list(range(n1)), list(range(n1, n))],
        "u": u,
        "v": v,
        "u_prime": u ^ 1,
        "v_prime": n1 + 1,
        "apexes": apexes,
    }
    special = [[u ^ 1, n1 + 1], [u, v]]
    if len(apexes) == 2:
        special.append(apexes)
    used = {x for part in special for x in part}
    marks["partition"] = special + [[x for x in range(n) if x not in used]]
    return Construction(g, marks)


def hat_minimizer_4(n: int) -> Graph:
    return build_hat_minimizer_4(n).graph


def two_block_graph(n1: int, n2: int, x: int, y: int) -> Graph:
    """Blocks of orders n1 and n2 joined by an edge from local x in the first block
    to local y in the second."""
    base = disjoint_union(cocktail_block(n1), cocktail_block(n2))
    return base.add_edge(x, n1 + y)


# ---------------------------------------------------------------- CP paths and cycles


@dataclass(frozen=True)
class ConnectorSpec:
    pairs: tuple[tuple[int, int], ...]
    aligned: bool = True

    @classmethod
    def aligned_default(cls, l: int) -> ConnectorSpec:
        return cls(tuple((0, 1) for _ in range(l)), True)


def _check_connectors(l: int, m: int, spec: ConnectorSpec) -> None:
    if len(spec.pairs) != l:
        raise ValueError(f"need {l} connector pairs, got {len(spec.pairs)}")
    for u, v in spec.pairs:
        if u == v or not (0 <= u < m and 0 <= v < m):
            raise ValueError(f"invalid connector pair ({u}, {v}) for block order {m}")
        if spec.aligned and u ^ 1 != v:
            raise ValueError(f"aligned pair ({u}, {v}) is adjacent inside the block")


def _cp_chain(l: int, m: int, spec: ConnectorSpec | None, closed: bool) -> Construction:
    if m % 2 or m < 2:
        raise ValueError("block order must be even")
    if l * m > MAX_VERTICES:
        raise GraphError(f"{l * m} vertices exceeds {MAX_VERTICES}")
    spec = spec or ConnectorSpec.aligned_default(l)
    _check_connectors(l, m, spec)
    base = disjoint_union(*([cocktail_party(m)] * l))
    us = [i * m + spec.pairs[i][0] for i in range(l)]
    vs = [i * m + spec.pairs[i][1] for i in range(l)]
    links = [(vs[i], us[i + 1]) for i in range(l - 1)]
    if closed:
        links.append((vs[-1], us[0]))
    g = base.add_edges(links)
    return Construction(g, {
        "blocks": [list(range(i * m, (i + 1) * m)) for i in range(l)],
        "u": us,
        "v": vs,
        "links": links,
    })


def build_cp_path(l: int, m: int, spec: ConnectorSpec | None = None) -> Construction:
    if l < 1:
        raise ValueError("a CP-path needs at least one block")
    return _cp_chain(l, m, spec, False)


def build_cp_cycle(l: int, m: int, spec: ConnectorSpec | None = None) -> Construction:
    if l < 2:
        raise ValueError("a CP-cycle needs at least two blocks")
    return _cp_chain(l, m, spec, True)


def cp_path(l: int, m: int, spec: ConnectorSpec | None = None) -> Graph:
    return build_cp_path(l, m, spec).graph


def cp_cycle(l: int, m: int, spec: ConnectorSpec | None = None) -> Graph:
    return build_cp_cycle(l, m, spec).graph


def cp_cycle_partition(l: int, m: int) -> list[list[int]]:
    """Connectors versus everything else for the aligned CP-cycle."""
    c = build_cp_cycle(l, m)
    conn = sorted(c.landmarks["u"] + c.landmarks["v"])
    return [conn, [x for x in range(l * m) if x not in conn]]


# ---------------------------------------------------------------- five-block gadgets

GADGET_KINDS = ("fig7", "fig8", "fig9")


def build_connector_gadget(kind: str, m: int) -> Construction:
    """Five cocktail party blocks of order m around a central block.

    Block i occupies i*m..i*m+m-1; block 0 is central with non-adjacent pairs
    (u1, v1) = (0, 1) and (u2, v2) = (2, 3). Outer blocks 1..4 carry the
    connectors a, b, c, d at their local vertex 0, whose non-neighbors a', b',
    c', d' are local vertex 1.

    fig7: a-u1, v1-b, v2-c, d-u2 (two non-adjacent connector pairs)
    fig8: a-u1, d-u1, v1-b, v1-c (both members of one pair carry two edges)
    fig9: a-u1, v1-b, v1-c, v1-d (one vertex carries three external edges)
    """
    if kind not in GADGET_KINDS:
        raise ValueError(f"unknown gadget kind {kind!r}; expected one of {GADGET_KINDS}")
    if m % 2 or m < 4:
        raise ValueError("block order must be even and at least 4")
    base = disjoint_union(*([cocktail_party(m)] * 5))
    u1, v1, u2, v2 = 0, 1, 2, 3
    a, b, c, d = m, 2 * m, 3 * m, 4 * m
    if kind == "fig7":
        links = [(a, u1), (v1, b), (v2, c), (d, u2)]
        central = [u1, u2, v1, v2]
    elif kind == "fig8":
        links = [(a, u1), (d, u1), (v1, b), (v1, c)]
        central = [u1, v1]
    else:
        links = [(a, u1), (v1, b), (v1, c), (v1, d)]
        central = [u1, v1]
    g = base.add_edges(links)
    outer = [a, b, c, d]
    outer_partners = [x + 1 for x in outer]
    taken = set(central) | set(outer) | set(outer_partners)
    parts = [
        outer,
        outer_partners,
        [x for x in range(m, 5 * m) if x not in taken],
        central,
        [x for x in range(m) if x not in taken],
    ]
    return Construction(g, {
        "blocks": [list(range(i * m, (i + 1) * m)) for i in range(5)],
        "links": links,
        "connectors": {"a": a, "b": b, "c": c, "d": d, "u1": u1, "v1": v1, "u2": u2, "v2": v2},
        "partition": [p for p in parts if p],
    })


def connector_gadget(kind: str, m: int) -> Graph:
    return build_connector_gadget(kind, m).graph


# ---------------------------------------------------------------- spectral maximizer


def circulant_regular(s: int, d: int) -> Graph:
    """A d-regular graph on s vertices: circulant with offsets 1..d/2, plus the
    antipodal matching when d is odd (s must then be even)."""
    if not 0 <= d < s or (d * s) % 2:
        raise ValueError(f"no {d}-regular graph on {s} vertices")
    edges = set()
    for v in range(s):
        for off in range(1, d // 2 + 1):
            w = (v + off) % s
            edges.add((min(v, w), max(v, w)))
        if d % 2:
            w = (v + s // 2) % s
            edges.add((min(v, w), max(v, w)))
    return Graph.from_edges(s, sorted(edges))


def build_spectral_maximizer(n: int, s: int, d: int) -> Construction:
    if not 0 < s <= n:
        raise ValueError(f"need 0 < s <= n, got s={s}, n={n}")
    if (d * s) % 2 or not 0 <= d < s:
        raise ValueError(f"no {d}-regular graph on {s} vertices")
    g = join(circulant_regular(s, d), Graph.complete(n - s)) if n > s else circulant_regular(s, d)
    return Construction(g, {"regular_part": list(range(s)), "clique": list(range(s, n))})


def spectral_maximizer(n: int, s: int, d: int) -> Graph:
    return build_spectral_maximizer(n, s, d).graph
