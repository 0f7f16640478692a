"""Simple undirected graphs on at most 64 vertices stored as adjacency bitsets.

Also holds the canonical labeling used for isomorphism tests, the
isomorphism-free enumerator and graph6 encoding.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64
CANONICAL_CAP = 12
ENUMERATION_CAP = 9


class GraphError(ValueError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


_SMALL = 1 << 12
_BIT_TABLE = [tuple(i for i in range(12) if m >> i & 1) for m in range(_SMALL)]


def bit_list(mask: int) -> tuple[int, ...]:
    """Positions of set bits as a tuple (table lookup for small masks)."""
    if mask < _SMALL:
        return _BIT_TABLE[mask]
    return tuple(bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {i} has bits beyond n")
            if row >> i & 1:
                raise GraphError(f"loop at vertex {i}")
            for j in bits(row):
                if not self.adj[j] >> i & 1:
                    raise GraphError(f"asymmetric pair ({i}, {j})")

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << i) for i in range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if not 0 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i] >> (i + 1) << (i + 1))]

    def non_edges(self) -> list[tuple[int, int]]:
        full = self.full_mask
        out = []
        for i in range(self.n):
            rest = full & ~self.adj[i] & ~((1 << (i + 1)) - 1)
            out.extend((i, j) for j in bits(rest))
        return out

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    def max_degree(self) -> int:
        return max(self.degrees()) if self.n else 0

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def add_edge(self, u: int, v: int) -> Graph:
        return self.add_edges([(u, v)])

    def add_edges(self, pairs: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.adj)
        for u, v in pairs:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"invalid edge ({u}, {v})")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def remove_edges(self, pairs: Iterable[tuple[int, int]]) -> Graph:
        rows = list(self.adj)
        for u, v in pairs:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Subgraph induced on `vertices`, relabeled 0..len-1 in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            rows.append(mask_of(index[w] for w in bits(self.adj[v]) if w in index))
        return Graph(len(vertices), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex v renamed perm[v]."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabel needs a permutation of 0..n-1")
        return Graph._trusted(self.n, _permute_rows(self.adj, perm))

    def components(self) -> list[int]:
        """Vertex masks of the connected components, ordered by smallest vertex."""
        seen = 0
        out = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = 1 << v
            frontier = comp
            while frontier:
                nxt = 0
                for w in bits(frontier):
                    nxt |= self.adj[w]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for i, j in self.edges():
            a[i, j] = a[j, i] = 1.0
        return a

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> Graph:
        # skips validation; only for rows built from an already valid graph
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _permute_rows(adj: Sequence[int], perm: Sequence[int]) -> tuple[int, ...]:
    rows = [0] * len(adj)
    for v, row in enumerate(adj):
        m = 0
        for w in bit_list(row):
            m |= 1 << perm[w]
        rows[perm[v]] = m
    return tuple(rows)


def complement(g: Graph) -> Graph:
    full = g.full_mask
    return Graph._trusted(g.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(g.adj)))


def disjoint_union(*graphs: Graph) -> Graph:
    total = sum(h.n for h in graphs)
    if total > MAX_VERTICES:
        raise GraphError(f"union has {total} vertices, cap is {MAX_VERTICES}")
    rows: list[int] = []
    offset = 0
    for h in graphs:
        rows.extend(row << offset for row in h.adj)
        offset += h.n
    return Graph(total, tuple(rows))


def join(g1: Graph, g2: Graph) -> Graph:
    total = g1.n + g2.n
    if total > MAX_VERTICES:
        raise GraphError(f"join has {total} vertices, cap is {MAX_VERTICES}")
    low = (1 << g1.n) - 1
    high = ((1 << g2.n) - 1) << g1.n
    rows = [row | high for row in g1.adj] + [(row << g1.n) | low for row in g2.adj]
    return Graph(total, tuple(rows))


def kelmans(g: Graph, u: int, v: int) -> Graph:
    """Move every neighbor of v that is not a neighbor of u (other than u) over to u."""
    if u == v or not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError(f"invalid vertex pair ({u}, {v})")
    movable = g.adj[v] & ~g.adj[u] & ~(1 << u)
    if not movable:
        return g
    rows = list(g.adj)
    rows[v] &= ~movable
    rows[u] |= movable
    for x in bits(movable):
        rows[x] = rows[x] & ~(1 << v) | (1 << u)
    return Graph(g.n, tuple(rows))


# ---------------------------------------------------------------- canonical form


@dataclass(frozen=True)
class CanonicalForm:
    n: int
    data: bytes


def _refine(adj: Sequence[int], cells: list[int]) -> list[int]:
    """Coarsest equitable refinement of an ordered partition given as cell masks.

    Cells are split by the vector of neighbor counts into every current cell and
    the fragments are ordered by that vector, so the result depends only on the
    isomorphism type of (graph, ordered partition).
    """
    while True:
        k = len(cells)
        out = []
        for cell in cells:
            if cell & (cell - 1) == 0:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], int] = {}
            for v in bit_list(cell):
                row = adj[v]
                key = tuple((row & c).bit_count() for c in cells)
                groups[key] = groups.get(key, 0) | (1 << v)
            if len(groups) == 1:
                out.append(cell)
            else:
                out.extend(groups[key] for key in sorted(groups))
        cells = out
        if len(cells) == k:
            return cells


def _certificate(adj: Sequence[int], order: Sequence[int]) -> int:
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    cert = 0
    shift = 0
    for v in order:
        row = 0
        for w in bit_list(adj[v]):
            row |= 1 << pos[w]
        cert |= row << shift
        shift += n
    return cert


def _orbit_roots(n: int, gens: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in gens:
        for x in range(n):
            a, b = find(x), find(gamma[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


class _Search:
    """Partition backtracking with automorphism pruning."""

    def __init__(self, adj: Sequence[int], n: int) -> None:
        self.adj = adj
        self.n = n
        self.first: tuple[int, list[int]] | None = None
        self.best: tuple[int, list[int]] | None = None
        self.gens: list[list[int]] = []

    def run(self) -> None:
        n = self.n
        if n == 0:
            self.first = self.best = (0, [])
            return
        by_degree: dict[int, int] = {}
        for v in range(n):
            d = self.adj[v].bit_count()
            by_degree[d] = by_degree.get(d, 0) | (1 << v)
        cells = _refine(self.adj, [by_degree[d] for d in sorted(by_degree)])
        self._descend(cells, [])

    def _leaf(self, cells: list[int]) -> None:
        order = [c.bit_length() - 1 for c in cells]
        cert = _certificate(self.adj, order)
        if self.first is None:
            self.first = self.best = (cert, order)
            return
        for ref_cert, ref_order in (self.first, self.best):
            if cert == ref_cert:
                gamma = [0] * self.n
                for a, b in zip(ref_order, order):
                    gamma[a] = b
                if gamma not in self.gens:
                    self.gens.append(gamma)
                return
        if cert > self.best[0]:
            self.best = (cert, order)

    def _descend(self, cells: list[int], fixed: list[int]) -> None:
        if len(cells) == self.n:
            self._leaf(cells)
            return
        # target: first smallest non-singleton cell
        idx = min(
            (i for i, c in enumerate(cells) if c & (c - 1)),
            key=lambda i: cells[i].bit_count(),
        )
        target = cells[idx]
        tried: list[int] = []
        for v in bit_list(target):
            if tried:
                stab = [g for g in self.gens if all(g[x] == x for x in fixed)]
                if stab:
                    roots = _orbit_roots(self.n, stab)
                    if any(roots[v] == roots[t] for t in tried):
                        continue
            tried.append(v)
            child = cells[:idx] + [1 << v, target & ~(1 << v)] + cells[idx + 1:]
            self._descend(_refine(self.adj, child), fixed + [v])


def canonical_labeling(g: Graph) -> tuple[list[int], list[list[int]]]:
    """Return (order, generators): order[i] is the vertex placed at position i in
    the canonical relabeling; generators generate a subgroup of Aut(g) that
    includes everything needed to prune the search."""
    search = _Search(g.adj, g.n)
    search.run()
    assert search.best is not None
    return search.best[1], search.gens


def _certificate_int(g: Graph) -> int:
    search = _Search(g.adj, g.n)
    search.run()
    assert search.best is not None
    return search.best[0]


def canonical_graph(g: Graph) -> Graph:
    order, _ = canonical_labeling(g)
    return _apply_order(g, order)


def _upper_triangle_bytes(g: Graph) -> bytes:
    bitstring = []
    for j in range(1, g.n):
        for i in range(j):
            bitstring.append(g.adj[i] >> j & 1)
    out = bytearray()
    for k in range(0, len(bitstring), 8):
        chunk = bitstring[k:k + 8]
        chunk += [0] * (8 - len(chunk))
        byte = 0
        for b in chunk:
            byte = byte << 1 | b
        out.append(byte)
    return bytes(out)


def canonical_form(g: Graph, cap: int = CANONICAL_CAP) -> CanonicalForm:
    if g.n > cap:
        raise GraphError(f"canonical form capped at n <= {cap}, got {g.n}")
    return CanonicalForm(g.n, _upper_triangle_bytes(canonical_graph(g)))


def is_isomorphic(g: Graph, h: Graph, cap: int = CANONICAL_CAP) -> bool:
    if g.n != h.n or g.num_edges() != h.num_edges():
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g, cap) == canonical_form(h, cap)


def automorphism_orbits(g: Graph) -> list[int]:
    """Orbit representative (smallest member) of every vertex."""
    _, gens = canonical_labeling(g)
    return _orbit_roots(g.n, gens)


# ---------------------------------------------------------------- enumeration


def _pair_orbit_reps(g: Graph, gens: list[list[int]]) -> list[tuple[int, int]]:
    """One non-edge from each orbit of Aut(g) acting on non-edges."""
    pairs = g.non_edges()
    if not gens:
        return pairs
    index = {p: i for i, p in enumerate(pairs)}
    parent = list(range(len(pairs)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in gens:
        for i, (a, b) in enumerate(pairs):
            x, y = gamma[a], gamma[b]
            j = index[(x, y) if x < y else (y, x)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return [p for i, p in enumerate(pairs) if find(i) == i]


_LEVELS: dict[int, list[list[Graph]]] = {}


def _canonical_key(g: Graph) -> tuple[int, list[int]]:
    search = _Search(g.adj, g.n)
    search.run()
    return search.best


def _apply_order(g: Graph, order: list[int]) -> Graph:
    perm = [0] * g.n
    for i, v in enumerate(order):
        perm[v] = i
    return Graph._trusted(g.n, _permute_rows(g.adj, perm))


def graphs_with_edges(n: int, e: int, cap: int = ENUMERATION_CAP) -> list[Graph]:
    """All isomorphism classes on n vertices with exactly e edges, canonically
    labeled and sorted by certificate."""
    if n < 1:
        raise GraphError("n must be positive")
    if n > cap:
        raise GraphError(f"enumeration capped at n <= {cap}, got {n}")
    total = n * (n - 1) // 2
    if not 0 <= e <= total:
        return []
    if 2 * e > total:
        mirrored = []
        for h in graphs_with_edges(n, total - e, cap):
            c = complement(h)
            cert, order = _canonical_key(c)
            mirrored.append((cert, _apply_order(c, order)))
        return [h for _, h in sorted(mirrored, key=lambda t: t[0])]
    levels = _LEVELS.setdefault(n, [[Graph.empty(n)]])
    while len(levels) <= e:
        found: dict[int, Graph] = {}
        for parent in levels[-1]:
            _, gens = canonical_labeling(parent)
            for u, v in _pair_orbit_reps(parent, gens):
                rows = list(parent.adj)
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                child = Graph._trusted(n, tuple(rows))
                cert, order = _canonical_key(child)
                if cert not in found:
                    found[cert] = _apply_order(child, order)
        levels.append([found[c] for c in sorted(found)])
    return list(levels[e])


def enumerate_graphs(
    n: int,
    connected_only: bool = False,
    edge_counts: Iterable[int] | None = None,
    cap: int = ENUMERATION_CAP,
) -> Iterator[Graph]:
    """One graph per isomorphism class, ordered by edge count then certificate.

    `edge_counts` restricts the stream to the given edge counts, which is how
    callers shard the work.
    """
    total = n * (n - 1) // 2
    counts = range(total + 1) if edge_counts is None else sorted(set(edge_counts))
    for e in counts:
        for g in graphs_with_edges(n, e, cap):
            if not connected_only or g.is_connected():
                yield g


# ---------------------------------------------------------------- graph6


def _n_header(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])


def to_graph6(g: Graph) -> bytes:
    """graph6 encoding without a trailing newline."""
    bitstream = []
    for j in range(1, g.n):
        for i in range(j):
            bitstream.append(g.adj[i] >> j & 1)
    while len(bitstream) % 6:
        bitstream.append(0)
    body = bytearray()
    for k in range(0, len(bitstream), 6):
        value = 0
        for b in bitstream[k:k + 6]:
            value = value << 1 | b
        body.append(value + 63)
    return _n_header(g.n) + bytes(body)


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise GraphError("empty graph6 string")
    if any(c < 63 or c > 126 for c in data):
        raise GraphError("graph6 bytes must lie in 63..126")
    if data[0] == 126:
        if len(data) < 4 or data[1] == 126:
            raise GraphError("unsupported or truncated graph6 size header")
        n = (data[1] - 63) << 12 | (data[2] - 63) << 6 | (data[3] - 63)
        body = data[4:]
    else:
        n = data[0] - 63
        body = data[1:]
    if n > MAX_VERTICES:
        raise GraphError(f"graph6 declares {n} vertices, cap is {MAX_VERTICES}")
    need = n * (n - 1) // 2
    if len(body) != (need + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(need + 5) // 6}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def read_graph6_lines(text: str) -> list[Graph]:
    return [from_graph6(line) for line in text.splitlines() if line.strip()]
