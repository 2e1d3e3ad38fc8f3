"""Immutable simple graphs with bitset adjacency rows.

Row ``u`` of a :class:`Graph` is a Python ``int`` whose bit ``v`` is set iff
``{u, v}`` is an edge.  Everything else in the package is written against
this representation, so the helpers here stay small and allocation-light.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "DegreeStats",
    "Bipartition",
    "iter_bits",
    "mask_of",
    "complement",
    "induced",
    "common_neighborhood",
    "connectivity",
    "cut_vertex",
    "is_connected",
    "bipartition",
    "components",
    "bfs_layers",
    "disjoint_union",
    "random_graph",
]

# above this order the numpy paths beat per-bit Python loops
_NUMPY_CUTOVER = 96


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Simple undirected graph on vertices ``0..order-1``.

    Instances are immutable.  ``labels`` optionally maps each vertex to a
    vertex of a parent graph (set by :func:`induced`) so embeddings found in
    a slice can be reported in the coordinates of the original graph.
    Labels do not take part in equality or hashing.
    """

    __slots__ = ("_order", "_rows", "_labels", "_matrix", "_hash")

    def __init__(self, order: int, rows: Sequence[int], labels: Sequence[int] | None = None,
                 *, check: bool = True):
        if order < 0:
            raise ValueError(f"order must be non-negative, got {order}")
        rows = tuple(rows)
        if len(rows) != order:
            raise ValueError(f"expected {order} rows, got {len(rows)}")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != order:
                raise ValueError("labels must have one entry per vertex")
        self._order = order
        self._rows = rows
        self._labels = labels
        self._matrix = None
        self._hash = None
        if check:
            self._validate()

    def _validate(self) -> None:
        full = (1 << self._order) - 1
        for u, r in enumerate(self._rows):
            if r < 0 or r & ~full:
                raise ValueError(f"row {u} has bits outside 0..{self._order - 1}")
            if (r >> u) & 1:
                raise ValueError(f"loop at vertex {u}")
        if self._order > _NUMPY_CUTOVER:
            m = self.matrix
            if not np.array_equal(m, m.T):
                raise ValueError("adjacency is not symmetric")
            return
        for u, r in enumerate(self._rows):
            for v in iter_bits(r):
                if not (self._rows[v] >> u) & 1:
                    raise ValueError(f"edge ({u}, {v}) is not symmetric")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge ({u}, {v}) out of range for order {order}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, rows, check=False)

    @classmethod
    def from_matrix(cls, matrix, *, check: bool = True) -> "Graph":
        m = np.asarray(matrix, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("adjacency matrix must be square")
        n = m.shape[0]
        if check:
            if m.diagonal().any():
                raise ValueError("adjacency matrix has loops")
            if not np.array_equal(m, m.T):
                raise ValueError("adjacency is not symmetric")
        g = cls(n, _rows_from_matrix(m), check=False)
        g._matrix = m.copy()
        g._matrix.setflags(write=False)
        return g

    @classmethod
    def complete(cls, order: int) -> "Graph":
        full = (1 << order) - 1
        return cls(order, [full ^ (1 << u) for u in range(order)], check=False)

    @classmethod
    def empty(cls, order: int) -> "Graph":
        return cls(order, [0] * order, check=False)

    @classmethod
    def cycle(cls, order: int) -> "Graph":
        if order < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(order, [(i, (i + 1) % order) for i in range(order)])

    @classmethod
    def path(cls, order: int) -> "Graph":
        return cls.from_edges(order, [(i, i + 1) for i in range(order - 1)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        left = (1 << a) - 1
        right = ((1 << (a + b)) - 1) ^ left
        return cls(a + b, [right] * a + [left] * b, check=False)

    @classmethod
    def book(cls, n: int) -> "Graph":
        """B_n: base ``{0, 1}`` plus pages ``2..n+1``."""
        edges = [(0, 1)] + [(b, p) for p in range(2, n + 2) for b in (0, 1)]
        return cls.from_edges(n + 2, edges)

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    # -- accessors --------------------------------------------------------

    @property
    def order(self) -> int:
        return self._order

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def labels(self) -> tuple[int, ...]:
        if self._labels is None:
            return tuple(range(self._order))
        return self._labels

    def label(self, v: int) -> int:
        return v if self._labels is None else self._labels[v]

    def map_back(self, vertices: Iterable[int]) -> list[int]:
        return [self.label(v) for v in vertices]

    @property
    def full_mask(self) -> int:
        return (1 << self._order) - 1

    @property
    def matrix(self) -> np.ndarray:
        """Read-only boolean adjacency matrix (computed once)."""
        if self._matrix is None:
            m = _matrix_from_rows(self._rows, self._order)
            m.setflags(write=False)
            self._matrix = m
        return self._matrix

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._rows[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self._rows]

    def degree_stats(self) -> "DegreeStats":
        degs = sorted(self.degrees())
        if not degs:
            return DegreeStats(0, 0, ())
        return DegreeStats(degs[0], degs[-1], tuple(degs))

    @property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, r in enumerate(self._rows):
            for v in iter_bits(r >> (u + 1)):
                yield u, u + 1 + v

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is this graph's vertex ``perm[i]``."""
        pos = [0] * self._order
        for i, v in enumerate(perm):
            pos[v] = i
        rows = []
        for v in perm:
            r = 0
            for w in iter_bits(self._rows[v]):
                r |= 1 << pos[w]
            rows.append(r)
        return Graph(self._order, rows, check=False)

    def add_vertex(self, neighborhood: int) -> "Graph":
        """New graph with one extra vertex adjacent to the bitmask ``neighborhood``."""
        n = self._order
        bit = 1 << n
        rows = [r | bit if (neighborhood >> u) & 1 else r for u, r in enumerate(self._rows)]
        rows.append(neighborhood)
        return Graph(n + 1, rows, check=False)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._order == other._order and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._order, self._rows))
        return self._hash

    def __repr__(self):
        return f"Graph(order={self._order}, edges={self.edge_count})"


@dataclass(frozen=True)
class DegreeStats:
    min_degree: int
    max_degree: int
    degree_sequence: tuple[int, ...]


@dataclass(frozen=True)
class Bipartition:
    part_a: frozenset[int]
    part_b: frozenset[int]

    def to_dict(self) -> dict:
        return {"part_a": sorted(self.part_a), "part_b": sorted(self.part_b)}


def _rows_from_matrix(m: np.ndarray) -> list[int]:
    if m.shape[0] == 0:
        return []
    packed = np.packbits(m, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _matrix_from_rows(rows: Sequence[int], n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((0, 0), dtype=bool)
    nbytes = (n + 7) // 8
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    arr = np.frombuffer(buf, dtype=np.uint8).reshape(n, nbytes)
    return np.unpackbits(arr, axis=1, count=n, bitorder="little").astype(bool)


# -- operations -----------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = g.full_mask
    rows = [full ^ r ^ (1 << u) for u, r in enumerate(g.rows)]
    out = Graph(g.order, rows, g._labels, check=False)
    if g._matrix is not None and g.order:
        m = ~g._matrix
        np.fill_diagonal(m, False)
        m.setflags(write=False)
        out._matrix = m
    return out


def induced(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices`` (relabelled in increasing order).

    The result's labels point back to ``g``'s own labels, so nested slices
    compose to the coordinates of the outermost graph.
    """
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.order:
            raise ValueError(f"vertex {v} out of range for order {g.order}")
    labels = [g.label(v) for v in vs]
    k = len(vs)
    if k > _NUMPY_CUTOVER:
        idx = np.asarray(vs)
        sub = g.matrix[np.ix_(idx, idx)]
        out = Graph(k, _rows_from_matrix(sub), labels, check=False)
        sub.setflags(write=False)
        out._matrix = sub
        return out
    pos = {v: i for i, v in enumerate(vs)}
    smask = mask_of(vs)
    rows = []
    for v in vs:
        r = 0
        for w in iter_bits(g.rows[v] & smask):
            r |= 1 << pos[w]
        rows.append(r)
    return Graph(k, rows, labels, check=False)


def common_neighborhood(g: Graph, u: int, v: int) -> frozenset[int]:
    if u == v:
        raise ValueError("common neighborhood needs two distinct vertices")
    return frozenset(iter_bits(g.rows[u] & g.rows[v]))


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for h in graphs:
        rows.extend(r << offset for r in h.rows)
        offset += h.order
    return Graph(offset, rows, check=False)


def random_graph(order: int, density: float, seed: int | None = None) -> Graph:
    """Erdős–Rényi G(order, density) from a seeded numpy generator."""
    if not 0.0 <= density <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    m = np.zeros((order, order), dtype=bool)
    block = 512
    for start in range(0, order, block):
        stop = min(order, start + block)
        m[start:stop] = rng.random((stop - start, order), dtype=np.float32) < density
    m = np.triu(m, 1)
    m |= m.T
    return Graph.from_matrix(m, check=False)


def bfs_layers(g: Graph, root: int, allowed: int | None = None) -> list[int]:
    """Distance layers (as bitmasks) from ``root`` inside the vertex mask ``allowed``."""
    rows = g.rows
    if allowed is None:
        allowed = g.full_mask
    seen = 1 << root
    frontier = seen
    layers = [frontier]
    while True:
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= rows[u]
        nxt &= allowed & ~seen
        if not nxt:
            return layers
        seen |= nxt
        layers.append(nxt)
        frontier = nxt


def _reach(g: Graph, root: int, allowed: int) -> int:
    out = 0
    for layer in bfs_layers(g, root, allowed):
        out |= layer
    return out


def components(g: Graph) -> list[frozenset[int]]:
    """Connected components, largest first (ties broken by smallest vertex)."""
    remaining = g.full_mask
    comps = []
    while remaining:
        root = lowest_bit(remaining)
        comp = _reach(g, root, remaining)
        remaining &= ~comp
        comps.append(comp)
    comps.sort(key=lambda c: (-c.bit_count(), lowest_bit(c)))
    return [frozenset(iter_bits(c)) for c in comps]


def is_connected(g: Graph) -> bool:
    if g.order == 0:
        return True
    return _reach(g, 0, g.full_mask) == g.full_mask


def bipartition(g: Graph) -> Bipartition | None:
    """Two-colouring with ``|A| >= |B|`` or ``None`` if ``g`` has an odd cycle.

    Each component contributes its larger colour class to ``A``.
    """
    rows = g.rows
    remaining = g.full_mask
    part_a = part_b = 0
    while remaining:
        root = lowest_bit(remaining)
        layers = bfs_layers(g, root, remaining)
        even = odd = 0
        for i, layer in enumerate(layers):
            if i % 2:
                odd |= layer
            else:
                even |= layer
        remaining &= ~(even | odd)
        for side in (even, odd):
            for u in iter_bits(side):
                if rows[u] & side:
                    return None
        if even.bit_count() >= odd.bit_count():
            part_a |= even
            part_b |= odd
        else:
            part_a |= odd
            part_b |= even
    if part_a.bit_count() < part_b.bit_count():
        part_a, part_b = part_b, part_a
    return Bipartition(frozenset(iter_bits(part_a)), frozenset(iter_bits(part_b)))


def cut_vertex(g: Graph) -> int | None:
    """Smallest-discovery cut vertex of a connected graph, or ``None``.

    Tarjan low-points over a bitset DFS; the low-point scan over each
    vertex's neighbours is vectorised for large orders.
    """
    n = g.order
    if n < 3:
        return None
    rows = g.rows
    disc = [-1] * n
    parent = [-1] * n
    order = [0]
    disc[0] = 0
    unvisited = g.full_mask ^ 1
    stack = [0]
    while stack:
        u = stack[-1]
        cand = rows[u] & unvisited
        if cand:
            w = lowest_bit(cand)
            unvisited ^= 1 << w
            disc[w] = len(order)
            parent[w] = u
            order.append(w)
            stack.append(w)
        else:
            stack.pop()
    if unvisited:
        raise ValueError("cut_vertex expects a connected graph")

    if n > _NUMPY_CUTOVER:
        d = np.asarray(disc)
        low = np.empty(n, dtype=np.int64)
        m = g.matrix
        for start in range(0, n, 256):
            stop = min(n, start + 256)
            low[start:stop] = np.where(m[start:stop], d[None, :], n).min(axis=1)
        low = low.tolist()
    else:
        low = [min(disc[w] for w in iter_bits(rows[u])) for u in range(n)]
    for u in range(n):
        low[u] = min(low[u], disc[u])

    root_children = 0
    cut = None
    for u in reversed(order[1:]):
        p = parent[u]
        if low[u] < low[p]:
            low[p] = low[u]
        if p == 0:
            root_children += 1
        elif low[u] >= disc[p]:
            if cut is None or disc[p] < disc[cut]:
                cut = p
    if cut is None and root_children >= 2:
        cut = 0
    return cut


def _local_connectivity(g: Graph, s: int, t: int, limit: int) -> int:
    """Number of internally disjoint s-t paths (s, t non-adjacent), capped at ``limit``."""
    n = g.order
    rows = g.rows
    # split vertex v into v_in = 2v, v_out = 2v + 1
    flow: dict[tuple[int, int], int] = {}

    def cap(a: int, b: int) -> int:
        va, ia = divmod(a, 2)
        vb, ib = divmod(b, 2)
        if va == vb and ia == 0 and ib == 1:
            return n if va in (s, t) else 1
        if ia == 1 and ib == 0 and (rows[va] >> vb) & 1:
            return n
        return 0

    def residual_neighbors(a: int):
        v, io = divmod(a, 2)
        if io == 0:
            yield 2 * v + 1
            for w in iter_bits(rows[v]):
                yield 2 * w + 1
        else:
            yield 2 * v
            for w in iter_bits(rows[v]):
                yield 2 * w

    src, sink = 2 * s + 1, 2 * t
    total = 0
    while total < limit:
        prev = {src: None}
        queue = [src]
        found = False
        for a in queue:
            for b in residual_neighbors(a):
                if b in prev:
                    continue
                if cap(a, b) - flow.get((a, b), 0) + flow.get((b, a), 0) <= 0:
                    continue
                prev[b] = a
                if b == sink:
                    found = True
                    break
                queue.append(b)
            if found:
                break
        if not found:
            break
        b = sink
        while prev[b] is not None:
            a = prev[b]
            back = flow.get((b, a), 0)
            if back:
                flow[(b, a)] = back - 1
            else:
                flow[(a, b)] = flow.get((a, b), 0) + 1
            b = a
        total += 1
    return total


def connectivity(g: Graph, cap: int | None = None) -> int:
    """Vertex connectivity k(G), optionally capped: returns ``min(k(G), cap)``.

    Conventions: 0 for graphs with at most one vertex or that are
    disconnected, ``N - 1`` for ``K_N``.  With ``cap <= 2`` only a
    connectivity test and a cut-vertex search are run.
    """
    n = g.order
    if n <= 1 or not is_connected(g):
        return 0
    degs = g.degrees()
    if min(degs) == n - 1:
        k = n - 1
        return k if cap is None else min(k, cap)
    if cap is not None and cap <= 2:
        if cap <= 1:
            return cap
        return 1 if cut_vertex(g) is not None else 2
    best = min(degs)
    if cap is not None:
        best = min(best, cap)
    i = 0
    while i <= best and i < n:
        for j in range(i + 1, n):
            if not g.has_edge(i, j):
                best = min(best, _local_connectivity(g, i, j, best))
        i += 1
    return best
