"""Cycle and path structure: girth, circumference, spectra, fixed-length search.

Fixed-length searches are exact depth-bounded DFS up to ``exact_threshold``
edges.  Above it a rotation-extension long-path heuristic with chord-based
shortening is tried, and a negative answer is reported as inexact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .graph_core import (
    Graph,
    bfs_layers,
    bipartition,
    components,
    induced,
    iter_bits,
    lowest_bit,
)

__all__ = [
    "CycleStats",
    "PancyclicityClass",
    "PathQuery",
    "CycleSearch",
    "BipanconnectedResult",
    "EXACT_THRESHOLD",
    "girth",
    "cycle_stats",
    "search_cycle",
    "find_cycle_of_length",
    "find_path_of_length",
    "find_odd_cycle",
    "classify_pancyclicity",
    "is_bipanconnected",
    "is_cycle",
    "is_path",
]

EXACT_THRESHOLD = 20
# subset dynamic programming is used for spectra up to this order
DP_ORDER_LIMIT = 14


@dataclass(frozen=True)
class CycleStats:
    girth: int | None
    circumference: int | None
    longest_odd: int | None
    longest_even: int | None
    spectrum: frozenset[int]
    exact: bool = True

    @classmethod
    def from_spectrum(cls, spectrum, girth=None, exact=True) -> "CycleStats":
        lengths = frozenset(spectrum)
        if not lengths:
            return cls(girth, None, None, None, lengths, exact)
        odd = [l for l in lengths if l % 2]
        even = [l for l in lengths if not l % 2]
        return cls(
            girth if girth is not None else min(lengths),
            max(lengths),
            max(odd) if odd else None,
            max(even) if even else None,
            lengths,
            exact,
        )

    def to_dict(self) -> dict:
        return {
            "girth": self.girth,
            "circumference": self.circumference,
            "longest_odd": self.longest_odd,
            "longest_even": self.longest_even,
            "spectrum": sorted(self.spectrum),
            "exact": self.exact,
        }


@dataclass(frozen=True)
class PancyclicityClass:
    tag: str  # pancyclic | weakly_pancyclic | neither | acyclic
    missing_lengths: frozenset[int] = field(default_factory=frozenset)


@dataclass(frozen=True)
class PathQuery:
    x: int
    y: int
    length: int

    def __post_init__(self):
        if self.x == self.y:
            raise ValueError("path endpoints must differ")
        if self.length < 1:
            raise ValueError("path length must be at least 1")


@dataclass(frozen=True)
class CycleSearch:
    cycle: tuple[int, ...] | None
    exact: bool


@dataclass(frozen=True)
class BipanconnectedResult:
    holds: bool
    counterexample: PathQuery | None = None

    def __bool__(self):
        return self.holds


# -- validators -------------------------------------------------------------


def is_cycle(g: Graph, seq: Sequence[int]) -> bool:
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    return all(g.has_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq)))


def is_path(g: Graph, seq: Sequence[int]) -> bool:
    if len(seq) < 2 or len(set(seq)) != len(seq):
        return False
    return all(g.has_edge(seq[i], seq[i + 1]) for i in range(len(seq) - 1))


# -- girth ----------------------------------------------------------------


def girth(g: Graph) -> int | None:
    rows = g.rows
    n = g.order
    for u in range(n):
        r = rows[u]
        for v in iter_bits(r >> (u + 1)):
            if r & rows[u + 1 + v]:
                return 3
    for u in range(n):
        for v in range(u + 1, n):
            if (rows[u] & rows[v]).bit_count() >= 2:
                return 4
    best = None
    for root in range(n):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        for u in queue:
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in iter_bits(rows[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


# -- exact spectrum via subset DP ------------------------------------------------


def _dp_spectrum(g: Graph, cap: int) -> set[int]:
    """All cycle lengths <= cap.  Paths start at the cycle's smallest vertex."""
    rows = g.rows
    n = g.order
    full = g.full_mask
    wanted = set(range(3, cap + 1))
    found: set[int] = set()
    for s in range(n):
        if found >= wanted:
            break
        higher = full & ~((2 << s) - 1)
        if (rows[s] & higher).bit_count() < 2:
            continue
        frontier = {1 << s: 1 << s}
        size = 1
        while frontier and size < cap:
            nxt: dict[int, int] = {}
            for mask, ends in frontier.items():
                for v in iter_bits(ends):
                    for w in iter_bits(rows[v] & higher & ~mask):
                        nm = mask | (1 << w)
                        nxt[nm] = nxt.get(nm, 0) | (1 << w)
            size += 1
            if size >= 3 and size not in found:
                closing = rows[s]
                if any(ends & closing for ends in nxt.values()):
                    found.add(size)
            frontier = nxt
    return found


def _two_core(g: Graph, mask: int | None = None) -> int:
    rows = g.rows
    alive = g.full_mask if mask is None else mask
    changed = True
    while changed:
        changed = False
        for u in iter_bits(alive):
            if (rows[u] & alive).bit_count() < 2:
                alive &= ~(1 << u)
                changed = True
    return alive


# -- fixed-length DFS ------------------------------------------------------------


def _within(layers: list[int]) -> list[int]:
    out = []
    acc = 0
    for layer in layers:
        acc |= layer
        out.append(acc)
    return out


def _dfs_cycle(g: Graph, length: int, core: int) -> tuple[int, ...] | None:
    rows = g.rows
    for s in iter_bits(core):
        allowed = core & ~((2 << s) - 1)
        if (rows[s] & allowed).bit_count() < 2:
            continue
        within = _within(bfs_layers(g, s, allowed | (1 << s)))

        def reach(r: int) -> int:
            return within[r] if r < len(within) else within[-1]

        path = [s]
        used = 1 << s
        stack = [rows[s] & allowed & reach(length - 1)]
        while stack:
            cand = stack[-1]
            if not cand:
                stack.pop()
                used &= ~(1 << path.pop())
                continue
            w = lowest_bit(cand)
            stack[-1] = cand ^ (1 << w)
            path.append(w)
            d = len(path) - 1
            if d == length - 1:
                if (rows[w] >> s) & 1 and path[1] < w:
                    return tuple(path)
                path.pop()
                continue
            used |= 1 << w
            stack.append(rows[w] & allowed & ~used & reach(length - d - 1))
    return None


def _dfs_path(g: Graph, x: int, y: int, length: int, allowed: int) -> tuple[int, ...] | None:
    rows = g.rows
    if length == 1:
        return (x, y) if (rows[x] >> y) & 1 else None
    within = _within(bfs_layers(g, y, allowed | (1 << x) | (1 << y)))

    def reach(r: int) -> int:
        return within[r] if r < len(within) else within[-1]

    ybit = 1 << y
    path = [x]
    used = (1 << x) | ybit
    stack = [rows[x] & allowed & ~used & reach(length - 1)]
    while stack:
        cand = stack[-1]
        if not cand:
            stack.pop()
            used &= ~(1 << path.pop())
            continue
        w = lowest_bit(cand)
        stack[-1] = cand ^ (1 << w)
        path.append(w)
        d = len(path) - 1
        if d == length - 1:
            if rows[w] & ybit:
                return tuple(path) + (y,)
            path.pop()
            continue
        used |= 1 << w
        stack.append(rows[w] & allowed & ~used & reach(length - d - 1))
    return None


# -- heuristic for long cycles ------------------------------------------------


def _shorten_cycle(g: Graph, cycle: list[int], length: int) -> list[int] | None:
    """Cut a cycle down to exactly ``length`` using chords, greedily."""
    while len(cycle) > length:
        L = len(cycle)
        best = None
        for i in range(L):
            for j in range(i + 2, L):
                if i == 0 and j == L - 1:
                    continue
                if not g.has_edge(cycle[i], cycle[j]):
                    continue
                for piece in (cycle[i:j + 1], cycle[j:] + cycle[:i + 1]):
                    if len(piece) == length:
                        return piece
                    if len(piece) > length and (best is None or len(piece) < len(best)):
                        best = piece
        if best is None:
            return None
        cycle = best
    return cycle if len(cycle) == length else None


def _rotation_extension(g: Graph, length: int, core: int, rng: random.Random,
                        attempts: int = 32) -> tuple[int, ...] | None:
    rows = g.rows
    verts = list(iter_bits(core))
    if len(verts) < length:
        return None
    max_steps = 20 * len(verts)
    for _ in range(attempts):
        start = rng.choice(verts)
        path = [start]
        on = 1 << start
        for _step in range(max_steps):
            if len(path) >= length and g.has_edge(path[-1], path[-length]):
                return tuple(path[-length:])
            end = path[-1]
            ext = rows[end] & core & ~on
            if ext:
                choices = list(iter_bits(ext))
                w = rng.choice(choices)
                path.append(w)
                on |= 1 << w
                continue
            if len(path) > length and g.has_edge(path[0], end):
                cut = _shorten_cycle(g, list(path), length)
                if cut is not None:
                    return tuple(cut)
            pos = [i for i, p in enumerate(path[:-2]) if g.has_edge(end, p)]
            if not pos:
                break
            i = rng.choice(pos)
            path[i + 1:] = reversed(path[i + 1:])
        for i in range(len(path) - length + 1):
            if g.has_edge(path[i], path[i + length - 1]):
                return tuple(path[i:i + length])
    return None


# -- public search API -------------------------------------------------------


def search_cycle(g: Graph, length: int, *, exact_threshold: int = EXACT_THRESHOLD,
                 seed: int = 0) -> CycleSearch:
    """Look for a cycle with exactly ``length`` vertices.

    The returned vertex sequence starts at the cycle's smallest vertex and
    is the first one met by an ascending DFS.
    """
    if length < 3:
        raise ValueError(f"cycle length must be at least 3, got {length}")
    if length > g.order:
        return CycleSearch(None, True)
    core = _two_core(g)
    if core.bit_count() < length:
        return CycleSearch(None, True)
    # pendant trees never carry odd cycles, so the whole graph decides parity
    if length % 2 and bipartition(g) is not None:
        return CycleSearch(None, True)
    if length <= exact_threshold:
        return CycleSearch(_dfs_cycle(g, length, core), True)
    found = _rotation_extension(g, length, core, random.Random(seed))
    return CycleSearch(found, found is not None)


def find_cycle_of_length(g: Graph, length: int, **kwargs) -> tuple[int, ...] | None:
    return search_cycle(g, length, **kwargs).cycle


def find_path_of_length(g: Graph, q: PathQuery,
                        exact_threshold: int = EXACT_THRESHOLD) -> tuple[int, ...] | None:
    """x-y path with exactly ``q.length`` edges, or ``None``.

    Exact for lengths up to ``exact_threshold``; longer queries still run the
    DFS, which is exact but may be slow.
    """
    x, y, length = q.x, q.y, q.length
    for v in (x, y):
        if not 0 <= v < g.order:
            raise ValueError(f"vertex {v} out of range")
    if length + 1 > g.order:
        return None
    layers = bfs_layers(g, y)
    depth = next((i for i, layer in enumerate(layers) if (layer >> x) & 1), None)
    if depth is None or depth > length:
        return None
    comp = 0
    for layer in layers:
        comp |= layer
    if (depth - length) % 2 and bipartition(induced(g, iter_bits(comp))) is not None:
        return None
    return _dfs_path(g, x, y, length, comp)


def find_odd_cycle(g: Graph) -> tuple[int, ...] | None:
    """Some odd cycle (from a BFS conflict edge), or ``None`` if bipartite."""
    rows = g.rows
    remaining = g.full_mask
    while remaining:
        root = lowest_bit(remaining)
        layers = bfs_layers(g, root, remaining)
        for depth, layer in enumerate(layers):
            for u in iter_bits(layer):
                clash = rows[u] & layer
                if not clash:
                    continue
                w = lowest_bit(clash)
                left, right = [u], [w]
                d = depth
                while left[-1] != right[-1]:
                    prev = layers[d - 1]
                    left.append(lowest_bit(rows[left[-1]] & prev))
                    right.append(lowest_bit(rows[right[-1]] & prev))
                    d -= 1
                return tuple(left + right[-2::-1])
        for layer in layers:
            remaining &= ~layer
    return None


def cycle_stats(g: Graph, length_cap: int | None = None, *,
                exact_threshold: int = EXACT_THRESHOLD) -> CycleStats:
    """Girth, circumference, longest odd/even cycle and the cycle spectrum.

    The spectrum is restricted to lengths ``<= min(order, length_cap)``.
    """
    n = g.order
    cap = n if length_cap is None else min(n, length_cap)
    if cap < 3:
        return CycleStats.from_spectrum(())
    core = _two_core(g)
    if not core:
        return CycleStats.from_spectrum(())
    if n <= DP_ORDER_LIMIT:
        return CycleStats.from_spectrum(_dp_spectrum(g, cap))
    spectrum = set()
    exact = True
    bip = bipartition(g) is not None
    for length in range(3, cap + 1):
        if bip and length % 2:
            continue
        res = search_cycle(g, length, exact_threshold=exact_threshold)
        if res.cycle is not None:
            spectrum.add(length)
        elif not res.exact:
            exact = False
    return CycleStats.from_spectrum(spectrum, girth(g) if spectrum else None, exact)


def classify_pancyclicity(g: Graph) -> PancyclicityClass:
    stats = cycle_stats(g)
    if not stats.spectrum:
        return PancyclicityClass("acyclic", frozenset())
    full_gaps = frozenset(range(3, g.order + 1)) - stats.spectrum
    if not full_gaps:
        return PancyclicityClass("pancyclic", frozenset())
    weak_gaps = frozenset(range(stats.girth, stats.circumference + 1)) - stats.spectrum
    if not weak_gaps:
        return PancyclicityClass("weakly_pancyclic", full_gaps)
    return PancyclicityClass("neither", weak_gaps)


# -- bipanconnectedness -----------------------------------------------------------


def _dp_path_lengths(g: Graph, x: int) -> list[int]:
    """Bitmask per endpoint y of the lengths of simple x-y paths."""
    rows = g.rows
    lengths = [0] * g.order
    frontier = {1 << x: 1 << x}
    edges = 0
    while frontier:
        nxt: dict[int, int] = {}
        for mask, ends in frontier.items():
            for v in iter_bits(ends):
                for w in iter_bits(rows[v] & ~mask):
                    nm = mask | (1 << w)
                    nxt[nm] = nxt.get(nm, 0) | (1 << w)
        edges += 1
        for ends in nxt.values():
            for y in iter_bits(ends):
                lengths[y] |= 1 << edges
        frontier = nxt
    return lengths


def _required_lengths(x_in_a: bool, y_in_a: bool, a: int, b: int) -> range:
    if x_in_a != y_in_a:
        return range(3, 2 * b, 2)
    if not x_in_a:
        return range(2, 2 * b - 1, 2)
    return range(2, min(2 * b, 2 * a - 2) + 1, 2)


def is_bipanconnected(g: Graph) -> BipanconnectedResult:
    """Check every pair for paths of every feasible parity-correct length.

    A length counts as feasible when the alternating path fits into the
    part sizes, on top of the caps 2|B|-1, 2|B|-2 and 2|B|.
    """
    bp = bipartition(g)
    if bp is None:
        raise ValueError("is_bipanconnected needs a bipartite graph")
    a, b = len(bp.part_a), len(bp.part_b)
    if b < 2:
        raise ValueError("bipanconnectedness needs both parts of size at least 2")
    small = g.order <= DP_ORDER_LIMIT
    for x in range(g.order):
        table = _dp_path_lengths(g, x) if small else None
        for y in range(x + 1, g.order):
            for length in _required_lengths(x in bp.part_a, y in bp.part_a, a, b):
                if small:
                    ok = (table[y] >> length) & 1
                else:
                    ok = find_path_of_length(g, PathQuery(x, y, length)) is not None
                if not ok:
                    return BipanconnectedResult(False, PathQuery(x, y, length))
    return BipanconnectedResult(True)


def smallest_component_first(g: Graph) -> list[frozenset[int]]:
    return sorted(components(g), key=lambda c: (len(c), min(c)))
