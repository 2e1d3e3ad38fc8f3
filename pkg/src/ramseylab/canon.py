"""Canonical labelling by partition refinement, and isomorphism-class enumeration.

The canonical code of a graph is the tuple of adjacency rows after
relabelling, maximised over the leaves of an individualisation-refinement
tree.  Twin vertices and automorphisms discovered at equal leaves prune
sibling branches.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .graph_core import Graph, mask_of

__all__ = [
    "ENUMERATION_CAP",
    "canonical_code",
    "canonical_form",
    "canonical_graph",
    "are_isomorphic",
    "enumerate_graphs",
    "extend_classes",
]

ENUMERATION_CAP = 9

Code = tuple[int, ...]


def _refine(rows: list[int], cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbour counts into every cell until stable."""
    while True:
        masks = [mask_of(c) for c in cells]
        out: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            keyed = sorted((tuple((rows[v] & m).bit_count() for m in masks), v) for v in cell)
            start = 0
            for i in range(1, len(keyed) + 1):
                if i == len(keyed) or keyed[i][0] != keyed[start][0]:
                    out.append([v for _, v in keyed[start:i]])
                    start = i
            if len(out[-1]) != len(cell):
                changed = True
        cells = out
        if not changed:
            return cells


def _relabelled(rows: list[int], perm: list[int]) -> Code:
    pos = [0] * len(perm)
    for i, v in enumerate(perm):
        pos[v] = i
    code = []
    for v in perm:
        r = rows[v]
        out = 0
        while r:
            low = r & -r
            out |= 1 << pos[low.bit_length() - 1]
            r ^= low
        code.append(out)
    return tuple(code)


class _Search:
    def __init__(self, rows: list[int]):
        self.rows = rows
        self.n = len(rows)
        self.best: Code | None = None
        self.best_perm: list[int] | None = None
        self.autos: list[list[int]] = []

    def _twins(self, u: int, w: int) -> bool:
        rows = self.rows
        return rows[u] & ~(1 << w) == rows[w] & ~(1 << u)

    def _orbit_rep(self, v: int, prefix: list[int], seen: list[int]) -> bool:
        """True if v lies in the orbit of an already explored vertex."""
        if not seen:
            return False
        usable = [a for a in self.autos if all(a[p] == p for p in prefix)]
        if not usable:
            return False
        orbit = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for a in usable:
                y = a[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return any(s in orbit for s in seen)

    def run(self, cells: list[list[int]], prefix: list[int]) -> None:
        if len(cells) == self.n:
            perm = [c[0] for c in cells]
            code = _relabelled(self.rows, perm)
            if self.best is None or code > self.best:
                self.best, self.best_perm = code, perm
            elif code == self.best:
                auto = [0] * self.n
                for a, b in zip(self.best_perm, perm):
                    auto[a] = b
                self.autos.append(auto)
            return
        idx = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: len(cells[i]))
        target = cells[idx]
        seen: list[int] = []
        for v in target:
            if any(self._twins(v, s) for s in seen) or self._orbit_rep(v, prefix, seen):
                continue
            rest = [u for u in target if u != v]
            child = cells[:idx] + [[v], rest] + cells[idx + 1:]
            self.run(_refine(self.rows, child), prefix + [v])
            seen.append(v)


def _initial_cells(rows: list[int]) -> list[list[int]]:
    by_degree: dict[int, list[int]] = {}
    for v, r in enumerate(rows):
        by_degree.setdefault(r.bit_count(), []).append(v)
    return [by_degree[d] for d in sorted(by_degree)]


def _canon_rows(rows: list[int]) -> tuple[Code, list[int]]:
    if not rows:
        return (), []
    s = _Search(rows)
    s.run(_refine(rows, _initial_cells(rows)), [])
    return s.best, s.best_perm


def canonical_form(g: Graph) -> tuple[Code, tuple[int, ...]]:
    """(code, perm): position i of the canonical graph holds original vertex perm[i]."""
    code, perm = _canon_rows(list(g.rows))
    return code, tuple(perm)


def canonical_code(g: Graph) -> Code:
    return _canon_rows(list(g.rows))[0]


def canonical_graph(g: Graph) -> Graph:
    code = canonical_code(g)
    return Graph(g.order, code, check=False)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.order != h.order or g.edge_count != h.edge_count:
        return False
    return canonical_code(g) == canonical_code(h)


def _sort_key(g: Graph) -> tuple:
    return (g.edge_count, g.rows)


def extend_classes(parents: list[Graph], keep=None) -> tuple[list[Graph], int]:
    """Canonical one-vertex extensions of ``parents``.

    ``keep`` must be isomorphism-invariant; it filters candidates before they
    are canonicalised.  Returns the sorted classes and the number of candidate
    extensions examined.
    """
    found: dict[Code, Graph] = {}
    examined = 0
    for parent in parents:
        n = parent.order
        base = list(parent.rows)
        for nb in range(1 << n):
            examined += 1
            rows = base[:]
            for v in range(n):
                if nb >> v & 1:
                    rows[v] |= 1 << n
            rows.append(nb)
            if keep is not None and not keep(Graph(n + 1, rows, check=False)):
                continue
            code, _ = _canon_rows(rows)
            if code not in found:
                found[code] = Graph(n + 1, code, check=False)
    return sorted(found.values(), key=_sort_key), examined


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0, [], check=False),)
    return tuple(extend_classes(list(_level(n - 1)))[0])


def enumerate_graphs(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Graph]:
    """One canonical representative per isomorphism class on n vertices."""
    if n < 0:
        raise ValueError("order must be non-negative")
    if n > cap:
        raise ValueError(f"enumeration of order {n} exceeds the cap of {cap}")
    yield from _level(n)
