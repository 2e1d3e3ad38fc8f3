"""Book / K_{2,n} freeness through common neighbourhoods, and colouring evaluation.

A graph contains B_n iff some *edge* has n common neighbours, and contains
K_{2,n} iff some *pair* does.  The two scans below differ only in that
quantifier.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cycles import find_cycle_of_length
from .graph_core import Graph, complement, iter_bits

__all__ = [
    "TARGETS",
    "RamseyParams",
    "TwoColoring",
    "Witness",
    "find_book",
    "find_k2n",
    "find_red_target",
    "evaluate_coloring",
    "is_good_coloring",
]

TARGETS = ("book", "k2n")

# pair scans switch to blocked matrix products above this order
_MATMUL_CUTOVER = 64
_BLOCK = 256


@dataclass(frozen=True)
class RamseyParams:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if self.m < 3:
            raise ValueError(f"cycle length m must be at least 3, got {self.m}")

    @property
    def book_range(self) -> bool:
        """m odd, m >= 7 and n >= 2m - 3."""
        return self.m % 2 == 1 and self.m >= 7 and self.n >= 2 * self.m - 3

    @property
    def k2n_range(self) -> bool:
        """m odd, m >= 7, n >= 2m + 499 and n >= 3493."""
        return (self.m % 2 == 1 and self.m >= 7
                and self.n >= 2 * self.m + 499 and self.n >= 3493)

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m,
                "book_range": self.book_range, "k2n_range": self.k2n_range}


@dataclass(frozen=True)
class TwoColoring:
    """Red/blue colouring of K_N stored as its red graph."""

    red: Graph

    @property
    def order(self) -> int:
        return self.red.order

    @property
    def blue(self) -> Graph:
        return complement(self.red)


@dataclass(frozen=True)
class Witness:
    """Outcome of evaluating a colouring.

    ``pair``/``pages`` describe a red book (``pair`` is the base) or a red
    K_{2,n} (``pair`` is the side of size two); ``cycle`` is a blue cycle.
    """

    tag: str
    pair: tuple[int, int] | None = None
    pages: tuple[int, ...] = ()
    cycle: tuple[int, ...] = ()

    def validate(self, red: Graph, n: int | None = None, m: int | None = None,
                 target: str = "book") -> bool:
        """Re-check the embedding against the red graph.

        ``good_coloring`` witnesses are re-checked by running both searches.
        """
        if self.tag in ("red_book", "red_k2n"):
            if self.pair is None:
                return False
            x, y = self.pair
            verts = {x, y, *self.pages}
            if len(verts) != len(self.pages) + 2:
                return False
            if not all(0 <= v < red.order for v in verts):
                return False
            if n is not None and len(self.pages) < n:
                return False
            if self.tag == "red_book" and not red.has_edge(x, y):
                return False
            return all(red.has_edge(x, p) and red.has_edge(y, p) for p in self.pages)
        if self.tag == "blue_cycle":
            c = self.cycle
            if len(c) < 3 or len(set(c)) != len(c):
                return False
            if m is not None and len(c) != m:
                return False
            if not all(0 <= v < red.order for v in c):
                return False
            return all(not red.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))
        if self.tag == "good_coloring":
            if n is None or m is None:
                raise ValueError("validating a good colouring needs n and m")
            return (find_red_target(red, n, target) is None
                    and find_cycle_of_length(complement(red), m) is None)
        return False

    def relabel(self, g: Graph) -> "Witness":
        """Map vertices of a slice ``g`` back to the coordinates it came from."""
        pair = None if self.pair is None else tuple(g.map_back(self.pair))
        return Witness(self.tag, pair, tuple(g.map_back(self.pages)),
                       tuple(g.map_back(self.cycle)))

    def to_dict(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.pair is not None:
            out["pair"] = list(self.pair)
            out["pages"] = list(self.pages)
        if self.cycle:
            out["cycle"] = list(self.cycle)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Witness":
        pair = tuple(d["pair"]) if d.get("pair") is not None else None
        return cls(d["tag"], pair, tuple(d.get("pages", ())), tuple(d.get("cycle", ())))


def _first_rich_pair(g: Graph, n: int, require_edge: bool) -> tuple[int, int] | None:
    """Lexicographically first pair x < y with >= n common neighbours."""
    size = g.order
    rows = g.rows
    if size <= _MATMUL_CUTOVER:
        for x in range(size):
            rx = rows[x]
            if rx.bit_count() < n:
                continue
            ys = rx >> (x + 1) if require_edge else (g.full_mask >> (x + 1))
            for off in iter_bits(ys):
                y = x + 1 + off
                if (rx & rows[y]).bit_count() >= n:
                    return x, y
        return None
    a = g.matrix.astype(np.float32)
    cols = np.arange(size)
    for start in range(0, size, _BLOCK):
        stop = min(size, start + _BLOCK)
        hits = (a[start:stop] @ a) >= n
        hits &= cols[None, :] > np.arange(start, stop)[:, None]
        if require_edge:
            hits &= g.matrix[start:stop]
        if hits.any():
            flat = int(np.argmax(hits.ravel()))
            return start + flat // size, flat % size
    return None


def _lowest_common(g: Graph, x: int, y: int, n: int) -> tuple[int, ...]:
    out = []
    for v in iter_bits(g.rows[x] & g.rows[y]):
        out.append(v)
        if len(out) == n:
            break
    return tuple(out)


def find_book(g: Graph, n: int) -> Witness | None:
    """Red B_n as base edge plus the n lowest-indexed common neighbours."""
    if n < 1:
        raise ValueError(f"book size must be positive, got {n}")
    pair = _first_rich_pair(g, n, require_edge=True)
    if pair is None:
        return None
    return Witness("red_book", pair, _lowest_common(g, *pair, n))


def find_k2n(g: Graph, n: int) -> Witness | None:
    """Red K_{2,n}: any pair (adjacent or not) with n common neighbours."""
    if n < 1:
        raise ValueError(f"K_2,n size must be positive, got {n}")
    pair = _first_rich_pair(g, n, require_edge=False)
    if pair is None:
        return None
    return Witness("red_k2n", pair, _lowest_common(g, *pair, n))


def find_red_target(g: Graph, n: int, target: str) -> Witness | None:
    if target == "book":
        return find_book(g, n)
    if target == "k2n":
        return find_k2n(g, n)
    raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")


def evaluate_coloring(c: TwoColoring, p: RamseyParams, target: str = "book") -> Witness:
    """Red target first, then a blue C_m, else the colouring is good."""
    red = find_red_target(c.red, p.n, target)
    if red is not None:
        return red
    cyc = find_cycle_of_length(c.blue, p.m)
    if cyc is not None:
        return Witness("blue_cycle", cycle=cyc)
    return Witness("good_coloring")


def is_good_coloring(red: Graph, p: RamseyParams, target: str = "book") -> bool:
    return evaluate_coloring(TwoColoring(red), p, target).tag == "good_coloring"
