"""Dependent random choice, bipartite embedding, ex(N, C_4), and the girth audit."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .canon import _canon_rows, enumerate_graphs
from .cycles import girth
from .graph_core import Graph, iter_bits, mask_of
from .predicates import find_k2n

__all__ = [
    "DrcParams",
    "DrcResult",
    "drc_hypothesis",
    "dependent_random_choice",
    "check_drc_subset",
    "embed_bipartite_greedy",
    "ExtremalRecord",
    "extremal_number",
    "c4_bound_holds",
    "GirthAudit",
    "girth_lemma_audit",
]

EXTREMAL_CAP = 12
# below this order ex(N, C_4) is read straight off the class enumeration
ENUMERATION_LIMIT = 8
FORBIDDEN_ALIASES = {"C4": "C4", "K22": "C4", "K2,2": "C4", "k2n": "C4"}


@dataclass(frozen=True)
class DrcParams:
    a: int
    r: int
    m_t: int
    t: int

    def __post_init__(self):
        for name in ("a", "r", "m_t", "t"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")

    def to_dict(self) -> dict:
        return {"a": self.a, "r": self.r, "m_t": self.m_t, "t": self.t}


@dataclass(frozen=True)
class DrcResult:
    subset: tuple[int, ...] | None
    applicable: bool
    hypothesis_value: Fraction
    attempts: int
    diagnostics: str = ""

    def to_dict(self) -> dict:
        return {
            "subset": None if self.subset is None else list(self.subset),
            "applicable": self.applicable,
            "hypothesis_value": str(self.hypothesis_value),
            "attempts": self.attempts,
            "diagnostics": self.diagnostics,
        }


def drc_hypothesis(g: Graph, d: DrcParams) -> Fraction:
    """N (avg_deg / N)^t - C(N, r) (m_t / N)^t, exactly."""
    n = g.order
    if n == 0:
        return Fraction(-1)
    avg = Fraction(2 * g.edge_count, n)
    return n * (avg / n) ** d.t - comb(n, d.r) * Fraction(d.m_t, n) ** d.t


def _common(g: Graph, vertices) -> int:
    mask = g.full_mask
    for v in vertices:
        mask &= g.rows[v]
    return mask


def check_drc_subset(g: Graph, subset, d: DrcParams) -> bool:
    """Every r-subset of ``subset`` has at least m_t common neighbours."""
    subset = sorted(set(subset))
    if len(subset) < d.a:
        return False
    return all(_common(g, q).bit_count() >= d.m_t for q in combinations(subset, d.r))


def _prune_bad(g: Graph, candidates: list[int], d: DrcParams) -> list[int]:
    alive = set(candidates)
    for q in combinations(candidates, d.r):
        if all(v in alive for v in q) and _common(g, q).bit_count() < d.m_t:
            alive.discard(q[-1])
    return sorted(alive)


def dependent_random_choice(g: Graph, d: DrcParams, retry_cap: int = 64,
                            seed: int = 0) -> DrcResult:
    """Sample t vertices with repetition, keep their common neighbourhood,
    then drop one vertex of every r-subset with too few common neighbours.

    The hypothesis is evaluated and reported but the search runs regardless.
    """
    value = drc_hypothesis(g, d)
    applicable = value >= d.a
    if g.order == 0 or g.edge_count == 0:
        return DrcResult(None, applicable, value, 0, "graph has no edges")
    rng = random.Random(seed)
    best = 0
    for attempt in range(1, retry_cap + 1):
        sample = [rng.randrange(g.order) for _ in range(d.t)]
        candidates = list(iter_bits(_common(g, sample)))
        if len(candidates) < d.a:
            best = max(best, len(candidates))
            continue
        subset = _prune_bad(g, candidates, d)
        best = max(best, len(subset))
        if len(subset) >= d.a:
            return DrcResult(tuple(subset), applicable, value, attempt)
    return DrcResult(None, applicable, value, retry_cap,
                     f"{retry_cap} attempts exhausted; largest pruned set had {best} vertices")


def embed_bipartite_greedy(g: Graph, subset, h: Graph, side_a) -> dict[int, int] | None:
    """Embed bipartite ``h`` into ``g`` with ``side_a`` placed inside ``subset``.

    Side A goes to the lowest vertices of ``subset``; each remaining vertex of
    ``h`` goes to the lowest unused common neighbour of its images.  Returns
    the map from ``h`` vertices to ``g`` vertices, or None when greedy fails.
    """
    side_a = sorted(side_a)
    pool = sorted(subset)
    if len(pool) < len(side_a):
        return None
    placed = {x: pool[i] for i, x in enumerate(side_a)}
    used = mask_of(placed.values())
    for y in range(h.order):
        if y in placed:
            continue
        if h.rows[y] & mask_of(side_a) != h.rows[y]:
            raise ValueError("side_a must cover one side of a bipartition of h")
        free = _common(g, (placed[x] for x in iter_bits(h.rows[y]))) & ~used
        if not free:
            return None
        target = (free & -free).bit_length() - 1
        placed[y] = target
        used |= 1 << target
    return placed


@dataclass(frozen=True)
class ExtremalRecord:
    order: int
    forbidden: str
    ex_value: int
    extremal_graph: Graph
    method: str
    examined: int

    @property
    def c4_edge_bound(self) -> float:
        return (2.5 ** 0.5) * self.order ** 1.5

    def to_dict(self) -> dict:
        from .graph6 import write_graph6
        return {
            "order": self.order,
            "forbidden": self.forbidden,
            "ex_value": self.ex_value,
            "extremal_graph": write_graph6(self.extremal_graph),
            "method": self.method,
            "examined": self.examined,
            "bound": self.c4_edge_bound,
            "slack": self.c4_edge_bound - self.ex_value,
        }


def c4_bound_holds(order: int, edges: int) -> bool:
    """edges <= sqrt(5/2) * order^(3/2), decided in integers: 2 e^2 <= 5 N^3."""
    return 2 * edges * edges <= 5 * order ** 3


def _c4_free(g: Graph) -> bool:
    return find_k2n(g, 2) is None


@lru_cache(maxsize=None)
def _dense_c4_free(order: int, min_edges: int) -> tuple[tuple[Graph, ...], int]:
    """All C_4-free classes on ``order`` vertices with at least ``min_edges`` edges.

    Each such graph minus a minimum-degree vertex keeps at least
    e - floor(2e/N) edges, so it is a one-vertex extension of a smaller
    member, with the new vertex of minimum degree.
    """
    if order <= ENUMERATION_LIMIT:
        graphs = tuple(g for g in enumerate_graphs(order)
                       if g.edge_count >= min_edges and _c4_free(g))
        return graphs, sum(1 for _ in enumerate_graphs(order))
    parents, examined = _dense_c4_free(order - 1, min_edges - (2 * min_edges) // order)
    found: dict = {}
    n = order - 1
    for parent in parents:
        rows = parent.rows
        degs = [r.bit_count() for r in rows]
        need = min_edges - parent.edge_count

        def grow(start: int, chosen: list[int], covered: int) -> None:
            nonlocal examined
            k = len(chosen)
            if k >= need and all(degs[u] + (u in chosen) >= k for u in range(n)):
                examined += 1
                new_rows = list(rows)
                for u in chosen:
                    new_rows[u] |= 1 << n
                new_rows.append(mask_of(chosen))
                code, _ = _canon_rows(new_rows)
                if code not in found:
                    found[code] = Graph(order, code, check=False)
            for w in range(start, n):
                # the new vertex has minimum degree, so w must end with degree >= |S|
                if rows[w] & covered == 0 and degs[w] + 1 >= k + 1:
                    grow(w + 1, chosen + [w], covered | rows[w])

        grow(0, [], 0)
    graphs = tuple(sorted(found.values(), key=lambda g: (-g.edge_count, g.rows)))
    return graphs, examined


def extremal_number(order: int, forbidden: str = "C4", cap: int = EXTREMAL_CAP) -> ExtremalRecord:
    """ex(order, C_4) with a witness attaining it."""
    if forbidden not in FORBIDDEN_ALIASES:
        raise ValueError(f"only C4 / K_2,2 is supported, got {forbidden!r}")
    if order < 1:
        raise ValueError("order must be positive")
    if order > cap:
        raise ValueError(f"order {order} exceeds the cap of {cap}")
    if order <= ENUMERATION_LIMIT:
        graphs, examined = _dense_c4_free(order, 0)
        best = max(graphs, key=lambda g: g.edge_count)
        best = min((g for g in graphs if g.edge_count == best.edge_count), key=lambda g: g.rows)
        return ExtremalRecord(order, "C4", best.edge_count, best, "enumeration", examined)
    floor_value = extremal_number(order - 1, forbidden, cap).ex_value
    graphs, examined = _dense_c4_free(order, floor_value)
    best = graphs[0]
    return ExtremalRecord(order, "C4", best.edge_count, best,
                          "vertex-extension-branch-and-bound", examined)


@dataclass(frozen=True)
class GirthAudit:
    verdict: str
    girth: int | None
    min_degree: int
    required_order: Fraction

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "girth": self.girth, "min_degree": self.min_degree,
                "required_order": str(self.required_order)}


def girth_lemma_audit(g: Graph, eps: Fraction) -> GirthAudit:
    """min degree >= eps N and N >= 10 / eps^2 should force girth at most 4."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie strictly between 0 and 1")
    n = g.order
    required = 10 / eps ** 2
    delta = g.degree_stats().min_degree
    if n < required or delta < eps * n:
        return GirthAudit("hypothesis_unmet", None, delta, required)
    gi = girth(g)
    verdict = "holds" if gi is not None and gi <= 4 else "VIOLATION"
    return GirthAudit(verdict, gi, delta, required)
