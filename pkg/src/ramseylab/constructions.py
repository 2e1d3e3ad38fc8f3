"""Lower-bound colourings and their certificates."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cycles import find_cycle_of_length
from .graph_core import Graph, disjoint_union
from .predicates import RamseyParams, TwoColoring, Witness, find_book, find_k2n

__all__ = [
    "GoodnessParams",
    "GoodnessConstruction",
    "ConstructionCertificate",
    "book_cycle_lower_construction",
    "goodness_lower_construction",
    "verify_construction",
]


@dataclass(frozen=True)
class GoodnessParams:
    """|G|, chromatic number and smallest colour class size of H."""

    target_order: int
    chi: int
    sigma: int

    def __post_init__(self):
        if self.target_order < 2:
            raise ValueError("target order must be at least 2")
        if self.chi < 2:
            raise ValueError("chromatic number must be at least 2")
        if self.sigma < 1:
            raise ValueError("sigma must be at least 1")

    @property
    def bound(self) -> int:
        return (self.target_order - 1) * (self.chi - 1) + self.sigma


@dataclass(frozen=True)
class GoodnessConstruction:
    coloring: TwoColoring
    bound: int


@dataclass(frozen=True)
class ConstructionCertificate:
    order: int
    params: RamseyParams
    red_book_free: bool
    red_k2n_free: bool
    blue_cycle_free: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def book_bound_certified(self) -> bool:
        return self.red_book_free and self.blue_cycle_free

    @property
    def k2n_bound_certified(self) -> bool:
        return self.red_k2n_free and self.blue_cycle_free

    @property
    def passed(self) -> bool:
        return self.red_book_free and self.red_k2n_free and self.blue_cycle_free

    @property
    def implied_lower_bound(self) -> int:
        """R(target, C_m) is at least this when the certificate holds."""
        return self.order + 1

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "n": self.params.n,
            "m": self.params.m,
            "red_book_free": self.red_book_free,
            "red_k2n_free": self.red_k2n_free,
            "blue_cycle_free": self.blue_cycle_free,
            "book_bound_certified": self.book_bound_certified,
            "k2n_bound_certified": self.k2n_bound_certified,
            "implied_lower_bound": self.implied_lower_bound,
            "passed": self.passed,
            "witnesses": {k: w.to_dict() for k, w in self.witnesses.items()},
        }


def book_cycle_lower_construction(p: RamseyParams) -> TwoColoring:
    """Red K_{n+1} + K_{n+1}; blue is K_{n+1,n+1}, which has no odd cycle."""
    if p.m % 2 == 0:
        raise ValueError(
            f"m={p.m} is even: the blue side K_{{{p.n + 1},{p.n + 1}}} is bipartite "
            f"and contains every even cycle of length 4..{2 * p.n + 2}"
        )
    k = Graph.complete(p.n + 1)
    return TwoColoring(disjoint_union(k, k))


def goodness_lower_construction(gp: GoodnessParams) -> GoodnessConstruction:
    """(chi - 1) red cliques of order |G| - 1 plus one red clique of order sigma - 1."""
    parts = [Graph.complete(gp.target_order - 1) for _ in range(gp.chi - 1)]
    if gp.sigma > 1:
        parts.append(Graph.complete(gp.sigma - 1))
    return GoodnessConstruction(TwoColoring(disjoint_union(*parts)), gp.bound)


def verify_construction(c: TwoColoring, p: RamseyParams) -> ConstructionCertificate:
    """Check red B_n-, red K_{2,n}- and blue C_m-freeness independently."""
    witnesses: dict[str, Witness] = {}
    book = find_book(c.red, p.n)
    k2n = find_k2n(c.red, p.n)
    cyc = find_cycle_of_length(c.blue, p.m)
    if book is not None:
        witnesses["book"] = book
    if k2n is not None:
        witnesses["k2n"] = k2n
    if cyc is not None:
        witnesses["blue_cycle"] = Witness("blue_cycle", cycle=cyc)
    return ConstructionCertificate(c.order, p, book is None, k2n is None, cyc is None, witnesses)
