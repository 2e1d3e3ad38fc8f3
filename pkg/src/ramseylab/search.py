"""Exhaustive determination of small Ramsey numbers over isomorphism classes.

A red graph on N vertices is *good* when it has no red target and its
complement has no C_m.  R(target, C_m) is the least N with no good graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cache import ResultsCache
from .canon import ENUMERATION_CAP, enumerate_graphs, extend_classes
from .graph6 import parse_graph6, write_graph6
from .graph_core import Graph
from .predicates import TARGETS, RamseyParams, is_good_coloring

__all__ = [
    "CANON_METHOD",
    "STRATEGIES",
    "SearchReport",
    "good_classes",
    "ramsey_number",
    "max_degree_lemma_sweep",
]

CANON_METHOD = "refine-individualize-v1"
STRATEGIES = {
    "full": f"full-enumeration/{CANON_METHOD}",
    "extension": f"vertex-extension/{CANON_METHOD}",
}
# the extension strategy never enumerates all graphs, so it may go further
EXTENSION_CAP = 12


@dataclass
class SearchReport:
    target: str
    params: RamseyParams
    cap: int
    method: str
    value: int | None
    lower_certificate: Graph | None
    upper_certificate: dict | None
    best_lower_bound: int
    levels: list[dict] = field(default_factory=list)

    @property
    def resolved(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "n": self.params.n,
            "m": self.params.m,
            "cap": self.cap,
            "method": self.method,
            "value": self.value,
            "resolved": self.resolved,
            "best_lower_bound": self.best_lower_bound,
            "lower_certificate": (None if self.lower_certificate is None
                                  else write_graph6(self.lower_certificate)),
            "lower_certificate_order": (None if self.lower_certificate is None
                                        else self.lower_certificate.order),
            "upper_certificate": self.upper_certificate,
            "levels": self.levels,
        }


def good_classes(order: int, p: RamseyParams, target: str = "book") -> list[Graph]:
    """All good red graphs on ``order`` vertices, one per isomorphism class."""
    return [g for g in enumerate_graphs(order) if is_good_coloring(g, p, target)]


def _level_key(target: str, p: RamseyParams, order: int, method: str) -> dict:
    return {"command": "ramsey-search", "target": target, "n": p.n, "m": p.m,
            "order": order, "method": method}


def ramsey_number(target: str, p: RamseyParams, cap: int, strategy: str = "full",
                  cache: ResultsCache | None = None) -> SearchReport:
    """Smallest N with no good colouring, searching orders 1..cap.

    ``strategy="extension"`` builds good graphs on N vertices only as
    one-vertex extensions of good graphs on N-1 vertices, which is complete
    because goodness is inherited by induced subgraphs.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {sorted(STRATEGIES)}")
    limit = ENUMERATION_CAP if strategy == "full" else EXTENSION_CAP
    if not 1 <= cap <= limit:
        raise ValueError(f"cap must lie in 1..{limit} for the {strategy} strategy, got {cap}")
    method = STRATEGIES[strategy]
    keep = lambda g: is_good_coloring(g, p, target)  # noqa: E731

    previous: list[Graph] = [Graph(0, [], check=False)]
    levels: list[dict] = []
    for order in range(1, cap + 1):
        key = _level_key(target, p, order, method)
        hit = cache.get(key) if cache is not None else None
        if hit is not None:
            good = [parse_graph6(s) for s in hit["good"]]
            examined = hit["examined"]
        else:
            if strategy == "full":
                classes = list(enumerate_graphs(order))
                examined = len(classes)
                good = [g for g in classes if keep(g)]
            else:
                good, examined = extend_classes(previous, keep)
            if cache is not None:
                cache.put(key, {"good": [write_graph6(g) for g in good],
                                "examined": examined})
        levels.append({"order": order, "graphs_examined": examined, "good_classes": len(good)})
        if not good:
            upper = {"order": order, "graphs_examined": examined, "method": method,
                     "statement": f"every red graph on {order} vertices contains a red "
                                  f"{target} or a blue C_{p.m}"}
            return SearchReport(target, p, cap, method, order, previous[0], upper,
                                order, levels)
        previous = good
    return SearchReport(target, p, cap, method, None, previous[0], None, cap + 1, levels)


def max_degree_lemma_sweep(order: int = 7, n: int = 2, ms=(3, 4, 5, 6),
                           targets=TARGETS) -> dict:
    """Check that good colourings have red maximum degree below 2n+2.

    Runs over every class on ``order`` vertices; returns counts and any
    violating graphs (as graph6).
    """
    checked = good = 0
    violations = []
    classes = list(enumerate_graphs(order))
    for target in targets:
        for m in ms:
            p = RamseyParams(n, m)
            for g in classes:
                checked += 1
                if not is_good_coloring(g, p, target):
                    continue
                good += 1
                if g.degree_stats().max_degree >= 2 * n + 2:
                    violations.append({"target": target, "m": m, "graph6": write_graph6(g)})
    return {"order": order, "n": n, "ms": list(ms), "targets": list(targets),
            "classes": len(classes), "checked": checked, "good": good,
            "violations": violations}

