"""Randomised property suites for the cycle-structure lemmas.

Each suite draws seeded random graphs, keeps those meeting the lemma's
hypothesis, and records every instance where the conclusion fails.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cycles import classify_pancyclicity, cycle_stats, girth, is_bipanconnected
from .extremal import girth_lemma_audit
from .graph6 import write_graph6
from .graph_core import Graph, bipartition, connectivity
from .search import max_degree_lemma_sweep

__all__ = [
    "SuiteReport",
    "dirac_suite",
    "bondy_suite",
    "brandt2_suite",
    "du_suite",
    "girth_suite",
    "max_degree_suite",
    "brandt_smoke",
    "run_all",
    "SUITES",
]

_MAX_ATTEMPTS_FACTOR = 50


@dataclass
class SuiteReport:
    name: str
    instances: int = 0
    attempts: int = 0
    violations: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    diagnostic: bool = False

    @property
    def passed(self) -> bool:
        return self.diagnostic or not self.violations

    def to_dict(self) -> dict:
        return {"name": self.name, "instances": self.instances, "attempts": self.attempts,
                "violations": self.violations, "passed": self.passed,
                "diagnostic": self.diagnostic, "notes": self.notes}


def _random_rows(rng: random.Random, n: int, density: float) -> list[int]:
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return rows


def _lift_min_degree(rng: random.Random, rows: list[int], target: int,
                     allowed: list[int] | None = None) -> None:
    """Add random edges until every vertex has degree >= target.

    ``allowed[u]`` restricts u's new neighbours (used to stay bipartite).
    """
    n = len(rows)
    for u in range(n):
        while rows[u].bit_count() < target:
            pool = allowed[u] if allowed is not None else ((1 << n) - 1)
            choices = [v for v in range(n) if (pool >> v) & 1 and v != u and not (rows[u] >> v) & 1]
            if not choices:
                break
            v = rng.choice(choices)
            rows[u] |= 1 << v
            rows[v] |= 1 << u


def _random_bipartite_rows(rng: random.Random, a: int, b: int, density: float) -> tuple[list[int], list[int]]:
    n = a + b
    rows = [0] * n
    for u in range(a):
        for v in range(a, n):
            if rng.random() < density:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    side_a = (1 << a) - 1
    side_b = ((1 << n) - 1) ^ side_a
    return rows, [side_b if u < a else side_a for u in range(n)]


def _run(name: str, instances: int, seed: int, draw, check) -> SuiteReport:
    """``draw(rng)`` returns an instance meeting the hypothesis (a graph, or a
    tuple whose first entry is the graph) or None; ``check`` returns None or
    a description of the violation."""
    rng = random.Random(seed)
    rep = SuiteReport(name)
    while rep.instances < instances and rep.attempts < instances * _MAX_ATTEMPTS_FACTOR:
        rep.attempts += 1
        g = draw(rng)
        if g is None:
            continue
        rep.instances += 1
        problem = check(g)
        if problem is not None:
            graph = g[0] if isinstance(g, tuple) else g
            rep.violations.append({"graph6": write_graph6(graph), "problem": problem})
    return rep


def dirac_suite(instances: int = 10_000, seed: int = 0, max_order: int = 11) -> SuiteReport:
    """min degree d >= 2 gives a cycle of length >= d+1; 2-connected gives >= min(2d, N)."""
    def draw(rng):
        n = rng.randint(4, max_order)
        g = Graph(n, _random_rows(rng, n, rng.uniform(0.2, 0.9)), check=False)
        return g if g.degree_stats().min_degree >= 2 else None

    def check(g):
        d = g.degree_stats().min_degree
        c = cycle_stats(g).circumference or 0
        if c < d + 1:
            return f"circumference {c} < min degree + 1 = {d + 1}"
        if connectivity(g, cap=2) >= 2 and c < min(2 * d, g.order):
            return f"2-connected but circumference {c} < min(2*{d}, {g.order})"
        return None

    return _run("dirac", instances, seed, draw, check)


def _is_balanced_complete_bipartite(g: Graph) -> bool:
    n = g.order
    if n % 2 or g.edge_count != n * n // 4:
        return False
    bp = bipartition(g)
    return bp is not None and len(bp.part_a) == len(bp.part_b) == n // 2


def bondy_suite(instances: int = 10_000, seed: int = 0, max_order: int = 11) -> SuiteReport:
    """min degree >= N/2 gives pancyclic or K_{N/2,N/2}."""
    def draw(rng):
        n = rng.randint(4, max_order)
        half = (n + 1) // 2
        if n % 2 == 0 and rng.random() < 0.15:
            rows, allowed = _random_bipartite_rows(rng, n // 2, n // 2, 1.0)
            for _ in range(rng.randint(0, 2)):
                u, v = rng.sample(range(n), 2)
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        else:
            rows = _random_rows(rng, n, rng.uniform(0.4, 1.0))
            _lift_min_degree(rng, rows, half)
        return Graph(n, rows, check=False)

    def check(g):
        tag = classify_pancyclicity(g).tag
        if tag == "pancyclic" or _is_balanced_complete_bipartite(g):
            return None
        return f"classified {tag} and not K_(N/2,N/2)"

    return _run("bondy", instances, seed, draw, check)


def brandt2_suite(instances: int = 10_000, seed: int = 0, max_order: int = 11) -> SuiteReport:
    """Non-bipartite with min degree >= (N+2)/3 gives weakly pancyclic, girth 3 or 4."""
    def draw(rng):
        n = rng.randint(5, max_order)
        need = -(-(n + 2) // 3)
        if rng.random() < 0.5:
            a = rng.randint(n // 2, n - 2)
            rows, allowed = _random_bipartite_rows(rng, a, n - a, rng.uniform(0.4, 1.0))
            _lift_min_degree(rng, rows, need, allowed)
            for _ in range(rng.randint(1, 2)):
                u, v = rng.sample(range(n), 2)
                rows[u] |= 1 << v
                rows[v] |= 1 << u
        else:
            rows = _random_rows(rng, n, rng.uniform(0.25, 0.8))
            _lift_min_degree(rng, rows, need)
        g = Graph(n, rows, check=False)
        if g.degree_stats().min_degree < need or bipartition(g) is not None:
            return None
        return g

    def check(g):
        cls = classify_pancyclicity(g)
        gi = girth(g)
        if cls.tag not in ("pancyclic", "weakly_pancyclic"):
            return f"classified {cls.tag}, missing {sorted(cls.missing_lengths)}"
        if gi not in (3, 4):
            return f"girth {gi}"
        return None

    return _run("brandt2", instances, seed, draw, check)


def du_suite(instances: int = 10_000, seed: int = 0, max_side: int = 6) -> SuiteReport:
    """Bipartite, |A| >= |B| >= 2, min degree >= |A|/2 + 1 gives bipanconnected."""
    def draw(rng):
        a = rng.randint(2, max_side)
        low = max(2, -(-(a + 2) // 2))
        if low > a:
            return None
        b = rng.randint(low, a)
        need = -(-(a + 2) // 2)
        rows, allowed = _random_bipartite_rows(rng, a, b, rng.uniform(0.5, 1.0))
        _lift_min_degree(rng, rows, need, allowed)
        g = Graph(a + b, rows, check=False)
        bp = bipartition(g)
        if bp is None or min(len(bp.part_a), len(bp.part_b)) < 2:
            return None
        if 2 * g.degree_stats().min_degree < len(bp.part_a) + 2:
            return None
        return g

    def check(g):
        res = is_bipanconnected(g)
        if res.holds:
            return None
        q = res.counterexample
        return f"no path of length {q.length} between {q.x} and {q.y}"

    return _run("du", instances, seed, draw, check)


_GIRTH_EPS = (Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))


def girth_suite(instances: int = 10_000, seed: int = 0) -> SuiteReport:
    """min degree >= eps N and N >= 10/eps^2 gives girth <= 4.

    Instances are plain random graphs, random bipartite graphs and random
    blow-ups of C_5, which all avoid triangles in the latter two cases.
    The weaker-threshold variant (N >= 1/eps^2) is tallied in ``notes``
    without counting as a violation.
    """
    weak = {"checked": 0, "girth_above_4": 0}

    def draw(rng):
        eps = rng.choice(_GIRTH_EPS)
        if rng.random() < 0.1:
            # weaker variant probe: 1/eps^2 <= N < 10/eps^2
            lo = int(1 / eps ** 2) + 1
            n = rng.randint(lo, min(int(10 / eps ** 2), lo + 30))
        else:
            n = int(10 / eps ** 2) + rng.randint(0, 20)
        kind = rng.randrange(3)
        if kind == 0:
            rows = _random_rows(rng, n, float(eps) + rng.uniform(0.05, 0.3))
        elif kind == 1:
            rows, allowed = _random_bipartite_rows(rng, n // 2, n - n // 2,
                                                   min(1.0, 2 * float(eps) + rng.uniform(0.05, 0.3)))
        else:
            part = [i * 5 // n for i in range(n)]
            dens = min(1.0, 2.5 * float(eps) + rng.uniform(0.05, 0.3))
            rows = [0] * n
            for u in range(n):
                for v in range(u + 1, n):
                    if (part[v] - part[u]) % 5 in (1, 4) and rng.random() < dens:
                        rows[u] |= 1 << v
                        rows[v] |= 1 << u
        g = Graph(n, rows, check=False)
        if g.degree_stats().min_degree < eps * n:
            return None
        if n * eps ** 2 < 10:
            weak["checked"] += 1
            gi = girth(g)
            if gi is None or gi > 4:
                weak["girth_above_4"] += 1
            return None
        return g, eps

    def check(item):
        g, eps = item
        audit = girth_lemma_audit(g, eps)
        if audit.verdict == "VIOLATION":
            return f"girth {audit.girth} with eps={eps}"
        if audit.verdict != "holds":
            return f"generator produced an instance outside the hypothesis ({audit.verdict})"
        return None

    rep = _run("girth", instances, seed, draw, check)
    rep.notes["weak_threshold_variant"] = weak
    return rep


def max_degree_suite(order: int = 7, n: int = 2) -> SuiteReport:
    """Exhaustive: good colourings on 2n+3 vertices have red max degree < 2n+2."""
    sweep = max_degree_lemma_sweep(order, n, tuple(range(3, 2 * n + 3)))
    rep = SuiteReport("max_degree", instances=sweep["checked"], attempts=sweep["checked"])
    rep.violations = sweep["violations"]
    rep.notes = {k: sweep[k] for k in ("order", "n", "ms", "targets", "classes", "good")}
    return rep


def brandt_smoke(instances: int = 500, seed: int = 0, max_order: int = 11,
                 additive: int = 1) -> SuiteReport:
    """Reduced-constant probe: 2-connected, non-bipartite, min degree >= N/4 + additive.

    The real statement needs an additive constant far beyond enumerable
    orders, so exceptions here are informative only.
    """
    def draw(rng):
        n = rng.randint(6, max_order)
        rows = _random_rows(rng, n, rng.uniform(0.3, 0.8))
        g = Graph(n, rows, check=False)
        if 4 * g.degree_stats().min_degree < n + 4 * additive:
            return None
        if bipartition(g) is not None or connectivity(g, cap=2) < 2:
            return None
        return g

    def check(g):
        cls = classify_pancyclicity(g)
        if cls.tag in ("pancyclic", "weakly_pancyclic"):
            return None
        stats = cycle_stats(g)
        odd = [l for l in stats.spectrum if l % 2]
        needed = {4} | set(range(6, (stats.circumference or 0) + 1))
        if odd and min(odd) == 7 and needed <= stats.spectrum:
            return None
        return f"neither weakly pancyclic nor the odd-girth-7 exception (spectrum {sorted(stats.spectrum)})"

    rep = _run("brandt_smoke", instances, seed, draw, check)
    rep.diagnostic = True
    return rep


SUITES = {
    "dirac": dirac_suite,
    "bondy": bondy_suite,
    "brandt2": brandt2_suite,
    "du": du_suite,
    "girth": girth_suite,
}


def run_all(instances: int = 10_000, seed: int = 0, include_smoke: bool = True) -> list[SuiteReport]:
    reports = [fn(instances=instances, seed=seed) for fn in SUITES.values()]
    reports.append(max_degree_suite())
    if include_smoke:
        reports.append(brandt_smoke(seed=seed))
    return reports
