"""Constructive extraction of a red book / red K_{2,n} or a blue C_m.

Given a red graph at or above the vertex threshold, the extractor walks the
case analysis of the upper-bound argument.  Every branch that would end in
"so G contains the red target" returns that target, and every branch that
would end in "so the complement contains C_m" searches for the cycle in the
subgraph where the argument guarantees one.  The intermediate sets are kept
in an :class:`ExtractionTrace`.

Integer forms of the thresholds used below (n, m as in RamseyParams):

* book case split: Delta < 3(n+1)/2  <=>  2*Delta < 3(n+1)
* book slice size: |M| = floor(3(n+1)/2), surplus p = Delta - |M|
* book surplus cap: Delta <= 2n+1  <=>  p <= 2n+1-|M|
* book deficit cap: |A| >= 3(n+1)/4  <=>  4k <= n-3
* K_{2,n} case split: Delta < 3(n+1)/2 - 250  <=>  2*Delta < 3(n+1) - 500
* K_{2,n} deficit cap: |A| >= 3(n+1)/4 - 125  <=>  4k <= n+497
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cycles import PathQuery, find_path_of_length, search_cycle, smallest_component_first
from .graph_core import (
    Bipartition,
    Graph,
    bfs_layers,
    bipartition,
    complement,
    connectivity,
    cut_vertex,
    induced,
    iter_bits,
    mask_of,
)
from .predicates import RamseyParams, Witness, find_red_target

__all__ = [
    "BOOK_ORDER_SLACK",
    "ExtractionTrace",
    "ExtractionResult",
    "ExtractionIncomplete",
    "ClaimTriple",
    "ClaimRefutation",
    "claim_search_x",
    "assemble_from_refutation",
    "book_threshold",
    "extract_book_or_cycle",
    "extract_k2n_or_cycle",
    "extract",
]

# the book extractor needs at least 2n + BOOK_ORDER_SLACK vertices
BOOK_ORDER_SLACK = 337
# the girth step of the book argument is only justified from this n on
GIRTH_LEMMA_MIN_N = 160


def book_threshold(n: int) -> int:
    return 2 * n + BOOK_ORDER_SLACK


@dataclass
class ExtractionTrace:
    target: str
    order: int
    max_degree: int = 0
    case_taken: str | None = None
    hub: int | None = None
    H: tuple[int, ...] = ()
    H1: tuple[int, ...] | None = None
    X: tuple[int, ...] = ()
    partition: Bipartition | None = None
    p: int | None = None
    k: int | None = None
    claim: dict | None = None
    caps: dict[str, bool] = field(default_factory=dict)
    subcase_log: list[str] = field(default_factory=list)
    seed: int | None = None

    def log(self, msg: str) -> None:
        self.subcase_log.append(msg)

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "order": self.order,
            "max_degree": self.max_degree,
            "case_taken": self.case_taken,
            "hub": self.hub,
            "H": list(self.H),
            "H1": None if self.H1 is None else list(self.H1),
            "X": list(self.X),
            "x_size": len(self.X),
            "partition": None if self.partition is None else self.partition.to_dict(),
            "p": self.p,
            "k": self.k,
            "claim": self.claim,
            "caps": dict(self.caps),
            "subcase_log": list(self.subcase_log),
            "seed": self.seed,
        }


@dataclass
class ExtractionResult:
    witness: Witness
    trace: ExtractionTrace
    exact: bool

    def to_dict(self) -> dict:
        return {"witness": self.witness.to_dict(), "exact": self.exact,
                "trace": self.trace.to_dict()}


class ExtractionIncomplete(RuntimeError):
    """Every branch and the fallback searches came back empty."""

    def __init__(self, message: str, trace: ExtractionTrace):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class ClaimTriple:
    x: int
    a: int
    b: int


@dataclass(frozen=True)
class ClaimRefutation:
    """No x in X sees both sides in the complement; X splits three ways."""

    x_a: tuple[int, ...]
    x_b: tuple[int, ...]
    x_ab: tuple[int, ...]


def claim_search_x(g: Graph, v: int, H, A, B) -> ClaimTriple | ClaimRefutation:
    """Find x outside H + v with complement neighbours a in A and b in B.

    x, a and b are the lowest such vertices.  When no x qualifies, return
    the split of X into vertices red-adjacent to all of A only, all of B
    only, and both.
    """
    h_mask, a_mask, b_mask = mask_of(H), mask_of(A), mask_of(B)
    if a_mask & b_mask or a_mask | b_mask != h_mask:
        raise ValueError("A and B must partition H")
    if not 0 <= v < g.order or (h_mask >> v) & 1:
        raise ValueError("hub must be a vertex outside H")
    if h_mask >> g.order:
        raise ValueError("H has vertices outside the graph")
    rows = g.rows
    x_a, x_b, x_ab = [], [], []
    for x in iter_bits(g.full_mask & ~h_mask & ~(1 << v)):
        miss_a = a_mask & ~rows[x]
        miss_b = b_mask & ~rows[x]
        if miss_a and miss_b:
            return ClaimTriple(x, (miss_a & -miss_a).bit_length() - 1,
                               (miss_b & -miss_b).bit_length() - 1)
        if miss_b:
            x_a.append(x)
        elif miss_a:
            x_b.append(x)
        else:
            x_ab.append(x)
    return ClaimRefutation(tuple(x_a), tuple(x_b), tuple(x_ab))


def _pair_witness(g: Graph, x: int, y: int, candidates: int, n: int, target: str) -> Witness | None:
    """Red target on base {x, y} with pages drawn from the candidate mask."""
    if target == "book" and not g.has_edge(x, y):
        return None
    pages_mask = candidates & g.rows[x] & g.rows[y]
    pages = []
    for u in iter_bits(pages_mask):
        pages.append(u)
        if len(pages) == n:
            break
    if len(pages) < n:
        return None
    tag = "red_book" if target == "book" else "red_k2n"
    return Witness(tag, (min(x, y), max(x, y)), tuple(pages))


def _clique_witness(g: Graph, clique: list[int], n: int, target: str) -> Witness | None:
    if len(clique) < n + 2:
        return None
    clique = sorted(clique)
    return _pair_witness(g, clique[0], clique[1], mask_of(clique[2:]), n, target)


def assemble_from_refutation(g: Graph, ref: ClaimRefutation, v: int, A, B, k: int,
                             n: int, target: str) -> Witness | None:
    """Red target inside A + X_A + v when |X_A| > k, else inside B + X_B + X_AB + v."""
    A, B = sorted(A), sorted(B)
    if len(ref.x_a) >= k + 1 and len(A) >= 2:
        base, pool = A[:2], set(A[2:]) | set(ref.x_a) | {v}
    elif len(B) >= 2:
        base, pool = B[:2], set(B[2:]) | set(ref.x_b) | set(ref.x_ab) | {v}
    else:
        return None
    return _pair_witness(g, base[0], base[1], mask_of(pool), n, target)


class _Run:
    """State for one extraction: the graph, its complement and the trace."""

    def __init__(self, g: Graph, p: RamseyParams, target: str, seed: int | None):
        self.g = g
        self.p = p
        self.n = p.n
        self.m = p.m
        self.target = target
        self.gbar = complement(g)
        self.exact = True
        self.trace = ExtractionTrace(target, g.order, seed=seed)

    def cycle_in(self, h: Graph, where: str) -> Witness | None:
        """C_m in ``h`` (a complement slice carrying labels of the input graph)."""
        if h.order < self.m:
            return None
        res = search_cycle(h, self.m)
        if not res.exact:
            self.exact = False
        self.trace.log(f"search C_{self.m} in {where} ({h.order} vertices): "
                       f"{'found' if res.cycle else 'none'}")
        if res.cycle is None:
            return None
        return Witness("blue_cycle", cycle=tuple(h.map_back(res.cycle)))

    def components_search(self, h: Graph, where: str) -> Witness | None:
        """Connectivity split: whole graph if 2-connected, else pieces smallest first."""
        kappa = connectivity(h, cap=2)
        self.trace.log(f"connectivity of {where} is {'>= 2' if kappa >= 2 else kappa}")
        if kappa >= 2:
            return self.cycle_in(h, where)
        if kappa == 1:
            c = cut_vertex(h)
            self.trace.log(f"cut vertex {h.label(c)}")
            h_rest = induced(h, [u for u in range(h.order) if u != c])
        else:
            h_rest = h
        for comp in smallest_component_first(h_rest):
            w = self.cycle_in(induced(h_rest, comp), f"component of {where}")
            if w is not None:
                return w
        return self.cycle_in(h, where)

    def rich_vertex(self, v: int, pool_mask: int, candidates) -> Witness | None:
        """Some u with >= n red neighbours inside ``pool_mask`` (all within N(v))."""
        rows = self.g.rows
        for u in candidates:
            if u != v and (rows[u] & pool_mask).bit_count() >= self.n:
                self.trace.log(f"vertex {u} has >= {self.n} red neighbours in N({v})")
                return _pair_witness(self.g, v, u, pool_mask, self.n, self.target)
        return None

    def case_one(self) -> Witness | None:
        t = self.trace
        t.case_taken = "case1"
        bp = bipartition(self.gbar)
        if bp is not None:
            t.partition = bp
            t.log("complement is bipartite; its larger part is a red clique")
            w = _clique_witness(self.g, sorted(bp.part_a), self.n, self.target)
            if w is not None:
                return w
        else:
            t.log("complement is non-bipartite")
        return self.components_search(self.gbar, "complement")

    def max_degree_branch(self, v: int) -> Witness | None:
        """Delta >= 2n+2: 2n+2 neighbours of v either hold a rich vertex or
        their complement has minimum degree above half its order."""
        t = self.trace
        t.case_taken = "case2"
        t.log("max degree >= 2n+2: maximum-degree lemma branch")
        nbrs = list(iter_bits(self.g.rows[v]))[: 2 * self.n + 2]
        t.H = tuple(nbrs)
        w = self.rich_vertex(v, mask_of(nbrs), nbrs)
        if w is not None:
            return w
        return self.cycle_in(complement(induced(self.g, nbrs)), "complement of H")

    def close_through(self, hbar: Graph, x: int, a: int, b: int) -> Witness | None:
        """a-b path of length m-2 in the complement slice, closed through x."""
        local = {lab: i for i, lab in enumerate(hbar.labels)}
        path = find_path_of_length(hbar, PathQuery(local[a], local[b], self.m - 2))
        self.trace.log(f"a-b path of length {self.m - 2}: {'found' if path else 'none'}")
        if path is None:
            return None
        return Witness("blue_cycle", cycle=(x, *hbar.map_back(path)))

    def bipartite_slice(self, v: int, hbar: Graph, bp: Bipartition,
                        deficit_cap) -> tuple[Witness | None, ClaimTriple | None]:
        """Clique check on A, then the X claim; returns (witness, triple)."""
        t = self.trace
        A_lab = sorted(hbar.map_back(bp.part_a))
        B_lab = sorted(hbar.map_back(bp.part_b))
        t.partition = Bipartition(frozenset(A_lab), frozenset(B_lab))
        t.log(f"complement of H is bipartite with |A|={len(A_lab)}, |B|={len(B_lab)}")
        w = _clique_witness(self.g, A_lab + [v], self.n, self.target)
        if w is not None:
            t.log("A + v is a red clique on >= n+2 vertices")
            return w, None
        t.k = self.n - len(A_lab)
        t.caps["k"] = deficit_cap(t.k)
        claim = claim_search_x(self.g, v, t.H, A_lab, B_lab)
        if isinstance(claim, ClaimTriple):
            t.claim = {"x": claim.x, "a": claim.a, "b": claim.b}
            t.log(f"claim holds with x={claim.x}, a={claim.a}, b={claim.b}")
            return None, claim
        t.claim = {"x_a": list(claim.x_a), "x_b": list(claim.x_b), "x_ab": list(claim.x_ab)}
        t.log(f"claim refuted: |X_A|={len(claim.x_a)}, |X_B|={len(claim.x_b)}, "
              f"|X_AB|={len(claim.x_ab)}")
        return assemble_from_refutation(self.g, claim, v, A_lab, B_lab, t.k,
                                        self.n, self.target), None

    def set_hub(self, slice_vertices) -> int:
        t = self.trace
        t.H = tuple(slice_vertices)
        t.X = tuple(iter_bits(self.g.full_mask & ~mask_of(t.H) & ~(1 << t.hub)))
        t.caps["x_nonempty"] = bool(t.X)
        if not t.X:
            t.log("X is empty")
        return t.hub

    def fallback(self) -> Witness:
        t = self.trace
        t.log("case analysis inconclusive; falling back to direct searches")
        w = find_red_target(self.g, self.n, self.target)
        if w is not None:
            t.log("direct red search succeeded")
            return w
        w = self.cycle_in(self.gbar, "complement (direct)")
        if w is not None:
            return w
        raise ExtractionIncomplete("no red target and no blue cycle found", t)

    def finish(self, w: Witness | None) -> ExtractionResult:
        if w is None:
            w = self.fallback()
        if not w.validate(self.g, self.n, self.m):
            raise ExtractionIncomplete(f"internal error: invalid witness {w}", self.trace)
        return ExtractionResult(w, self.trace, self.exact)


def _hub(g: Graph) -> tuple[int, int]:
    degs = g.degrees()
    best = max(degs) if degs else 0
    return degs.index(best) if degs else 0, best


def extract_book_or_cycle(g: Graph, p: RamseyParams, *, seed: int | None = None) -> ExtractionResult:
    """Red B_n in ``g`` or a blue C_m in its complement."""
    if not p.book_range:
        raise ValueError(f"(n, m) = ({p.n}, {p.m}) is outside the book range "
                         f"(m odd, m >= 7, n >= 2m-3)")
    if g.order < book_threshold(p.n):
        raise ValueError(f"need at least {book_threshold(p.n)} vertices, got {g.order}")
    run = _Run(g, p, "book", seed)
    t = run.trace
    n = p.n
    v, delta = _hub(g)
    t.max_degree = delta
    if 2 * delta < 3 * (n + 1):
        if n < GIRTH_LEMMA_MIN_N:
            t.log(f"n < {GIRTH_LEMMA_MIN_N}: girth step unavailable, cycle found by direct search")
        return run.finish(run.case_one())
    t.hub = v
    if delta >= 2 * n + 2:
        return run.finish(run.max_degree_branch(v))

    t.case_taken = "case2"
    size = 3 * (n + 1) // 2
    t.p = delta - size
    t.caps["p"] = t.p <= 2 * n + 1 - size
    M = list(iter_bits(g.rows[v]))[:size]
    run.set_hub(M)
    w = run.rich_vertex(v, mask_of(M), M)
    if w is not None:
        return run.finish(w)
    hbar = complement(induced(g, M))
    bp = bipartition(hbar)
    if bp is None:
        t.log("complement of H is non-bipartite")
        return run.finish(run.cycle_in(hbar, "complement of H"))
    w, triple = run.bipartite_slice(v, hbar, bp, lambda k: 4 * k <= n - 3)
    if triple is not None:
        w = run.close_through(hbar, triple.x, triple.a, triple.b)
    return run.finish(w)


def extract_k2n_or_cycle(g: Graph, p: RamseyParams, *, seed: int | None = None) -> ExtractionResult:
    """Red K_{2,n} in ``g`` or a blue C_m in its complement."""
    if not p.k2n_range:
        raise ValueError(f"(n, m) = ({p.n}, {p.m}) is outside the K_2,n range "
                         f"(m odd, m >= 7, n >= 2m+499, n >= 3493)")
    if g.order < 2 * p.n + 3:
        raise ValueError(f"need at least {2 * p.n + 3} vertices, got {g.order}")
    run = _Run(g, p, "k2n", seed)
    t = run.trace
    n = p.n
    v, delta = _hub(g)
    t.max_degree = delta
    if 2 * delta < 3 * (n + 1) - 500:
        return run.finish(run.case_one())
    t.hub = v
    if delta >= 2 * n + 2:
        return run.finish(run.max_degree_branch(v))

    t.case_taken = "case2"
    t.p = delta - (3 * (n + 1) - 500 + 1) // 2
    t.caps["p"] = delta <= 2 * n + 1
    H = list(iter_bits(g.rows[v]))
    run.set_hub(H)
    w = run.rich_vertex(v, g.rows[v], range(g.order))
    if w is not None:
        return run.finish(w)
    hbar = complement(induced(g, H))
    kappa = connectivity(hbar, cap=2)
    if kappa < 2:
        t.log(f"complement of H has connectivity {kappa}")
        return run.finish(run.components_search(hbar, "complement of H"))
    bp = bipartition(hbar)
    if bp is None:
        t.log("complement of H is 2-connected and non-bipartite")
        return run.finish(run.cycle_in(hbar, "complement of H"))
    w, triple = run.bipartite_slice(v, hbar, bp, lambda k: 4 * k <= n + 497)
    if triple is None:
        return run.finish(w)

    x, a, b = triple.x, triple.a, triple.b
    t.H1 = tuple(sorted(H + [x]))
    local = {lab: i for i, lab in enumerate(hbar.labels)}
    layers = bfs_layers(hbar, local[a])
    dist = next(i for i, layer in enumerate(layers) if (layer >> local[b]) & 1)
    t.log(f"odd closed walk through x: shortest a-b path has {dist} edges, "
          f"closed walk has {dist + 2}")
    w = run.close_through(hbar, x, a, b)
    if w is None:
        w = run.cycle_in(complement(induced(g, t.H1)), "complement of H1")
    return run.finish(w)


def extract(g: Graph, p: RamseyParams, target: str = "book", *,
            seed: int | None = None) -> ExtractionResult:
    if target == "book":
        return extract_book_or_cycle(g, p, seed=seed)
    if target == "k2n":
        return extract_k2n_or_cycle(g, p, seed=seed)
    raise ValueError(f"unknown target {target!r}")
