import json

import pytest

from ramseylab.extraction import (
    ClaimRefutation,
    ClaimTriple,
    ExtractionIncomplete,
    assemble_from_refutation,
    book_threshold,
    claim_search_x,
    extract,
)
from ramseylab.graph_core import Graph, mask_of, random_graph
from ramseylab.predicates import RamseyParams

from oracles import witness_holds

BOOK = RamseyParams(11, 7)
K2N = RamseyParams(3493, 7)


def planted(order, hub_a, hub_b):
    """Hub 0 red-joined to two red cliques with no red edges between them."""
    rows = [0] * order
    am, bm = mask_of(hub_a), mask_of(hub_b)
    rows[0] = am | bm
    for i in hub_a:
        rows[i] = (am | 1) & ~(1 << i)
    for i in hub_b:
        rows[i] = (bm | 1) & ~(1 << i)
    return Graph(order, rows)


def test_threshold():
    assert book_threshold(11) == 359


def test_complete_and_empty_graphs():
    n = book_threshold(BOOK.n)
    r = extract(Graph.complete(n), BOOK)
    assert r.witness.tag == "red_book" and witness_holds(Graph.complete(n), r.witness, 11, 7)
    r = extract(Graph.empty(n), BOOK)
    assert r.witness.tag == "blue_cycle" and r.trace.case_taken == "case1"
    assert witness_holds(Graph.empty(n), r.witness, 11, 7)


@pytest.mark.parametrize("density", [0.05, 0.1, 0.3, 0.5, 0.7, 0.9])
def test_random_graphs_give_valid_witnesses(density):
    for seed in range(3):
        g = random_graph(359, density, seed=seed)
        r = extract(g, BOOK, seed=seed)
        assert r.exact and witness_holds(g, r.witness, 11, 7)
        json.dumps(r.to_dict())


def test_planted_book_slice_goes_through_claim():
    g = planted(359, range(1, 11), range(11, 19))
    r = extract(g, BOOK)
    t = r.trace
    assert t.case_taken == "case2" and t.hub == 0
    assert t.p == 0 and t.caps == {"p": True, "x_nonempty": True, "k": True}
    assert t.partition.part_a == frozenset(range(1, 11))
    assert t.claim == {"x": 19, "a": 1, "b": 11}
    assert r.witness.tag == "blue_cycle" and r.witness.cycle[0] == 19
    assert witness_holds(g, r.witness, 11, 7)


def test_planted_k2n_slice_goes_through_claim():
    g = planted(6989, range(1, 2601), range(2601, 4992))
    r = extract(g, K2N, "k2n")
    t = r.trace
    assert t.case_taken == "case2" and t.k == 893
    assert t.claim == {"x": 4992, "a": 1, "b": 2601}
    assert t.H1 is not None and 4992 in t.H1
    assert witness_holds(g, r.witness, K2N.n, 7)


def test_claim_triple_is_lowest():
    g = planted(30, range(1, 5), range(5, 9))
    res = claim_search_x(g, 0, range(1, 9), range(1, 5), range(5, 9))
    assert res == ClaimTriple(9, 1, 5)


def test_claim_refutation_splits_x():
    # x=9 sees all of A, x=10 all of B, x=11 everything in H
    g = planted(12, range(1, 5), range(5, 9))
    edges = list(g.edges())
    edges += [(9, a) for a in range(1, 5)] + [(10, b) for b in range(5, 9)]
    edges += [(11, h) for h in range(1, 9)]
    g = Graph.from_edges(12, edges)
    res = claim_search_x(g, 0, range(1, 9), range(1, 5), range(5, 9))
    assert res == ClaimRefutation((9,), (10,), (11,))


def test_refutation_with_large_x_a_gives_book_in_a_side():
    # A = 0..4 red clique, X_A = {5, 6} joined to A, hub 7 joined to A
    a_side, x_a, v = list(range(5)), [5, 6], 7
    edges = [(i, j) for i in a_side for j in a_side if i < j]
    edges += [(x, a) for x in x_a + [v] for a in a_side]
    g = Graph.from_edges(10, edges)
    ref = ClaimRefutation(tuple(x_a), (), ())
    w = assemble_from_refutation(g, ref, v, a_side, [8, 9], 1, 5, "book")
    assert w is not None and w.pair == (0, 1)
    assert witness_holds(g, w, 5, 7)
    assert set(w.pages) <= set(a_side[2:]) | set(x_a) | {v}


def test_claim_preconditions():
    g = Graph.complete(10)
    with pytest.raises(ValueError):
        claim_search_x(g, 0, [1, 2, 3], [1, 2], [2, 3])
    with pytest.raises(ValueError):
        claim_search_x(g, 1, [1, 2, 3], [1], [2, 3])
    with pytest.raises(ValueError):
        claim_search_x(g, 0, [1, 2, 30], [1], [2, 30])


def test_parameter_and_order_preconditions():
    with pytest.raises(ValueError):
        extract(Graph.empty(400), RamseyParams(10, 7))
    with pytest.raises(ValueError):
        extract(Graph.empty(358), BOOK)
    with pytest.raises(ValueError):
        extract(Graph.empty(6988), K2N, "k2n")
    with pytest.raises(ValueError):
        extract(Graph.empty(400), BOOK, "wheel")


def test_k2n_complete_and_empty():
    for g, tag in [(Graph.complete(6989), "red_k2n"), (Graph.empty(6989), "blue_cycle")]:
        r = extract(g, K2N, "k2n")
        assert r.witness.tag == tag and r.witness.validate(g, K2N.n, 7)


def test_incomplete_error_carries_trace():
    t = extract(Graph.empty(359), BOOK).trace
    err = ExtractionIncomplete("nothing found", t)
    assert err.trace.order == 359 and "nothing" in str(err)
