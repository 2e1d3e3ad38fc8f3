import random

import pytest

from ramseylab.canon import enumerate_graphs
from ramseylab.cycles import (
    PathQuery,
    classify_pancyclicity,
    cycle_stats,
    find_cycle_of_length,
    find_odd_cycle,
    find_path_of_length,
    girth,
    is_bipanconnected,
    is_cycle,
    is_path,
    search_cycle,
)
from ramseylab.graph_core import Graph, complement, random_graph

from oracles import cycle_spectrum, path_exists


def test_stats_examples():
    k4 = cycle_stats(Graph.complete(4))
    assert (k4.spectrum, k4.girth, k4.circumference) == ({3, 4}, 3, 4)
    k33 = cycle_stats(Graph.complete_bipartite(3, 3))
    assert k33.spectrum == {4, 6} and k33.longest_odd is None
    pet = cycle_stats(Graph.petersen())
    assert pet.spectrum == {5, 6, 8, 9}
    assert (pet.girth, pet.circumference, pet.longest_odd, pet.longest_even) == (5, 9, 9, 8)


def test_acyclic_graph_has_empty_stats():
    s = cycle_stats(Graph.path(6))
    assert s.spectrum == set() and s.girth is None and s.circumference is None
    assert girth(Graph.path(6)) is None


def test_spectrum_matches_naive_enumerator_small():
    for n in range(3, 7):
        for g in enumerate_graphs(n):
            assert cycle_stats(g).spectrum == cycle_spectrum(g), g


def test_spectrum_matches_naive_enumerator_sampled():
    rng = random.Random(5)
    for n in (7, 8):
        classes = list(enumerate_graphs(n))
        for g in rng.sample(classes, 150):
            assert cycle_stats(g).spectrum == cycle_spectrum(g), g


def test_per_length_search_matches_dp():
    # orders above the subset-DP limit go through the DFS
    for seed in range(6):
        g = random_graph(16, 0.25, seed=seed)
        found = {l for l in range(3, 9) if find_cycle_of_length(g, l) is not None}
        assert found == cycle_spectrum(g, 8)


def test_find_cycle_examples():
    c = find_cycle_of_length(Graph.cycle(5), 5)
    assert sorted(c) == list(range(5))
    assert find_cycle_of_length(Graph.petersen(), 7) is None
    c4 = find_cycle_of_length(Graph.complete(5), 4)
    assert is_cycle(Graph.complete(5), c4) and len(c4) == 4
    with pytest.raises(ValueError):
        find_cycle_of_length(Graph.complete(5), 2)


def test_returned_cycles_are_valid_on_random_graphs():
    for seed in range(10):
        g = random_graph(40, 0.15, seed=seed)
        for l in range(3, 12):
            c = find_cycle_of_length(g, l)
            if c is not None:
                assert len(c) == l and is_cycle(g, c)


def test_long_cycle_above_threshold_is_heuristic_but_valid():
    g = complement(random_graph(60, 0.3, seed=2))
    res = search_cycle(g, 40, exact_threshold=20)
    assert res.cycle is not None and len(res.cycle) == 40 and is_cycle(g, res.cycle)


def test_classify_examples():
    assert classify_pancyclicity(Graph.complete(5)).tag == "pancyclic"
    k33 = classify_pancyclicity(Graph.complete_bipartite(3, 3))
    assert k33.tag == "neither" and k33.missing_lengths == {5}
    assert classify_pancyclicity(Graph.cycle(7)).tag == "weakly_pancyclic"
    assert classify_pancyclicity(Graph.path(4)).tag == "acyclic"


def test_path_examples():
    g = Graph.cycle(6)
    assert find_path_of_length(g, PathQuery(0, 1, 1)) == (0, 1)
    assert find_path_of_length(g, PathQuery(0, 1, 3)) is None
    assert find_path_of_length(g, PathQuery(0, 1, 5)) is not None
    k33 = Graph.complete_bipartite(3, 3)
    p = find_path_of_length(k33, PathQuery(0, 3, 5))
    assert p is not None and len(p) == 6 and is_path(k33, p)
    with pytest.raises(ValueError):
        PathQuery(2, 2, 3)


def test_paths_match_enumeration():
    rng = random.Random(1)
    for _ in range(60):
        g = random_graph(8, rng.uniform(0.2, 0.7), seed=rng.randrange(10**6))
        x, y = rng.sample(range(8), 2)
        for l in range(1, 8):
            p = find_path_of_length(g, PathQuery(x, y, l))
            assert (p is not None) == path_exists(g, x, y, l)
            if p is not None:
                assert p[0] == x and p[-1] == y and is_path(g, p) and len(p) == l + 1


def test_find_odd_cycle():
    c = find_odd_cycle(Graph.petersen())
    assert c is not None and len(c) % 2 == 1 and is_cycle(Graph.petersen(), c)
    assert find_odd_cycle(Graph.complete_bipartite(3, 4)) is None


def test_bipanconnected_examples():
    assert is_bipanconnected(Graph.complete_bipartite(3, 3)).holds
    res = is_bipanconnected(Graph.cycle(6))
    assert not res.holds and res.counterexample.length == 3
    assert is_bipanconnected(Graph.complete_bipartite(2, 2)).holds
    with pytest.raises(ValueError):
        is_bipanconnected(Graph.cycle(5))
    with pytest.raises(ValueError):
        is_bipanconnected(Graph.complete_bipartite(3, 1))


def test_bipanconnected_matches_brute_force():
    for a, b, dens, seed in [(3, 3, 0.8, 0), (4, 3, 0.7, 1), (4, 4, 0.9, 2), (3, 2, 1.0, 3)]:
        rng = random.Random(seed)
        edges = [(u, a + v) for u in range(a) for v in range(b) if rng.random() < dens]
        g = Graph.from_edges(a + b, edges)
        res = is_bipanconnected(g)
        if res.holds:
            continue
        q = res.counterexample
        assert not path_exists(g, q.x, q.y, q.length)
