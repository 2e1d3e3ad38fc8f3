import random
from pathlib import Path

import networkx as nx
import pytest

from ramseylab.canon import enumerate_graphs
from ramseylab.graph6 import Graph6Error, parse_edge_list, parse_graph6, write_graph6, write_edge_list
from ramseylab.graph_core import Graph, complement, random_graph

from oracles import to_nx


def nx_graph6(g):
    return nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


def test_known_strings():
    assert write_graph6(Graph.empty(0)) == "?"
    assert write_graph6(Graph.complete(2)) == "A_"
    assert write_graph6(Graph.petersen()) == nx_graph6(Graph.petersen())
    assert parse_graph6("Bw") == Graph.complete(3)
    assert write_graph6(Graph.cycle(5), header=True) == ">>graph6<<" + nx_graph6(Graph.cycle(5))


@pytest.mark.parametrize("n", [0, 1, 2, 5, 62, 63, 64, 65, 100, 300])
def test_matches_networkx_encoder(n):
    g = random_graph(n, 0.4, seed=n)
    s = write_graph6(g)
    assert s == nx_graph6(g)
    assert parse_graph6(s) == g
    assert sorted(nx.from_graph6_bytes(s.encode()).edges()) == sorted(g.edges())


def test_round_trip_all_small_classes():
    for n in range(7):
        for g in enumerate_graphs(n):
            assert parse_graph6(write_graph6(g)) == g


def test_round_trip_random_orders():
    rng = random.Random(6)
    for _ in range(100):
        n = rng.randint(0, 200)
        g = random_graph(n, rng.random(), seed=rng.randrange(10**6))
        assert parse_graph6(write_graph6(g)) == g


def test_header_and_newline_tolerated():
    s = write_graph6(Graph.cycle(6))
    assert parse_graph6(">>graph6<<" + s + "\n") == Graph.cycle(6)
    assert parse_graph6((s + "\n").encode()) == Graph.cycle(6)


@pytest.mark.parametrize("text, offset", [
    ("", 0),
    (">>graph6<<", 10),
    ("D?", 2),    # 5 vertices need 2 adjacency bytes
    ("Bw?", 2),   # trailing byte
    ("B!", 1),    # byte outside 63..126
    ("Bx", 1),    # padding bits set
    ("~?", 2),    # truncated long order
])
def test_errors_report_offsets(text, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(text)
    assert info.value.offset == offset


def test_edge_list_round_trip_and_errors():
    g = Graph.petersen()
    assert parse_edge_list(write_edge_list(g)) == g
    assert parse_edge_list("3\n0 1  # comment\n\n1 2\n") == Graph.path(3)
    for bad in ["", "x\n", "3\n0 1 2\n", "3\n0 3\n"]:
        with pytest.raises(ValueError):
            parse_edge_list(bad)


def test_order5_classes_match_atlas_golden_file():
    # reference list: the networkx graph atlas on 5 vertices, in graph6
    golden = (Path(__file__).parent / "golden" / "atlas_order5.g6").read_text().split()
    ours = list(enumerate_graphs(5))
    assert len(golden) == len(ours) == 34
    ref = [nx.from_graph6_bytes(s.encode()) for s in golden]
    for g in ours:
        h = to_nx(g)
        assert sum(nx.is_isomorphic(h, r) for r in ref) == 1


def test_complement_changes_encoding():
    for g in enumerate_graphs(4):
        assert write_graph6(g) != write_graph6(complement(g))
