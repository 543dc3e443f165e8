import json

import pytest
from hypothesis import given, strategies as st

from edgeext.core import (INFINITE_DISTANCE, InputError, MultiGraph,
                          degree_stats, edge_distance, edges_cycle,
                          edges_path, is_distance_matching, line_adjacency,
                          line_graph)

from conftest import multigraphs


def triangle():
    return MultiGraph(3, [(0, 0, 1), (1, 1, 2), (2, 0, 2)])


def test_loops_rejected():
    with pytest.raises(InputError):
        MultiGraph(2, [(0, 1, 1)])


def test_duplicate_edge_ids_rejected():
    with pytest.raises(InputError):
        MultiGraph(3, [(0, 0, 1), (0, 1, 2)])


def test_vertex_out_of_range_rejected():
    with pytest.raises(InputError):
        MultiGraph(2, [(0, 0, 2)])


def test_degrees_and_delta():
    g = MultiGraph(3, [(0, 0, 1), (1, 0, 1), (2, 1, 2)])
    assert g.degree(0) == 2
    assert g.degree(1) == 3
    assert g.degree(2) == 1
    assert g.delta() == 3
    assert g.mu() == 2


def test_parallel_edges_are_distinct():
    g = MultiGraph(2, [("a", 0, 1), ("b", 0, 1)])
    assert g.adjacent_edges("a") == ("b",)
    assert set(g.edge_ids) == {"a", "b"}


def test_line_graph_degree_counts_parallels_once():
    # A fat triangle: every edge has 3 neighbours at one end sharing a
    # vertex plus 1 parallel edge counted once, never twice.
    g = MultiGraph(3, [(i, u, v) for i, (u, v) in enumerate(
        [(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)])])
    stats = degree_stats(g)
    assert stats.delta == 4
    assert stats.mu == 2
    assert stats.line_delta == 5
    assert len(g.adjacent_edges(0)) == 5


def test_delete_and_restrict_keep_ids():
    g = MultiGraph(4, [(7, 0, 1), (3, 1, 2), (9, 2, 3)])
    h = g.delete_edges([3])
    assert set(h.edge_ids) == {7, 9}
    assert h.endpoints(9) == (2, 3)
    k = g.restrict_edges([3])
    assert set(k.edge_ids) == {3}
    with pytest.raises(InputError):
        g.delete_edges([42])


def test_components_ignore_isolated_vertices():
    g = MultiGraph(5, [(0, 0, 1), (1, 3, 4)])
    comps = g.components()
    assert len(comps) == 2
    assert g.is_connected() is False
    assert MultiGraph(3, [(0, 0, 1)]).is_connected() is True


def test_json_round_trip():
    g = MultiGraph(3, [(0, 0, 1), (1, 1, 2)])
    text = json.dumps(g.to_json_obj())
    h = MultiGraph.from_json(text)
    assert h.n == g.n and h.edges == g.edges


def test_from_json_rejects_garbage():
    with pytest.raises(InputError):
        MultiGraph.from_json("not json")
    with pytest.raises(InputError):
        MultiGraph.from_json('{"edges": []}')


def test_edge_distance_small_cases():
    # path with 3 edges: consecutive edges are adjacent (distance 1),
    # the two pendants are at distance 2.
    g = edges_path(4)
    ids = list(g.edge_ids)
    assert edge_distance(g, ids[0], ids[0]) == 0
    assert edge_distance(g, ids[0], ids[1]) == 1
    assert edge_distance(g, ids[0], ids[2]) == 2


def test_edge_distance_infinite_across_components():
    g = MultiGraph(4, [(0, 0, 1), (1, 2, 3)])
    assert edge_distance(g, 0, 1) == INFINITE_DISTANCE


def test_distance_matching_predicate():
    g = edges_path(5)
    ids = list(g.edge_ids)
    assert is_distance_matching(g, [ids[0], ids[2]], 1)
    assert not is_distance_matching(g, [ids[0], ids[1]], 1)
    assert not is_distance_matching(g, [ids[0], ids[2]], 2)
    assert is_distance_matching(g, [ids[0], ids[3]], 2)
    assert is_distance_matching(g, [], 3)


@given(multigraphs())
def test_edge_distance_matches_line_graph_bfs(g):
    # Oracle: plain BFS over an explicitly built line graph.
    adj = line_adjacency(g)
    ids = list(g.edge_ids)
    if not ids:
        return
    start = ids[0]
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for e in frontier:
            for f in adj[e]:
                if f not in dist:
                    dist[f] = dist[e] + 1
                    nxt.append(f)
        frontier = nxt
    for f in ids:
        expect = dist.get(f, INFINITE_DISTANCE)
        assert edge_distance(g, start, f) == expect


@given(multigraphs(max_e=7))
def test_line_graph_shape(g):
    lg = line_graph(g)
    assert lg.n == len(g.edges)
    # simple, and degrees equal neighbour counts in the original
    assert lg.mu() <= 1
    index = {eid: i for i, (eid, _, _) in enumerate(g.edges)}
    for eid, _, _ in g.edges:
        assert lg.degree(index[eid]) == len(g.adjacent_edges(eid))


def test_cycle_construction():
    g = edges_cycle(5)
    assert len(g.edges) == 5
    assert all(g.degree(v) == 2 for v in range(5))
    assert g.mu() == 1
