"""Structural primitives: validation, components, bridges, connectivity,
contraction/subdivision, skeletons, distances, interchange formats."""

import random
from math import comb

import pytest

from conftest import cycle_n, k_n, path_n, random_connected_graph
from splitrel.canon import canonical_form_graph, isomorphic
from splitrel.families import balloon, two_terminal_balloon
from splitrel.graphs import (
    GuardError,
    SimpleGraph,
    TwoTerminalGraph,
    bridges,
    components,
    contract_edge,
    count_min_separators,
    diameter,
    distance,
    dumps,
    edge_connectivity,
    is_connected,
    is_split_subgraph,
    loads,
    min_degree,
    projected_terminals,
    skeleton,
    subdivide_edge,
    validate,
)


def test_validate_smallest_valid_instance():
    g = TwoTerminalGraph(k_n(3), 0, 1)
    assert validate(g) == []


def test_validate_disconnected():
    g = TwoTerminalGraph(SimpleGraph(4, ((0, 1), (2, 3))), 0, 2)
    assert validate(g) == ["not connected"]


def test_validate_self_loop():
    g = SimpleGraph(3, ((0, 1), (2, 2)))
    assert any("self-loop" in d for d in validate(g))


def test_validate_duplicate_and_terminals():
    g = SimpleGraph(3, ((0, 1), (1, 0), (1, 2)))
    assert any("duplicate" in d for d in validate(g))
    bad = TwoTerminalGraph(k_n(3), 1, 1)
    assert any("distinct" in d for d in validate(bad))


def test_components_full_cycle():
    c4 = cycle_n(4)
    assert components(c4, range(4)) == [[0, 1, 2, 3]]


def test_components_opposite_edges():
    c4 = cycle_n(4)
    idx_01 = c4.edge_index(0, 1)
    idx_23 = c4.edge_index(2, 3)
    comps = components(c4, (idx_01, idx_23))
    assert sorted(map(len, comps)) == [2, 2]


def test_components_empty_subset():
    g = k_n(5)
    assert components(g, ()) == [[v] for v in range(5)]


def test_components_bad_index():
    with pytest.raises(IndexError):
        components(k_n(3), (5,))


def test_is_split_subgraph_k3_exhaustive():
    # brute-force oracle over all 8 subsets of the triangle
    g = TwoTerminalGraph(k_n(3), 0, 1)
    expected = []
    for mask in range(8):
        kept = [i for i in range(3) if mask >> i & 1]
        comps = components(g.graph, kept)
        by_vertex = {v: ci for ci, comp in enumerate(comps) for v in comp}
        expected.append(len(comps) == 2 and by_vertex[0] != by_vertex[1])
    actual = [
        is_split_subgraph(g, [i for i in range(3) if mask >> i & 1]) for mask in range(8)
    ]
    assert actual == expected
    # kept = the edge from s to the third vertex splits; kept = {st} does not
    sv = g.graph.edge_index(0, 2)
    st = g.graph.edge_index(0, 1)
    assert is_split_subgraph(g, (sv,))
    assert not is_split_subgraph(g, (st,))
    assert not is_split_subgraph(g, range(3))


def test_bridges_path_and_complete():
    assert bridges(path_n(5)) == [0, 1, 2, 3]
    assert bridges(k_n(4)) == []


def test_bridges_balloon_pendant_path():
    assert len(bridges(balloon(9, 15))) == 3


def test_bridges_match_component_counts():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(3, 7)
        m = rng.randint(n - 1, comb(n, 2))
        g = random_connected_graph(rng, n, m)
        bset = set(bridges(g))
        for e in range(g.m):
            kept = [i for i in range(g.m) if i != e]
            assert (e in bset) == (len(components(g, kept)) == 2)


def test_edge_connectivity_values():
    assert edge_connectivity(k_n(4)) == 3
    assert edge_connectivity(balloon(6, 12)) == 2
    assert edge_connectivity(path_n(3)) == 1
    with pytest.raises(ValueError):
        edge_connectivity(SimpleGraph(1, ()))


def test_edge_connectivity_at_most_min_degree():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(3, 7)
        m = rng.randint(n - 1, comb(n, 2))
        g = random_connected_graph(rng, n, m)
        assert edge_connectivity(g) <= min_degree(g)


def test_dense_range_connectivity_equals_min_degree():
    # exhaustive for n <= 7 via the class enumerator
    from splitrel.enumeration import enumerate_graphs
    from splitrel.families import in_I0

    for n in range(4, 8):
        for m in range(n, comb(n, 2) + 1):
            if not in_I0(n, m):
                continue
            for g in enumerate_graphs(n, m):
                assert edge_connectivity(g) == min_degree(g)


def test_count_min_separators():
    assert count_min_separators(k_n(4)) == 4
    assert count_min_separators(k_n(5)) == 5
    k5_minus = SimpleGraph(5, tuple(p for p in k_n(5).edges if p != (0, 1)))
    assert count_min_separators(k5_minus) == 2
    assert count_min_separators(balloon(6, 12)) == 1


def test_count_min_separators_guard():
    with pytest.raises(GuardError):
        count_min_separators(k_n(5), guard=3)


def test_contract_edge():
    p3 = path_n(3)
    assert contract_edge(p3, 0).edges == ((0, 1),)
    c3 = cycle_n(3)
    g = contract_edge(c3, 0)
    assert (g.n, g.edges) == (2, ((0, 1),))  # parallel pair merged


def test_contract_pendant_bridge_of_balloon():
    g = balloon(9, 15)
    pendant = next(i for i in bridges(g) if 8 in g.edges[i])
    assert isomorphic(contract_edge(g, pendant), balloon(8, 14))


def test_subdivide_edge():
    p2 = path_n(2)
    assert isomorphic(subdivide_edge(p2, 0), path_n(3))
    assert isomorphic(subdivide_edge(cycle_n(3), 0), cycle_n(4))
    k4e = SimpleGraph(4, ((0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))
    h = subdivide_edge(k4e, k4e.edge_index(2, 3))
    assert (h.n, h.m) == (5, 6)
    assert h.degree(4) == 2


def test_skeleton_tree_and_bridgeless():
    sk, vmap = skeleton(path_n(5))
    assert sk.n == 1 and sk.m == 0 and set(vmap) == {0}
    sk, vmap = skeleton(k_n(4))
    assert sk == k_n(4) and vmap == (0, 1, 2, 3)


def test_skeleton_of_balloon():
    g = balloon(9, 15)
    sk, _ = skeleton(g)
    assert (sk.n, sk.m) == (6, 12)
    assert isomorphic(sk, balloon(6, 12))
    assert bridges(sk) == []


def test_skeleton_counts_on_randoms():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(3, 7)
        m = rng.randint(n - 1, comb(n, 2))
        g = random_connected_graph(rng, n, m)
        b = len(bridges(g))
        sk, vmap = skeleton(g)
        assert sk.n == n - b and sk.m == m - b
        assert bridges(sk) == [] if sk.n > 1 else True
        assert len(vmap) == n and max(vmap) == sk.n - 1


def test_distance_and_diameter():
    assert diameter(k_n(5)) == 1
    assert diameter(path_n(6)) == 5
    assert diameter(balloon(9, 15)) == 5
    g = SimpleGraph(4, ((0, 1), (2, 3)))
    with pytest.raises(ValueError):
        distance(g, 0, 2)


def test_degrees():
    assert min_degree(k_n(4)) == 3
    assert min_degree(balloon(6, 12)) == 2
    assert min_degree(path_n(5)) == 1


def test_projected_terminals():
    g = two_terminal_balloon(9, 15)
    pt = projected_terminals(g)
    assert pt is not None
    sk, _ = skeleton(g.graph)
    # the pendant-side projection has the skeleton's minimum degree (2)
    degs = sorted(sk.degree(v) for v in pt)
    assert degs[0] == 2
    # bridgeless: identity
    tt = TwoTerminalGraph(k_n(4), 1, 3)
    assert projected_terminals(tt) == (1, 3)
    # star with two leaf terminals: skeleton is a single vertex
    star = SimpleGraph(4, ((0, 1), (0, 2), (0, 3)))
    assert projected_terminals(TwoTerminalGraph(star, 1, 2)) is None


def test_binomial_split_bound():
    # sum of within-side pair counts is maximized at the extreme split
    for n in range(4, 51):
        for a in range(2, n - 1):
            assert comb(a, 2) + comb(n - a, 2) <= comb(n - 2, 2) + 1


def test_contract_then_subdivide_pendant_preserves_shape():
    g = balloon(7, 8)
    pendant = bridges(g)[-1]
    contracted = contract_edge(g, pendant)
    rebuilt = subdivide_edge(contracted, 0)
    assert (rebuilt.n, rebuilt.m) == (g.n, g.m)
    assert is_connected(rebuilt)


def test_json_and_text_round_trips():
    g = two_terminal_balloon(9, 15)
    assert loads(dumps(g, "json")) == g
    assert loads(dumps(g, "text")) == g
    plain = balloon(6, 12)
    assert loads(dumps(plain, "json")) == plain
    assert loads(dumps(plain, "text")) == plain


def test_text_format_shape():
    text = dumps(TwoTerminalGraph(k_n(3), 0, 2), "text")
    lines = text.strip().splitlines()
    assert lines[0] == "3 3"
    assert lines[-1] == "T 0 2"


def test_canonical_form_graph_sorted_edges():
    # storage normalization: pairs ordered, list sorted
    g = SimpleGraph(4, ((3, 2), (1, 0), (2, 0)))
    assert g.edges == ((0, 1), (0, 2), (2, 3))
    assert canonical_form_graph(g) == canonical_form_graph(SimpleGraph(4, ((0, 1), (0, 2), (2, 3))))
