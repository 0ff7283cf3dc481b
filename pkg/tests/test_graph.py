import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from allpairs_lca import (
    NONE,
    AdjacencyLists,
    CycleDetected,
    Dag,
    brute_force_all_pairs_lca,
    random_dag,
    topological_order,
    transitive_closure,
    verify_lca,
    verify_lca_matrix,
)
from allpairs_lca.graph import is_transitively_closed

from conftest import A, B, C, D, bfs_reach, diamond, lca_sets, n_graph, path


def test_dag_rejects_self_loop_and_bad_shape():
    with pytest.raises(ValueError):
        Dag.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Dag(2, np.zeros((2, 3), dtype=bool))


def test_dag_adjacency_is_read_only():
    g = diamond()
    with pytest.raises(ValueError):
        g.adj[0, 3] = True


def test_topological_order_examples():
    assert topological_order(path(3)).order.tolist() == [0, 1, 2]
    assert topological_order(Dag.from_edges(3, [])).order.tolist() == [0, 1, 2]
    t = topological_order(diamond())
    assert t.order.tolist() == [A, B, C, D]
    assert t.is_topological(diamond())


def test_topological_order_detects_cycle():
    g = Dag.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(CycleDetected):
        topological_order(g)
    with pytest.raises(CycleDetected):
        topological_order(AdjacencyLists.from_edges(3, [(0, 1), (1, 2), (2, 0)]))


def test_topological_order_ties_by_smallest_id():
    g = Dag.from_edges(4, [(3, 0)])
    assert topological_order(g).order.tolist() == [1, 2, 3, 0]


def test_closure_examples():
    assert sorted(map(tuple, transitive_closure(path(3)).edges())) == [(0, 1), (0, 2), (1, 2)]
    assert transitive_closure(Dag.from_edges(3, [])).m == 0
    extra = set(map(tuple, transitive_closure(diamond()).edges())) - set(map(tuple, diamond().edges()))
    assert extra == {(A, D)}


@pytest.mark.parametrize("seed", range(40))
def test_closure_matches_bfs_and_is_idempotent(seed):
    g = random_dag(30, [0.05, 0.1, 0.3, 0.6][seed % 4], seed)
    gc = transitive_closure(g)
    reach = bfs_reach(g)
    for u in range(g.n):
        assert set(np.flatnonzero(gc.adj[u]).tolist()) == reach[u]
    assert transitive_closure(gc) == gc
    assert is_transitively_closed(gc)


def test_closure_batch_size_irrelevant():
    g = random_dag(100, 0.05, 7)
    assert transitive_closure(g, batch=1) == transitive_closure(g, batch=64)


def test_random_dag_examples():
    assert random_dag(6, 0.0, 1).m == 0
    assert random_dag(6, 1.0, 1).m == 15
    assert random_dag(20, 0.3, 9) == random_dag(20, 0.3, 9)
    assert topological_order(random_dag(50, 0.5, 3)).is_topological(random_dag(50, 0.5, 3))


def test_brute_force_examples():
    lca = brute_force_all_pairs_lca(diamond())
    assert lca[B, C] == A
    assert lca[B, D] == B
    assert brute_force_all_pairs_lca(n_graph())[2, 3] == 0
    two = Dag.from_edges(4, [(0, 1), (2, 3)])
    assert brute_force_all_pairs_lca(two)[1, 3] == NONE


@pytest.mark.parametrize("seed", range(30))
def test_brute_force_picks_min_of_lca_set(seed):
    g = random_dag(14, [0.1, 0.3, 0.6][seed % 3], seed)
    lca = brute_force_all_pairs_lca(g)
    sets = lca_sets(g)
    for (u, v), s in sets.items():
        assert lca[u, v] == (min(s) if s else NONE)


def test_verify_lca_examples(diamond_closure):
    assert verify_lca(diamond_closure, B, C, A)
    assert not verify_lca(diamond_closure, B, C, NONE)
    assert not verify_lca(diamond_closure, B, C, D)
    assert verify_lca(diamond_closure, B, D, B)
    assert not verify_lca(diamond_closure, B, D, A)
    nc = transitive_closure(n_graph())
    assert verify_lca(nc, 2, 3, 0) and verify_lca(nc, 2, 3, 1)
    assert verify_lca(nc, 0, 1, None)


@pytest.mark.parametrize("seed", range(20))
def test_verify_lca_matches_lca_sets(seed):
    g = random_dag(12, 0.35, seed)
    gc = transitive_closure(g)
    sets = lca_sets(g)
    for (u, v), s in sets.items():
        for w in range(g.n):
            assert verify_lca(gc, u, v, w) == (w in s)
        assert verify_lca(gc, u, v, NONE) == (not s)


def test_verify_lca_matrix_agrees_with_scalar():
    g = random_dag(25, 0.2, 4)
    gc = transitive_closure(g)
    rng = np.random.default_rng(0)
    cand = rng.integers(-1, g.n, size=(g.n, g.n))
    ok = verify_lca_matrix(gc, cand)
    for u in range(g.n):
        for v in range(g.n):
            assert ok[u, v] == verify_lca(gc, u, v, int(cand[u, v]))


def test_adjacency_lists_round_trip():
    g = random_dag(30, 0.2, 5)
    al = AdjacencyLists.from_dag(g)
    assert al.m == g.m
    assert al.to_dag() == g
    for v in range(g.n):
        assert al.parents[v].tolist() == np.flatnonzero(g.adj[:, v]).tolist()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 24), st.floats(0, 1), st.integers(0, 2**31))
def test_topological_order_places_edges_forward(n, p, seed):
    g = random_dag(n, p, seed)
    t = topological_order(g)
    src, dst = np.nonzero(g.adj)
    assert np.all(t.label[src] < t.label[dst])
    assert sorted(t.order.tolist()) == list(range(n))
