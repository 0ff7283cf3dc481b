import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from allpairs_lca import (
    AdjacencyLists,
    Dag,
    Decomposition,
    InvalidEll,
    decompose,
    decompose_sparse,
    greedy_decompose,
    has_exact_sizes,
    random_dag,
    transitive_closure,
    verify_decomposition,
)
from allpairs_lca.decompose import LayerState

from conftest import longest_chain, path


def state_for(g: Dag, ell: int) -> LayerState:
    s = LayerState(g.n, ell)
    s.alive_parents = lambda v: np.flatnonzero(g.adj[:, v] & s.alive)
    s.alive_children = lambda v: np.flatnonzero(g.adj[v] & s.alive)
    return s


# layer engine, one operation at a time

def test_insert_into_empty_state():
    g = path(3)
    s = state_for(g, 1)
    s.insert(0)
    assert s.level[0] == 1 and not s.nxt[0]


def test_insert_above_single_parent():
    s = state_for(path(3), 1)
    s.insert(0)
    s.insert(1)
    assert s.level[1] == 2 and list(s.nxt[1]) == [0]
    assert list(s.prv[0]) == [1]


def test_insert_keeps_only_highest_layer_parents():
    # 0 -> 1 -> 2 builds levels 1..3, 3 is a second level-1 vertex, 4 has parents 3 and 2;
    # isolated padding keeps h = 5 so no layer cap is hit
    g = Dag.from_edges(20, [(0, 1), (1, 2), (3, 4), (2, 4)])
    s = state_for(g, 4)
    for v in range(5):
        s.insert(v)
    assert s.level[3] == 1 and s.level[2] == 3
    assert s.level[4] == 4 and list(s.nxt[4]) == [2]
    assert s.audit(g.adj, "after") == []


def test_delete_leaf_enqueues_nothing():
    s = state_for(path(3), 1)
    for v in range(3):
        s.insert(v)
    s.delete(2)
    assert not s.MOVE


def test_delete_unique_parent_enqueues_child():
    s = state_for(path(3), 1)
    for v in range(3):
        s.insert(v)
    s.delete(0)
    assert list(s.MOVE) == [1]


def test_delete_one_of_two_parents_does_not_enqueue():
    g = Dag.from_edges(9, [(0, 2), (1, 2)])
    s = state_for(g, 3)
    for v in range(3):
        s.insert(v)
    assert set(s.nxt[2]) == {0, 1}
    s.delete(0)
    assert not s.MOVE
    assert s.audit(g.adj, "before_insert") == []


def test_move_without_parents_lands_in_layer_one():
    s = state_for(path(3), 1)
    for v in range(2):
        s.insert(v)
    s.delete(0)
    s.MOVE.clear()
    s.move(1)
    assert s.level[1] == 1


def test_move_to_one_above_remaining_parent():
    # 0 -> 1 -> 2 -> 3 and 0 -> 3 (plus isolated padding); 3 sits at level 4, deleting 2 drops it to level 2
    g = Dag.from_edges(20, [(0, 1), (1, 2), (2, 3), (0, 3)])
    s = state_for(g, 4)
    for v in range(4):
        s.insert(v)
    assert s.level[3] == 4
    s.delete(2)
    assert list(s.MOVE) == [3]
    s.MOVE.popleft()
    s.move(3)
    assert s.level[3] == 2 and list(s.nxt[3]) == [0]
    assert s.audit(g.adj, "after") == []


def test_extract_chain_lengths():
    s = state_for(path(1), 1)
    s.insert(0)
    assert s.extract_chain(0) == [0]
    s = state_for(path(2), 1)
    s.insert(0)
    s.insert(1)
    assert s.extract_chain(1) == [1, 0]


def test_extract_chain_from_random_stable_state():
    g = transitive_closure(random_dag(16, 0.3, 8))
    log = []
    d = decompose(g, 4, audit=True, log=log)
    assert all(len(c) == 4 for c in d.chains)
    for c in d.chains:
        assert all(g.adj[c[i], c[i + 1]] for i in range(3))


# whole runs

def test_ell_n_contract():
    for seed in range(10):
        g = transitive_closure(random_dag(12, 0.3, seed))
        d = decompose(g, 12)
        assert len(d.chains) <= 12 and len(d.antichains) <= 2
        assert verify_decomposition(g, d)


def test_edgeless_ell_one():
    g = Dag.from_edges(6, [])
    d = decompose(g, 1)
    assert len(d.chains) == 0
    assert len(d.antichains) <= 12
    assert all(len(a) == 1 for a in d.antichains)
    assert verify_decomposition(g, d)


def test_path_ell_two():
    g = path(4)
    d = decompose(g, 2)
    assert verify_decomposition(g, d)
    assert len(d.chains) <= 2 and all(len(c) == 2 for c in d.chains)
    assert len(d.antichains) <= 4
    assert d.chains == ((0, 1), (2, 3))


def test_invalid_ell():
    g = path(4)
    for bad in (0, 5, -1, 1.5):
        with pytest.raises(InvalidEll):
            decompose(g, bad)
        with pytest.raises(InvalidEll):
            greedy_decompose(g, bad)
        with pytest.raises(InvalidEll):
            decompose_sparse(g, bad)


def test_log_records_every_vertex_once():
    g = transitive_closure(random_dag(30, 0.2, 1))
    log = []
    decompose(g, 5, log=log)
    ins = [r[1] for r in log if r[0] == "insert"]
    dels = [r[1] for r in log if r[0] == "delete"]
    assert sorted(ins) == list(range(30))
    assert len(dels) == len(set(dels))
    for r in log:
        if r[0] == "move":
            assert r[3] < r[2]


def test_verify_decomposition_rejects_planted_violations():
    g = path(4)
    good = Decomposition(2, ((0, 1), (2, 3)), ())
    assert verify_decomposition(g, good)
    assert not verify_decomposition(g, Decomposition(2, ((0, 2), (1, 3)), ()))
    assert not verify_decomposition(g, Decomposition(2, ((0, 1),), ((1, 2, 3),)))
    assert not verify_decomposition(g, Decomposition(2, ((0, 1),), ((2,),)))
    assert not verify_decomposition(g, Decomposition(2, ((0, 1),), ((2, 3),)))
    assert not verify_decomposition(g, Decomposition(1, ((0, 1), (2, 3)), ()))


def test_greedy_examples():
    d = greedy_decompose(path(5), 1)
    assert d.chains == ((0, 1, 2, 3, 4),) and d.antichains == ()
    g = Dag.from_edges(7, [])
    d = greedy_decompose(g, 3)
    assert len(d.chains) == 3 and all(len(c) == 1 for c in d.chains)
    assert verify_decomposition(g, d, math.ceil(7 / 3))


@pytest.mark.parametrize("seed", range(60))
def test_all_engines_valid(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 50))
    g = random_dag(n, float(rng.choice([0.05, 0.2, 0.5])), seed)
    for gg in (g, transitive_closure(g)):
        for ell in {1, max(1, math.isqrt(n)), n}:
            d = decompose(gg, ell)
            assert verify_decomposition(gg, d) and has_exact_sizes(d, n)
            ds = decompose_sparse(AdjacencyLists.from_dag(gg), ell)
            assert verify_decomposition(gg, ds) and has_exact_sizes(ds, n)
            assert verify_decomposition(gg, greedy_decompose(gg, ell), math.ceil(n / ell))


def test_sparse_and_dense_agree():
    for seed in range(20):
        g = random_dag(60, 4 / 60, seed)
        for ell in (1, 8, 60):
            assert decompose(g, ell) == decompose_sparse(g, ell)


def test_sparse_special_graphs():
    p = path(10)
    assert verify_decomposition(p, decompose_sparse(p, 4))
    star = Dag.from_edges(9, [(0, v) for v in range(1, 9)])
    d = decompose_sparse(star, 1)
    assert verify_decomposition(star, d) and len(d.chains) <= 1


def test_greedy_first_chain_is_longest():
    for seed in range(20):
        g = random_dag(25, 0.2, seed)
        d = greedy_decompose(g, 2)
        assert len(d.chains[0]) == longest_chain(g.adj)


@pytest.mark.parametrize("seed", range(25))
def test_audit_passes(seed):
    rng = np.random.default_rng(1000 + seed)
    n = int(rng.integers(2, 41))
    g = random_dag(n, float(rng.uniform(0.05, 0.6)), seed)
    for ell in (1, 3, n):
        decompose(g, ell, audit=True)
        decompose_sparse(g, ell, audit=True)


def test_audit_detects_planted_violation():
    g = path(3)
    s = state_for(g, 1)
    for v in range(3):
        s.insert(v)
    s.level[2] = 1
    assert s.audit(g.adj, "after")


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 30), st.floats(0, 1), st.integers(0, 2**31), st.data())
def test_decompose_property(n, p, seed, data):
    g = transitive_closure(random_dag(n, p, seed))
    ell = data.draw(st.integers(1, n))
    d = decompose(g, ell)
    assert verify_decomposition(g, d)
    assert has_exact_sizes(d, n)
