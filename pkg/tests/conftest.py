"""Shared small graphs and independent pure-Python oracles."""

from collections import deque

import numpy as np
import pytest

from allpairs_lca import Dag, transitive_closure

# vertex names for the hand-checked graphs
A, B, C, D = 0, 1, 2, 3


def diamond() -> Dag:
    return Dag.from_edges(4, [(A, B), (A, C), (B, D), (C, D)])


def n_graph() -> Dag:
    # a=0, b=1 both point at u=2, v=3
    return Dag.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])


def path(n: int) -> Dag:
    return Dag.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def bfs_reach(g: Dag) -> list:
    """reach[u] = set of vertices reachable from u by a path of length >= 1."""
    out = []
    for s in range(g.n):
        seen, todo = set(), deque(np.flatnonzero(g.adj[s]).tolist())
        while todo:
            v = todo.popleft()
            if v not in seen:
                seen.add(v)
                todo.extend(np.flatnonzero(g.adj[v]).tolist())
        out.append(seen)
    return out


def lca_sets(g: Dag) -> dict:
    """Full LCA set for each pair, from ancestor-set intersection."""
    reach = bfs_reach(g)
    anc = [{u for u in range(g.n) if v in reach[u]} | {v} for v in range(g.n)]
    out = {}
    for u in range(g.n):
        for v in range(g.n):
            common = anc[u] & anc[v]
            out[u, v] = {w for w in common if not (reach[w] & common)}
    return out


def longest_chain(adj: np.ndarray) -> int:
    n = adj.shape[0]
    memo = {}

    def depth(v):
        if v not in memo:
            memo[v] = 1 + max((depth(int(u)) for u in np.flatnonzero(adj[:, v])), default=0)
        return memo[v]

    return max((depth(v) for v in range(n)), default=0)


@pytest.fixture
def diamond_closure():
    return transitive_closure(diamond())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
