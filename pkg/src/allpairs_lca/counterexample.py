"""Why the combination step needs a block-compact order.

Taking the larger of a chain-restricted and an antichain-restricted LCA
label is only sound when each antichain occupies one contiguous block of
the topological order. :func:`search_order_failure` looks for small graphs
where an arbitrary topological order breaks the combination.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import ClosureDag, TopoOrder, random_dag, transitive_closure, verify_lca_matrix
from .lca import combine, p_restricted_lca, q_restricted_lca
from .order import path_respecting_refine, q_compact_order, verify_q_compact


def random_topological_order(g, rng) -> TopoOrder:
    """Kahn's algorithm picking uniformly among the ready vertices."""
    indeg = g.adj.sum(axis=0).astype(np.int64)
    ready = [int(v) for v in np.flatnonzero(indeg == 0)]
    out = []
    while ready:
        v = ready.pop(int(rng.integers(len(ready))))
        out.append(v)
        for w in np.flatnonzero(g.adj[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(int(w))
    return TopoOrder(np.array(out, dtype=np.int64))


def random_decomposition(gc: ClosureDag, rng, max_chains: int = 2) -> tuple:
    """A random valid split into a few chains plus antichains.

    Chains are random walks along closure edges; leftover vertices go to
    the first antichain that stays independent, in random order.
    """
    left = np.ones(gc.n, dtype=bool)
    chains = []
    for _ in range(int(rng.integers(1, max_chains + 1))):
        if not left.any():
            break
        v = int(rng.choice(np.flatnonzero(left)))
        chain = [v]
        left[v] = False
        while rng.random() >= 0.3:
            nxt = np.flatnonzero(gc.adj[chain[-1]] & left)
            if len(nxt) == 0:
                break
            v = int(rng.choice(nxt))
            chain.append(v)
            left[v] = False
        chains.append(tuple(chain))
    antichains = []
    for v in rng.permutation(np.flatnonzero(left)):
        for a in antichains:
            if not (gc.adj[a, v].any() or gc.adj[v, a].any()):
                a.append(int(v))
                break
        else:
            antichains.append([int(v)])
    return chains, antichains


@dataclass
class OrderFailure:
    """An instance where max-combination under ``order`` yields a wrong LCA."""

    closure: ClosureDag
    chains: list
    antichains: list
    order: TopoOrder
    pairs: np.ndarray
    answers: np.ndarray


def combined_lca(gc: ClosureDag, chains, antichains, order: TopoOrder) -> np.ndarray:
    out = combine(p_restricted_lca(gc, chains, order), q_restricted_lca(gc, antichains, order), order)
    np.fill_diagonal(out, np.arange(gc.n))
    return out


def search_order_failure(rng, trials: int = 20000, max_n: int = 8, orders_per_graph: int = 10):
    """Randomised search for a combination failure under a order that splits an antichain.

    For each random graph and random decomposition, antichain member order
    (which witness gets reported) and the topological order are shuffled.
    Each instance is also run under its block-compact order, which must never
    fail.

    Returns
    -------
    failure : OrderFailure or None
        The first failing instance found.
    compact_failures : int
        Number of instances where the block-compact order failed (expected 0).
    tried : int
        Number of (graph, order) instances examined.
    """
    compact_failures = 0
    tried = 0
    while tried < trials:
        n = int(rng.integers(4, max_n + 1))
        gc = transitive_closure(random_dag(n, float(rng.uniform(0.3, 0.7)), rng))
        chains, raw = random_decomposition(gc, rng)
        family = path_respecting_refine(gc, raw)
        compact = q_compact_order(gc, family)
        for _ in range(orders_per_graph):
            tried += 1
            fam = [tuple(rng.permutation(np.asarray(q)).tolist()) for q in family]
            if not verify_lca_matrix(gc, combined_lca(gc, chains, fam, compact)).all():
                compact_failures += 1
            order = random_topological_order(gc, rng)
            if verify_q_compact(gc, fam, order):
                continue
            ans = combined_lca(gc, chains, fam, order)
            ok = verify_lca_matrix(gc, ans)
            if not ok.all():
                return OrderFailure(gc, chains, fam, order, np.argwhere(~ok), ans), compact_failures, tried
    return None, compact_failures, tried
