"""All-pairs LCA via chain- and antichain-restricted subproblems.

The closure is split into chains and antichains. Restricted to the chains,
an LCA falls out of one (max, min) product of the "deepest ancestor on each
chain" table with its transpose. Restricted to the antichains, one Boolean
product with witnesses per antichain finds some common ancestor, deepest
antichain first. Under a topological order that keeps every antichain in
one contiguous block, the larger of the two labels is a true LCA.

Restricted tables hold *labels* (positions in the active order) or
``NEG_INF``; public results hold vertex ids or ``NONE``.
"""

from __future__ import annotations

import math
import time
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from .boolmat import BoolMatrix, witness_product
from .decompose import Decomposition, decompose
from .errors import LabelMismatch, LcaError
from .graph import NONE, ClosureDag, Dag, TopoOrder, transitive_closure
from .maxmin import NEG_INF, maxmin_bucketed
from .order import check_path_respecting, path_respecting_refine, q_compact_order

DEFAULT_X = 0.5


def ell_for(n: int, x: float) -> int:
    """Chain budget ``ceil(n ** x)`` clamped to ``[1, n]``."""
    if not 0.0 <= x <= 1.0:
        raise LcaError(f"x must lie in [0, 1], got {x}")
    if n <= 1:
        return 1
    return min(n, max(1, math.ceil(n ** x - 1e-9)))


def _rows(n: int, rows) -> np.ndarray:
    return np.arange(n) if rows is None else np.asarray(rows, dtype=np.int64)


def _check_order(gc: ClosureDag, order: TopoOrder):
    if order.n != gc.n or not order.is_topological(gc):
        raise LabelMismatch("order is not a topological order of the graph")


def deepest_on_chains(gc: ClosureDag, chains, order: TopoOrder, rows=None) -> np.ndarray:
    """``A[r, i]``: largest label among ancestors of ``rows[r]`` on chain ``i``.

    Ancestry is reflexive; ``NEG_INF`` where the chain holds no ancestor.
    """
    rows = _rows(gc.n, rows)
    out = np.full((len(rows), len(chains)), NEG_INF, dtype=np.int64)
    reach = gc.reach
    for i, chain in enumerate(chains):
        c = np.asarray(chain, dtype=np.int64)
        anc = reach[np.ix_(c, rows)]
        out[:, i] = np.where(anc, order.label[c][:, None], NEG_INF).max(axis=0)
    return out


def p_restricted_lca(gc: ClosureDag, chains, order: TopoOrder, rows=None,
                     buckets: int | None = None) -> np.ndarray:
    """Chain-restricted LCA labels for all pairs of ``rows``.

    Returns the ``(max, min)`` square of the deepest-ancestor table; entry
    ``(r, s)`` is the label of a member of the chain-restricted LCA set of
    ``rows[r], rows[s]``, or ``NEG_INF``.
    """
    _check_order(gc, order)
    rows = _rows(gc.n, rows)
    if len(chains) == 0 or len(rows) == 0:
        return np.full((len(rows), len(rows)), NEG_INF, dtype=np.int64)
    a = deepest_on_chains(gc, chains, order, rows)
    return maxmin_bucketed(a, a.T, buckets)


def q_restricted_lca(gc: ClosureDag, antichains, order: TopoOrder, rows=None) -> np.ndarray:
    """Antichain-restricted LCA labels for all pairs of ``rows``.

    The antichains are visited last to first; each one fills the still
    unset pairs that have a common ancestor in it, using a witness of the
    Boolean product of its ancestor matrix with its own transpose. Column
    ``k`` of that matrix is the ``k``-th listed member of the antichain.

    Raises
    ------
    NotPathRespecting
        If ``antichains`` is not path-respecting in ``gc``.
    """
    check_path_respecting(gc, antichains)
    _check_order(gc, order)
    rows = _rows(gc.n, rows)
    table = np.full((len(rows), len(rows)), NEG_INF, dtype=np.int64)
    reach = gc.reach
    for part in reversed(antichains):
        q = np.asarray(part, dtype=np.int64)
        if len(q) == 0:
            continue
        a = BoolMatrix.from_dense(reach[np.ix_(q, rows)].T)
        prod, wit = witness_product(a, a.T)
        fill = (table == NEG_INF) & (wit >= 0)
        table[fill] = order.label[q[wit[fill]]]
    return table


def restricted_brute_force(gc: ClosureDag, restriction):
    """Checker for restricted LCA tables over the vertex set ``restriction``.

    Returns ``check(table, order, rows=None)`` giving per-entry verdicts: a
    finite entry must be the label of a common ancestor inside the
    restriction with no common-ancestor descendant inside it; ``NEG_INF``
    must mean no common ancestor inside it at all.
    """
    inside = np.zeros(gc.n, dtype=bool)
    inside[np.asarray(list(restriction), dtype=np.int64)] = True
    reach = gc.reach

    def check(table, order: TopoOrder, rows=None) -> np.ndarray:
        rws = _rows(gc.n, rows)
        table = np.asarray(table)
        ok = np.empty(table.shape, dtype=bool)
        rc = reach[:, rws] & inside[:, None]
        for i, u in enumerate(rws):
            common = (reach[:, u][:, None] & rc).T  # [j, w]
            ent = table[i]
            empty = ent == NEG_INF
            w = order.order[np.where(empty, 0, ent)]
            hit = common[np.arange(len(rws)), w]
            deeper = np.any(gc.adj[w] & common, axis=1)
            ok[i] = np.where(empty, ~common.any(axis=1), hit & ~deeper)
        return ok

    return check


def combine(p_table: np.ndarray, q_table: np.ndarray, order: TopoOrder) -> np.ndarray:
    """Per-entry max of two label tables, translated to vertex ids (``NONE`` for none)."""
    best = np.maximum(p_table, q_table)
    return np.where(best == NEG_INF, NONE, order.order[np.where(best == NEG_INF, 0, best)])


@dataclass
class Prepared:
    """Everything both table builders need, computed once per graph."""

    closure: ClosureDag
    ell: int
    decomposition: Decomposition
    antichains: list
    order: TopoOrder


class _Timer:
    def __init__(self, sink):
        self.sink = sink

    @contextmanager
    def __call__(self, stage):
        t0 = time.perf_counter()
        yield
        if self.sink is not None:
            self.sink[stage] = self.sink.get(stage, 0.0) + (time.perf_counter() - t0) * 1e3


def prepare(g: Dag, x: float = DEFAULT_X, timings: dict | None = None) -> Prepared:
    """Closure, ``ceil(n^x)``-chain decomposition, refined antichains, order."""
    timer = _Timer(timings)
    ell = ell_for(g.n, x)
    with timer("closure"):
        gc = g if isinstance(g, ClosureDag) else transitive_closure(g)
    with timer("decompose"):
        d = decompose(gc, ell) if gc.n else Decomposition(ell, (), ())
    with timer("refine"):
        fam = path_respecting_refine(gc, d.antichains)
    with timer("order"):
        order = q_compact_order(gc, fam)
    return Prepared(gc, ell, d, fam, order)


def all_pairs_lca(g: Dag, x: float = DEFAULT_X, *, buckets: int | None = None,
                  timings: dict | None = None) -> np.ndarray:
    """A lowest common ancestor for every pair of vertices of ``g``.

    Parameters
    ----------
    g : Dag
    x : float
        Decomposition exponent in ``[0, 1]``; ``ceil(n ** x)`` chains are
        allowed. Affects speed only, never the validity of answers.
    buckets : int, optional
        Bucket count for the (max, min) product.
    timings : dict, optional
        Filled with per-stage wall-clock milliseconds.

    Returns
    -------
    ndarray of int64, shape (n, n)
        ``lca[u, v]`` is a vertex id, or ``NONE`` (-1) when ``u`` and ``v``
        have no common ancestor. The diagonal holds ``v`` itself.
    """
    prep = prepare(g, x, timings)
    timer = _Timer(timings)
    gc, order = prep.closure, prep.order
    with timer("p_table"):
        pt = p_restricted_lca(gc, prep.decomposition.chains, order, buckets=buckets)
    with timer("q_table"):
        qt = q_restricted_lca(gc, prep.antichains, order)
    with timer("combine"):
        out = combine(pt, qt, order)
        np.fill_diagonal(out, np.arange(g.n))
    return out
