"""LCAs for the pairs inside a query subset only.

Same pipeline as :func:`allpairs_lca.lca.all_pairs_lca`; the two table
builders just keep the query vertices as rows, so the (max, min) product is
``|S| x ell`` by ``ell x |S|`` and each witness product is ``|S|``-square.
"""

from __future__ import annotations

import numpy as np

from .errors import EmptyQuerySet, LcaError
from .graph import Dag
from .lca import DEFAULT_X, _Timer, combine, p_restricted_lca, prepare, q_restricted_lca


def _query_set(n: int, s) -> np.ndarray:
    s = np.unique(np.asarray(list(s), dtype=np.int64))
    if len(s) == 0:
        raise EmptyQuerySet("query set is empty")
    if s[0] < 0 or s[-1] >= n:
        raise LcaError("query vertex out of range")
    return s


def s_pairs_table(g: Dag, s, x: float = DEFAULT_X, *, buckets: int | None = None,
                  timings: dict | None = None):
    """LCA matrix over the query set.

    Returns ``(vertices, lca)`` where ``vertices`` is the sorted query set
    and ``lca[i, j]`` answers ``(vertices[i], vertices[j])`` with a vertex id
    or ``NONE``.
    """
    rows = _query_set(g.n, s)
    prep = prepare(g, x, timings)
    timer = _Timer(timings)
    with timer("p_table"):
        pt = p_restricted_lca(prep.closure, prep.decomposition.chains, prep.order, rows, buckets)
    with timer("q_table"):
        qt = q_restricted_lca(prep.closure, prep.antichains, prep.order, rows)
    with timer("combine"):
        out = combine(pt, qt, prep.order)
        np.fill_diagonal(out, rows)
    return rows, out


def s_pairs_lca(g: Dag, s, x: float = DEFAULT_X, **kwargs) -> dict:
    """``{(u, v): w}`` for every unordered pair ``u < v`` of the query set.

    ``w`` is a vertex id, or ``None`` when ``u`` and ``v`` share no ancestor.

    Raises
    ------
    EmptyQuerySet
        If ``s`` is empty.
    """
    rows, tab = s_pairs_table(g, s, x, **kwargs)
    out = {}
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            w = int(tab[i, j])
            out[(int(rows[i]), int(rows[j]))] = None if w < 0 else w
    return out
