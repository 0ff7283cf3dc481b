"""(max, min) matrix products over the integers extended with ``NEG_INF``.

Matrices are plain ``int64`` arrays; ``NEG_INF`` is the smallest ``int64``
so numpy's ``minimum``/``maximum`` already give the sentinel semantics.
"""

from __future__ import annotations

import math

import numpy as np

from .boolmat import BoolMatrix, bool_multiply
from .errors import DimensionMismatch, InvalidBucketCount

NEG_INF = np.iinfo(np.int64).min


def as_sentinel(x) -> np.ndarray:
    """Coerce nested lists to an int64 matrix; ``None`` and ``-inf`` become NEG_INF."""
    if isinstance(x, np.ndarray) and x.dtype == np.int64:
        return x
    if isinstance(x, np.ndarray) and x.dtype != object:
        return np.where(np.isneginf(x), NEG_INF, x).astype(np.int64) if x.dtype.kind == "f" else x.astype(np.int64)
    rows =[[NEG_INF if (e is None or e == -math.inf) else int(e) for e in row] for row in x]
    return np.array(rows, dtype=np.int64).reshape(len(rows), -1)


def _dims(a: np.ndarray, b: np.ndarray):
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a.shape[0], a.shape[1], b.shape[1]


def _row_chunks(n: int, p: int, m: int, budget: int = 1 << 22):
    step = max(1, budget // max(1, p * m))
    return range(0, n, step), step


def maxmin_naive(a, b) -> np.ndarray:
    """``C[i, j] = max_k min(a[i, k], b[k, j])`` evaluated term by term."""
    a, b = as_sentinel(a), as_sentinel(b)
    n, p, m = _dims(a, b)
    if p == 0:
        raise DimensionMismatch("inner dimension must be at least 1")
    out = np.empty((n, m), dtype=np.int64)
    starts, step = _row_chunks(n, p, m)
    for i in starts:
        block = np.minimum(a[i:i + step, :, None], b[None, :, :])
        out[i:i + step] = block.max(axis=1)
    return out


def default_buckets(n: int, p: int, m: int | None = None) -> int:
    """``ceil(sqrt(total))`` where ``total`` counts the entries of both factors."""
    total = n * p + p * (n if m is None else m)
    return max(1, math.isqrt(max(total - 1, 0)) + 1) if total > 1 else 1


def maxmin_bucketed(a, b, t: int | None = None) -> np.ndarray:
    """Max-min product via value buckets and one Boolean product per bucket.

    All entries of both factors are ranked (ties broken by value, then
    ``a`` before ``b``, then row-major position) and cut into ``t`` runs of
    at most ``ceil(total / t)`` consecutive ranks. For each run's lowest rank
    ``theta`` the Boolean product ``[a >= theta] . [b >= theta]`` is formed;
    the highest run whose product is set at ``(i, j)`` holds the answer. The
    exact value is then recovered by scanning only the entries of row ``i``
    of ``a`` and column ``j`` of ``b`` that fall in that run.

    Parameters
    ----------
    t : int, optional
        Bucket count in ``[1, total]``; defaults to :func:`default_buckets`.
    """
    a, b = as_sentinel(a), as_sentinel(b)
    n, p, m = _dims(a, b)
    if p == 0:
        raise DimensionMismatch("inner dimension must be at least 1")
    total = n * p + p * m
    if t is None:
        t = default_buckets(n, p, m)
    if not 1 <= t <= total:
        raise InvalidBucketCount(f"bucket count must be in [1, {total}], got {t}")
    out = np.full((n, m), NEG_INF, dtype=np.int64)
    if n == 0 or m == 0:
        return out

    values = np.concatenate([a.ravel(), b.ravel()])
    order = np.argsort(values, kind="stable")
    sorted_values = values[order]
    rank = np.empty(total, dtype=np.int64)
    rank[order] = np.arange(total)
    ra = rank[: n * p].reshape(n, p)
    rb = rank[n * p:].reshape(p, m)

    width = -(-total // t)
    nbuckets = -(-total // width)
    top = np.zeros((n, m), dtype=np.int64)
    for r in range(1, nbuckets):
        theta = r * width
        hit = bool_multiply(BoolMatrix.from_dense(ra >= theta), BoolMatrix.from_dense(rb >= theta))
        hit = hit.to_dense()
        if not hit.any():
            break
        top[hit] = r

    best = np.full((n, m), -1, dtype=np.int64)
    bucket_a = ra // width
    bucket_b = rb // width
    for r in np.unique(top):
        ii, jj = np.nonzero(top == r)
        # row i of a restricted to bucket r
        ka = _bucket_index_lists(bucket_a == r)
        ks = ka[ii]
        cand = np.where(ks >= 0, np.minimum(ra[ii[:, None], ks], rb[ks, jj[:, None]]), -1)
        res = cand.max(axis=1, initial=-1)
        # column j of b restricted to bucket r
        kb = _bucket_index_lists((bucket_b == r).T)
        ks = kb[jj]
        cand = np.where(ks >= 0, np.minimum(ra[ii[:, None], ks], rb[ks, jj[:, None]]), -1)
        res = np.maximum(res, cand.max(axis=1, initial=-1))
        best[ii, jj] = res
    if np.any(best < 0):
        raise AssertionError("bucket post-processing lost an entry")
    out[:] = sorted_values[best]
    return out


def _bucket_index_lists(mask: np.ndarray) -> np.ndarray:
    """Per row, the column indices where ``mask`` is set, padded with -1."""
    width = int(mask.sum(axis=1).max(initial=0))
    if width == 0:
        return np.full((mask.shape[0], 1), -1, dtype=np.int64)
    cols = np.argsort(~mask, axis=1, kind="stable")[:, :width]
    return np.where(np.take_along_axis(mask, cols, axis=1), cols, -1)


def dominance_product(a, b) -> np.ndarray:
    """``D[i, j] = |{k : a[i, k] < b[k, j]}|`` by direct comparison."""
    a, b = as_sentinel(a), as_sentinel(b)
    n, p, m = _dims(a, b)
    out = np.empty((n, m), dtype=np.int64)
    starts, step = _row_chunks(n, p, m)
    for i in starts:
        out[i:i + step] = (a[i:i + step, :, None] < b[None, :, :]).sum(axis=1)
    return out
