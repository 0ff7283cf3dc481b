"""Bit-packed Boolean matrices, their product, and witness recovery.

Rows are packed little-endian into 64-bit words: column ``j`` of a row lives
in word ``j // 64`` at bit ``j % 64``. Pad bits past ``cols`` are always 0.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch

WORD = 64
NONE = -1
_ONE = np.uint64(1)


def _words(cols: int) -> int:
    return max(1, -(-cols // WORD))


def _pack_rows(dense: np.ndarray) -> np.ndarray:
    rows, cols = dense.shape
    nw = _words(cols)
    padded = np.zeros((rows, nw * WORD), dtype=bool)
    padded[:, :cols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").reshape(rows, nw).astype(np.uint64, copy=False)


class BoolMatrix:
    """Immutable ``rows x cols`` 0/1 matrix stored bit-packed by row."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: np.ndarray):
        data = np.ascontiguousarray(data, dtype=np.uint64)
        if data.shape != (rows, _words(cols)):
            raise ValueError(f"packed data has shape {data.shape}, expected {(rows, _words(cols))}")
        tail = cols % WORD
        if tail and rows and np.any(data[:, -1] >> np.uint64(tail)):
            raise ValueError("pad bits must be zero")
        data.setflags(write=False)
        self.rows, self.cols, self.data = rows, cols, data

    @classmethod
    def from_dense(cls, dense) -> "BoolMatrix":
        d = np.asarray(dense).astype(bool)
        if d.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls(d.shape[0], d.shape[1], _pack_rows(d))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BoolMatrix":
        return cls(rows, cols, np.zeros((rows, _words(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls.from_dense(np.eye(n, dtype=bool))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_dense(self) -> np.ndarray:
        raw = np.ascontiguousarray(self.data).view(np.uint8).reshape(self.rows, -1)
        return np.unpackbits(raw, axis=1, count=self.cols, bitorder="little").astype(bool)

    def transpose(self) -> "BoolMatrix":
        return BoolMatrix.from_dense(self.to_dense().T)

    T = property(transpose)

    def __getitem__(self, ij):
        i, j = ij
        return bool((self.data[i, j // WORD] >> np.uint64(j % WORD)) & _ONE)

    def nnz(self) -> int:
        return int(self.to_dense().sum())

    def __eq__(self, other):
        if not isinstance(other, BoolMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"BoolMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"


def _check_inner(a: BoolMatrix, b: BoolMatrix):
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")


def _or_accumulate(a_dense: np.ndarray, b_data: np.ndarray, ks, out_words: int) -> np.ndarray:
    """Packed rows of ``A[:, ks] . B[ks, :]`` over (or, and)."""
    out = np.zeros((a_dense.shape[0], out_words), dtype=np.uint64)
    for k in ks:
        hit = a_dense[:, k]
        if hit.any():
            out[hit] |= b_data[k]
    return out


def bool_multiply(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """Exact Boolean product ``a . b``, one word-parallel OR per inner index."""
    _check_inner(a, b)
    data = _or_accumulate(a.to_dense(), b.data, range(a.cols), _words(b.cols))
    return BoolMatrix(a.rows, b.cols, data)


def witness_product(a: BoolMatrix, b: BoolMatrix, direct_below: int = 4):
    """Boolean product together with a witness for every nonzero entry.

    Witnesses are found by halving the inner dimension: each nonzero entry
    keeps a candidate block of inner indices known to contain a witness, and
    the product over the left half of that block decides which half to keep.
    Once a half is narrower than ``direct_below`` it is tested entry-wise
    instead of through a full block product.

    Returns
    -------
    product : BoolMatrix
    witness : ndarray of int64, shape (a.rows, b.cols)
        An inner index ``k`` with ``a[i, k] and b[k, j]``, or ``-1`` where the
        product entry is 0. With this halving order ``k`` is the smallest such
        index, though callers should not rely on which witness they get.
    """
    _check_inner(a, b)
    p = a.cols
    product = bool_multiply(a, b)
    witness = np.full((a.rows, b.cols), NONE, dtype=np.int64)
    ii, jj = np.nonzero(product.to_dense())
    if len(ii) == 0:
        return product, witness
    a_dense = a.to_dense()
    b_dense = None
    out_words = _words(b.cols)
    lo = np.zeros(len(ii), dtype=np.int64)
    size = 1
    while size < p:
        size *= 2
    while size > 1:
        half = size // 2
        order = np.argsort(lo, kind="stable")
        starts, first = np.unique(lo[order], return_index=True)
        bounds = np.append(first, len(order))
        for s, b0 in enumerate(starts):
            if b0 + half >= p:
                continue  # right half is empty, so the witness is on the left
            sel = order[bounds[s]:bounds[s + 1]]
            left = range(int(b0), int(b0) + half)
            if half < direct_below:
                if b_dense is None:
                    b_dense = b.to_dense()
                ks = np.arange(left.start, left.stop)
                found = np.any(a_dense[ii[sel][:, None], ks] & b_dense[ks][:, jj[sel]].T, axis=1)
            else:
                part = _or_accumulate(a_dense, b.data, left, out_words)
                cj = jj[sel]
                bits = part[ii[sel], cj // WORD] >> (cj % WORD).astype(np.uint64)
                found = (bits & _ONE).astype(bool)
            lo[sel[~found]] += half
        size = half
    witness[ii, jj] = lo
    return product, witness


def check_witnesses(a: BoolMatrix, b: BoolMatrix, product: BoolMatrix, witness: np.ndarray) -> bool:
    """Whether ``witness`` is a valid witness matrix for ``product = a . b``."""
    prod = product.to_dense()
    has = witness >= 0
    if not np.array_equal(has, prod):
        return False
    i, j = np.nonzero(has)
    k = witness[i, j]
    if np.any(k >= a.cols):
        return False
    ad, bd = a.to_dense(), b.to_dense()
    return bool(np.all(ad[i, k] & bd[k, j]))
