import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from allpairs_lca import NEG_INF, DimensionMismatch, InvalidBucketCount, dominance_product, maxmin_bucketed, maxmin_naive
from allpairs_lca.maxmin import as_sentinel, default_buckets


def triple_loop(a, b):
    n, p = a.shape
    m = b.shape[1]
    return np.array([[max(min(int(a[i, k]), int(b[k, j])) for k in range(p)) for j in range(m)]
                     for i in range(n)], dtype=np.int64).reshape(n, m)


def random_pair(rng, n, p, m, hi=6, neg=0.1):
    a = rng.integers(0, hi, size=(n, p))
    b = rng.integers(0, hi, size=(p, m))
    a[rng.random(a.shape) < neg] = NEG_INF
    b[rng.random(b.shape) < neg] = NEG_INF
    return a, b


def test_naive_examples():
    assert maxmin_naive([[5]], [[7]]).tolist() == [[5]]
    assert maxmin_naive([[1, 4], [3, 2]], [[2, 1], [5, 3]]).tolist() == [[4, 3], [2, 2]]
    a = np.array([[NEG_INF, NEG_INF], [1, 2]])
    out = maxmin_naive(a, np.array([[3, 4], [5, 6]]))
    assert np.all(out[0] == NEG_INF)


def test_naive_matches_triple_loop():
    rng = np.random.default_rng(1)
    for _ in range(30):
        n, p, m = rng.integers(1, 12, size=3)
        a, b = random_pair(rng, n, p, m)
        assert np.array_equal(maxmin_naive(a, b), triple_loop(a, b))


def test_sentinel_conversion():
    x = as_sentinel(np.array([[1.0, -np.inf]]))
    assert x.dtype == np.int64 and x[0, 1] == NEG_INF
    assert as_sentinel([[None, 3]])[0, 0] == NEG_INF


def test_bucketed_examples():
    rng = np.random.default_rng(2)
    a, b = random_pair(rng, 20, 8, 20)
    ref = maxmin_naive(a, b)
    assert np.array_equal(maxmin_bucketed(a, b, 1), ref)
    assert np.array_equal(maxmin_bucketed(a, b, 2 * 20 * 8), ref)
    assert np.array_equal(maxmin_bucketed(a, b, 5), ref)


def test_bucket_count_bounds():
    a = np.ones((3, 2), dtype=np.int64)
    with pytest.raises(InvalidBucketCount):
        maxmin_bucketed(a, a.T, 0)
    with pytest.raises(InvalidBucketCount):
        maxmin_bucketed(a, a.T, 13)
    with pytest.raises(DimensionMismatch):
        maxmin_bucketed(a, a, 1)
    with pytest.raises(DimensionMismatch):
        maxmin_naive(np.zeros((2, 0)), np.zeros((0, 2)))


def test_default_buckets():
    assert default_buckets(8, 2) == 6  # ceil(sqrt(32))
    assert default_buckets(10, 10, 10) == 15


@pytest.mark.parametrize("seed", range(60))
def test_bucketed_equals_naive_all_t(seed):
    rng = np.random.default_rng(seed)
    n, p, m = rng.integers(1, 40, size=3)
    a, b = random_pair(rng, n, p, m, hi=int(rng.integers(1, 50)))
    ref = maxmin_naive(a, b)
    total = n * p + p * m
    for t in {1, 2, default_buckets(n, p, m), int(np.ceil(np.sqrt(total))), total}:
        assert np.array_equal(maxmin_bucketed(a, b, t), ref), t


def test_all_neg_inf_input():
    a = np.full((3, 2), NEG_INF)
    assert np.all(maxmin_bucketed(a, a.T, 3) == NEG_INF)


def test_monotone_in_entries():
    rng = np.random.default_rng(4)
    for _ in range(40):
        a, b = random_pair(rng, 6, 5, 7)
        base = maxmin_bucketed(a, b)
        i, k = rng.integers(6), rng.integers(5)
        a2 = a.copy()
        a2[i, k] = max(a2[i, k], 0) + int(rng.integers(1, 5))
        assert np.all(maxmin_bucketed(a2, b) >= base)


def test_dominance_examples():
    assert dominance_product([[0, 0]], [[1], [1]]).tolist() == [[2]]
    a = np.full((2, 3), NEG_INF)
    assert np.all(dominance_product(a, np.zeros((3, 4), dtype=np.int64)) == 3)
    assert dominance_product([[1, 4]], [[2], [3]]).tolist() == [[1]]
    assert dominance_product([[1]], [[NEG_INF]]).tolist() == [[0]]


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10), st.integers(1, 10), st.integers(1, 10), st.integers(0, 2**31))
def test_dominance_counts(n, p, m, seed):
    rng = np.random.default_rng(seed)
    a, b = random_pair(rng, n, p, m, neg=0.2)
    out = dominance_product(a, b)
    ref = np.array([[sum(int(a[i, k]) < int(b[k, j]) for k in range(p)) for j in range(m)] for i in range(n)])
    assert np.array_equal(out, ref.reshape(n, m))
    assert out.min() >= 0 and out.max() <= p
