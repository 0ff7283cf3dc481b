# %% [markdown]
# # The two matrix kernels
#
# Chain-restricted answers come from a (max, min) product. Antichain answers
# come from Boolean products whose witnesses name a common ancestor.

# %%
import numpy as np

from allpairs_lca import BoolMatrix, NEG_INF, check_witnesses, maxmin_bucketed, maxmin_naive, witness_product

# %% [markdown]
# ## (max, min) by buckets
#
# All entries are ranked and cut into t buckets of consecutive ranks. One
# Boolean product per bucket finds, for each output cell, the highest bucket
# that contains its answer; a short scan inside that bucket finishes it.

# %%
rng = np.random.default_rng(0)
a = rng.integers(0, 20, size=(30, 8))
b = rng.integers(0, 20, size=(8, 25))
a[rng.random(a.shape) < 0.1] = NEG_INF
for t in (1, 5, 30, a.size + b.size):
    same = np.array_equal(maxmin_bucketed(a, b, t), maxmin_naive(a, b))
    print(f"t={t:4d} matches naive: {same}")

# %% [markdown]
# ## Witnesses
#
# Rows are packed 64 to a word. The witness search halves the inner range,
# keeps the left half whenever it still has a hit, and so returns the
# smallest index k with A[i, k] and B[k, j].

# %%
A = BoolMatrix.from_dense(rng.random((6, 200)) < 0.02)
B = BoolMatrix.from_dense(rng.random((200, 6)) < 0.02)
prod, wit = witness_product(A, B)
print(prod.to_dense().astype(int))
print(wit)
print("witnesses check out:", check_witnesses(A, B, prod, wit))
