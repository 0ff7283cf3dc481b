# %% [markdown]
# # Lowest common ancestors in a DAG
#
# In a tree every pair of nodes has one lowest common ancestor. In a DAG a
# pair can have none, or several that are incomparable. This walk-through
# builds a few small graphs and shows what `all_pairs_lca` reports.

# %%
import numpy as np

from allpairs_lca import NONE, Dag, all_pairs_lca, random_dag, transitive_closure, verify_lca, verify_lca_matrix

# %% [markdown]
# ## The diamond
#
# a -> b, a -> c, b -> d, c -> d. Ancestry is reflexive, so b is its own
# ancestor and the answer for (b, d) is b itself.

# %%
a, b, c, d = range(4)
diamond = Dag.from_edges(4, [(a, b), (a, c), (b, d), (c, d)])
lca = all_pairs_lca(diamond)
print(lca)
print("lca(b, c) =", lca[b, c], " lca(b, d) =", lca[b, d], " lca(c, d) =", lca[c, d])

# %% [markdown]
# ## Two valid answers
#
# In the "N" graph both a and b point at u and v. Neither a nor b lies
# below the other, so both are lowest common ancestors. Any one of them is
# a correct answer, and `verify_lca` accepts both.

# %%
u, v = 2, 3
n_graph = Dag.from_edges(4, [(0, u), (0, v), (1, u), (1, v)])
gc = transitive_closure(n_graph)
print("reported:", all_pairs_lca(n_graph)[u, v])
print("a accepted:", verify_lca(gc, u, v, 0), " b accepted:", verify_lca(gc, u, v, 1))

# %% [markdown]
# ## No answer at all
#
# Two disjoint edges share no ancestor; the matrix holds NONE (-1) there.

# %%
two = Dag.from_edges(4, [(0, 1), (2, 3)])
print("lca(1, 3) is NONE:", all_pairs_lca(two)[1, 3] == NONE)

# %% [markdown]
# ## A random graph, checked
#
# The checker needs only the transitive closure: w must reach both
# vertices and none of w's descendants may also reach both.

# %%
g = random_dag(200, 0.03, seed=7)
timings = {}
lca = all_pairs_lca(g, x=0.5, timings=timings)
ok = verify_lca_matrix(transitive_closure(g), lca)
print(f"{ok.sum()} / {ok.size} entries accepted")
print("pairs with no common ancestor:", int((lca == NONE).sum()))
print({k: round(t, 1) for k, t in timings.items()}, "(ms)")
