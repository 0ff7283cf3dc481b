# %% [markdown]
# # Timings across sizes
#
# The decomposition engine runs in quadratic time, so doubling n should
# roughly quadruple the wall clock. The closure of a 0.1-density random DAG
# has about n^2/2 edges at every size, which keeps the instance family
# comparable across sizes. Restricting LCA queries to about sqrt(n)
# vertices cuts the work to a fraction.

# %%
from allpairs_lca.bench import format_table, run_bench

print(format_table(run_bench("decompose", [500, 1000, 2000], seed=0, repeat=3)))
print(format_table(run_bench("lca", [128, 256, 512], seed=0)))
print(format_table(run_bench("maxmin", [256, 512, 1024], seed=0)))
