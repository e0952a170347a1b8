"""
One step past n = sk
====================

At n = sk + 1 the optimum falls strictly below the (s-1)/s density.  The
left-compressed search then checks max(|A|,|B|) across a small grid.
"""
# %%
from emckit import Problem, export_lp, solve_max_family
from emckit.solver import drop_ratio_check, emc_value

for s, k in [(2, 2), (3, 2), (2, 3)]:
    rep = drop_ratio_check(s, k)
    print(f"f({s * k + 1},{k},{s}) = {rep.f} of {rep.total}: ratio {rep.ratio}, gap {rep.gap}")

# %%
# Shifted families reduce to the k-subsets of [sk] with multiplicities,
# which keeps the search small even when C(n,k) is large.
for n, k, s in [(9, 3, 3), (10, 3, 3), (12, 2, 5)]:
    res = solve_max_family(Problem(n, k, s, restrict_left_compressed=True))
    print(f"f({n},{k},{s}) = {res.optimum}, max(|A|,|B|) = {emc_value(n, k, s)}, "
          f"{res.nodes_explored} nodes, {res.wall_time:.2f}s")

# %%
# The same model as an integer program, for an external solver.
print(export_lp(Problem(4, 2, 2)))
