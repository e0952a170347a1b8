"""
Bounded degree forces disjoint pairs
====================================

Five edges on [6] can avoid disjoint pairs only as a star.  Capping the
maximum degree rules that out, and the minimum number of disjoint pairs
becomes positive.
"""
# %%
from emckit import Objective, Problem, count_disjoint_pairs, degree_profile, solve_min_disjoint_pairs
from emckit.oracle import brute_force

for cap in (5, 4, 3):
    p = Problem(6, 2, objective=Objective.MIN_DISJOINT_PAIRS, fixed_size=5, max_degree=cap)
    res = solve_min_disjoint_pairs(p)
    W = res.witnesses[0]
    print(f"max degree <= {cap}: {res.optimum} disjoint pairs, e.g. {W.sets()} "
          f"(max degree {degree_profile(W).max_degree})")

# %%
# Cross-check against full enumeration of all 5-edge subfamilies.
ref = brute_force(6, 2, maximise=False, fixed_size=5, max_degree=4)
print("oracle:", ref.optimum, "with", len(ref.optima), "optimal families")
assert all(count_disjoint_pairs(F) == 2 for F in ref.optima)
