"""
Largest families without s disjoint sets at n = sk
==================================================

The two classical candidates, the exact optimum from the solver, and the
full list of optimal families.
"""
# %%
# Two candidate families: every k-subset of [sk-1], and every k-set that
# meets [s-1].  Neither can hold s pairwise disjoint members.
from emckit import (Problem, binomial, construct_A, construct_B, enumerate_optima,
                    kleitman_extremal, matching_number, solve_max_family)

n, k, s = 6, 2, 3
A = construct_A(n, k, s)
B = construct_B(n, k, s)
print(f"|A| = {len(A)}, nu(A) = {matching_number(A)}")
print(f"|B| = {len(B)}, nu(B) = {matching_number(B)}")

# %%
# The solver proves the optimum; at n = sk it equals C(sk,k) - C(sk-1,k-1).
res = solve_max_family(Problem(n, k, s))
print(f"f({n},{k},{s}) = {res.optimum}  closed form {binomial(n, k) - binomial(n - 1, k - 1)}"
      f"  ({res.nodes_explored} nodes)")
print("witness:", res.witnesses[0].sets())

# %%
# Every optimum avoids one element entirely.
optima = enumerate_optima(Problem(n, k, s))
for F in optima:
    missing = [x for x in range(1, n + 1) if F == kleitman_extremal(n, k, x)]
    print(f"optimum avoiding {missing[0]}: {len(F)} sets")

# %%
# With s = 2 the picture changes: any choice of one set from each
# complementary pair is optimal, so there are many optima.
print("optima of f(4,2,2):", len(enumerate_optima(Problem(4, 2, 2))))
