"""
Partitions of [sk] and the stability bound
==========================================

Partition counts by formula and by enumeration, the double count over
(block, partition) pairs, and exact evaluation of the closed-form bounds.
"""
# %%
from fractions import Fraction

from emckit import (BoundParams, count_M, count_M_prime, count_partitions, enumerate_partitions,
                    epsilon_formulas, kleitman_extremal, stab_upper_bound, supersat_lower_bound,
                    verify_double_count)

for s, k in [(3, 2), (2, 3), (4, 2)]:
    listed = sum(1 for _ in enumerate_partitions(s, k))
    print(f"s={s} k={k}: partitions {count_partitions(s, k)} (listed {listed}), "
          f"M={count_M(s, k)}, M'={count_M_prime(s, k)}")

# %%
# A family with no 3 disjoint sets on [6]: every partition must contain a
# block from the complement G.
rep = verify_double_count(kleitman_extremal(6, 2, 6))
print(f"|G| = {rep.size_G}, hits {rep.total_hits} = |G|*M = {rep.expected_hits}")
print(f"partitions hit: {rep.hit_at_least_once}/{rep.partitions}, twice or more: {rep.hit_at_least_twice}")

# %%
# Bounds are exact rationals.  C and delta0 are inputs; no values are assumed.
p = BoundParams(s=3, k=2, delta=Fraction(1, 1000), C=Fraction(1), delta0=Fraction(1, 100))
print("density bound:", stab_upper_bound(p))
print("forced disjoint pairs:", supersat_lower_bound(p))
e = epsilon_formulas(3, 1, Fraction(1, 100))
print("eps* =", e.epsilon_star, " eps =", e.epsilon)
