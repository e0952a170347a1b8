"""
Left compression
================

Shifting pushes a family towards small elements without changing its size
and without creating new disjoint sets.  The fixed point satisfies two
degree inequalities at the last element.
"""
# %%
import numpy as np

from emckit import (Family, enumerate_ksets, is_left_compressed, left_compress,
                    matching_number, verify_shiftdeg_a, verify_shiftdeg_b)
from emckit.shifting import compression_steps

rng = np.random.default_rng(7)
n, k = 7, 2
every = list(enumerate_ksets(n, k))
F = Family(n, k, [every[i] for i in rng.choice(len(every), size=9, replace=False)])
print("start:", F.sets(), " nu =", matching_number(F))

# %%
# Watch each changing shift: size stays put and nu never goes up.
for (i, j), G in compression_steps(F):
    print(f"S_{i},{j}: size {len(G)}, nu {matching_number(G)}")

# %%
G = left_compress(F)
print("fixed point:", G.sets(), " left-compressed:", is_left_compressed(G))

# %%
# Degree inequalities at element n for the compressed family.
a = verify_shiftdeg_a(G)
b = verify_shiftdeg_b(G)
print(f"(n-k)|F_n| = {a.lhs} <= k|F_nbar| = {a.rhs}: {a.holds}")
print(f"|F_n|/C(n-1,k-1) = {b.lhs_num}/{b.lhs_den} <= {b.rhs_num}/{b.rhs_den}: {b.holds}")
