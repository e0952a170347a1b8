"""Naive full-enumeration reference for tiny instances (C(n,k) <= 20).

Every subfamily is one bit pattern over the candidate k-sets, and every
constraint is evaluated on all 2^C(n,k) patterns at once with numpy.  The
code shares nothing with the branch-and-bound search beyond the Family type.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from emckit.family import Family

ORACLE_CAP = 20


@dataclass
class OracleResult:
    optimum: Optional[int]
    optima: list[Family]


def _candidates(n: int, k: int) -> list[int]:
    sets = [sum(1 << (x - 1) for x in c) for c in combinations(range(1, n + 1), k)]
    return sorted(sets)


def brute_force(n: int, k: int, s: Optional[int] = None, *, maximise: bool = True,
                fixed_size: Optional[int] = None, min_degree: Optional[int] = None,
                max_degree: Optional[int] = None, forced: Optional[Family] = None,
                forbidden: Optional[Family] = None) -> OracleResult:
    """Optimum over all subfamilies of C([n],k).

    ``maximise=True`` maximises size; otherwise minimises the number of
    disjoint pairs among families of size ``fixed_size``.  ``s`` (when
    given) forbids s pairwise disjoint members.
    """
    cands = _candidates(n, k)
    m = len(cands)
    if m > ORACLE_CAP:
        raise ValueError(f"C({n},{k}) = {m} exceeds the oracle cap {ORACLE_CAP}")
    pats = np.arange(1 << m, dtype=np.int64)
    ok = np.ones(len(pats), dtype=bool)
    size = np.bitwise_count(pats).astype(np.int64)
    if s is not None:
        for tup in combinations(range(m), s):
            if all(not cands[a] & cands[b] for a, b in combinations(tup, 2)):
                bad = sum(1 << t for t in tup)
                ok &= (pats & bad) != bad
    for x in range(n):
        col = sum(1 << i for i, c in enumerate(cands) if c >> x & 1)
        deg = np.bitwise_count(pats & col)
        if min_degree is not None:
            ok &= deg >= min_degree
        if max_degree is not None:
            ok &= deg <= max_degree
    if forced is not None:
        want = sum(1 << cands.index(c) for c in forced)
        ok &= (pats & want) == want
    if forbidden is not None:
        ban = sum(1 << cands.index(c) for c in forbidden)
        ok &= (pats & ban) == 0
    if maximise:
        value = size
    else:
        ok &= size == fixed_size
        value = np.zeros(len(pats), dtype=np.int64)
        for a, b in combinations(range(m), 2):
            if not cands[a] & cands[b]:
                both = (1 << a) | (1 << b)
                value += (pats & both) == both
    if not ok.any():
        return OracleResult(None, [])
    vals = value[ok]
    best = int(vals.max() if maximise else vals.min())
    winners = pats[ok][vals == best]
    optima = [Family(n, k, [cands[i] for i in range(m) if w >> i & 1]) for w in winners.tolist()]
    return OracleResult(best, optima)
