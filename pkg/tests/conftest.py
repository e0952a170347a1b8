from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest

from emckit import Family, enumerate_ksets


def pascal_table(limit: int) -> list[list[int]]:
    rows = [[1]]
    for n in range(1, limit + 1):
        prev = rows[-1]
        rows.append([1] + [prev[i - 1] + prev[i] for i in range(1, n)] + [1])
    return rows


def colex_listing(n: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of [n] sorted by the reversed tuple: colex order by definition."""
    return sorted(combinations(range(1, n + 1), k), key=lambda t: t[::-1])


def brute_matching_number(F: Family) -> int:
    sets = list(F.members)
    best = 0
    for r in range(1, len(sets) + 1):
        if any(all(not a & b for a, b in combinations(c, 2)) for c in combinations(sets, r)):
            best = r
        else:
            break
    return best


def random_family(rng: np.random.Generator, n: int, k: int, density: float | None = None) -> Family:
    allsets = list(enumerate_ksets(n, k))
    p = rng.uniform(0.05, 0.95) if density is None else density
    keep = rng.random(len(allsets)) < p
    return Family(n, k, [c for c, b in zip(allsets, keep) if b])


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)
