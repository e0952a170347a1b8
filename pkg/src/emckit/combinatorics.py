"""Ground-set arithmetic: binomials, k-set bitmasks and colex ranking.

A k-set is stored as a plain ``int`` bitmask: element ``x`` of ``[n]``
(1-indexed) lives in bit ``x - 1``.  For sets of equal size, colex order
coincides with numeric order of the masks, which the rest of the package
relies on for canonical ordering.
"""
from __future__ import annotations

from math import comb
from typing import Iterable, Iterator

MAX_N = 64


def check_ground(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"ground set size n={n} outside supported range 1..{MAX_N}")


def binomial(n: int, k: int) -> int:
    """Exact C(n, k); zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial needs n, k >= 0, got ({n}, {k})")
    return comb(n, k)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def kset(elems: Iterable[int], n: int | None = None) -> int:
    """Bitmask for a collection of 1-indexed elements."""
    mask = 0
    for x in elems:
        if x < 1 or (n is not None and x > n):
            raise ValueError(f"element {x} outside [1, {n}]")
        bit = 1 << (x - 1)
        if mask & bit:
            raise ValueError(f"duplicate element {x}")
        mask |= bit
    return mask


def elements(mask: int) -> tuple[int, ...]:
    """Sorted 1-indexed elements of a bitmask."""
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def colex_rank(mask: int) -> int:
    """Position of the set among all sets of its size in colex order."""
    r = 0
    i = 1
    pos = 0
    while mask:
        if mask & 1:
            r += comb(pos, i)
            i += 1
        mask >>= 1
        pos += 1
    return r


def colex_unrank(r: int, n: int, k: int) -> int:
    """Inverse of :func:`colex_rank` for k-subsets of ``[n]``."""
    total = comb(n, k)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} outside [0, {total}) for C({n},{k})")
    mask = 0
    a = n - 1
    for i in range(k, 0, -1):
        while comb(a, i) > r:
            a -= 1
        r -= comb(a, i)
        mask |= 1 << a
        a -= 1
    return mask


def enumerate_ksets(n: int, k: int) -> Iterator[int]:
    """All k-subsets of ``[n]`` as bitmasks, in colex order."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if n > MAX_N:
        check_ground(n)
    if k == 0:
        yield 0
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        # Gosper's hack: next larger integer with the same popcount
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple
