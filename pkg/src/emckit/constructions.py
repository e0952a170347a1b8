"""The named families: A_{k,s}, B_{n,k,s}, stars and the Kleitman family."""
from __future__ import annotations

from emckit.combinatorics import check_ground, enumerate_ksets, full_mask
from emckit.family import Family


def construct_A(n: int, k: int, s: int) -> Family:
    """All k-subsets of ``[sk-1]``, embedded in ``[n]``."""
    if k < 1 or s < 1:
        raise ValueError(f"need k, s >= 1, got k={k}, s={s}")
    if n < s * k - 1:
        raise ValueError(f"n={n} too small to host [sk-1] = [{s * k - 1}]")
    check_ground(n)
    return Family(n, k, enumerate_ksets(s * k - 1, k))


def construct_B(n: int, k: int, s: int) -> Family:
    """All k-subsets of ``[n]`` meeting ``[s-1]``."""
    if k < 1 or s < 1 or n < k or s - 1 > n:
        raise ValueError(f"invalid parameters n={n}, k={k}, s={s}")
    head = full_mask(s - 1)
    return Family(n, k, (m for m in enumerate_ksets(n, k) if m & head))


def star(n: int, k: int, x: int) -> Family:
    if not 1 <= x <= n:
        raise ValueError(f"centre {x} outside [1, {n}]")
    if not 1 <= k <= n:
        raise ValueError(f"invalid k={k} for n={n}")
    bit = 1 << (x - 1)
    return Family(n, k, (m for m in enumerate_ksets(n, k) if m & bit))


def kleitman_extremal(n: int, k: int, x: int) -> Family:
    """All k-subsets of ``[n]`` avoiding ``x``; requires ``n = sk`` with ``s >= 2``."""
    if k < 1 or n % k or n // k < 2:
        raise ValueError(f"n={n} is not sk for an integer s >= 2 (k={k})")
    if not 1 <= x <= n:
        raise ValueError(f"element {x} outside [1, {n}]")
    bit = 1 << (x - 1)
    return Family(n, k, (m for m in enumerate_ksets(n, k) if not m & bit))
