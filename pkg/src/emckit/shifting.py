"""The shifting operation S_{i,j}, left-compression, and the two degree
inequalities that hold for left-compressed families."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from emckit.combinatorics import binomial
from emckit.family import Family, restrict


class NotLeftCompressedError(ValueError):
    pass


def _check_pair(F: Family, i: int, j: int) -> None:
    if not 1 <= i < j <= F.n:
        raise ValueError(f"shift pair ({i}, {j}) needs 1 <= i < j <= {F.n}")


def _shift_masks(members: tuple[int, ...], index, i: int, j: int) -> list[int]:
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    out = []
    for m in members:
        if m & bj and not m & bi:
            image = m ^ bj ^ bi
            if image not in index:
                out.append(image)
                continue
        out.append(m)
    return out


def shift_family(F: Family, pair: tuple[int, int]) -> Family:
    """Apply S_{i,j} to every member.

    A member moves (j replaced by i) only when it contains j, misses i, and
    its image is not already in F.  Size is always preserved.
    """
    i, j = pair
    _check_pair(F, i, j)
    return F.with_members(_shift_masks(F.members, F, i, j))


def _moves(F: Family, i: int, j: int) -> bool:
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    return any(m & bj and not m & bi and (m ^ bj ^ bi) not in F for m in F.members)


def is_left_compressed(F: Family) -> bool:
    return not any(_moves(F, i, j) for j in range(2, F.n + 1) for i in range(1, j))


def compression_steps(F: Family) -> Iterator[tuple[tuple[int, int], Family]]:
    """Yield ``((i, j), family)`` after every shift that changes the family.

    Pairs are swept in lexicographic order; a sweep runs to the end before
    the next one starts, and the process stops after a sweep with no change.
    """
    pairs = [(i, j) for i in range(1, F.n + 1) for j in range(i + 1, F.n + 1)]
    changed = True
    while changed:
        changed = False
        for i, j in pairs:
            if _moves(F, i, j):
                F = shift_family(F, (i, j))
                changed = True
                yield (i, j), F


def left_compress(F: Family) -> Family:
    for _, F in compression_steps(F):
        pass
    return F


@dataclass(frozen=True)
class ShiftdegA:
    """(n-k)|F_n| <= k|F_n-bar|, as exact integers."""

    size_with_n: int
    size_without_n: int
    lhs: int
    rhs: int
    holds: bool


@dataclass(frozen=True)
class ShiftdegB:
    """|F_n| C(n-2,k-1) <= |F_{n-1, n-bar}| C(n-1,k-1)."""

    lhs_num: int
    lhs_den: int
    rhs_num: int
    rhs_den: int
    holds: bool


def _require_compressed(F: Family) -> None:
    if not is_left_compressed(F):
        raise NotLeftCompressedError("family is not left-compressed; call left_compress first")


def verify_shiftdeg_a(F: Family) -> ShiftdegA:
    _require_compressed(F)
    n, k = F.n, F.k
    with_n = len(restrict(F, {n}))
    without_n = len(F) - with_n
    lhs = (n - k) * with_n
    rhs = k * without_n
    return ShiftdegA(with_n, without_n, lhs, rhs, lhs <= rhs)


def verify_shiftdeg_b(F: Family) -> ShiftdegB:
    _require_compressed(F)
    n, k = F.n, F.k
    if n < 2:
        raise ValueError("need n >= 2 for the (n-1, n) link comparison")
    lhs_num = len(restrict(F, {n}))
    rhs_num = len(restrict(F, {n - 1}, {n}))
    lhs_den = binomial(n - 1, k - 1) if k >= 1 else 0
    rhs_den = binomial(n - 2, k - 1) if k >= 1 else 0
    holds = lhs_num * rhs_den <= rhs_num * lhs_den
    return ShiftdegB(lhs_num, lhs_den, rhs_num, rhs_den, holds)
