"""k-uniform families and the quantities the proofs talk about.

Members are bitmasks (see :mod:`emckit.combinatorics`); a :class:`Family`
keeps them sorted, which is colex order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from emckit.combinatorics import (
    check_ground,
    elements,
    enumerate_ksets,
    full_mask,
    kset,
    popcount,
)


class Family:
    """An immutable, duplicate-free collection of k-subsets of ``[n]``."""

    __slots__ = ("n", "k", "members", "_index")

    def __init__(self, n: int, k: int, members: Iterable[int] = ()):
        check_ground(n)
        if not 0 <= k <= n:
            raise ValueError(f"uniformity k={k} invalid for n={n}")
        ms = list(members)
        index = frozenset(ms)
        if len(index) != len(ms):
            raise ValueError("duplicate members in family")
        top = full_mask(n)
        for m in ms:
            if m & ~top or popcount(m) != k:
                raise ValueError(f"member {elements(m)} is not a {k}-subset of [{n}]")
        self.n = n
        self.k = k
        self.members: tuple[int, ...] = tuple(sorted(ms))
        self._index = index

    @classmethod
    def from_sets(cls, n: int, k: int, sets: Iterable[Iterable[int]]) -> "Family":
        return cls(n, k, (kset(s, n) for s in sets))

    @classmethod
    def full(cls, n: int, k: int) -> "Family":
        return cls(n, k, enumerate_ksets(n, k))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return (self.n, self.k, self.members) == (other.n, other.k, other.members)

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.members))

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, elements(m))) + "}" for m in self.members[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"Family(n={self.n}, k={self.k}, size={len(self)}: {body}{more})"

    def sets(self) -> list[list[int]]:
        return [list(elements(m)) for m in self.members]

    def with_members(self, masks: Iterable[int]) -> "Family":
        return Family(self.n, self.k, masks)


@dataclass(frozen=True)
class DegreeProfile:
    degrees: dict[int, int]
    min_degree: int
    max_degree: int


def _check_element(F: Family, x: int) -> None:
    if not 1 <= x <= F.n:
        raise ValueError(f"element {x} outside [1, {F.n}]")


def degree(F: Family, x: int) -> int:
    _check_element(F, x)
    bit = 1 << (x - 1)
    return sum(1 for m in F.members if m & bit)


def degree_profile(F: Family) -> DegreeProfile:
    degs = {x: degree(F, x) for x in range(1, F.n + 1)}
    return DegreeProfile(degs, min(degs.values()), max(degs.values()))


def restrict(F: Family, contains: Iterable[int] = (), avoids: Iterable[int] = ()) -> Family:
    """Members containing every element of ``contains`` and none of ``avoids``.

    ``restrict(F, {x})`` is F_x, ``restrict(F, (), {x})`` is F_x-bar,
    ``restrict(F, {x}, {y})`` is F_{x, y-bar}.
    """
    contains, avoids = set(contains), set(avoids)
    if contains & avoids:
        raise ValueError(f"elements {sorted(contains & avoids)} both required and forbidden")
    for x in contains | avoids:
        _check_element(F, x)
    want = kset(contains)
    ban = kset(avoids)
    return F.with_members(m for m in F.members if m & want == want and not m & ban)


def matching_exists(masks: list[int], s: int, k: int, n: int, used: int = 0) -> bool:
    """Whether ``s`` pairwise disjoint masks avoid ``used``.

    ``masks`` must be sorted; branches on the least compatible mask.
    """
    if s <= 0:
        return True
    free0 = n - popcount(used)

    def dfs(start: int, used: int, need: int, free: int) -> bool:
        if need == 0:
            return True
        if free < need * k:
            return False
        for i in range(start, len(masks)):
            m = masks[i]
            if not m & used:
                if dfs(i + 1, used | m, need - 1, free - k):
                    return True
        return False

    return dfs(0, used, s, free0)


def has_matching_of_size(F: Family, s: int) -> bool:
    """True iff F holds ``s`` pairwise disjoint members."""
    if s < 0:
        raise ValueError("matching size must be non-negative")
    if s == 0:
        return True
    if F.k == 0:
        return s <= 1 and len(F) > 0
    return matching_exists(list(F.members), s, F.k, F.n)


def matching_number(F: Family) -> int:
    """Exact size of a largest set of pairwise disjoint members.

    Depth-first include/exclude search on the colex-least compatible member,
    cut when ``current + free // k`` cannot beat the incumbent.
    """
    if not F.members:
        return 0
    k, n = F.k, F.n
    if k == 0:
        return 1
    masks = F.members
    ceiling = n // k
    best = 0

    def dfs(start: int, used: int, count: int, free: int) -> None:
        nonlocal best
        if count > best:
            best = count
        for i in range(start, len(masks)):
            if best >= ceiling or count + free // k <= best:
                return
            m = masks[i]
            if not m & used:
                dfs(i + 1, used | m, count + 1, free - k)

    dfs(0, 0, 0, n)
    return best


def count_disjoint_pairs(F: Family) -> int:
    """Number of unordered pairs of disjoint members."""
    if len(F) < 2:
        return 0
    a = np.fromiter(F.members, dtype=np.uint64, count=len(F))
    total = 0
    # row blocks keep the |F| x |F| comparison bounded in memory
    for lo in range(0, len(a), 1024):
        block = a[lo:lo + 1024]
        hits = (block[:, None] & a[None, :]) == 0
        total += int(hits.sum())
    # each unordered pair was seen twice; a k>0 set never misses itself
    return total // 2


def complement(F: Family) -> Family:
    """All k-subsets of ``[n]`` not in F."""
    return F.with_members(m for m in enumerate_ksets(F.n, F.k) if m not in F)
