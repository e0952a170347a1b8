"""s-partitions of [sk] into k-blocks, the counts M and M', the (G, pi)
double count, and the closed-form bounds of the stability argument.

All bound arithmetic is done in :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, prod
from typing import Iterator

from emckit.combinatorics import binomial, full_mask
from emckit.family import Family, complement, count_disjoint_pairs, has_matching_of_size

ENUMERATION_CAP = 14

Partition = tuple[int, ...]


class CapExceededError(ValueError):
    pass


def _block_product(terms: int, k: int) -> int:
    return prod(binomial(j * k, k) for j in range(1, terms + 1))


def count_partitions(s: int, k: int) -> int:
    """Unordered partitions of [sk] into s blocks of size k."""
    if s < 1 or k < 1:
        raise ValueError(f"need s, k >= 1, got s={s}, k={k}")
    return _block_product(s, k) // factorial(s)


def count_M(s: int, k: int) -> int:
    """Partitions through one fixed k-block."""
    if s < 2 or k < 1:
        raise ValueError(f"need s >= 2, k >= 1, got s={s}, k={k}")
    return _block_product(s - 1, k) // factorial(s - 1)


def count_M_prime(s: int, k: int) -> int:
    """Partitions through two fixed disjoint k-blocks."""
    if s < 2 or k < 1:
        raise ValueError(f"need s >= 2, k >= 1, got s={s}, k={k}")
    return _block_product(s - 2, k) // factorial(s - 2)


def _partitions_of(rest: int, k: int) -> Iterator[Partition]:
    if not rest:
        yield ()
        return
    low = rest & -rest
    others = rest ^ low
    bits = [1 << b for b in range(others.bit_length()) if others >> b & 1]
    for combo in combinations(bits, k - 1):
        block = low | sum(combo)
        for tail in _partitions_of(rest ^ block, k):
            yield (block,) + tail


def enumerate_partitions(s: int, k: int) -> Iterator[Partition]:
    """Canonical s-partitions of [sk]; block i holds the least element not in
    blocks 1..i-1, so block 1 always contains element 1."""
    if s < 1 or k < 1:
        raise ValueError(f"need s, k >= 1, got s={s}, k={k}")
    if s * k > ENUMERATION_CAP:
        raise CapExceededError(f"sk={s * k} exceeds the enumeration cap {ENUMERATION_CAP}")
    return _partitions_of(full_mask(s * k), k)


def count_partitions_through(s: int, k: int, blocks: tuple[int, ...]) -> int:
    """Enumerated number of partitions containing every given block."""
    want = set(blocks)
    return sum(1 for p in enumerate_partitions(s, k) if want.issubset(p))


@dataclass(frozen=True)
class DoubleCountReport:
    s: int
    k: int
    size_G: int
    M: int
    M_prime: int
    total_hits: int
    expected_hits: int
    partitions: int
    hit_at_least_once: int
    hit_at_least_twice: int
    disjoint_pairs_G: int
    matching_number_below_s: bool
    identity_holds: bool
    every_partition_hit: bool | None
    chain_holds: bool | None
    pair_bound_holds: bool

    @property
    def ok(self) -> bool:
        checks = [self.identity_holds, self.pair_bound_holds]
        if self.matching_number_below_s:
            checks += [self.every_partition_hit, self.chain_holds]
        return all(checks)


def verify_double_count(F: Family) -> DoubleCountReport:
    """Count pairs (G, pi) with G in the complement of F and G a block of pi.

    The exact identity sum_pi #(blocks in G) == |G| * M is always checked.
    When F has no s pairwise disjoint members, every pi must meet G, and the
    measured chain ``|G| M >= #pi + #(pi with >= 2 G-blocks)`` is checked.
    Independently, each disjoint pair of G lies in M' partitions and a
    partition holds at most C(s,2) such pairs, which bounds the >= 2 count
    from below.
    """
    n, k = F.n, F.k
    if k < 1 or n % k:
        raise ValueError(f"ground set [{n}] is not [sk] for k={k}")
    s = n // k
    if s < 2:
        raise ValueError("need s >= 2")
    G = complement(F)
    M = count_M(s, k)
    M_prime = count_M_prime(s, k)
    total = ge1 = ge2 = parts = 0
    for p in enumerate_partitions(s, k):
        hits = sum(1 for b in p if b in G)
        total += hits
        parts += 1
        ge1 += hits >= 1
        ge2 += hits >= 2
    expected = len(G) * M
    below = not has_matching_of_size(F, s)
    dpG = count_disjoint_pairs(G)
    every = chain = None
    if below:
        every = ge1 == parts
        chain = total >= parts + ge2
    return DoubleCountReport(
        s=s, k=k, size_G=len(G), M=M, M_prime=M_prime,
        total_hits=total, expected_hits=expected,
        partitions=parts, hit_at_least_once=ge1, hit_at_least_twice=ge2,
        disjoint_pairs_G=dpG, matching_number_below_s=below,
        identity_holds=total == expected,
        every_partition_hit=every, chain_holds=chain,
        pair_bound_holds=ge2 * binomial(s, 2) >= dpG * M_prime,
    )


# ---------------------------------------------------------------- bounds


def as_fraction(value) -> Fraction:
    """Exact rational from an int, Fraction or "p/q" / exact decimal string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"refusing inexact value {value!r}; pass an int, Fraction or 'p/q' string")


@dataclass(frozen=True)
class BoundParams:
    s: int
    k: int
    delta: Fraction
    C: Fraction
    delta0: Fraction | None = None

    def __post_init__(self):
        for name in ("delta", "C", "delta0"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, as_fraction(v))
        if self.s < 3:
            raise ValueError(f"need s >= 3, got {self.s}")
        if self.k < 1:
            raise ValueError(f"need k >= 1, got {self.k}")
        if self.C <= 0:
            raise ValueError("C must be positive")
        if self.delta < 0:
            raise ValueError("delta must be non-negative")
        if self.delta0 is not None and self.delta > self.delta0:
            raise ValueError(f"delta={self.delta} exceeds delta0={self.delta0}")


def stab_upper_bound(p: BoundParams) -> Fraction:
    """Density coefficient (s-1)/s - (s-2) delta / (s^3 (s-1) C)."""
    s = p.s
    return Fraction(s - 1, s) - (s - 2) * p.delta / (s**3 * (s - 1) * p.C)


def supersat_lower_bound(p: BoundParams) -> Fraction:
    """Forced number of disjoint pairs for a family of size C(sk-1,k-1) on [sk]
    with maximum degree at most (1 - delta) C(sk-1,k-1).  Needs delta <= 1/(200C)."""
    s, k = p.s, p.k
    if p.delta > 1 / (200 * p.C):
        raise ValueError(f"delta={p.delta} violates delta <= 1/(200C) = {1 / (200 * p.C)}")
    coeff = p.delta * (s - 2) / (2 * p.C * s * (s - 1))
    return coeff * binomial(s * k - 1, k - 1) * binomial((s - 1) * k, k)


@dataclass(frozen=True)
class Epsilons:
    epsilon_star: Fraction
    epsilon: Fraction


def epsilon_formulas(s: int, C, delta0) -> Epsilons:
    C, delta0 = as_fraction(C), as_fraction(delta0)
    if s < 3:
        raise ValueError(f"need s >= 3, got {s}")
    if C <= 0:
        raise ValueError("C must be positive")
    top = Fraction(s - 1, s)
    if not 0 < delta0 <= top:
        raise ValueError(f"delta0={delta0} outside (0, {top}]")
    eps_star = min((s - 2) * delta0 / (s**3 * (s - 1) * C), top - delta0)
    return Epsilons(eps_star, eps_star / (s + 1))


@dataclass(frozen=True)
class StabChain:
    """Exact evaluation of the (G, pi) inequality after dividing by M."""

    partitions: int
    M: int
    M_prime: int
    pair_count_bound: Fraction
    complement_lower: Fraction
    complement_closed_form: Fraction
    family_upper: Fraction
    family_closed_form: Fraction

    @property
    def consistent(self) -> bool:
        return (self.complement_lower == self.complement_closed_form
                and self.family_upper == self.family_closed_form)


def stab_chain(p: BoundParams) -> StabChain:
    """Re-derive the stability bound from the partition counts.

    Uses the product formulas for #pi, M and M', the supersaturation count
    (without its delta hypothesis, since only algebra is checked here), and
    compares with the closed forms C(sk-1,k-1)(1 + (s-2)delta/(s^2(s-1)C))
    and the density coefficient from :func:`stab_upper_bound`.
    """
    s, k = p.s, p.k
    parts, M, Mp = count_partitions(s, k), count_M(s, k), count_M_prime(s, k)
    coeff = p.delta * (s - 2) / (2 * p.C * s * (s - 1))
    pairs = coeff * binomial(s * k - 1, k - 1) * binomial((s - 1) * k, k)
    lower_G = (parts + pairs * Mp / binomial(s, 2)) / M
    closed_G = binomial(s * k - 1, k - 1) * (1 + (s - 2) * p.delta / (s**2 * (s - 1) * p.C))
    return StabChain(
        partitions=parts, M=M, M_prime=Mp,
        pair_count_bound=pairs,
        complement_lower=lower_G,
        complement_closed_form=closed_G,
        family_upper=binomial(s * k, k) - lower_G,
        family_closed_form=stab_upper_bound(p) * binomial(s * k, k),
    )


@dataclass(frozen=True)
class DropCases:
    """Both branches of the |F_n| case split at n = sk+1, as totals."""

    target: Fraction
    small_link_total: Fraction
    large_link_total: Fraction
    small_link_holds: bool
    large_link_holds: bool


def drop_case_bounds(s: int, k: int, eps_star) -> DropCases:
    """Evaluate the two case bounds against ((s-1)/s - eps*/(s+1)) C(sk+1,k).

    Small link: |F_n-bar| <= (s-1)/s C(sk,k) and |F_n| <= ((s-1)/s - eps*) C(sk,k-1).
    Large link: |F_n-bar| <= ((s-1)/s - eps*) C(sk,k) and
    |F_n| <= k/((s-1)k+1) |F_n-bar|.
    """
    eps_star = as_fraction(eps_star)
    top = Fraction(s - 1, s)
    whole = binomial(s * k + 1, k)
    target = (top - eps_star / (s + 1)) * whole
    small = top * binomial(s * k, k) + (top - eps_star) * binomial(s * k, k - 1)
    without = (top - eps_star) * binomial(s * k, k)
    large = without + Fraction(k, (s - 1) * k + 1) * without
    return DropCases(target, small, large, small <= target, large <= (top - eps_star) * whole)
