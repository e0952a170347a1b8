"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``.
"""
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from emckit import (
    Objective,
    Problem,
    binomial,
    construct_A,
    construct_B,
    count_M,
    count_M_prime,
    count_partitions,
    enumerate_optima,
    enumerate_partitions,
    epsilon_formulas,
    kleitman_extremal,
    left_compress,
    matching_number,
    solve_max_family,
    solve_min_disjoint_pairs,
    star,
    supersat_lower_bound,
    BoundParams,
    verify_double_count,
    verify_shiftdeg_a,
    verify_shiftdeg_b,
)
from emckit.oracle import brute_force
from emckit.shifting import compression_steps
from emckit.solver import drop_ratio_check, emc_value

sys.path.insert(0, str(Path(__file__).parent))
from conftest import random_family  # noqa: E402
from test_solver import MAX_CASES, MIN_CASES  # noqa: E402

SEED = 20261018


@pytest.fixture
def criterion(capsys):
    """Context manager printing the criterion's verdict even when it fails."""

    @contextmanager
    def run(number, title):
        info = {}
        t0 = time.perf_counter()
        ok = False
        try:
            yield info
            ok = True
        finally:
            dt = time.perf_counter() - t0
            detail = "; ".join(f"{k}={v}" for k, v in info.items())
            with capsys.disabled():
                print(f"\n[{'PASS' if ok else 'FAIL'}] {number:>2}. {title} ({detail}; {dt:.2f}s)")

    return run


def test_01_kleitman_values(criterion):
    with criterion(1, "Kleitman values at n = sk") as info:
        for n, k, s, want in [(6, 2, 3, 10), (8, 2, 4, 21), (6, 3, 2, 10)]:
            t0 = time.perf_counter()
            res = solve_max_family(Problem(n, k, s))
            dt = time.perf_counter() - t0
            assert res.proven_optimal and res.optimum == want, (n, k, s, res.optimum)
            assert want == binomial(n, k) - binomial(n - 1, k - 1)
            assert dt < 10, dt
            info[f"f({n},{k},{s})"] = res.optimum


def test_02_kleitman_uniqueness(criterion):
    with criterion(2, "optima of f(6,2,3) are the six one-element-avoiding families") as info:
        optima = enumerate_optima(Problem(6, 2, 3))
        want = {kleitman_extremal(6, 2, x) for x in range(1, 7)}
        info["optima"] = len(optima)
        assert len(optima) == 6 and set(optima) == want


def test_03_drop_at_sk_plus_one(criterion):
    with criterion(3, "f(7,2,3) = 11, ratio 11/21 below 2/3") as info:
        t0 = time.perf_counter()
        res = solve_max_family(Problem(7, 2, 3))
        dt = time.perf_counter() - t0
        ratio = Fraction(res.optimum, binomial(7, 2))
        gap = Fraction(2, 3) - ratio
        info.update(f=res.optimum, ratio=ratio, gap=gap)
        assert res.proven_optimal and res.optimum == 11
        assert ratio == Fraction(11, 21) and gap == Fraction(1, 7)
        assert dt < 60
        rep = drop_ratio_check(3, 2)
        assert rep.passed and rep.gap == Fraction(1, 7)


def test_04_emc_grid(criterion):
    with criterion(4, "optimum = max(|A|,|B|) on the solved grid") as info:
        findings = []
        count = 0
        for s in range(2, 5):
            for k in range(1, 4):
                for n in (s * k, s * k + 1):
                    if binomial(n, k) > 1 << 20:
                        continue
                    res = solve_max_family(Problem(n, k, s, restrict_left_compressed=True))
                    count += 1
                    want = emc_value(n, k, s)
                    if not (res.proven_optimal and res.optimum == want):
                        findings.append(f"FINDING f({n},{k},{s})={res.optimum} vs {want}")
        info.update(instances=count, deviations=len(findings))
        assert not findings, findings


def test_05_shifting_suite(criterion):
    with criterion(5, "shifts keep size, never raise nu; shifted-degree inequalities hold") as info:
        rng = np.random.default_rng(SEED)
        violations = 0
        for n, k in [(6, 2), (7, 2), (6, 3)]:
            for _ in range(1000):
                F = random_family(rng, n, k)
                nu = matching_number(F)
                last = F
                for _, G in compression_steps(F):
                    nu_next = matching_number(G)
                    violations += len(G) != len(F) or nu_next > nu
                    nu, last = nu_next, G
                violations += last != left_compress(F)
                violations += not (verify_shiftdeg_a(last).holds and verify_shiftdeg_b(last).holds)
        info["violations"] = violations
        assert violations == 0


def test_06_partition_double_count(criterion):
    with criterion(6, "sum over partitions of G-blocks equals |G| M") as info:
        t0 = time.perf_counter()
        rng = np.random.default_rng(SEED)
        checked = 0
        for n, k in [(6, 2), (6, 3)]:
            for _ in range(200):
                assert verify_double_count(random_family(rng, n, k)).identity_holds
                checked += 1
        named = [construct_A(6, 2, 3), construct_B(6, 2, 3), star(6, 2, 1),
                 kleitman_extremal(6, 2, 6), construct_B(6, 3, 2), kleitman_extremal(6, 3, 1)]
        for F in named:
            assert verify_double_count(F).ok
            checked += 1
        info["families"] = checked
        assert time.perf_counter() - t0 < 30


def test_07_counting_formulas(criterion):
    with criterion(7, "partition counts by formula and by enumeration") as info:
        assert count_partitions(3, 2) == 15 == sum(1 for _ in enumerate_partitions(3, 2))
        assert count_partitions(2, 3) == 10 == sum(1 for _ in enumerate_partitions(2, 3))
        parts = list(enumerate_partitions(3, 2))
        block = parts[0][0]
        assert count_M(3, 2) == 3 == sum(block in p for p in parts)
        a, b = parts[0][0], parts[0][1]
        assert count_M_prime(3, 2) == 1 == sum(a in p and b in p for p in parts)
        info.update(partitions=15, M=3, M_prime=1)


def test_08_bound_arithmetic(criterion):
    with criterion(8, "epsilon formulas exact; supersaturation domain enforced") as info:
        e = epsilon_formulas(3, 100, Fraction(1, 100))
        info.update(eps_star=e.epsilon_star, eps=e.epsilon)
        assert (e.epsilon_star, e.epsilon) == (Fraction(1, 540000), Fraction(1, 2160000))
        with pytest.raises(ValueError):
            supersat_lower_bound(BoundParams(3, 2, Fraction(1, 100), 1))
        assert supersat_lower_bound(BoundParams(3, 2, Fraction(1, 200), 1)) >= 0


def test_09_supersaturation_probe(criterion):
    with criterion(9, "5 edges on [6] with max degree 4 force 2 disjoint pairs") as info:
        t0 = time.perf_counter()
        p = Problem(6, 2, objective=Objective.MIN_DISJOINT_PAIRS, fixed_size=5, max_degree=4)
        res = solve_min_disjoint_pairs(p)
        ref = brute_force(6, 2, maximise=False, fixed_size=5, max_degree=4)
        info.update(solver=res.optimum, oracle=ref.optimum, oracle_optima=len(ref.optima))
        assert res.optimum == ref.optimum == 2
        assert time.perf_counter() - t0 < 10


def test_10_oracle_equivalence(criterion):
    with criterion(10, "branch-and-bound agrees with full enumeration, C(n,k) <= 20") as info:
        count = 0
        for n in range(1, 21):
            for k in range(1, n + 1):
                if binomial(n, k) > 20:
                    continue
                for s in (2, 3):
                    ref = brute_force(n, k, s).optimum
                    assert solve_max_family(Problem(n, k, s)).optimum == ref, (n, k, s)
                    assert solve_max_family(Problem(n, k, s, restrict_left_compressed=True)).optimum == ref
                    count += 2
        for n, k, s, lo, hi in MAX_CASES:
            ref = brute_force(n, k, s, min_degree=lo, max_degree=hi).optimum
            assert solve_max_family(Problem(n, k, s, min_degree=lo, max_degree=hi)).optimum == ref
            count += 1
        for n, k, size, s, hi in MIN_CASES:
            p = Problem(n, k, s, objective=Objective.MIN_DISJOINT_PAIRS, fixed_size=size, max_degree=hi)
            ref = brute_force(n, k, s, maximise=False, fixed_size=size, max_degree=hi).optimum
            assert solve_min_disjoint_pairs(p).optimum == ref
            count += 1
        info["instances"] = count


def test_11_determinism_under_workers(criterion):
    with criterion(11, "same optimum and witness for 1, 2 and 8 workers") as info:
        for n, k, s in [(6, 2, 3), (8, 2, 4), (6, 3, 2), (7, 2, 3)]:
            runs = [solve_max_family(Problem(n, k, s, workers=w)) for w in (1, 2, 8)]
            keys = {(r.optimum, r.witnesses[0], r.nodes_explored) for r in runs}
            assert len(keys) == 1, (n, k, s)
        info["instances"] = 4


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
