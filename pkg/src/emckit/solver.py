"""Exact branch-and-bound for f(n,k,s) and its constrained relatives.

The search decides the k-subsets of ``[n]`` one by one in colex order,
include branch first.  Bookkeeping per s-matching (how many of its members
are included) gives forward checking: once s-1 members of a matching are
in, the last one is dead.  Two bounds prune maximisation nodes:

* the weight of included plus still-available sets;
* with a degree cap, the remaining degree room divided by k;
* an averaging bound over all s-matchings of the search ground set: each
  matching can hold at most its live weight minus its lightest member when
  all s members are live, and every set lies in the same number of
  matchings.

Left-compressed search (unconstrained maximisation only) uses that a
shifted family with s pairwise disjoint members already has s of them
inside ``[sk]``.  For ``n >= sk`` the search therefore runs on the k-subsets
of ``[sk]``; a set ``B`` of ``[n]`` is in the maximal shifted extension iff
its push-down ``a_i = min(b_i, sk - k + i)`` is, so each set of ``[sk]``
carries the number of sets pushing down onto it as its weight.

Work splitting: the tree is cut at a fixed depth; every subtree starts from
the same incumbent (the first leaf of the include-first dive) and runs
independently, so results and node counts do not depend on worker count.
"""
from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

import numpy as np

from emckit.combinatorics import binomial, check_ground, colex_rank, elements, enumerate_ksets
from emckit.constructions import construct_A, construct_B, kleitman_extremal
from emckit.family import Family, count_disjoint_pairs, has_matching_of_size

CAP = 1 << 20
FRONTIER_DEPTH = 10


class Objective(enum.Enum):
    MAX_SIZE = "max_size"
    MIN_DISJOINT_PAIRS = "min_disjoint_pairs"


class CapExceededError(ValueError):
    pass


class InfeasibleError(ValueError):
    pass


@dataclass(frozen=True)
class Problem:
    n: int
    k: int
    s: Optional[int] = None
    objective: Objective = Objective.MAX_SIZE
    min_degree: Optional[int] = None
    max_degree: Optional[int] = None
    fixed_size: Optional[int] = None
    restrict_left_compressed: bool = False
    forced_members: Optional[Family] = None
    forbidden_members: Optional[Family] = None
    node_limit: Optional[int] = None
    time_limit: Optional[float] = None
    workers: int = 1

    def __post_init__(self):
        check_ground(self.n)
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got n={self.n}, k={self.k}")
        if self.objective is Objective.MAX_SIZE:
            if self.s is None:
                raise ValueError("maximisation needs s")
            if self.fixed_size is not None:
                raise ValueError("fixed_size only applies to the min-disjoint-pairs objective")
        else:
            if self.fixed_size is None:
                raise ValueError("min-disjoint-pairs needs fixed_size")
            if self.fixed_size < 0:
                raise ValueError("fixed_size must be non-negative")
            if self.restrict_left_compressed:
                raise ValueError("left-compressed restriction only applies to maximisation")
        if self.s is not None and self.s < 2:
            raise ValueError(f"need s >= 2, got {self.s}")
        if self.restrict_left_compressed and (
            self.min_degree is not None or self.max_degree is not None
            or self.forced_members is not None or self.forbidden_members is not None
        ):
            raise ValueError("left-compressed search is only valid without degree "
                             "or membership constraints (shifting changes degrees)")
        for fam in (self.forced_members, self.forbidden_members):
            if fam is not None and (fam.n, fam.k) != (self.n, self.k):
                raise ValueError("forced/forbidden families must live on the same (n, k)")
        if self.forced_members is not None and self.forbidden_members is not None:
            if set(self.forced_members) & set(self.forbidden_members):
                raise ValueError("forced and forbidden members overlap")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if binomial(self.n, self.k) > CAP:
            raise CapExceededError(f"C({self.n},{self.k}) exceeds the search cap 2^20")


@dataclass
class SolverResult:
    optimum: Optional[int]
    witnesses: list[Family]
    nodes_explored: int
    proven_optimal: bool
    wall_time: float
    problem: Optional[Problem] = field(default=None, repr=False)

    @property
    def feasible(self) -> bool:
        return self.optimum is not None


# ------------------------------------------------------------------ setup


def _s_matchings(masks: list[int], s: int) -> np.ndarray:
    """Index tuples (increasing) of s pairwise disjoint masks."""
    out: list[tuple[int, ...]] = []
    m = len(masks)

    def rec(start: int, used: int, chosen: tuple[int, ...]) -> None:
        if len(chosen) == s:
            out.append(chosen)
            return
        for i in range(start, m):
            if not masks[i] & used:
                rec(i + 1, used | masks[i], chosen + (i,))

    if s >= 1:
        rec(0, 0, ())
    return np.array(out, dtype=np.int32).reshape(-1, s)


def _push_down(mask: int, ground: int, k: int) -> int:
    out = 0
    for i, b in enumerate(elements(mask), start=1):
        out |= 1 << (min(b, ground - k + i) - 1)
    return out


def _dominates(upper: int, lower: int) -> bool:
    """Componentwise comparison of sorted element tuples (the shift order)."""
    return all(a <= b for a, b in zip(elements(lower), elements(upper)))


class _Context:
    """Everything fixed for a problem: candidates, weights, matchings."""

    def __init__(self, p: Problem):
        self.p = p
        n, k, s = p.n, p.k, p.s
        self.compressed = p.restrict_left_compressed
        self.ground = min(n, s * k) if self.compressed else n
        self.cands = list(enumerate_ksets(self.ground, k))
        m = self.m = len(self.cands)
        self.index = {c: i for i, c in enumerate(self.cands)}
        w = np.ones(m, dtype=np.int64)
        if self.compressed and n > self.ground:
            w[:] = 0
            for b in enumerate_ksets(n, k):
                w[self.index[_push_down(b, self.ground, k)]] += 1
        self.w = w
        if s is not None and s * k <= self.ground:
            self.mats = _s_matchings(self.cands, s)
        else:
            self.mats = np.zeros((0, s or 1), dtype=np.int32)
        P = len(self.mats)
        buckets: list[list[int]] = [[] for _ in range(m)]
        for r, row in enumerate(self.mats.tolist()):
            for c in row:
                buckets[c].append(r)
        self.mlist = [np.array(b, dtype=np.int64) for b in buckets]
        self.per_set = len(buckets[0]) if P else 0
        if P:
            self.mat_w = w[self.mats]
            self.mat_minw = self.mat_w.min(axis=1)
        self.inc = np.array([[c >> x & 1 for x in range(n)] for c in self.cands], dtype=np.int64)
        self.up = None
        if self.compressed:
            up = np.zeros((m, m), dtype=np.int32)
            for a in range(m):
                for b in range(a, m):
                    if _dominates(self.cands[b], self.cands[a]):
                        up[a, b] = 1
            self.up = up
        self.forced = np.zeros(m, dtype=bool)
        self.forbidden = np.zeros(m, dtype=bool)
        if p.forced_members is not None:
            for c in p.forced_members:
                self.forced[self.index[c]] = True
        if p.forbidden_members is not None:
            for c in p.forbidden_members:
                self.forbidden[self.index[c]] = True
        self.disjoint = None
        if p.objective is Objective.MIN_DISJOINT_PAIRS:
            a = np.array(self.cands, dtype=np.uint64)
            self.disjoint = ((a[:, None] & a[None, :]) == 0).astype(np.int64)

    def expand(self, chosen: list[int]) -> Family:
        p = self.p
        picked = {self.cands[i] for i in chosen}
        if self.compressed and p.n > self.ground:
            members = [b for b in enumerate_ksets(p.n, p.k)
                       if _push_down(b, self.ground, p.k) in picked]
            return Family(p.n, p.k, members)
        return Family(p.n, p.k, picked)


_CONTEXTS: dict[Problem, _Context] = {}


def _context(p: Problem) -> _Context:
    key = replace(p, node_limit=None, time_limit=None, workers=1)
    ctx = _CONTEXTS.get(key)
    if ctx is None:
        if len(_CONTEXTS) > 8:
            _CONTEXTS.clear()
        ctx = _CONTEXTS[key] = _Context(key)
    return ctx


# ------------------------------------------------------------------ search


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, ctx: _Context, best: Optional[int], enumerate_at: Optional[int] = None,
                 node_limit: Optional[int] = None, deadline: Optional[float] = None,
                 stop_at_first: bool = False):
        self.ctx = ctx
        p = ctx.p
        self.p = p
        self.maximise = p.objective is Objective.MAX_SIZE
        m = ctx.m
        self.state = np.zeros(m, dtype=np.int8)  # 0 open, 1 in, 2 out
        self.dead = np.zeros(m, dtype=np.int32)
        self.blocked = np.zeros(m, dtype=np.int32)
        self.incl = np.zeros(len(ctx.mats), dtype=np.int32)
        self.deg = np.zeros(p.n, dtype=np.int64)
        self.size = 0
        self.weight = 0
        self.pairs = 0
        self.dj = np.zeros(m, dtype=np.int64) if ctx.disjoint is not None else None
        self.chosen: list[int] = []
        self.best = best
        self.best_chosen: Optional[list[int]] = None
        self.enumerate_at = enumerate_at
        self.found: list[list[int]] = []
        self.nodes = 0
        self.node_limit = node_limit
        self.deadline = deadline
        self.stop_at_first = stop_at_first
        self.truncated = False

    # state changes -----------------------------------------------------

    def _mark_dead(self, idx: np.ndarray, counts: np.ndarray) -> np.ndarray:
        prev = self.dead[idx]
        self.dead[idx] += counts
        newly = idx[prev == 0]
        if self.ctx.up is not None and len(newly):
            self.blocked += self.ctx.up[newly].sum(axis=0)
        return newly

    def _unmark_dead(self, idx: np.ndarray, counts: np.ndarray, newly: np.ndarray) -> None:
        self.dead[idx] -= counts
        if self.ctx.up is not None and len(newly):
            self.blocked -= self.ctx.up[newly].sum(axis=0)

    def include(self, i: int):
        ctx = self.ctx
        self.state[i] = 1
        self.chosen.append(i)
        self.size += 1
        self.weight += int(ctx.w[i])
        self.deg += ctx.inc[i]
        if self.dj is not None:
            self.pairs += int(self.dj[i])
            self.dj += ctx.disjoint[i]
        undo = None
        ms = ctx.mlist[i]
        if len(ms):
            self.incl[ms] += 1
            full = ms[self.incl[ms] == self.p.s - 1]
            if len(full):
                rows = ctx.mats[full]
                missing = rows[self.state[rows] != 1]
                idx, counts = np.unique(missing, return_counts=True)
                undo = (idx, counts, self._mark_dead(idx, counts))
        return undo

    def uninclude(self, i: int, undo) -> None:
        ctx = self.ctx
        if undo is not None:
            self._unmark_dead(*undo)
        ms = ctx.mlist[i]
        if len(ms):
            self.incl[ms] -= 1
        if self.dj is not None:
            self.dj -= ctx.disjoint[i]
            self.pairs -= int(self.dj[i])
        self.deg -= ctx.inc[i]
        self.weight -= int(ctx.w[i])
        self.size -= 1
        self.chosen.pop()
        self.state[i] = 0

    def exclude(self, i: int):
        self.state[i] = 2
        idx = np.array([i])
        one = np.array([1], dtype=np.int32)
        return (idx, one, self._mark_dead(idx, one))

    def unexclude(self, i: int, undo) -> None:
        self._unmark_dead(*undo)
        self.state[i] = 0

    # feasibility and bounds --------------------------------------------

    def can_include(self, i: int) -> bool:
        p = self.p
        if self.dead[i] or self.blocked[i] or self.ctx.forbidden[i]:
            return False
        if p.max_degree is not None and (self.deg + self.ctx.inc[i]).max() > p.max_degree:
            return False
        if p.fixed_size is not None and self.size >= p.fixed_size:
            return False
        return True

    def available(self, start: int) -> np.ndarray:
        st = self.state
        av = (st == 0) & (self.dead == 0) & ~self.ctx.forbidden
        if self.ctx.up is not None:
            av &= self.blocked == 0
        av[:start] = False
        return av

    def prune(self, i: int) -> bool:
        """True when the subtree below the current node cannot help."""
        ctx, p = self.ctx, self.p
        av = self.available(i)
        if ctx.forced[i:].any() and (ctx.forced & (self.state == 0) & ~av).any():
            return True
        if p.min_degree is not None:
            reach = self.deg + av.astype(np.int64) @ ctx.inc
            if reach.min() < p.min_degree:
                return True
        if p.max_degree is not None and p.fixed_size is None and self.deg.max() > p.max_degree:
            return True
        if self.maximise:
            target = self.best if self.enumerate_at is None else self.enumerate_at - 1
            if target is None:
                return False
            simple = self.weight + int(ctx.w[av].sum())
            if simple <= target:
                return True
            if p.max_degree is not None and not ctx.compressed:
                # each further set spends k units of the remaining degree room
                room = np.minimum(p.max_degree - self.deg, av.astype(np.int64) @ ctx.inc)
                if self.weight + int(room.sum()) // p.k <= target:
                    return True
            if ctx.per_set:
                live = av | (self.state == 1)
                alive = live[ctx.mats]
                tot = (ctx.mat_w * alive).sum(axis=1)
                full = alive.all(axis=1)
                cap = int(tot.sum() - ctx.mat_minw[full].sum())
                if cap // ctx.per_set <= target:
                    return True
            return False
        need = p.fixed_size - self.size
        if need > int(av.sum()):
            return True
        if self.best is None:
            return False
        if need > 0:
            extra = np.sort(self.dj[av])[:need].sum()
        else:
            extra = 0
        return self.pairs + int(extra) >= self.best

    # driver ------------------------------------------------------------

    def tick(self) -> None:
        if self.node_limit is not None and self.nodes >= self.node_limit:
            raise _Budget
        self.nodes += 1
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise _Budget

    def leaf(self) -> bool:
        p = self.p
        if p.min_degree is not None and self.deg.min() < p.min_degree:
            return False
        if p.max_degree is not None and self.deg.max() > p.max_degree:
            return False
        if p.fixed_size is not None and self.size != p.fixed_size:
            return False
        if self.state[self.ctx.forced].min(initial=1) != 1:
            return False
        value = self.weight if self.maximise else self.pairs
        if self.enumerate_at is not None:
            if value == self.enumerate_at:
                self.found.append(list(self.chosen))
            return True
        if self.best is None or (value > self.best if self.maximise else value < self.best):
            self.best = value
            self.best_chosen = list(self.chosen)
            return True
        return False

    def dfs(self, i: int, stop_depth: Optional[int] = None, frontier: Optional[list] = None) -> bool:
        """Explore from candidate ``i``; returns True to abort (first-leaf mode)."""
        self.tick()
        m = self.ctx.m
        if i == m:
            return self.leaf() and self.stop_at_first
        if self.prune(i):
            return False
        if stop_depth is not None and i == stop_depth:
            frontier.append(tuple(int(x) for x in self.state[:i]))
            return False
        if self.can_include(i):
            undo = self.include(i)
            try:
                if self.dfs(i + 1, stop_depth, frontier):
                    return True
            finally:
                self.uninclude(i, undo)
        if not self.ctx.forced[i]:
            undo = self.exclude(i)
            try:
                if self.dfs(i + 1, stop_depth, frontier):
                    return True
            finally:
                self.unexclude(i, undo)
        return False

    def replay(self, prefix: tuple[int, ...]) -> int:
        for i, d in enumerate(prefix):
            if d == 1:
                self.include(i)
            else:
                self.exclude(i)
        return len(prefix)


def _run_subtrees(p: Problem, prefixes: list[tuple[int, ...]], best: Optional[int],
                  enumerate_at: Optional[int], node_limit: Optional[int],
                  deadline: Optional[float]):
    """Run subtrees in order; a node limit is shared and spent front to back."""
    ctx = _context(p)
    out = []
    left = node_limit
    for prefix in prefixes:
        if left is not None and left <= 0:
            out.append((None, None, [], 0, True))
            continue
        srch = _Search(ctx, best, enumerate_at, left, deadline)
        start = srch.replay(prefix)
        try:
            srch.dfs(start)
        except _Budget:
            srch.truncated = True
        if left is not None:
            left -= srch.nodes
        out.append((srch.best if srch.best_chosen is not None else None,
                    srch.best_chosen, srch.found, srch.nodes, srch.truncated))
    return out


def _search(p: Problem, enumerate_at: Optional[int] = None):
    """Dive, split, run subtrees.  Returns (best, chosen, found, nodes, truncated, ctx).

    With a node limit the subtrees run in one process so the shared budget is
    spent in a fixed order; otherwise they are spread over ``p.workers``.
    """
    ctx = _context(p)
    deadline = time.monotonic() + p.time_limit if p.time_limit is not None else None
    nodes = 0
    best = None
    chosen = None
    if enumerate_at is None:
        dive = _Search(ctx, None, node_limit=p.node_limit, deadline=deadline, stop_at_first=True)
        try:
            dive.dfs(0)
        except _Budget:
            return dive.best, dive.best_chosen, [], dive.nodes, True, ctx
        nodes += dive.nodes
        best, chosen = dive.best, dive.best_chosen
    budget = None if p.node_limit is None else p.node_limit - nodes
    front = _Search(ctx, best, enumerate_at, node_limit=budget, deadline=deadline)
    prefixes: list = []
    depth = min(FRONTIER_DEPTH, ctx.m)
    try:
        front.dfs(0, stop_depth=depth, frontier=prefixes)
    except _Budget:
        if front.best_chosen is not None:
            best, chosen = front.best, front.best_chosen
        return best, chosen, list(front.found), nodes + front.nodes, True, ctx
    nodes += front.nodes
    found = list(front.found)
    # leaves above the frontier depth only exist when m is tiny
    if front.best_chosen is not None:
        best, chosen = front.best, front.best_chosen
    budget = None if p.node_limit is None else p.node_limit - nodes
    truncated = False
    if p.workers > 1 and len(prefixes) > 1 and budget is None:
        chunks = [prefixes[j::p.workers] for j in range(p.workers)]
        with ProcessPoolExecutor(max_workers=p.workers) as ex:
            futs = [ex.submit(_run_subtrees, p, c, best, enumerate_at, None, deadline)
                    for c in chunks]
            parts = [f.result() for f in futs]
        results: list = [None] * len(prefixes)
        for j, part in enumerate(parts):
            for t, res in enumerate(part):
                results[j + t * p.workers] = res
    else:
        results = _run_subtrees(p, prefixes, best, enumerate_at, budget, deadline)
    for sub_best, sub_chosen, sub_found, sub_nodes, sub_trunc in results:
        nodes += sub_nodes
        truncated |= sub_trunc
        found.extend(sub_found)
        if sub_chosen is not None and (best is None or (
                sub_best > best if ctx.p.objective is Objective.MAX_SIZE else sub_best < best)):
            best, chosen = sub_best, sub_chosen
    return best, chosen, found, nodes, truncated, ctx


def _solve(p: Problem) -> SolverResult:
    t0 = time.perf_counter()
    best, chosen, _, nodes, truncated, ctx = _search(p)
    witnesses = [ctx.expand(chosen)] if chosen is not None else []
    optimum = best if chosen is not None else None
    return SolverResult(optimum, witnesses, nodes, not truncated,
                        time.perf_counter() - t0, p)


def solve_max_family(p: Problem) -> SolverResult:
    """Largest family with no s pairwise disjoint members, under p's constraints.

    ``optimum`` is None when the constraints admit no family at all.
    """
    if p.objective is not Objective.MAX_SIZE:
        raise ValueError("use solve_min_disjoint_pairs for that objective")
    return _solve(p)


def solve_min_disjoint_pairs(p: Problem) -> SolverResult:
    """Fewest disjoint pairs over families of size ``fixed_size``.

    The matching constraint applies only when ``p.s`` is set.
    """
    if p.objective is not Objective.MIN_DISJOINT_PAIRS:
        raise ValueError("problem objective must be MIN_DISJOINT_PAIRS")
    if p.fixed_size > binomial(p.n, p.k):
        raise InfeasibleError(f"size {p.fixed_size} exceeds C({p.n},{p.k})")
    return _solve(p)


def enumerate_optima(p: Problem) -> list[Family]:
    """Every optimal family, sorted by their colex rank sequences."""
    res = _solve(p)
    if res.optimum is None:
        return []
    if not res.proven_optimal:
        raise RuntimeError("search budget exhausted before the optimum was proven")
    _, _, found, _, truncated, ctx = _search(p, enumerate_at=res.optimum)
    if truncated:
        raise RuntimeError("search budget exhausted during enumeration")
    fams = {ctx.expand(ch) for ch in found}
    return sorted(fams, key=lambda F: [colex_rank(x) for x in F.members])


# ------------------------------------------------------------ checks


@dataclass
class KleitmanReport:
    """Kleitman's value at n = sk, plus the shape of the optima.

    For s >= 3 the optima must be exactly the sk families avoiding one
    element.  For s = 2 an optimum is any choice of one set from each
    complementary pair, so there are 2^C(2k-1,k-1) of them and only the
    count is checked.
    """

    s: int
    k: int
    optimum: int
    closed_form: int
    optima: int
    expected_optima: int
    structure_ok: bool
    proven_optimal: bool
    claim: str = "Kleitman bound: f(sk,k,s) = C(sk,k) - C(sk-1,k-1), extremal family unique up to the avoided element"

    @property
    def passed(self) -> bool:
        return (self.proven_optimal and self.optimum == self.closed_form
                and self.optima == self.expected_optima and self.structure_ok)


def kleitman_check(s: int, k: int, workers: int = 1) -> KleitmanReport:
    n = s * k
    p = Problem(n, k, s, workers=workers)
    res = solve_max_family(p)
    closed = binomial(n, k) - binomial(n - 1, k - 1)
    optima = enumerate_optima(p)
    if s >= 3:
        expected = n
        structure = set(optima) == {kleitman_extremal(n, k, x) for x in range(1, n + 1)}
    else:
        expected = 2 ** binomial(2 * k - 1, k - 1)
        top = (1 << n) - 1
        structure = all(len(F) == closed and all((top ^ c) not in F for c in F) for F in optima)
    return KleitmanReport(s, k, res.optimum, closed, len(optima), expected, structure,
                          res.proven_optimal)


@dataclass
class DropReport:
    s: int
    k: int
    f: int
    total: int
    ratio: Fraction
    gap: Fraction
    proven_optimal: bool
    claim: str = "Drop at n = sk+1: f(sk+1,k,s) <= ((s-1)/s - eps_s) C(sk+1,k)"

    @property
    def passed(self) -> bool:
        return self.proven_optimal and self.gap > 0


def drop_ratio_check(s: int, k: int, workers: int = 1) -> DropReport:
    n = s * k + 1
    res = solve_max_family(Problem(n, k, s, restrict_left_compressed=True, workers=workers))
    total = binomial(n, k)
    ratio = Fraction(res.optimum, total)
    return DropReport(s, k, res.optimum, total, ratio, Fraction(s - 1, s) - ratio,
                      res.proven_optimal)


def emc_value(n: int, k: int, s: int) -> int:
    """max(|A_{k,s}|, |B_{n,k,s}|); A is only defined when n >= sk - 1."""
    b = len(construct_B(n, k, s))
    a = len(construct_A(n, k, s)) if n >= s * k - 1 else 0
    return max(a, b)


def certify(p: Problem, res: SolverResult) -> bool:
    """Re-check witnesses against the constraints and the local certificate:
    no single k-set can be added while keeping the matching constraint."""
    if res.optimum is None:
        return True
    for F in res.witnesses:
        if p.s is not None and has_matching_of_size(F, p.s):
            return False
        if p.objective is Objective.MIN_DISJOINT_PAIRS:
            if len(F) != p.fixed_size or count_disjoint_pairs(F) != res.optimum:
                return False
            continue
        if len(F) != res.optimum:
            return False
        if p.min_degree is None and p.max_degree is None and p.forbidden_members is None:
            for c in enumerate_ksets(p.n, p.k):
                if c not in F and not has_matching_of_size(F.with_members(F.members + (c,)), p.s):
                    return False
    return True
