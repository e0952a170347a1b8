"""LP-format export of a search problem, for cross-checking with an ILP solver."""
from __future__ import annotations

from emckit.combinatorics import enumerate_ksets
from emckit.solver import Objective, Problem, _s_matchings


def _terms(idx) -> str:
    return " + ".join(f"x{i}" for i in idx)


def export_lp(p: Problem) -> str:
    """CPLEX LP text with one binary per k-set, named ``x<colex rank>``.

    Packing rows ``sum <= s-1`` cover every s-tuple of pairwise disjoint
    k-sets, sorted by their rank tuples.  Degree rows follow when the
    problem bounds degrees.  The min-disjoint-pairs objective is quadratic
    and is linearised with one ``y_a_b`` product variable per disjoint pair.
    """
    cands = list(enumerate_ksets(p.n, p.k))
    m = len(cands)
    lines = []
    rows = []
    if p.objective is Objective.MAX_SIZE:
        lines += ["Maximize", f" size: {_terms(range(m))}"]
    else:
        pairs = [(a, b) for a in range(m) for b in range(a + 1, m) if not cands[a] & cands[b]]
        obj = " + ".join(f"y{a}_{b}" for a, b in pairs) or "0 x0"
        lines += ["Minimize", f" pairs: {obj}"]
        for a, b in pairs:
            rows.append(f" link{a}_{b}: y{a}_{b} - x{a} - x{b} >= -1")
        rows.append(f" size: {_terms(range(m))} = {p.fixed_size}")
    if p.s is not None and p.s * p.k <= p.n:
        for t, row in enumerate(_s_matchings(cands, p.s).tolist()):
            rows.append(f" pack{t}: {_terms(row)} <= {p.s - 1}")
    for x in range(p.n):
        members = [i for i, c in enumerate(cands) if c >> x & 1]
        if p.min_degree is not None:
            rows.append(f" mindeg{x + 1}: {_terms(members)} >= {p.min_degree}")
        if p.max_degree is not None:
            rows.append(f" maxdeg{x + 1}: {_terms(members)} <= {p.max_degree}")
    for fam, op, tag in ((p.forced_members, "=", "force"), (p.forbidden_members, "=", "forbid")):
        if fam is not None:
            rhs = 1 if tag == "force" else 0
            for c in fam:
                i = cands.index(c)
                rows.append(f" {tag}{i}: x{i} {op} {rhs}")
    lines += ["Subject To"] + rows
    lines += ["Binary"] + [f" x{i}" for i in range(m)]
    if p.objective is Objective.MIN_DISJOINT_PAIRS:
        lines += [f" y{a}_{b}" for a, b in pairs]
    lines.append("End")
    return "\n".join(lines) + "\n"
