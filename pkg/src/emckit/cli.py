"""Command-line front end.

Exit codes: 0 success/pass, 1 a verification failed, 2 usage or invalid
input, 3 search truncated by a budget, 4 infeasible constraints.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from fractions import Fraction
from itertools import product

from emckit.combinatorics import binomial
from emckit.constructions import construct_A, construct_B, kleitman_extremal, star
from emckit.family import degree_profile, matching_number
from emckit.io import FamilyFormatError, dump_family, family_to_dict, load_family, result_to_dict
from emckit.lp import export_lp
from emckit.partitions import (
    BoundParams,
    CapExceededError as PartitionCapError,
    epsilon_formulas,
    stab_upper_bound,
    supersat_lower_bound,
    verify_double_count,
)
from emckit.shifting import (
    NotLeftCompressedError,
    left_compress,
    verify_shiftdeg_a,
    verify_shiftdeg_b,
)
from emckit.solver import (
    CapExceededError,
    InfeasibleError,
    Objective,
    Problem,
    drop_ratio_check,
    emc_value,
    enumerate_optima,
    kleitman_check,
    solve_max_family,
    solve_min_disjoint_pairs,
)

OK, FAIL, USAGE, TRUNCATED, INFEASIBLE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not an exact rational (use p/q)") from None


def rstr(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _workers(args) -> int:
    if getattr(args, "workers", None):
        return args.workers
    return int(os.environ.get("EMC_WORKERS", "1"))


def _emit(obj, path: str | None = None) -> None:
    text = json.dumps(obj, indent=2)
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------- commands


def cmd_construct(args) -> int:
    kind = args.kind
    need = {"A": ("n", "k", "s"), "B": ("n", "k", "s"), "star": ("n", "k", "x"),
            "kleitman": ("n", "k", "x")}[kind]
    missing = [f"--{f}" for f in need if getattr(args, f) is None]
    if missing:
        raise UsageError(f"construct {kind} needs {', '.join(missing)}")
    if kind == "A":
        F = construct_A(args.n, args.k, args.s)
    elif kind == "B":
        F = construct_B(args.n, args.k, args.s)
    elif kind == "star":
        F = star(args.n, args.k, args.x)
    else:
        F = kleitman_extremal(args.n, args.k, args.x)
    extra = {}
    if args.stats:
        prof = degree_profile(F)
        extra["stats"] = {
            "size": len(F), "matching_number": matching_number(F),
            "degrees": {str(x): d for x, d in prof.degrees.items()},
            "min_degree": prof.min_degree, "max_degree": prof.max_degree,
        }
    print(dump_family(F, **extra))
    return OK


def cmd_compress(args) -> int:
    F = load_family(args.input)
    G = left_compress(F)
    text = dump_family(G)
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return OK


def _problem_from(args) -> Problem:
    objective = Objective(args.objective)
    forced = load_family(args.forced) if args.forced else None
    forbidden = load_family(args.forbidden) if args.forbidden else None
    return Problem(
        n=args.n, k=args.k, s=args.s, objective=objective,
        min_degree=args.min_degree, max_degree=args.max_degree,
        fixed_size=args.fixed_size, restrict_left_compressed=args.left_compressed,
        forced_members=forced, forbidden_members=forbidden,
        node_limit=args.node_limit, time_limit=args.time_limit, workers=_workers(args),
    )


def cmd_solve(args) -> int:
    p = _problem_from(args)
    if args.export_lp:
        with open(args.export_lp, "w") as fh:
            fh.write(export_lp(p))
    if p.objective is Objective.MAX_SIZE:
        res = solve_max_family(p)
    else:
        res = solve_min_disjoint_pairs(p)
    out = result_to_dict(res, claim="f(n,k,s): largest k-graph on [n] with matching number < s")
    if args.enumerate_optima and res.optimum is not None and res.proven_optimal:
        optima = enumerate_optima(p)
        out["witnesses"] = [family_to_dict(F) for F in optima]
        out["optima_count"] = len(optima)
    _emit(out, args.output)
    if not res.proven_optimal:
        _say(f"budget exhausted; incumbent {res.optimum} not proven optimal")
        return TRUNCATED
    if res.optimum is None:
        _say("infeasible: no family satisfies the constraints")
        return INFEASIBLE
    _say(f"optimum {res.optimum} ({res.nodes_explored} nodes, {res.wall_time:.2f}s)")
    return OK


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"verify {args.suite} needs {', '.join(missing)}")


def _verify_kleitman(args) -> tuple[dict, bool]:
    _need(args, "s", "k")
    rep = kleitman_check(args.s, args.k, workers=_workers(args))
    _say(f"[{'PASS' if rep.passed else 'FAIL'}] {rep.claim}: s={rep.s} k={rep.k} "
         f"optimum={rep.optimum} closed form={rep.closed_form} optima={rep.optima}")
    return {"claim": rep.claim, "s": rep.s, "k": rep.k, "optimum": rep.optimum,
            "closed_form": rep.closed_form, "optima": rep.optima,
            "expected_optima": rep.expected_optima, "structure_ok": rep.structure_ok,
            "proven_optimal": rep.proven_optimal, "passed": rep.passed}, rep.passed


def _verify_shiftdeg(args) -> tuple[dict, bool]:
    _need(args, "input")
    F = load_family(args.input)
    if args.compress:
        F = left_compress(F)
    a = verify_shiftdeg_a(F)
    b = verify_shiftdeg_b(F)
    ok = a.holds and b.holds
    claim = "Shifted-degree inequalities: (n-k)|F_n| <= k|F_n-bar| and |F_n|/C(n-1,k-1) <= |F_{n-1,n-bar}|/C(n-2,k-1)"
    _say(f"[{'PASS' if a.holds else 'FAIL'}] (a) {a.lhs} <= {a.rhs}")
    _say(f"[{'PASS' if b.holds else 'FAIL'}] (b) {b.lhs_num}/{b.lhs_den} <= {b.rhs_num}/{b.rhs_den}")
    return {"claim": claim,
            "a": {"lhs": a.lhs, "rhs": a.rhs, "holds": a.holds},
            "b": {"lhs_num": b.lhs_num, "lhs_den": b.lhs_den, "rhs_num": b.rhs_num,
                  "rhs_den": b.rhs_den, "holds": b.holds},
            "passed": ok}, ok


def _verify_double_count(args) -> tuple[dict, bool]:
    _need(args, "input")
    rep = verify_double_count(load_family(args.input))
    claim = "Stability bound, partition double count: pairs (G, pi) with G a block of pi outside F"
    _say(f"[{'PASS' if rep.ok else 'FAIL'}] sum of hits {rep.total_hits} vs |G|*M = "
         f"{rep.size_G}*{rep.M} = {rep.expected_hits}; partitions {rep.partitions}, "
         f">=1 hit {rep.hit_at_least_once}, >=2 hits {rep.hit_at_least_twice}")
    d = {f: getattr(rep, f) for f in rep.__dataclass_fields__}
    return {"claim": claim, **d, "passed": rep.ok}, rep.ok


def _verify_drop(args) -> tuple[dict, bool]:
    _need(args, "s", "k")
    rep = drop_ratio_check(args.s, args.k, workers=_workers(args))
    _say(f"[{'PASS' if rep.passed else 'FAIL'}] f({rep.s * rep.k + 1},{rep.k},{rep.s}) = {rep.f}, "
         f"ratio {rstr(rep.ratio)}, gap to {rep.s - 1}/{rep.s}: {rstr(rep.gap)}")
    return {"claim": rep.claim, "s": rep.s, "k": rep.k, "f": rep.f, "total": rep.total,
            "ratio": rstr(rep.ratio), "gap": rstr(rep.gap),
            "proven_optimal": rep.proven_optimal, "passed": rep.passed}, rep.passed


def _verify_emc(args) -> tuple[dict, bool]:
    s_max = args.s_max or 4
    k_max = args.k_max or 3
    rows = []
    ok = True
    for s in range(2, s_max + 1):
        for k in range(1, k_max + 1):
            for n in (s * k, s * k + 1):
                if binomial(n, k) > 1 << 20:
                    continue
                res = solve_max_family(Problem(n, k, s, restrict_left_compressed=True,
                                               workers=_workers(args)))
                want = emc_value(n, k, s)
                good = res.proven_optimal and res.optimum == want
                ok &= good
                if not good:
                    _say(f"FINDING: f({n},{k},{s}) = {res.optimum} but max(|A|,|B|) = {want}")
                rows.append({"n": n, "k": k, "s": s, "optimum": res.optimum,
                             "emc": want, "proven_optimal": res.proven_optimal, "agrees": good})
    _say(f"[{'PASS' if ok else 'FAIL'}] {len(rows)} instances, "
         f"{sum(r['agrees'] for r in rows)} agree with max(|A|,|B|)")
    return {"claim": "Erdos Matching Conjecture: f(n,k,s) = max(|A_{k,s}|, |B_{n,k,s}|)",
            "instances": rows, "passed": ok}, ok


SUITES = {
    "kleitman": _verify_kleitman,
    "shiftdeg": _verify_shiftdeg,
    "lemma-shiftdeg": _verify_shiftdeg,
    "double-count": _verify_double_count,
    "drop-ratio": _verify_drop,
    "emc": _verify_emc,
}


def cmd_verify(args) -> int:
    report, ok = SUITES[args.suite](args)
    _emit(report, args.output)
    return OK if ok else FAIL


def _bound_rows(s, k, delta, C, delta0, strict: bool) -> list[tuple[str, Fraction | None]]:
    eps = epsilon_formulas(s, C, delta0)
    p = BoundParams(s, k or 1, delta, C, delta0)
    rows = [("stab_upper_bound", stab_upper_bound(p))]
    if k is not None:
        if delta <= 1 / (200 * C):
            rows.append(("supersat_lower_bound", supersat_lower_bound(p)))
        elif strict:
            raise ValueError(f"supersaturation bound needs delta <= 1/(200C) = "
                             f"{rstr(1 / (200 * C))}, got delta = {rstr(delta)}")
        else:
            rows.append(("supersat_lower_bound", None))
    rows.append(("epsilon_star", eps.epsilon_star))
    rows.append(("epsilon", eps.epsilon))
    return rows


def cmd_bounds(args) -> int:
    ks = args.k or [None]
    grid = list(product(args.s, ks, args.delta, args.C))
    if len(grid) == 1 and not args.csv:
        rows = _bound_rows(*grid[0], args.delta0, strict=True)
        width = max(len(r[0]) for r in rows)
        for name, q in rows:
            print(f"{name:<{width}}  {rstr(q):>24}  {float(q):.12g}")
        return OK
    # sweep: one CSV row per parameter combination; out-of-domain supersat cells stay empty
    writer = csv.writer(sys.stdout)
    header = None
    for s, k, delta, C in grid:
        rows = _bound_rows(s, k, delta, C, args.delta0, strict=False)
        if header is None:
            header = ["s", "k", "delta", "C", "delta0"] + [r[0] for r in rows]
            writer.writerow(header)
        writer.writerow([s, "" if k is None else k, rstr(delta), rstr(C), rstr(args.delta0)]
                        + ["" if q is None else rstr(q) for _, q in rows])
    return OK


def _grid_instances(spec: dict) -> list[dict]:
    out = list(spec.get("instances", []))
    if "s" in spec and "k" in spec:
        offsets = spec.get("n_offsets", [0, 1])
        for s, k, off in product(spec["s"], spec["k"], offsets):
            out.append({"n": s * k + off, "k": k, "s": s})
    mins = spec.get("min_degree", [None])
    maxs = spec.get("max_degree", [None])
    expanded = []
    for inst in out:
        for lo, hi in product(mins, maxs):
            row = dict(inst)
            row.setdefault("min_degree", lo)
            row.setdefault("max_degree", hi)
            expanded.append(row)
    return expanded


CSV_HEADER = ["n", "k", "s", "min_degree", "max_degree", "optimum", "size_A", "size_B",
              "ratio", "gap", "nodes", "time", "status"]


def cmd_sweep(args) -> int:
    with open(args.grid) as fh:
        spec = json.load(fh)
    insts = _grid_instances(spec)
    code = OK
    out = open(args.output, "w", newline="") if args.output and args.output != "-" else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(CSV_HEADER)
        for inst in insts:
            n, k, s = inst["n"], inst["k"], inst["s"]
            lo, hi = inst.get("min_degree"), inst.get("max_degree")
            size_A = binomial(s * k - 1, k) if n >= s * k - 1 else ""
            size_B = binomial(n, k) - binomial(n - s + 1, k) if n >= s - 1 else ""
            base = [n, k, s, "" if lo is None else lo, "" if hi is None else hi]
            if binomial(n, k) > 1 << 20:
                writer.writerow(base + ["", size_A, size_B, "", "", "", "", "capped"])
                code = TRUNCATED
                continue
            unconstrained = lo is None and hi is None
            p = Problem(n, k, s, min_degree=lo, max_degree=hi,
                        restrict_left_compressed=unconstrained and spec.get("left_compressed", True),
                        node_limit=spec.get("node_limit"), time_limit=spec.get("time_limit"),
                        workers=_workers(args))
            t0 = time.perf_counter()
            res = solve_max_family(p)
            dt = time.perf_counter() - t0
            if res.optimum is None and res.proven_optimal:
                writer.writerow(base + ["", size_A, size_B, "", "", res.nodes_explored,
                                        f"{dt:.3f}", "infeasible"])
                continue
            status = "optimal" if res.proven_optimal else "truncated"
            if not res.proven_optimal:
                code = TRUNCATED
            if res.optimum is None:
                cells = ["", size_A, size_B, "", ""]
            else:
                ratio = Fraction(res.optimum, binomial(n, k))
                cells = [res.optimum, size_A, size_B, rstr(ratio), rstr(Fraction(s - 1, s) - ratio)]
            writer.writerow(base + cells + [res.nodes_explored, f"{dt:.3f}", status])
            out.flush()
    finally:
        if out is not sys.stdout:
            out.close()
    return code


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="emckit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="emit a named family as JSON")
    c.add_argument("kind", choices=["A", "B", "star", "kleitman"])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--s", type=int)
    c.add_argument("--x", type=int)
    c.add_argument("--stats", action="store_true")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("compress", help="left-compress a family")
    c.add_argument("--input", required=True)
    c.add_argument("--output")
    c.set_defaults(func=cmd_compress)

    c = sub.add_parser("solve", help="exact branch-and-bound")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--s", type=int)
    c.add_argument("--objective", choices=[o.value for o in Objective], default="max_size")
    c.add_argument("--min-degree", type=int)
    c.add_argument("--max-degree", type=int)
    c.add_argument("--fixed-size", type=int)
    c.add_argument("--left-compressed", action="store_true")
    c.add_argument("--forced")
    c.add_argument("--forbidden")
    c.add_argument("--node-limit", type=int)
    c.add_argument("--time-limit", type=float)
    c.add_argument("--workers", type=int)
    c.add_argument("--enumerate-optima", action="store_true")
    c.add_argument("--export-lp", metavar="PATH")
    c.add_argument("--output")
    c.set_defaults(func=cmd_solve)

    c = sub.add_parser("verify", help="run a verification suite")
    c.add_argument("suite", choices=sorted(SUITES))
    c.add_argument("--s", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--input")
    c.add_argument("--compress", action="store_true",
                   help="left-compress the input before checking shifted-degree inequalities")
    c.add_argument("--s-max", type=int)
    c.add_argument("--k-max", type=int)
    c.add_argument("--workers", type=int)
    c.add_argument("--output")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("bounds", help="evaluate the closed-form bounds exactly; "
                       "several values per flag give a CSV sweep")
    c.add_argument("--s", type=int, nargs="+", required=True)
    c.add_argument("--k", type=int, nargs="+")
    c.add_argument("--delta", type=rational, nargs="+", required=True)
    c.add_argument("--C", type=rational, nargs="+", required=True)
    c.add_argument("--delta0", type=rational, required=True)
    c.add_argument("--csv", action="store_true", help="CSV even for a single combination")
    c.set_defaults(func=cmd_bounds)

    c = sub.add_parser("sweep", help="solve a grid of instances into CSV")
    c.add_argument("--grid", required=True)
    c.add_argument("--output")
    c.add_argument("--workers", type=int)
    c.set_defaults(func=cmd_sweep)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        _say(f"error: {e}")
        return USAGE
    except InfeasibleError as e:
        _say(f"infeasible: {e}")
        return INFEASIBLE
    except (FamilyFormatError, NotLeftCompressedError, CapExceededError,
            PartitionCapError, OSError, json.JSONDecodeError) as e:
        _say(f"error: {e}")
        return USAGE
    except ValueError as e:
        _say(f"error: {e}")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
