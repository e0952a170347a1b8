"""JSON formats: families and solver results."""
from __future__ import annotations

import json
import sys
from typing import Any

from emckit.family import Family


class FamilyFormatError(ValueError):
    pass


def family_to_dict(F: Family) -> dict[str, Any]:
    return {"n": F.n, "k": F.k, "sets": F.sets()}


def family_from_dict(obj: Any) -> Family:
    """Strict loader: sets must be sorted, in range, of size k, and distinct."""
    if not isinstance(obj, dict):
        raise FamilyFormatError("family JSON must be an object")
    try:
        n, k, sets = obj["n"], obj["k"], obj["sets"]
    except KeyError as e:
        raise FamilyFormatError(f"family JSON missing field {e}") from None
    if not (isinstance(n, int) and isinstance(k, int)) or isinstance(n, bool) or isinstance(k, bool):
        raise FamilyFormatError("'n' and 'k' must be integers")
    if not isinstance(sets, list):
        raise FamilyFormatError("'sets' must be an array")
    seen = set()
    for s in sets:
        if not isinstance(s, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in s):
            raise FamilyFormatError(f"set {s!r} is not an array of integers")
        if len(s) != k:
            raise FamilyFormatError(f"set {s} does not have {k} elements")
        if any(a >= b for a, b in zip(s, s[1:])):
            raise FamilyFormatError(f"set {s} is not strictly increasing")
        if s and (s[0] < 1 or s[-1] > n):
            raise FamilyFormatError(f"set {s} leaves [1, {n}]")
        key = tuple(s)
        if key in seen:
            raise FamilyFormatError(f"duplicate set {s}")
        seen.add(key)
    try:
        return Family.from_sets(n, k, sets)
    except ValueError as e:
        raise FamilyFormatError(str(e)) from None


def load_family(path: str) -> Family:
    if path == "-":
        return family_from_dict(json.load(sys.stdin))
    with open(path) as fh:
        try:
            return family_from_dict(json.load(fh))
        except json.JSONDecodeError as e:
            raise FamilyFormatError(f"{path}: invalid JSON ({e})") from None


def dump_family(F: Family, **extra) -> str:
    return json.dumps({**family_to_dict(F), **extra})


def result_to_dict(res, claim: str | None = None) -> dict[str, Any]:
    p = res.problem
    out: dict[str, Any] = {}
    if claim:
        out["claim"] = claim
    if p is not None:
        out["problem"] = {
            "n": p.n, "k": p.k, "s": p.s, "objective": p.objective.value,
            "min_degree": p.min_degree, "max_degree": p.max_degree,
            "fixed_size": p.fixed_size,
            "restrict_left_compressed": p.restrict_left_compressed,
        }
    out.update({
        "optimum": res.optimum,
        "witnesses": [family_to_dict(F) for F in res.witnesses],
        "nodes_explored": res.nodes_explored,
        "proven_optimal": res.proven_optimal,
        "wall_time": round(res.wall_time, 6),
    })
    return out
