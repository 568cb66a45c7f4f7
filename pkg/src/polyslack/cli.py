"""Command-line front end: ``python -m polyslack COMMAND INPUT [options]``.

Exit status is 0 for success or a conclusive verdict, 1 for input or
validation errors, 2 for inconclusive analyses.  Output files are JSON
with a header recording the version and the effective configuration;
wall-clock figures go to stderr only, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .analyses import prescribability_probe, rationality_probe, realizability_probe
from .exactmath import format_rational, rank
from .formats import (
    FormatError,
    hrep_from_json,
    ideal_from_json,
    ideal_to_json,
    incidence_to_json,
    matrix_from_json,
    matrix_to_json,
    polytope_from_json,
    read_json,
    write_artifact,
)
from .groebner import Budget, BudgetExhausted, buchberger, dimension, eliminate
from .polyring import MonomialOrder
from .polytope import (
    IncidenceStructure,
    PolytopeError,
    VRepresentation,
    check_slack_conditions,
    enumerate_facets,
    flag_submatrix,
    realize_from_slack,
    slack_matrix,
)
from .slackideal import (
    AFFINE,
    PROJECTIVE,
    ScalingFix,
    SymbolicSlackMatrix,
    affine_slack_ideal,
    fix_variables_by_scaling,
    slack_ideal,
)

COMMANDS = ("matrix", "ideal", "affine-ideal", "check", "flag", "realize",
            "realizability", "rationality", "prescribe", "dim")

DEFAULT_PAIRS = 10_000_000
DEFAULT_SECONDS = 3600.0


class UsageError(Exception):
    pass


def _int_list(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _substitutions(text: str | None) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    if not text:
        return out
    for item in text.split(","):
        var, sep, val = item.partition("=")
        var = var.strip().lstrip("x")
        if not sep:
            raise UsageError(f"substitution {item!r} is not of the form var=p/q")
        try:
            out[int(var)] = Fraction(val.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad substitution {item!r}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyslack", description="Slack matrices and slack ideals of polytopes.")
    p.add_argument("--version", action="version", version=f"polyslack {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="JSON input (polytope, matrix or ideal file)")
    p.add_argument("--fix", default="none",
                   help="scaling fix: none, auto-projective, auto-affine, or a fix JSON file")
    p.add_argument("--fixed-vars", help="explicit fixed variables i,j,k (set to 1)")
    p.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    p.add_argument("--budget-pairs", type=int, default=DEFAULT_PAIRS)
    p.add_argument("--budget-seconds", type=float, default=DEFAULT_SECONDS)
    p.add_argument("--substitute", help="var=p/q,... substitutions")
    p.add_argument("--eliminate", help="variables to eliminate i,j,...")
    p.add_argument("--pattern", help="polytope/incidence file giving the support for check/realize")
    p.add_argument("--face-rows", help="1-based rows of the face submatrix (prescribe)")
    p.add_argument("--face-cols", help="1-based columns of the face submatrix (prescribe)")
    p.add_argument("--output", help="write the artifact here instead of stdout")
    return p


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "output"}
    return cfg


def _budget(args) -> Budget:
    if args.budget_pairs <= 0 or args.budget_seconds <= 0:
        raise UsageError("budgets must be positive")
    return Budget(max_pairs=args.budget_pairs, max_seconds=args.budget_seconds)


def _load_incidence(data) -> IncidenceStructure:
    obj = polytope_from_json(data)
    if isinstance(obj, VRepresentation):
        h = hrep_from_json(data)
        if h is None:
            h, inc = enumerate_facets(obj)
            return inc
        s = slack_matrix(obj, h)
        return IncidenceStructure.from_support(obj.dimension, s, validate=False)
    return obj


def _resolve_fix(args, inc: IncidenceStructure, default_mode: str) -> ScalingFix | None:
    if args.fixed_vars:
        mode = AFFINE if args.fix == "auto-affine" else default_mode
        return ScalingFix(mode, frozenset(_int_list(args.fixed_vars)))
    if args.fix in (None, "none"):
        return None
    if args.fix == "auto-projective":
        return fix_variables_by_scaling(inc, PROJECTIVE)
    if args.fix == "auto-affine":
        return fix_variables_by_scaling(inc, AFFINE)
    return ScalingFix.from_json(read_json(args.fix))


def _order(args) -> MonomialOrder:
    return MonomialOrder.named(args.order)


def _strip_clock(report_json: dict) -> dict:
    out = dict(report_json)
    out["budget_used"] = {k: v for k, v in out.get("budget_used", {}).items() if k != "seconds"}
    return out


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, body = _dispatch(args, stderr)
    except (FormatError, PolytopeError, UsageError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    text = write_artifact(args.output, args.command, _config(args), body)
    if args.output is None:
        stdout.write(text)
    return code


def _dispatch(args, stderr) -> tuple[int, dict]:
    cmd = args.command
    data = read_json(args.input)
    budget = _budget(args)

    if cmd == "matrix":
        obj = polytope_from_json(data)
        if isinstance(obj, VRepresentation):
            h = hrep_from_json(data)
            if h is None:
                h, _ = enumerate_facets(obj)
            return 0, {"slack_matrix": matrix_to_json(slack_matrix(obj, h))}
        m = SymbolicSlackMatrix(obj)
        return 0, {"symbolic_slack_matrix": m.to_strings(), "nvars": m.t}

    if cmd in ("check", "realize"):
        s = matrix_from_json(data)
        pattern_src = read_json(args.pattern) if args.pattern else data.get("pattern") if isinstance(data, dict) else None
        if pattern_src is not None:
            pattern = _load_incidence(pattern_src)
        else:
            pattern = IncidenceStructure.from_support(rank(s) - 1, s, validate=False)
        if cmd == "realize":
            v = realize_from_slack(s, pattern)
            return 0, {"vertices": [[format_rational(x) for x in p] for p in v.vertices], "dimension": v.dimension}
        rep = check_slack_conditions(s, pattern)
        body = {"support_ok": rep.support_ok, "rank_ok": rep.rank_ok, "ones_ok": rep.ones_ok,
                "nonnegative": rep.nonnegative, "true_slack_matrix": rep.is_true_slack}
        for i, j in rep.support_mismatches:
            print(f"support mismatch at ({i + 1},{j + 1})", file=stderr)
        if not rep.rank_ok:
            print(f"rank {rank(s)} differs from d+1 = {pattern.d + 1}", file=stderr)
        if not rep.ones_ok:
            print("all-ones vector is not in the column span", file=stderr)
        if not rep.nonnegative:
            print("matrix has negative entries", file=stderr)
        return (0 if rep.is_true_slack else 1), body

    if cmd == "dim" and "generators" in data:
        ideal = ideal_from_json(data)
        elim = _int_list(args.eliminate)
        ring = [v for v in range(1, ideal.nvars + 1) if v not in elim]
        if elim:
            ideal = eliminate(ideal, elim, budget)
        try:
            dim = dimension(ideal, budget, ring)
        except BudgetExhausted:
            return 2, {"dimension": None, "verdict": "inconclusive (budget)"}
        return 0, {"dimension": "empty" if dim is None else dim, "ring_variables": ring}

    inc = _load_incidence(data)

    if cmd == "flag":
        verts, facets = flag_submatrix(inc)
        return 0, {"vertices": [v + 1 for v in verts], "facets": [f + 1 for f in facets]}

    if cmd in ("ideal", "affine-ideal", "dim"):
        affine = cmd == "affine-ideal"
        fix = _resolve_fix(args, inc, AFFINE if affine else PROJECTIVE)
        subs = _substitutions(args.substitute)
        try:
            if affine:
                ideal = affine_slack_ideal(inc, fix, budget, bindings=subs or None)
            else:
                ideal = slack_ideal(inc, fix, budget, bindings=subs or None)
            elim = _int_list(args.eliminate)
            if elim:
                ideal = eliminate(ideal, elim, budget)
            fixed = set(fix.fixed) if fix else set()
            fixed |= set(subs)
            body = {"fix": fix.to_json() if fix else None,
                    "substitutions": {str(k): format_rational(v) for k, v in sorted(subs.items())},
                    "eliminated": elim}
            if cmd == "dim":
                ring = [v for v in range(1, ideal.nvars + 1) if v not in fixed and v not in elim]
                dim = dimension(ideal, budget, ring)
                body.update(dimension="empty" if dim is None else dim, ring_variables=ring)
            else:
                gb = buchberger(ideal, _order(args), budget)
                body["ideal"] = ideal_to_json(gb)
        except BudgetExhausted as exc:
            print(f"budget exhausted: {exc}", file=stderr)
            return 2, {"verdict": "inconclusive (budget)"}
        print(f"pairs={budget.pairs_used} seconds={budget.seconds_used:.2f}", file=stderr)
        return 0, body

    if cmd == "realizability":
        fix = _resolve_fix(args, inc, PROJECTIVE)
        rep = realizability_probe(inc, fix, budget)
    elif cmd == "rationality":
        fix = _resolve_fix(args, inc, PROJECTIVE)
        rep = rationality_probe(inc, fix, budget)
    else:  # prescribe
        rows = _int_list(args.face_rows) or list(data.get("face_rows", []))
        cols = _int_list(args.face_cols) or list(data.get("face_cols", []))
        if not rows or not cols:
            raise UsageError("prescribe needs --face-rows and --face-cols (1-based)")
        subs = _substitutions(args.substitute)
        rep = prescribability_probe(inc, [r - 1 for r in rows], [c - 1 for c in cols], budget=budget,
                                    substitutions=subs or None, chain_eliminate=_int_list(args.eliminate))
    print(f"verdict: {rep.verdict}; {rep.budget_used}", file=stderr)
    return (0 if rep.conclusive else 2), {"report": _strip_clock(rep.to_json()),
                                          "incidence": incidence_to_json(inc)}


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
