"""Command-line front end: ``symprog <group> <action> [flags]``.

Exit status: 0 success, 1 verification failure, 2 input error,
3 budget refusal.  Exact numbers are printed as decimal integers or
fractions; counts inside JSON are decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import clt, count, encode, feasible, modp, oracle, verify
from .core import (
    BudgetExceeded,
    ContractError,
    InputError,
    SpaceParams,
    SymmetricSet,
    WeightArrangement,
    default_budget,
    dump_bigint,
    dump_float,
    dump_fraction,
)
from .generate import generate_random_set, point_density

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class ExperimentConfig:
    command: list[str]
    flags: dict
    inputs: list[str] = field(default_factory=list)
    output: str | None = None
    budget: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.budget <= 0:
            raise InputError("budget must be positive")


# --- io helpers --------------------------------------------------------------


def _load_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _parse_json_arg(raw: str):
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"bad JSON argument {raw!r}: {exc}") from exc


def _int_list(raw: str) -> list[int]:
    try:
        return [int(x) for x in raw.replace("[", "").replace("]", "").split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {raw!r}") from exc


def _load_sets(path: str) -> list[SymmetricSet]:
    obj = _load_json(path)
    if isinstance(obj, dict) and "sets" in obj:
        obj = obj["sets"]
    if isinstance(obj, dict):
        obj = [obj]
    if not isinstance(obj, list):
        raise InputError("sets file must hold a list of symmetric sets")
    return [SymmetricSet.from_json(s) for s in obj]


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _arrangement_csv(table: dict) -> str:
    rows = []
    for arr in sorted(table):
        rows.append([" ".join(str(x) for t in arr for x in t), dump_bigint(table[arr])])
    return _csv(["arrangement", "count"], rows)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _fraction(raw: str) -> Fraction:
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {raw!r}") from exc


# --- commands ----------------------------------------------------------------


def cmd_count(args) -> int:
    if args.action in ("restricted", "full"):
        q = args.q if args.action == "restricted" else args.p
        if q is None:
            raise InputError("need --q (restricted) or --p (full)")
        arr = WeightArrangement.from_json(_parse_json_arg(args.arrangement), args.n)
        if arr.params.q != q:
            raise InputError(f"arrangement is for q = {arr.params.q}, not {q}")
        value = count.count_arrangement_restricted(arr) if args.action == "restricted" else count.count_arrangement_full(arr)
        _emit(dump_bigint(value) + "\n", args.out)
        return EXIT_OK
    if args.action == "product":
        sets = _load_sets(args.sets)
        table = count.product_arrangements(sets, args.kind, args.budget)
        if args.csv:
            _emit(_arrangement_csv(table), args.csv)
        _emit(dump_bigint(sum(table.values())) + "\n", args.out)
        return EXIT_OK
    if args.action == "table":
        params = SpaceParams(args.q, args.n)
        table = count.arrangement_table(params, args.kind, args.budget)
        _emit(_arrangement_csv(table), args.out)
        return EXIT_OK
    raise InputError(f"unknown count action {args.action}")


def cmd_oracle(args) -> int:
    sets = _load_sets(args.sets)
    total, hist = oracle.oracle_count(sets, args.kind, args.budget)
    if args.csv:
        _emit(_arrangement_csv(hist), args.csv)
    _emit(dump_bigint(total) + "\n", args.out)
    return EXIT_OK


def cmd_feasible(args) -> int:
    if args.action == "check":
        raw = _parse_json_arg(args.arrangement)
        if args.N is not None:
            arr = feasible.ModArrangement.from_tuples(raw, args.N)
        elif args.shifted:
            arr = raw
        else:
            arr = WeightArrangement.from_json(raw, args.n)
        ok = feasible.is_feasible(arr)
        _emit(("feasible" if ok else "infeasible") + "\n", args.out)
        return EXIT_OK
    if args.action == "derive":
        w1, w2 = _int_list(args.w1), _int_list(args.w2)
        result = feasible.derive_tail(w1, w2, args.q, args.N)
        tuples = result.tuples if args.N is not None else result
        _emit(_json([list(t) for t in tuples]), args.out)
        return EXIT_OK
    if args.action == "enumerate":
        if args.count_only:
            _emit(dump_bigint(feasible.feasible_count(args.q, args.N, args.budget)) + "\n", args.out)
        else:
            lines = [" ".join(map(str, a.values)) for a in feasible.enumerate_feasible(args.q, args.N, args.budget)]
            _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    raise InputError(f"unknown feasible action {args.action}")


def cmd_modp(args) -> int:
    if args.action == "matrices":
        b_prime, B = modp.build_B(args.p)
        out = {
            "p": args.p,
            "pattern_index": [list(x) for x in modp.pattern_index(args.p)],
            "weight_index": [list(x) for x in modp.weight_index(args.p)],
            "A": modp.build_A(args.p).to_ints(),
            "K": modp.build_K(args.p).to_ints(),
            "B_prime": b_prime.to_ints(),
            "B": B.to_ints(),
        }
        _emit(_json(out), args.out)
        return EXIT_OK
    if args.action == "solvable":
        w = _int_list(args.w)
        ok = modp.has_integer_solution(w, args.p)
        _emit(("solvable" if ok else "unsolvable") + "\n", args.out)
        return EXIT_OK
    if args.action == "removal":
        sets = _load_sets(args.sets)
        report = modp.removal_procedure(sets, _fraction(args.mu))
        out = {
            "threshold": str(report.threshold),
            "removed": [
                [{"class": list(c.v), "density": str(d)} for c, d in removed] for removed in report.removed
            ],
            "removed_density": [str(d) for d in report.removed_density],
            "sets": [s.to_json() for s in report.sets],
        }
        _emit(_json(out), args.out)
        return EXIT_OK
    if args.action == "split":
        sets = _load_sets(args.sets)
        p = sets[0].params.q
        split = modp.trivial_split(sets, p)
        _emit(_json({"sets": [s.to_json() for s in split]}), args.out)
        return EXIT_OK
    raise InputError(f"unknown modp action {args.action}")


def _load_points(path: str) -> list:
    obj = _load_json(path)
    if isinstance(obj, dict):
        obj = obj.get("points", [])
    return [tuple(p) for p in obj]


def cmd_encode(args) -> int:
    if args.action == "triangles":
        G = encode.build_tripartite(_load_points(args.set), args.N)
        total, triangles = encode.count_triangles(G, args.budget)
        per = {}
        for t in triangles:
            per[t.points] = per.get(t.points, 0) + 1
        rows = [[" ".join(f"{x} {y}" for x, y in pts), str(c)] for pts, c in sorted(per.items())]
        if args.csv:
            _emit(_csv(["points", "triangles"], rows), args.csv)
        _emit(dump_bigint(total) + "\n", args.out)
        return EXIT_OK
    if args.action == "simplices":
        obj = _load_json(args.sets)
        if isinstance(obj, dict):
            obj = obj["sets"]
        H = encode.build_hypergraph(obj, args.q, args.N)
        simplices = encode.enumerate_simplices(H, args.method, args.budget)
        groups = encode.group_by_labels(simplices)
        rows = [[" ".join(str(x) for t in labels for x in t), str(len(fam))] for labels, fam in sorted(groups.items())]
        if args.csv:
            _emit(_csv(["label", "simplices"], rows), args.csv)
        _emit(dump_bigint(len(simplices)) + "\n", args.out)
        return EXIT_OK
    raise InputError(f"unknown encode action {args.action}")


def _decimal(x: Fraction, digits: int) -> str:
    """``x`` rounded to ``digits`` significant digits, positional notation."""
    if x == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, "f")


def cmd_clt(args) -> int:
    if args.action == "compare":
        if args.n is None or args.w is None:
            raise InputError("compare needs --n and --w")
        rows = [clt.compare(args.ell, args.n, _int_list(args.w))]
    elif args.action == "scan":
        rows = clt.error_scan(args.ell, _int_list(args.ns), args.radius, args.points)
    else:
        raise InputError(f"unknown clt action {args.action}")
    render = dump_fraction if args.digits is None else (lambda x: _decimal(x, args.digits))
    table = [
        [str(r.n), " ".join(map(str, r.w)), render(r.exact), dump_float(r.leading), dump_float(r.rel_err)]
        for r in rows
    ]
    _emit(_csv(["n", "w", "exact", "leading", "rel_err"], table), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = verify.CHECKS if not args.only else [c for c in verify.CHECKS if c[0] in _int_list(args.only)]
    failed = False
    for number, _, _ in checks:
        result = verify.run_check(number, args.tier)
        print(result.line(), flush=True)
        failed |= not result.ok
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_generate(args) -> int:
    s = generate_random_set(args.q, args.n, args.density, args.seed)
    obj = s.to_json()
    obj["point_density"] = str(point_density(s))
    _emit(_json(obj), args.out)
    return EXIT_OK


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symprog", description="Exact progression counting in symmetric sets.")
    parser.add_argument("--budget", type=int, default=None, help="max enumeration size (default: $SYMPROG_BUDGET or 1e8)")
    parser.add_argument("--out", default=None, help="write the main result here instead of stdout")
    sub = parser.add_subparsers(dest="group", required=True)

    p = sub.add_parser("count", help="exact counts via pattern parameterisations")
    p.add_argument("action", choices=["restricted", "full", "product", "table"])
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--arrangement")
    p.add_argument("--sets")
    p.add_argument("--kind", choices=oracle.KINDS, default=oracle.RESTRICTED)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("oracle", help="brute-force progression count")
    p.add_argument("--sets", required=True)
    p.add_argument("--kind", choices=oracle.KINDS, default=oracle.RESTRICTED)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("feasible", help="feasible weight arrangements")
    p.add_argument("action", choices=["check", "derive", "enumerate"])
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--arrangement")
    p.add_argument("--shifted", action="store_true", help="arrangement is already in shifted form")
    p.add_argument("--w1")
    p.add_argument("--w2")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("modp", help="the W = AM system over F_p")
    p.add_argument("action", choices=["matrices", "solvable", "removal", "split"])
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--emit", choices=["json"], default="json")
    p.add_argument("--w")
    p.add_argument("--sets")
    p.add_argument("--mu", default="1/10")
    p.set_defaults(func=cmd_modp)

    p = sub.add_parser("encode", help="graph and hypergraph encodings")
    p.add_argument("action", choices=["triangles", "simplices"])
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--set")
    p.add_argument("--sets")
    p.add_argument("--method", choices=["scan", "extend"], default="scan")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("clt", help="local limit theorem comparisons")
    p.add_argument("action", choices=["compare", "scan"])
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--w")
    p.add_argument("--ns", default="300,3000,30000")
    p.add_argument("--radius", type=float, default=0.0)
    p.add_argument("--points", type=int, default=7)
    p.add_argument("--digits", type=int, help="print exact as a rounded decimal instead of a fraction")
    p.set_defaults(func=cmd_clt)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("action", choices=["all"])
    p.add_argument("--tier", choices=[verify.QUICK, verify.FULL_TIER], default=verify.QUICK)
    p.add_argument("--only", help="comma-separated check numbers")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="seeded random symmetric set")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)
    return parser


def config_from_args(args, argv) -> ExperimentConfig:
    budget = args.budget if args.budget is not None else default_budget()
    inputs = [v for k in ("sets", "set") if (v := getattr(args, k, None))]
    return ExperimentConfig(
        command=[args.group] + ([args.action] if hasattr(args, "action") else []),
        flags=vars(args),
        inputs=inputs,
        output=args.out,
        budget=budget,
        seed=getattr(args, "seed", 0),
    )


def run(config: ExperimentConfig) -> int:
    args = argparse.Namespace(**config.flags)
    args.budget = config.budget
    return args.func(args)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return run(config_from_args(args, argv))
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, ContractError, ValueError, KeyError, TypeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
