"""Command-line front end.

    humbert eval humbert2 --m1 0 --m2 0 --x 1
    humbert table remodified --n 3 --q 0 --x-min 0 --x-max 2 --steps 5 --format csv
    humbert derive-ode --remodified 3 0
    humbert check all

Exit codes: 0 success, 1 failed check or evaluation, 2 usage error,
3 internal error. Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import traceback
from dataclasses import dataclass, field

from .errors import DomainError, QuadratureBudgetError, TruncationError
from .identities import SUITES, IdentityReport, run_suite
from .operators import OperatorPolynomial, humbert_ode, multi_ode, remodified_ode
from .series import (
    TruncationPolicy,
    airy_ai,
    classical_bessel_I,
    classical_bessel_J0,
    humbert2,
    humbert_generalized,
    humbert_multi,
    remodified,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

OUTPUT_RECORD_SCHEMA = {
    "type": "object",
    "required": ["command", "inputs", "outputs", "diagnostics"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "outputs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "value"],
                "additionalProperties": False,
                "properties": {"label": {"type": "string"}, "value": {"type": "number"}},
            },
        },
        "diagnostics": {"type": "object"},
    },
}

SUMMARY_SCHEMA = {
    "type": "object",
    "required": ["summary"],
    "additionalProperties": False,
    "properties": {
        "summary": {
            "type": "object",
            "required": ["passed", "failed"],
            "additionalProperties": False,
            "properties": {"passed": {"type": "integer"}, "failed": {"type": "integer"}},
        }
    },
}

# records first, the summary object last
SUITE_SCHEMA = {
    "type": "array",
    "minItems": 1,
    "items": {"oneOf": [OUTPUT_RECORD_SCHEMA, SUMMARY_SCHEMA]},
}


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    outputs: list[tuple[str, float]]
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": [{"label": k, "value": v} for k, v in self.outputs],
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_json(cls, obj: dict) -> OutputRecord:
        return cls(
            obj["command"],
            dict(obj["inputs"]),
            [(o["label"], o["value"]) for o in obj["outputs"]],
            dict(obj["diagnostics"]),
        )


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False)


def _num(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def to_csv(records: list[OutputRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    first = records[0]
    diag_keys = list(first.diagnostics)
    writer.writerow(["x", *(k for k, _ in first.outputs), *diag_keys])
    for rec in records:
        writer.writerow(
            [_num(rec.inputs["x"]), *(_num(v) for _, v in rec.outputs),
             *(_num(rec.diagnostics[k]) for k in diag_keys)]
        )
    return buf.getvalue()


# -- families ----------------------------------------------------------------

FAMILIES = ("humbert2", "humbert-multi", "humbert-gen", "remodified", "bessel-i", "bessel-j0", "airy")


def _family_params(parser: argparse.ArgumentParser, family: str) -> None:
    if family == "humbert2":
        parser.add_argument("--m1", type=int, required=True)
        parser.add_argument("--m2", type=int, required=True)
    elif family == "humbert-multi":
        parser.add_argument("--m", type=int, nargs="+", required=True, help="index list m1 ... mp")
    elif family == "humbert-gen":
        parser.add_argument("--m1", type=int, default=0)
        parser.add_argument("--m2", type=int, default=0)
        parser.add_argument("--k", type=float, required=True)
    elif family == "remodified":
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--q", type=int, required=True)
    elif family == "bessel-i":
        parser.add_argument("--order", type=int, required=True)


def _params_of(args) -> dict:
    fam = args.family
    if fam == "humbert2":
        return {"m1": args.m1, "m2": args.m2}
    if fam == "humbert-multi":
        return {"m": list(args.m)}
    if fam == "humbert-gen":
        return {"m1": args.m1, "m2": args.m2, "k": args.k}
    if fam == "remodified":
        return {"n": args.n, "q": args.q}
    if fam == "bessel-i":
        return {"order": args.order}
    return {}


def evaluate(family: str, params: dict, x: float, policy: TruncationPolicy) -> tuple[float, dict]:
    """Value and diagnostics for one family at x."""
    if family == "humbert2":
        ev = humbert2(params["m1"], params["m2"], x, policy)
    elif family == "humbert-multi":
        ev = humbert_multi(params["m"], x, policy)
    elif family == "humbert-gen":
        ev = humbert_generalized(params["m1"], params["m2"], x, params["k"], policy)
    elif family == "remodified":
        ev = remodified(params["n"], params["q"], x, policy)
    elif family == "bessel-i":
        return classical_bessel_I(params["order"], x), {}
    elif family == "bessel-j0":
        return classical_bessel_J0(x), {}
    elif family == "airy":
        return airy_ai(x), {}
    else:
        raise DomainError(f"unknown family {family!r}")
    return ev.value, {"terms_used": ev.terms_used, "tail_bound": ev.tail_bound}


def _record(command, family, params, x, policy) -> OutputRecord:
    value, diag = evaluate(family, params, x, policy)
    return OutputRecord(command, {"family": family, **params, "x": x}, [("value", value)], diag)


def _grid(x_min: float, x_max: float, steps: int) -> list[float]:
    if steps < 1:
        raise DomainError("steps must be >= 1")
    if x_min > x_max:
        raise DomainError("x_min must not exceed x_max")
    if steps == 1 or x_min == x_max:
        return [x_min]
    h = (x_max - x_min) / (steps - 1)
    return [x_min + i * h for i in range(steps - 1)] + [x_max]


def _emit(records: list[OutputRecord], fmt: str, single: bool) -> str:
    if fmt == "csv":
        return to_csv(records)
    if single:
        return dumps(records[0].to_json()) + "\n"
    return dumps([r.to_json() for r in records]) + "\n"


# -- commands ----------------------------------------------------------------


def _policy(args) -> TruncationPolicy:
    return TruncationPolicy(rel_tol=args.rel_tol, max_terms=args.max_terms)


def cmd_eval(args) -> int:
    rec = _record("eval", args.family, _params_of(args), args.x, _policy(args))
    sys.stdout.write(_emit([rec], args.format, single=True))
    return EXIT_OK


def cmd_table(args) -> int:
    params = _params_of(args)
    policy = _policy(args)
    rows = [_record("table", args.family, params, x, policy)
            for x in _grid(args.x_min, args.x_max, args.steps)]
    sys.stdout.write(_emit(rows, args.format, single=False))
    return EXIT_OK


def _rhs_text(s: int) -> str:
    if s == 0:
        return "y"
    return "x y" if s == 1 else f"x^{s} y"


def cmd_derive_ode(args) -> int:
    if args.remodified is not None:
        n, q = args.remodified
        op, s = remodified_ode(n, q)
        inputs = {"family": "remodified", "n": n, "q": q}
    elif args.m is not None:
        op, s = multi_ode(args.m), 0
        inputs = {"family": "humbert-multi", "m": list(args.m)}
    elif args.m1 is not None and args.m2 is not None:
        op, s = humbert_ode(args.m1, args.m2), 0
        inputs = {"family": "humbert2", "m1": args.m1, "m2": args.m2}
    else:
        raise DomainError("give --m1 and --m2, --m, or --remodified N Q")
    line = f"{op}, rhs: {_rhs_text(s)}"
    if args.format == "text":
        sys.stdout.write(line + "\n")
        return EXIT_OK
    outputs = []
    for (a, b), c in op.sorted_terms():
        label = str(OperatorPolynomial.monomial(a, b))
        outputs.append((label, int(c) if c.denominator == 1 else float(c)))
    rec = OutputRecord("derive-ode", inputs, outputs,
                       {"operator": str(op), "rhs_power": s, "equation": f"L y = {_rhs_text(s)}"})
    sys.stdout.write(dumps(rec.to_json()) + "\n")
    return EXIT_OK


def report_record(rep: IdentityReport) -> OutputRecord:
    outputs = [
        ("lhs", rep.lhs), ("rhs", rep.rhs), ("abs_residual", rep.abs_residual),
        ("rel_residual", rep.rel_residual), ("tolerance", rep.tolerance),
    ]
    diag = {"passed": rep.passed, "mode": rep.mode, "notes": rep.notes}
    if rep.error_estimate is not None and math.isfinite(rep.error_estimate):
        diag["error_estimate"] = rep.error_estimate
    return OutputRecord("check", {"identity": rep.identity_name, **rep.parameters}, outputs, diag)


def cmd_check(args) -> int:
    reports = run_suite(args.suite, _policy(args))
    passed = sum(r.passed for r in reports)
    failed = len(reports) - passed
    if args.format == "json":
        body = [report_record(r).to_json() for r in reports]
        body.append({"summary": {"passed": passed, "failed": failed}})
        sys.stdout.write(dumps(body) + "\n")
    else:
        for r in reports:
            tag = "PASS" if r.passed else "FAIL"
            pars = ", ".join(f"{k}={v}" for k, v in r.parameters.items())
            sys.stdout.write(f"{tag} {r.identity_name}({pars}) {r.mode} residual {r.measured:.3e} <= {r.tolerance:.1e}\n")
    print(f"{args.suite}: {passed} passed, {failed} failed", file=sys.stderr)
    return EXIT_OK if failed == 0 else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rel-tol", type=float, default=1e-14, help="series stopping tolerance")
    common.add_argument("--max-terms", type=int, default=500, help="series term budget")

    parser = argparse.ArgumentParser(prog="humbert", description="Humbert-Bessel function toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one function at x")
    fam_eval = p_eval.add_subparsers(dest="family", required=True)
    p_table = sub.add_parser("table", help="tabulate a function on a uniform grid")
    fam_table = p_table.add_subparsers(dest="family", required=True)
    for fam in FAMILIES:
        pe = fam_eval.add_parser(fam, parents=[common])
        _family_params(pe, fam)
        pe.add_argument("--x", type=float, required=True)
        pe.add_argument("--format", choices=("json", "csv"), default="json")
        pe.set_defaults(func=cmd_eval)

        pt = fam_table.add_parser(fam, parents=[common])
        _family_params(pt, fam)
        pt.add_argument("--x-min", type=float, required=True)
        pt.add_argument("--x-max", type=float, required=True)
        pt.add_argument("--steps", type=int, required=True)
        pt.add_argument("--format", choices=("json", "csv"), default="json")
        pt.set_defaults(func=cmd_table)

    p_ode = sub.add_parser("derive-ode", parents=[common], help="print a derived ODE operator")
    p_ode.add_argument("--m1", type=int)
    p_ode.add_argument("--m2", type=int)
    p_ode.add_argument("--m", type=int, nargs="+")
    p_ode.add_argument("--remodified", type=int, nargs=2, metavar=("N", "Q"))
    p_ode.add_argument("--format", choices=("text", "json"), default="text")
    p_ode.set_defaults(func=cmd_derive_ode)

    p_check = sub.add_parser("check", parents=[common], help="run an identity suite")
    p_check.add_argument("suite", choices=("all", *SUITES))
    p_check.add_argument("--format", choices=("json", "text"), default="json")
    p_check.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"humbert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TruncationError, QuadratureBudgetError) as exc:
        print(f"humbert: evaluation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
