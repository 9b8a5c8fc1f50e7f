"""Command-line front end.

Usage:
    structderiv eval     --timescale integers --fn poly:0,0,1 --points 2
    structderiv table    --timescale integers --fn poly:0,0,1 --points 0,1,2,3
    structderiv verify   --timescale integers --rules product,reciprocal --points 1:5:5
    structderiv classify --timescale '{"kind": "finite", "points": [0, 1, 4]}' --points 0,1,4

Time scales are given as JSON objects (see ``TimeScale.to_json``) or as a
preset: ``reals``, ``integers``, ``grid:<h>[:<offset>]``, ``quantum:<q>``,
``finite:<x1,x2,...>``, ``interval:<a>:<b>``.

Points are a comma separated list or a range ``from:to:count``; range
values are replaced by the nearest member of the time scale.

Exit codes: 0 success, 1 bad job specification (including points outside
the time scale), 2 derivative failure (``eval``) or failed checks
(``verify``).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from typing import Any, TextIO

from .calculus import Rule, RuleReport, run_rule
from .derivative import LimitSettings, structural_derivative
from .errors import DegenerateCase, PointNotInScale, StructuralError, ZeroDenominator
from .structfn import RealFunction, Scalar, StructuralConfig, lookup
from .timescale import (
    FiniteSet,
    IntervalUnion,
    Integers,
    QuantumScale,
    Reals,
    TimeScale,
    UniformGrid,
    from_json,
)

__all__ = ["JobSpec", "main", "parse_timescale", "parse_points", "EVAL_FIELDS"]

EVAL_FIELDS = ("t", "value_re", "value_im", "branch", "error_estimate")
CLASSIFY_FIELDS = ("t", "sigma", "rho", "mu", "right", "left", "in_kappa")
VERIFY_FIELDS = (
    "rule", "t", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
    "residual", "tolerance", "passed", "status",
)
RULE_NAMES = {
    "scaling": [Rule.SCALING],
    "product": [Rule.PRODUCT_A, Rule.PRODUCT_B],
    "product-a": [Rule.PRODUCT_A],
    "product-b": [Rule.PRODUCT_B],
    "reciprocal": [Rule.RECIPROCAL],
    "quotient": [Rule.QUOTIENT],
    "sum-counterexample": [Rule.SUM_COUNTEREXAMPLE],
}
DEFAULT_RULES = "scaling,product,reciprocal,quotient"


class SpecError(ValueError):
    """Invalid job specification (exit code 1)."""


@dataclass
class JobSpec:
    command: str
    timescale: TimeScale
    function: str = "identity"
    structural: str = "identity"
    lam: float = 1.0
    points: list[float] = field(default_factory=list)
    settings: LimitSettings = field(default_factory=LimitSettings)
    output: str = "csv"
    rules: str = DEFAULT_RULES
    g: str = "identity"
    gamma: float = 2.0


# -- parsing -------------------------------------------------------------

def parse_timescale(text: str | dict[str, Any]) -> TimeScale:
    """Time scale from a JSON object (or its text) or a preset name.

        >>> parse_timescale("grid:0.5")
        UniformGrid(h=0.5, offset=0.0, rtol=1e-09)
    """
    if isinstance(text, dict):
        return from_json(text)
    text = text.strip()
    if text.startswith("{"):
        return from_json(json.loads(text))
    head, _, rest = text.partition(":")
    args = rest.split(":") if rest else []
    if head in ("reals", "R") and not args:
        return Reals()
    if head in ("integers", "Z") and not args:
        return Integers()
    if head == "grid" and len(args) in (1, 2):
        return UniformGrid(*(float(a) for a in args))
    if head == "quantum" and len(args) == 1:
        return QuantumScale(float(args[0]))
    if head == "finite" and len(args) == 1:
        return FiniteSet(tuple(float(x) for x in args[0].split(",")))
    if head == "interval" and len(args) == 2:
        return IntervalUnion(((float(args[0]), float(args[1])),))
    raise SpecError(f"unknown time scale {text!r}")


def parse_points(spec: str | Sequence[float], T: TimeScale) -> list[float]:
    """Explicit list or ``from:to:count`` range resolved to nearest members."""
    if not isinstance(spec, str):
        return [float(x) for x in spec]
    spec = spec.strip()
    if not spec:
        return []
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise SpecError(f"range must be from:to:count, got {spec!r}")
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 1:
            raise SpecError("range count must be positive")
        if n == 1:
            return [T.nearest(lo)]
        return [T.nearest(lo + (hi - lo) * i / (n - 1)) for i in range(n)]
    return [float(x) for x in spec.split(",")]


def _settings(base: LimitSettings, overrides: dict[str, Any]) -> LimitSettings:
    try:
        return replace(base, **overrides)
    except TypeError as exc:
        raise SpecError(f"bad settings: {exc}") from None


def build_job(args: argparse.Namespace) -> JobSpec:
    config: dict[str, Any] = {}
    if args.config:
        with open(args.config) as fh:
            config = json.load(fh)

    def pick(flag: Any, key: str, default: Any) -> Any:
        return flag if flag is not None else config.get(key, default)

    ts = pick(args.timescale, "timescale", None)
    if ts is None:
        raise SpecError("a time scale is required (--timescale)")
    T = parse_timescale(ts)
    settings = _settings(LimitSettings(), config.get("settings", {}))
    if args.tol is not None:
        settings = _settings(settings, {"abs_tol": args.tol, "rel_tol": args.tol})
    points = parse_points(pick(args.points, "points", ""), T)
    output = pick(args.format, "output", "csv")
    if output not in ("csv", "json"):
        raise SpecError(f"unknown output format {output!r}")
    return JobSpec(
        command=args.command,
        timescale=T,
        function=pick(args.fn, "function", "identity"),
        structural=pick(args.p, "structural", "identity"),
        lam=float(pick(args.lam, "lambda", 1.0)),
        points=points,
        settings=settings,
        output=output,
        rules=pick(args.rules, "rules", DEFAULT_RULES),
        g=pick(args.g, "g", "identity"),
        gamma=float(pick(args.gamma, "gamma", 2.0)),
    )


# -- formatting ----------------------------------------------------------

def _re_im(v: Scalar) -> tuple[float, float]:
    if isinstance(v, complex):
        return v.real, v.imag
    return float(v), 0.0


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit(records: list[dict[str, Any]], fields: Sequence[str], fmt: str, out: TextIO, single: bool = False) -> None:
    if fmt == "json":
        doc: Any = records[0] if single else records
        out.write(json.dumps(doc) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(fields)
    for rec in records:
        w.writerow([_cell(rec.get(k)) for k in fields])


def _error_record(t: float, exc: Exception) -> dict[str, Any]:
    code = getattr(exc, "code", "error")
    return {
        "t": t, "value_re": None, "value_im": None, "branch": "error",
        "error_estimate": None, "error": code, "message": str(exc),
    }


def _eval_record(f: RealFunction, job: JobSpec, cfg: StructuralConfig, t: float) -> dict[str, Any]:
    res = structural_derivative(f, job.timescale, cfg, t, job.settings)
    re, im = _re_im(res.value)
    return {
        "t": t, "value_re": re, "value_im": im,
        "branch": res.branch.value, "error_estimate": float(res.error_estimate),
    }


def _functions(job: JobSpec) -> tuple[RealFunction, StructuralConfig]:
    try:
        return lookup(job.function), StructuralConfig(lookup(job.structural), job.lam)
    except ValueError as exc:
        raise SpecError(str(exc)) from None


def _require_members(job: JobSpec) -> None:
    if not job.points:
        raise SpecError("no points given")
    for t in job.points:
        if not job.timescale.contains(t):
            raise PointNotInScale(f"{t!r} is not a point of {job.timescale!r}")


# -- commands ------------------------------------------------------------

def cmd_eval(job: JobSpec, out: TextIO) -> int:
    if len(job.points) != 1:
        raise SpecError("eval takes exactly one point")
    _require_members(job)
    f, cfg = _functions(job)
    t = job.points[0]
    try:
        rec = _eval_record(f, job, cfg, t)
    except StructuralError as exc:
        _emit([_error_record(t, exc)], EVAL_FIELDS + ("error",), job.output, out, single=True)
        return 2
    _emit([rec], EVAL_FIELDS, job.output, out, single=True)
    return 0


def cmd_table(job: JobSpec, out: TextIO, err: TextIO) -> int:
    _require_members(job)
    f, cfg = _functions(job)
    records = []
    ok = 0
    for t in job.points:
        try:
            records.append(_eval_record(f, job, cfg, t))
            ok += 1
        except StructuralError as exc:
            records.append(_error_record(t, exc))
            err.write(f"t={t!r}: {exc.code}: {exc}\n")
    _emit(records, EVAL_FIELDS, job.output, out)
    return 0 if ok else 2


def cmd_classify(job: JobSpec, out: TextIO) -> int:
    _require_members(job)
    T = job.timescale
    records = []
    for t in job.points:
        pc = T.classify(t)
        records.append({
            "t": t, "sigma": T.sigma(t), "rho": T.rho(t), "mu": T.mu(t),
            "right": pc.right.value, "left": pc.left.value, "in_kappa": T.in_kappa(t),
        })
    _emit(records, CLASSIFY_FIELDS, job.output, out)
    return 0


def _parse_rules(text: str) -> list[Rule]:
    rules: list[Rule] = []
    for name in text.split(","):
        name = name.strip()
        if name not in RULE_NAMES:
            raise SpecError(f"unknown rule {name!r}; known: {', '.join(RULE_NAMES)}")
        rules.extend(r for r in RULE_NAMES[name] if r not in rules)
    return rules


def _report_record(rep: RuleReport) -> dict[str, Any]:
    lre, lim = _re_im(rep.lhs)
    rre, rim = _re_im(rep.rhs)
    return {
        "rule": rep.rule.value, "t": float(rep.point),
        "lhs_re": lre, "lhs_im": lim, "rhs_re": rre, "rhs_im": rim,
        "residual": float(rep.residual), "tolerance": float(rep.tolerance),
        "passed": rep.passed, "status": "ok" if rep.applicable else "not-applicable",
    }


def cmd_verify(job: JobSpec, out: TextIO) -> int:
    _require_members(job)
    rules = _parse_rules(job.rules)
    f, cfg = _functions(job)
    try:
        g = lookup(job.g)
    except ValueError as exc:
        raise SpecError(str(exc)) from None

    records: list[dict[str, Any]] = []
    summary: dict[str, dict[str, Any]] = {
        r.value: {"max_residual": 0.0, "checks": 0, "failed": 0, "skipped": 0} for r in rules
    }
    for t in job.points:
        for rule in rules:
            entry = summary[rule.value]
            try:
                rep = run_rule(rule, f, g, job.timescale, cfg, t, job.settings, job.gamma)
            except (ZeroDenominator, DegenerateCase) as exc:
                records.append({"rule": rule.value, "t": t, "passed": None, "status": exc.code})
                entry["skipped"] += 1
                continue
            except StructuralError as exc:
                records.append({"rule": rule.value, "t": t, "passed": False, "status": exc.code})
                entry["checks"] += 1
                entry["failed"] += 1
                continue
            records.append(_report_record(rep))
            if not rep.applicable:
                entry["skipped"] += 1
                continue
            entry["checks"] += 1
            entry["failed"] += 0 if rep.passed else 1
            entry["max_residual"] = max(entry["max_residual"], float(rep.residual))
    all_passed = all(e["failed"] == 0 for e in summary.values())

    if job.output == "json":
        out.write(json.dumps({"reports": records, "summary": summary, "passed": all_passed}) + "\n")
    else:
        _emit(records, VERIFY_FIELDS, "csv", out)
        for name, e in summary.items():
            out.write(
                f"# summary rule={name} max_residual={e['max_residual']!r} "
                f"checks={e['checks']} failed={e['failed']} skipped={e['skipped']}\n"
            )
    return 0 if all_passed else 2


# -- entry point ---------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="structderiv", description="Structural derivatives on time scales.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in (
        ("eval", "derivative at a single point"),
        ("table", "derivative at several points"),
        ("verify", "check calculus rules at points"),
        ("classify", "jump operators and point classes"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", help="JSON job file; flags override its fields")
        p.add_argument("--timescale", help="JSON object or preset")
        p.add_argument("--points", help="list x1,x2,... or range from:to:count")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("-o", "--out", help="write to this file instead of stdout")
        if name == "classify":
            p.set_defaults(fn=None, p=None, lam=None, tol=None, rules=None, g=None, gamma=None)
            continue
        p.add_argument("--fn", help="target function registry name")
        p.add_argument("--p", help="structural function registry name")
        p.add_argument("--lambda", dest="lam", type=float, help="exponent lambda > 0")
        p.add_argument("--tol", type=float, help="absolute and relative limit tolerance")
        if name == "verify":
            p.add_argument("--rules", help=f"comma separated, default {DEFAULT_RULES}")
            p.add_argument("--g", help="second function for product/quotient")
            p.add_argument("--gamma", type=float, help="constant for the scaling rule")
        else:
            p.set_defaults(rules=None, g=None, gamma=None)
    return parser


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = make_parser().parse_args(argv)
    try:
        job = build_job(args)
        out = open(args.out, "w") if args.out else stdout
        try:
            if job.command == "eval":
                return cmd_eval(job, out)
            if job.command == "table":
                return cmd_table(job, out, stderr)
            if job.command == "verify":
                return cmd_verify(job, out)
            return cmd_classify(job, out)
        finally:
            if out is not stdout:
                out.close()
    except PointNotInScale as exc:
        stdout.write(json.dumps({"error": exc.code, "message": str(exc)}) + "\n")
        return 1
    except (SpecError, ValueError, KeyError, TypeError, OSError) as exc:
        code = getattr(exc, "code", "bad-spec")
        stdout.write(json.dumps({"error": code, "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
