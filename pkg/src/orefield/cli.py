"""Command line front end.

    orefield eval "t*i + i*t"
    orefield divmod "t^2 + i" "t - i"
    orefield invert "1 - t" --field gauss
    orefield center --field gauss --max-deg 8
    orefield extend --scenario T1L1
    orefield tower --scenario T1
    orefield verify --scenario T1 --seed 7 --format json

Scenario targets are catalog names or paths to scenario files.  Exit
codes classify failures: 2 for parse problems (expressions, arguments,
malformed scenario files), 3 for validation problems (bad input values,
scenario certificates that do not hold), 4 for relation checks that
ran and failed, 5 for anything unexpected.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable, Sequence

from .catalog import scenario_catalog, scenario_names, tower_catalog, tower_names
from .errors import (
    ExprSyntaxError,
    InsufficientPrecision,
    OrefieldError,
    ScenarioFormatError,
    ScenarioValidationError,
)
from .exprs import EvalContext, evaluate_text
from .extend import (
    CheckResult,
    ExtensionScenario,
    TensorElement,
    ext_tau,
    run_scenario_checks,
)
from .ground import gauss_conjugation, hamilton_rationals, make_rationals
from .laurent import TwistedSeries
from .sampling import random_tensor
from .scenario_io import load_path
from .skewfrac import SkewFraction, center_basis
from .skewpoly import SkewPolynomial
from .tower import TowerScenario, run_tower_checks

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_CHECKS = 4
EXIT_INTERNAL = 5

_FIELDS: dict[str, Callable] = {
    "rationals": make_rationals,
    "gauss": gauss_conjugation,
    "hamilton": hamilton_rationals,
}


# ---------------------------------------------------------------------------
# shared plumbing


def _context(args: argparse.Namespace) -> EvalContext:
    scenario = None
    if getattr(args, "scenario", None):
        target = _resolve(args.scenario)
        if isinstance(target, TowerScenario):
            raise ScenarioFormatError(
                f"{args.scenario}: expression contexts need an extension scenario, not a tower"
            )
        scenario = target
        field = scenario.field
    else:
        field = _FIELDS[args.field]()
    return EvalContext(field, scenario=scenario, precision=args.precision)


def _resolve(spec: str) -> ExtensionScenario | TowerScenario:
    """A catalog name, or failing that a path to a scenario file."""
    if spec in scenario_names():
        return scenario_catalog(spec)
    if spec in tower_names():
        return tower_catalog(spec, validate=False)
    try:
        return load_path(spec)
    except OSError as exc:
        raise ScenarioFormatError(f"cannot read scenario {spec!r}: {exc}") from None


def _as_polynomial(value, label: str) -> SkewPolynomial:
    if not isinstance(value, SkewFraction) or not value.is_polynomial():
        raise ScenarioValidationError(f"{label} must be a twisted polynomial")
    return value.num


def _print_value(args: argparse.Namespace, **fields: str) -> None:
    if args.format == "json":
        print(json.dumps(fields, indent=2, sort_keys=True))
    else:
        for key, text in fields.items():
            print(f"{key}: {text}" if len(fields) > 1 else text)


def _emit_checks(args: argparse.Namespace, rows: Sequence[CheckResult]) -> None:
    rows = sorted(rows, key=lambda r: r.name)
    if args.format == "json":
        payload = [
            {
                "check-name": r.name,
                "status": r.status,
                "details": r.details,
                "law": r.law,
            }
            for r in rows
        ]
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    for r in rows:
        print(f"[{r.status}] {r.name}: {r.details}")
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in rows:
        counts[r.status] = counts.get(r.status, 0) + 1
    print(
        f"{len(rows)} checks: {counts['pass']} pass, "
        f"{counts['fail']} fail, {counts['skipped']} skipped"
    )


def _any_fail(rows: Sequence[CheckResult]) -> bool:
    return any(r.status == "fail" for r in rows)


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args: argparse.Namespace) -> int:
    value = evaluate_text(args.expr, _context(args))
    _print_value(args, value=str(value))
    return EXIT_OK


def cmd_divmod(args: argparse.Namespace) -> int:
    ctx = _context(args)
    f = _as_polynomial(evaluate_text(args.dividend, ctx), "the dividend")
    g = _as_polynomial(evaluate_text(args.divisor, ctx), "the divisor")
    q, r = f.divmod_left(g) if args.side == "left" else f.divmod_right(g)
    _print_value(args, quotient=str(q), remainder=str(r))
    return EXIT_OK


def _one_like(value):
    if isinstance(value, SkewFraction):
        return SkewFraction.one(value.field)
    if isinstance(value, TensorElement):
        return TensorElement.make(value.scenario, [1])
    return TwistedSeries.make(value.field, 0, [value.field.one()], value.prec)


def _round_trip(value, inverse) -> bool:
    one = _one_like(value)
    left = inverse * value
    right = value * inverse
    if isinstance(value, TwistedSeries):
        prec = min(left.prec, right.prec)
        return left.truncate(prec) == one.truncate(prec) and right.truncate(
            prec
        ) == one.truncate(prec)
    return left == one and right == one


def cmd_invert(args: argparse.Namespace) -> int:
    value = evaluate_text(args.expr, _context(args))
    inverse = value.inv()
    _print_value(
        args,
        inverse=str(inverse),
        round_trip="exact" if _round_trip(value, inverse) else "FAILED",
    )
    return EXIT_OK


def cmd_center(args: argparse.Namespace) -> int:
    field = _FIELDS[args.field]()
    basis = center_basis(field, args.max_deg)
    if args.format == "json":
        print(json.dumps([str(p) for p in basis], indent=2, sort_keys=True))
    else:
        for p in basis:
            print(str(p))
    return EXIT_OK


def cmd_extend(args: argparse.Namespace) -> int:
    target = _resolve(args.scenario)
    if isinstance(target, TowerScenario):
        raise ScenarioFormatError(
            f"{args.scenario} is a tower; use the tower or verify command"
        )
    rows = run_scenario_checks(target)
    _emit_checks(args, rows)
    return EXIT_VALIDATION if _any_fail(rows) else EXIT_OK


def cmd_tower(args: argparse.Namespace) -> int:
    target = _resolve(args.scenario)
    if not isinstance(target, TowerScenario):
        raise ScenarioFormatError(
            f"{args.scenario} is a single extension; use the extend command"
        )
    rows = run_tower_checks(target)
    _emit_checks(args, rows)
    return EXIT_CHECKS if _any_fail(rows) else EXIT_OK


# -- verify: batteries, relations, and seeded random probes ------------------


def _probe(name: str, law: str, fn) -> CheckResult:
    try:
        ok, details = fn()
    except OrefieldError as exc:
        ok, details = False, str(exc)
    return CheckResult(name, "pass" if ok else "fail", law, details)


def _inversion_probe(element: TensorElement) -> tuple[bool, str]:
    inverse = element.inv()
    one = TensorElement.make(element.scenario, [1])
    ok = element * inverse == one and inverse * element == one
    return ok, "two-sided round trip" + (" exact" if ok else " FAILED")


def _tau_probe(a: TensorElement, b: TensorElement) -> tuple[bool, str]:
    # Denominators spend some of the root's precision, so step the request
    # down until all three evaluations fit.
    want = a.scenario.precision
    while True:
        try:
            lhs = ext_tau(a * b, want)
            rhs = ext_tau(a, want) * ext_tau(b, want)
            break
        except InsufficientPrecision:
            want -= 8
            if want < 4:
                raise
    prec = min(lhs.prec, rhs.prec)
    ok = lhs.truncate(prec) == rhs.truncate(prec)
    return ok, f"tau(a*b) = tau(a)*tau(b) to t^{prec}" + ("" if ok else " FAILED")


_RANDOM_INVERSIONS = 3
_RANDOM_TAU_PAIRS = 2
_PROBE_DEGREE_LIMIT = 3  # random inversion above this costs minutes, not seconds


def _level_probes(level: ExtensionScenario, rng: random.Random) -> list[CheckResult]:
    rows = [
        _probe(
            f"{level.name}:generator-invert",
            "x * x^-1 = x^-1 * x = 1",
            lambda: _inversion_probe(TensorElement.x(level)),
        ),
        _probe(
            f"{level.name}:shifted-generator-invert",
            "(1 + x) * (1 + x)^-1 = (1 + x)^-1 * (1 + x) = 1",
            lambda: _inversion_probe(
                TensorElement.make(level, [1]) + TensorElement.x(level)
            ),
        ),
    ]
    if level.degree <= _PROBE_DEGREE_LIMIT:
        for k in range(_RANDOM_INVERSIONS):
            element = random_tensor(level, rng, max_degree=2)
            rows.append(
                _probe(
                    f"{level.name}:random-invert[{k}]",
                    "a * a^-1 = a^-1 * a = 1",
                    lambda element=element: _inversion_probe(element),
                )
            )
        for k in range(_RANDOM_TAU_PAIRS):
            a = random_tensor(level, rng, max_degree=1, span=2)
            b = random_tensor(level, rng, max_degree=1, span=2)
            rows.append(
                _probe(
                    f"{level.name}:random-tau-hom[{k}]",
                    "tau is multiplicative",
                    lambda a=a, b=b: _tau_probe(a, b),
                )
            )
    return rows


def cmd_verify(args: argparse.Namespace) -> int:
    target = _resolve(args.scenario)
    levels = target.levels if isinstance(target, TowerScenario) else (target,)
    battery: list[CheckResult] = []
    for level in levels:
        for r in run_scenario_checks(level):
            battery.append(CheckResult(f"{level.name}:{r.name}", r.status, r.law, r.details))
    relations: list[CheckResult] = []
    if isinstance(target, TowerScenario):
        relations.extend(run_tower_checks(target))
    rng = random.Random(args.seed)
    for level in levels:
        relations.extend(_level_probes(level, rng))
    _emit_checks(args, battery + relations)
    if _any_fail(battery):
        return EXIT_VALIDATION
    if _any_fail(relations):
        return EXIT_CHECKS
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(sub: argparse.ArgumentParser, *, scenario: bool, field: bool) -> None:
    sub.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    if scenario:
        sub.add_argument(
            "--scenario",
            metavar="TARGET",
            help="catalog name or scenario file path",
        )
    if field:
        sub.add_argument(
            "--field",
            choices=sorted(_FIELDS),
            default="gauss",
            help="ground field for expressions (default: gauss)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orefield",
        description="Twisted polynomial arithmetic, extensions, and tower checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expression")
    p.add_argument("expr")
    _add_common(p, scenario=True, field=True)
    p.add_argument("--precision", type=int, default=16, help="series precision")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("divmod", help="divide one twisted polynomial by another")
    p.add_argument("dividend")
    p.add_argument("divisor")
    _add_common(p, scenario=False, field=True)
    p.add_argument("--precision", type=int, default=16, help="series precision")
    p.add_argument(
        "--side", choices=("right", "left"), default="right", help="division side"
    )
    p.set_defaults(run=cmd_divmod)

    p = sub.add_parser("invert", help="invert an expression and verify the round trip")
    p.add_argument("expr")
    _add_common(p, scenario=True, field=True)
    p.add_argument("--precision", type=int, default=16, help="series precision")
    p.set_defaults(run=cmd_invert)

    p = sub.add_parser("center", help="list central monomials of the twisted ring")
    _add_common(p, scenario=False, field=True)
    p.add_argument("--max-deg", type=int, default=8, help="largest degree to scan")
    p.set_defaults(run=cmd_center)

    p = sub.add_parser("extend", help="run the extension scenario certificates")
    _add_common(p, scenario=True, field=False)
    p.set_defaults(run=cmd_extend, needs_scenario=True)

    p = sub.add_parser("tower", help="run the tower relation checks")
    _add_common(p, scenario=True, field=False)
    p.set_defaults(run=cmd_tower, needs_scenario=True)

    p = sub.add_parser(
        "verify", help="full battery: level certificates, relations, seeded probes"
    )
    _add_common(p, scenario=True, field=False)
    p.add_argument("--seed", type=int, default=0, help="seed for the random probes")
    p.set_defaults(run=cmd_verify, needs_scenario=True)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_PARSE
    if getattr(args, "needs_scenario", False) and not args.scenario:
        print("error: this command needs --scenario", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.run(args)
    except ExprSyntaxError as exc:
        print(f"parse error at column {exc.column}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ScenarioFormatError as exc:
        print(f"scenario error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ScenarioValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OrefieldError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except Exception as exc:  # noqa: BLE001 -- the CLI boundary reports, not raises
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
