"""Batch command-line front end.

Subcommands: deriv (operator over a grid), solve (eigen verification),
map (q <-> zeta bridge), expand (prefactor expansions), ml (Mittag-Leffler),
selftest (built-in invariant suite).

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
Grid tables print as CSV (header ``x,value[,closed_form,residual]``) or JSON
(object with ``command``, ``params``, ``rows``); values carry 17 significant
digits so repeated runs are byte-identical.  The DEFCALC_OUTPUT_FORMAT
environment variable overrides the default format.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import selftest as selftest_module
from .deformed_algebra import QParam
from .derivative_ops import (
    Classical,
    Conformable,
    DerivativeKind,
    DiffSettings,
    GrunwaldJumarie,
    Hausdorff,
    Kaniadakis,
    QDeformed,
    YangLFD,
    evaluate_kind,
    hausdorff_quotient,
    q_derivative_quotient,
)
from .eigen_solvers import solve_hausdorff_eigen, solve_q_eigen, verify_fractional_eigen
from .errors import DefcalcError, DomainError, ParseError
from .function_catalog import RealFunction
from .mappings import expand_hausdorff_prefactor, kappa_expansion, q_from_zeta, zeta_from_q
from .special_functions import HausdorffParams, MLSeriesConfig, mittag_leffler

ENV_FORMAT = "DEFCALC_OUTPUT_FORMAT"

_EXPRESSION_HELP = """\
expression syntax for --fn (single free variable x):
  expression = term , { ("+" | "-") , term } ;
  term       = unary , { ("*" | "/") , unary } ;
  unary      = "-" , unary | power ;
  power      = atom , [ "^" , unary ] ;          (right-associative)
  atom       = number | "x" | call | "(" , expression , ")" ;
  call       = builtin , "(" , expression , { "," , expression } , ")" ;
  builtin    = exp | ln | sin | cos | sqrt | gamma | abs | pow
examples: "x^2", "exp(-x^2/2)", "sin(x)*sqrt(1+x^2)"
"""


class ConfigError(Exception):
    """Invalid flag combination or out-of-domain grid; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """One batch invocation: command, operator, function, grid, output policy."""

    command: str
    operator: Optional[DerivativeKind] = None
    function_source: Optional[str] = None
    grid: Optional[tuple[float, float, int]] = None
    output_format: str = "csv"
    output_path: Optional[str] = None
    tolerances: DiffSettings = field(default_factory=DiffSettings)
    options: dict = field(default_factory=dict, compare=False)


def _parse_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--grid must be start:stop:points, got {text!r}")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"--grid must be start:stop:points, got {text!r}") from exc
    if points < 2:
        raise ConfigError(f"--grid needs at least 2 points, got {points}")
    if not start < stop:
        raise ConfigError(f"--grid needs start < stop, got {text!r}")
    return start, stop, points


def _sig(v: float) -> str:
    return f"{v:.17g}"


def _emit(config: RunConfig, params: dict, header: tuple[str, ...], rows, out) -> None:
    if config.output_format == "json":
        payload = {
            "command": config.command,
            "params": params,
            "rows": [dict(zip(header, row)) for row in rows],
        }
        out.write(json.dumps(payload, indent=2))
        out.write("\n")
    else:
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(_sig(v) if isinstance(v, float) else str(v) for v in row) + "\n")


def _build_function(source: Optional[str]) -> RealFunction:
    if not source:
        raise ConfigError("--fn is required for this command")
    try:
        return RealFunction.from_expression(source)
    except ParseError as exc:
        caret = " " * exc.position + "^"
        raise ConfigError(
            f"--fn expression error at position {exc.position}: expected {exc.expected}, "
            f"found {exc.found}\n  {source}\n  {caret}"
        ) from exc


def _operator_from_options(op: str, opt: dict) -> DerivativeKind:
    def need(flag: str) -> float:
        if opt.get(flag) is None:
            raise ConfigError(f"--op {op} requires --{flag}")
        return opt[flag]

    if op == "classical":
        return Classical()
    if op == "q":
        return QDeformed(need("q"))
    if op == "kappa":
        return Kaniadakis(need("kappa"))
    if op == "hausdorff":
        return Hausdorff(need("zeta"), opt.get("l0") or 1.0)
    if op == "conformable":
        return Conformable(need("alpha"))
    if op == "gl":
        n_terms = opt.get("terms")
        return GrunwaldJumarie(need("alpha"), need("h"), int(n_terms) if n_terms else None)
    if op == "yang":
        return YangLFD(need("alpha"), opt.get("l0") or 1.0)
    raise ConfigError(f"unknown operator {op!r}")


def _validate_grid_domain(kind: DerivativeKind, form: str, xs: np.ndarray) -> None:
    lo = float(xs[0])
    if isinstance(kind, Hausdorff) and form == "closed" and lo <= -kind.l0:
        raise ConfigError(f"--grid enters x <= -l0 = {-kind.l0}, outside the operator domain")
    if isinstance(kind, Hausdorff) and form == "quotient" and lo <= 0.0:
        raise ConfigError("--grid must stay at x > 0 for the quotient form")
    if isinstance(kind, Conformable) and lo <= 0.0:
        raise ConfigError("--grid must stay at t > 0 for the conformable operator")
    if isinstance(kind, GrunwaldJumarie) and lo < 0.0:
        raise ConfigError("--grid must stay at x >= 0 for the GL chain")
    if isinstance(kind, YangLFD) and lo <= -kind.l0:
        raise ConfigError(f"--grid enters x <= -l0 = {-kind.l0}, outside the operator domain")


def _run_deriv(config: RunConfig, out) -> int:
    opt = config.options
    kind = config.operator
    form = opt.get("form", "closed")
    if form == "quotient" and not isinstance(kind, (QDeformed, Hausdorff)):
        raise ConfigError("--form quotient applies only to --op q and --op hausdorff")
    f = _build_function(config.function_source)
    start, stop, points = config.grid
    xs = np.linspace(start, stop, points)
    _validate_grid_domain(kind, form, xs)
    rows = []
    for x in xs:
        x = float(x)
        try:
            if form == "quotient" and isinstance(kind, QDeformed):
                value = q_derivative_quotient(f, x, kind.q, config.tolerances)
            elif form == "quotient" and isinstance(kind, Hausdorff):
                value = hausdorff_quotient(f, x, kind.zeta, config.tolerances)
            else:
                value = evaluate_kind(kind, f, x, config.tolerances)
        except DefcalcError as exc:
            print(f"numerical failure: {opt['op']} operator at x = {x}: {exc}", file=sys.stderr)
            return 3
        rows.append((x, value))
    params = {"op": opt.get("op"), "form": form, "fn": config.function_source}
    params.update({k: v for k, v in opt.items() if k not in ("op", "form") and v is not None})
    _emit(config, params, ("x", "value"), rows, out)
    return 0


def _run_solve(config: RunConfig, out) -> int:
    opt = config.options
    problem = opt.get("problem")
    start, stop, points = config.grid
    tol = opt.get("tol") or 1e-10
    try:
        if problem == "q":
            if opt.get("q") is None:
                raise ConfigError("--problem q requires --q")
            report = solve_q_eigen(opt["q"], (start, stop), points, tol)
        elif problem == "hausdorff":
            if opt.get("zeta") is None:
                raise ConfigError("--problem hausdorff requires --zeta")
            hp = HausdorffParams(opt["zeta"], opt.get("l0") or 1.0)
            report = solve_hausdorff_eigen(hp, (start, stop), points, tol)
        elif problem == "fractional":
            if opt.get("alpha") is None:
                raise ConfigError("--problem fractional requires --alpha")
            report = verify_fractional_eigen(
                opt["alpha"], (start, stop), points, opt.get("h") or 1e-3
            )
        else:
            raise ConfigError(f"unknown --problem {problem!r}")
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    except DomainError as exc:
        # the solvers reject out-of-domain grids up front; that is a config error
        raise ConfigError(f"--grid outside the problem domain: {exc}") from exc
    except DefcalcError as exc:
        print(f"numerical failure: solve --problem {problem}: {exc}", file=sys.stderr)
        return 3
    rows = [
        (x, y_num, y_closed, abs(y_num - y_closed) / abs(y_closed))
        for x, y_num, y_closed in report.grid
    ]
    params = {k: v for k, v in opt.items() if v is not None}
    print(
        f"max_rel_residual = {report.max_rel_residual:.3e}, "
        f"rms_rel_residual = {report.rms_rel_residual:.3e}",
        file=sys.stderr,
    )
    _emit(config, params, ("x", "value", "closed_form", "residual"), rows, out)
    return 0


def _run_map(config: RunConfig, out) -> int:
    opt = config.options
    has_zeta, has_q = opt.get("zeta") is not None, opt.get("q") is not None
    if has_zeta == has_q:
        raise ConfigError("map needs exactly one of --zeta or --q")
    l0 = opt.get("l0") or 1.0
    if has_zeta:
        result = q_from_zeta(HausdorffParams(opt["zeta"], l0))
    else:
        result = zeta_from_q(QParam(opt["q"]), l0)
    rows = [(result.q, result.zeta, result.l0, result.first_order_residual_bound)]
    params = {k: v for k, v in opt.items() if v is not None}
    _emit(config, params, ("q", "zeta", "l0", "first_order_residual_bound"), rows, out)
    return 0


def _run_expand(config: RunConfig, out) -> int:
    opt = config.options
    has_zeta, has_kappa = opt.get("zeta") is not None, opt.get("kappa") is not None
    if has_zeta == has_kappa:
        raise ConfigError("expand needs exactly one of --zeta or --kappa")
    order = int(opt.get("order") or 8)
    try:
        if has_zeta:
            expansion = expand_hausdorff_prefactor(
                HausdorffParams(opt["zeta"], opt.get("l0") or 1.0), order
            )
        else:
            expansion = kappa_expansion(opt["kappa"], order)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rows = [(float(k), c) for k, c in enumerate(expansion.coefficients)]
    params = {k: v for k, v in opt.items() if v is not None}
    _emit(config, params, ("x", "value"), rows, out)
    return 0


def _run_ml(config: RunConfig, out) -> int:
    opt = config.options
    alpha = opt.get("alpha")
    if alpha is None:
        raise ConfigError("ml requires --alpha")
    if (opt.get("z") is None) == (config.grid is None):
        raise ConfigError("ml needs exactly one of --z or --grid")
    zs = [opt["z"]] if opt.get("z") is not None else list(np.linspace(*config.grid))
    rows = []
    for z in zs:
        z = float(z)
        try:
            rows.append((z, mittag_leffler(z, alpha, MLSeriesConfig())))
        except DefcalcError as exc:
            print(f"numerical failure: ml at z = {z}: {exc}", file=sys.stderr)
            return 3
    params = {k: v for k, v in opt.items() if v is not None}
    _emit(config, params, ("x", "value"), rows, out)
    return 0


def run(config: RunConfig) -> int:
    """Execute a validated RunConfig; deterministic output for fixed input."""
    if config.command == "selftest":
        failures = selftest_module.run_selftest()
        return 0 if failures == 0 else 1
    handlers = {
        "deriv": _run_deriv,
        "solve": _run_solve,
        "map": _run_map,
        "expand": _run_expand,
        "ml": _run_ml,
    }
    handler = handlers.get(config.command)
    if handler is None:
        raise ConfigError(f"unknown command {config.command!r}")
    if config.output_path:
        with open(config.output_path, "w", newline="") as out:
            return handler(config, out)
    return handler(config, sys.stdout)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defcalc",
        description="Deformed and local-fractional derivative operators over grids.",
        epilog=_EXPRESSION_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, grid_required: bool):
        p.add_argument("--grid", required=grid_required, help="start:stop:points")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--output", default=None, help="write the table to this file")
        p.add_argument("--base-step", type=float, default=1e-2)
        p.add_argument("--levels", type=int, default=4)
        p.add_argument("--rel-tol", type=float, default=1e-8)

    p = sub.add_parser("deriv", help="evaluate a derivative operator over a grid")
    p.add_argument("--op", required=True,
                   choices=("classical", "q", "kappa", "hausdorff", "conformable", "gl", "yang"))
    p.add_argument("--fn", required=True, help="expression in x")
    p.add_argument("--form", choices=("closed", "quotient"), default="closed")
    for flag in ("--q", "--kappa", "--zeta", "--l0", "--alpha", "--h"):
        p.add_argument(flag, type=float, default=None)
    p.add_argument("--terms", type=int, default=None)
    add_common(p, grid_required=True)

    p = sub.add_parser("solve", help="verify an eigen-equation and emit residuals")
    p.add_argument("--problem", required=True, choices=("q", "hausdorff", "fractional"))
    for flag in ("--q", "--zeta", "--l0", "--alpha", "--h", "--tol"):
        p.add_argument(flag, type=float, default=None)
    add_common(p, grid_required=True)

    p = sub.add_parser("map", help="bridge the entropic index q and scaling exponent zeta")
    for flag in ("--q", "--zeta", "--l0"):
        p.add_argument(flag, type=float, default=None)
    add_common(p, grid_required=False)

    p = sub.add_parser("expand", help="series coefficients of an operator prefactor")
    for flag in ("--zeta", "--l0", "--kappa"):
        p.add_argument(flag, type=float, default=None)
    p.add_argument("--order", type=int, default=8)
    add_common(p, grid_required=False)

    p = sub.add_parser("ml", help="evaluate the Mittag-Leffler function")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--z", type=float, default=None)
    add_common(p, grid_required=False)

    sub.add_parser("selftest", help="run the built-in invariant suite")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.command == "selftest":
        return RunConfig(command="selftest")
    fmt = args.format or os.environ.get(ENV_FORMAT)
    if fmt is None:
        fmt = "json" if args.command == "map" else "csv"
    if fmt not in ("csv", "json"):
        raise ConfigError(f"{ENV_FORMAT} must be csv or json, got {fmt!r}")
    grid = _parse_grid(args.grid) if getattr(args, "grid", None) else None
    if args.command in ("deriv", "solve") and grid is None:
        raise ConfigError("--grid is required")
    try:
        tolerances = DiffSettings(args.base_step, args.levels, args.rel_tol)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    options = {
        name: getattr(args, name)
        for name in ("op", "form", "problem", "q", "kappa", "zeta", "l0", "alpha",
                     "h", "terms", "tol", "order", "z")
        if hasattr(args, name)
    }
    operator = None
    if args.command == "deriv":
        try:
            operator = _operator_from_options(args.op, options)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    return RunConfig(
        command=args.command,
        operator=operator,
        function_source=getattr(args, "fn", None),
        grid=grid,
        output_format=fmt,
        output_path=args.output,
        tolerances=tolerances,
        options=options,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        config = config_from_args(args)
        return run(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DefcalcError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # no traceback ever reaches the user
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
