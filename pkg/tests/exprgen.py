"""Deterministic bounded generator of differentiable expressions on safe domains.

Used by the parser agreement tests: produced trees have depth <= 5, avoid
gamma/abs (not differentiable here), and are filtered so the central
difference oracle is trustworthy: every singular source (division, sqrt/ln
arguments, fractional-power bases) stays a fixed margin away from the probe
window, node values stay small, and the arguments of exp/sin/cos vary slowly
(bounded first derivative, tracked with forward-mode dual numbers), which
bounds the oscillation frequency the finite differences must resolve.
"""

import math
import random

import numpy as np

from defcalc.derivative_ops import DiffSettings
from defcalc.errors import EvaluationError
from defcalc.function_catalog import BinOp, Call, Neg, Number, Var, differentiate, evaluate

SAMPLE_POINTS = (0.3, 0.7, 1.1, 1.7, 2.3)
PROBE_MARGIN = 0.013
# step small enough that the slowest admissible oscillation is fully resolved
ORACLE_SETTINGS = DiffSettings(base_step=1e-3, richardson_levels=4)

_CALLS = ("exp", "sin", "cos", "sqrt", "ln")
_EXPONENTS = (0.5, 1.5, 2.0, 3.0)

_MARGIN = 0.15
_VALUE_CAP = 1e4
_SLOPE_CAP = 1e4
_ARG_RATE_CAP = 50.0


class _Unsafe(Exception):
    pass


def _random_tree(rng: random.Random, depth: int):
    if depth <= 1 or rng.random() < 0.25:
        if rng.random() < 0.45:
            return Number(round(rng.uniform(0.2, 3.0), 3))
        return Var()
    roll = rng.random()
    if roll < 0.15:
        return Neg(_random_tree(rng, depth - 1))
    if roll < 0.35:
        return Call(rng.choice(_CALLS), (_random_tree(rng, depth - 1),))
    if roll < 0.50:
        return BinOp("^", _random_tree(rng, depth - 1), Number(rng.choice(_EXPONENTS)))
    op = rng.choice("+-*/")
    return BinOp(op, _random_tree(rng, depth - 1), _random_tree(rng, depth - 1))


def _cap(value: float, slope: float):
    if not (math.isfinite(value) and math.isfinite(slope)):
        raise _Unsafe
    if abs(value) > _VALUE_CAP or abs(slope) > _SLOPE_CAP:
        raise _Unsafe
    return value, slope


def _safe_eval(node, x: float):
    """Evaluate to a (value, d/dx) dual pair, raising _Unsafe near trouble."""
    if isinstance(node, Number):
        return node.value, 0.0
    if isinstance(node, Var):
        return x, 1.0
    if isinstance(node, Neg):
        v, d = _safe_eval(node.operand, x)
        return -v, -d
    if isinstance(node, BinOp):
        a, da = _safe_eval(node.left, x)
        b, db = _safe_eval(node.right, x)
        if node.op == "+":
            return _cap(a + b, da + db)
        if node.op == "-":
            return _cap(a - b, da - db)
        if node.op == "*":
            return _cap(a * b, da * b + a * db)
        if node.op == "/":
            if abs(b) < _MARGIN:
                raise _Unsafe
            return _cap(a / b, (da * b - a * db) / (b * b))
        # ^ with constant exponent only (generator invariant)
        if b != round(b) and a < _MARGIN:
            raise _Unsafe
        value = math.pow(a, b)
        return _cap(value, b * math.pow(a, b - 1.0) * da if da != 0.0 else 0.0)
    u, du = _safe_eval(node.args[0], x)
    if node.name in ("exp", "sin", "cos") and abs(du) > _ARG_RATE_CAP:
        raise _Unsafe
    if node.name == "exp":
        if u > math.log(_VALUE_CAP):
            raise _Unsafe
        value = math.exp(u)
        return _cap(value, value * du)
    if node.name == "sin":
        return _cap(math.sin(u), math.cos(u) * du)
    if node.name == "cos":
        return _cap(math.cos(u), -math.sin(u) * du)
    if node.name in ("sqrt", "ln"):
        if u < _MARGIN:
            raise _Unsafe
        if node.name == "sqrt":
            value = math.sqrt(u)
            return _cap(value, du / (2.0 * value))
        return _cap(math.log(u), du / u)
    raise _Unsafe


def _safe_on_probe_windows(ast) -> bool:
    try:
        for x in SAMPLE_POINTS:
            for offset in np.linspace(-PROBE_MARGIN, PROBE_MARGIN, 9):
                _safe_eval(ast, x + float(offset))
    except _Unsafe:
        return False
    return True


def generate(count: int, seed: int = 20240813):
    """Yield ``count`` (ast, derivative_ast) pairs passing the domain filter."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        ast = _random_tree(rng, depth=5)
        if not _safe_on_probe_windows(ast):
            continue
        dast = differentiate(ast)
        try:
            if not all(abs(evaluate(dast, x)) <= 1e6 for x in SAMPLE_POINTS):
                continue
        except (EvaluationError, OverflowError):
            continue
        produced += 1
        yield ast, dast
