"""Built-in invariant suite behind the ``selftest`` CLI command.

Each check returns (ok, detail).  Checks go through module attributes so a
fault injected into any single operation is visible here.
"""

from __future__ import annotations

import math

import numpy as np

from . import (
    deformed_algebra,
    derivative_ops,
    eigen_solvers,
    mappings,
    special_functions,
)
from .function_catalog import RealFunction
from .special_functions import HausdorffParams

CORPUS = (
    RealFunction.from_expression("x"),
    RealFunction.from_expression("x^2"),
    RealFunction.from_expression("sin(x)"),
    RealFunction.from_expression("exp(x)"),
)


def _check_q_round_trip():
    worst = 0.0
    for q in (0.3, 0.5, 0.7, 1.0, 1.3):
        for x in np.linspace(-0.5, 2.0, 26):
            if 1.0 + (1.0 - q) * x <= 0.01:
                continue
            back = deformed_algebra.q_log(deformed_algebra.q_exp(float(x), q), q)
            worst = max(worst, abs(back - x))
    return worst <= 1e-10, f"max |q_log(q_exp(x)) - x| = {worst:.3e}"


def _check_q_sum_difference():
    worst = 0.0
    for q in (0.3, 0.7, 1.3):
        for x in np.linspace(-2.0, 2.0, 20):
            for y in np.linspace(-2.0, 2.0, 20):
                if abs(1.0 + (1.0 - q) * y) < 0.05:
                    continue
                s = deformed_algebra.q_sum(float(x), float(y), q)
                back = deformed_algebra.q_difference(s, float(y), q)
                worst = max(worst, abs(back - x) / max(abs(x), 1e-30))
    return worst <= 1e-12, f"max relative round-trip error = {worst:.3e}"


def _check_q_eigen_ode():
    report = eigen_solvers.solve_q_eigen(0.5, (0.0, 2.0), 51, tol=1e-10)
    return report.max_rel_residual <= 1e-7, f"max residual = {report.max_rel_residual:.3e}"


def _check_hausdorff_eigen_ode():
    report = eigen_solvers.solve_hausdorff_eigen(HausdorffParams(0.4, 1.0), (0.0, 2.0), 51, tol=1e-10)
    return report.max_rel_residual <= 1e-7, f"max residual = {report.max_rel_residual:.3e}"


def _check_fractional_eigen():
    report = eigen_solvers.verify_fractional_eigen(0.5, (0.2, 2.0), 21, h=1e-3)
    return report.max_rel_residual <= 5e-2, f"max residual = {report.max_rel_residual:.3e}"


def _check_eigenfunctions():
    worst = 0.0
    q = 0.7
    fq = RealFunction(
        value=lambda x: deformed_algebra.q_exp(x, q),
        derivative=lambda x: deformed_algebra.q_exp(x, q) ** q,
    )
    for x in np.linspace(0.0, 2.0, 41):
        value = derivative_ops.q_derivative(fq, float(x), q)
        expected = deformed_algebra.q_exp(float(x), q)
        worst = max(worst, abs(value - expected) / abs(expected))
    kappa = 0.5
    fk = RealFunction(
        value=lambda x: deformed_algebra.kappa_exp(x, kappa),
        derivative=lambda x: deformed_algebra.kappa_exp(x, kappa)
        / math.sqrt(1.0 + kappa * kappa * x * x),
    )
    for x in np.linspace(0.0, 2.0, 41):
        value = derivative_ops.kaniadakis_derivative(fk, float(x), kappa)
        expected = deformed_algebra.kappa_exp(float(x), kappa)
        worst = max(worst, abs(value - expected) / abs(expected))
    hp = HausdorffParams(0.4, 1.0)
    fh = RealFunction(
        value=lambda x: special_functions.balankin_exp(x, hp),
        derivative=lambda x: (x / hp.l0 + 1.0) ** (hp.zeta - 1.0)
        * special_functions.balankin_exp(x, hp),
    )
    for x in np.linspace(0.0, 2.0, 41):
        value = derivative_ops.hausdorff_derivative(fh, float(x), hp)
        expected = special_functions.balankin_exp(float(x), hp)
        worst = max(worst, abs(value - expected) / abs(expected))
    alpha = 0.5
    fc = RealFunction(value=lambda t: math.exp(t**alpha / alpha))
    for t in np.linspace(0.2, 2.0, 41):
        value = derivative_ops.conformable_derivative(fc, float(t), alpha)
        expected = fc.value(float(t))
        worst = max(worst, abs(value - expected) / abs(expected))
    return worst <= 1e-6, f"max eigen residual = {worst:.3e}"


def _check_classical_reductions():
    worst = 0.0
    grid = np.linspace(0.1, 2.1, 11)
    for f in CORPUS:
        for x in grid:
            x = float(x)
            reference = derivative_ops.classical_derivative(f, x)
            for value in (
                derivative_ops.q_derivative(f, x, 1.0),
                derivative_ops.kaniadakis_derivative(f, x, 0.0),
                derivative_ops.hausdorff_derivative(f, x, HausdorffParams(1.0, 1.0)),
                derivative_ops.conformable_derivative(f, x, 1.0),
            ):
                worst = max(worst, abs(value - reference) / abs(reference))
    return worst <= 1e-8, f"max reduction mismatch = {worst:.3e}"


def _check_mittag_leffler():
    worst = 0.0
    for x in np.linspace(-2.0, 2.0, 21):
        value = special_functions.mittag_leffler(float(x), 1.0)
        worst = max(worst, abs(value - math.exp(x)) / math.exp(x))
    ok_e1 = worst <= 1e-10
    worst2 = 0.0
    for x in np.linspace(0.0, 2.0, 21):
        value = special_functions.mittag_leffler(float(x) ** 2, 2.0)
        worst2 = max(worst2, abs(value - math.cosh(x)) / math.cosh(x))
    return ok_e1 and worst2 <= 1e-8, f"E1 error {worst:.3e}, E2 error {worst2:.3e}"


def _check_mapping():
    rng = np.random.default_rng(20240827)
    worst = 0.0
    for _ in range(100):
        zeta = float(rng.uniform(-1.0, 1.5))
        l0 = float(rng.uniform(0.1, 10.0))
        q = mappings.q_from_zeta(HausdorffParams(zeta, l0)).q
        back = mappings.zeta_from_q(q, l0).zeta
        worst = max(worst, abs(back - zeta))
    limits_ok = (
        mappings.q_from_zeta(HausdorffParams(1.0, 1.0)).q == 1.0
        and mappings.zeta_from_q(0.0, 1.0).zeta == 0.0
        and abs(mappings.q_from_zeta(HausdorffParams(0.5, 1e12)).q - 1.0) <= 1e-12
    )
    return worst <= 1e-15 and limits_ok, f"round-trip error {worst:.3e}, limits {limits_ok}"


def _check_first_order():
    worst_ratio = 0.0
    for zeta, l0 in ((0.3, 0.5), (0.5, 1.0), (0.8, 2.0)):
        hp = HausdorffParams(zeta, l0)
        bound_coeff = abs((1.0 - zeta) * zeta) / (2.0 * l0 * l0)
        for x in np.linspace(1e-4 * l0, 0.01 * l0, 9):
            agreement = mappings.first_order_agreement(hp, float(x))
            bound = 1.1 * bound_coeff * x * x
            worst_ratio = max(worst_ratio, agreement.residual / bound)
    return worst_ratio <= 1.0, f"worst residual/bound = {worst_ratio:.3f}"


def _check_gl_power_rule():
    worst = 0.0
    for g in (1.0, 2.0):
        f = RealFunction(value=lambda t, g=g: t**g)
        value = derivative_ops.gl_jumarie_derivative(f, 1.0, 0.5, 1e-4)
        exact = derivative_ops.rl_power_rule(g, 0.5, 1.0)
        worst = max(worst, abs(value - exact) / abs(exact))
    return worst <= 1e-2, f"max relative error = {worst:.3e}"


def _check_yang_ratio():
    alpha = 0.5
    expected = special_functions.gamma(alpha + 1.0)
    worst = 0.0
    for f in CORPUS:
        for x in (0.3, 0.9, 1.4):
            ratio = mappings.yang_hausdorff_check(alpha, HausdorffParams(alpha, 1.0), f, x)
            worst = max(worst, abs(ratio - expected) / expected)
    return worst <= 1e-10, f"max |ratio - Gamma(1.5)|/Gamma(1.5) = {worst:.3e}"


def _check_conformable_hausdorff():
    worst = 0.0
    for alpha in (0.5, 0.8):
        for l0 in (1.0, 2.0):
            for f in CORPUS:
                for x in (0.3, 1.0, 1.7):
                    result = mappings.conformable_hausdorff_check(alpha, l0, f, x)
                    worst = max(worst, result.rel_diff)
    return worst <= 1e-8, f"max rel_diff = {worst:.3e}"


def _check_kappa_parity():
    expansion = mappings.kappa_expansion(0.7, 10)
    odd_ok = all(expansion.coefficients[k] == 0.0 for k in range(1, 11, 2))
    sym = all(
        deformed_algebra.kappa_exp(x, 0.7) == deformed_algebra.kappa_exp(x, -0.7)
        or abs(deformed_algebra.kappa_exp(x, 0.7) - deformed_algebra.kappa_exp(x, -0.7))
        <= 1e-12 * deformed_algebra.kappa_exp(x, 0.7)
        for x in np.linspace(-1.0, 2.0, 13)
    )
    return odd_ok and sym, f"odd coefficients zero: {odd_ok}, kappa symmetry: {sym}"


CHECKS = (
    ("q-exponential/logarithm round-trip", _check_q_round_trip),
    ("deformed sum/difference inverse", _check_q_sum_difference),
    ("q eigen-equation ODE residual", _check_q_eigen_ode),
    ("hausdorff eigen-equation ODE residual", _check_hausdorff_eigen_ode),
    ("fractional eigen-equation GL residual", _check_fractional_eigen),
    ("closed-form eigenfunction identities", _check_eigenfunctions),
    ("classical reductions", _check_classical_reductions),
    ("mittag-leffler identities", _check_mittag_leffler),
    ("mapping round-trip and limits", _check_mapping),
    ("first-order agreement bound", _check_first_order),
    ("GL sum vs power rule", _check_gl_power_rule),
    ("yang/hausdorff dilatation ratio", _check_yang_ratio),
    ("conformable/hausdorff chain-rule constant", _check_conformable_hausdorff),
    ("kappa expansion parity", _check_kappa_parity),
)


def run_selftest(write=print) -> int:
    """Run every check; report one line each plus a summary.  Returns the
    number of failures (0 means all green)."""
    failures = 0
    for name, check in CHECKS:
        try:
            ok, detail = check()
        except Exception as exc:  # a thrown check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        if not ok:
            failures += 1
        write(f"{'ok  ' if ok else 'FAIL'} {name} ({detail})")
    write(f"{len(CHECKS) - failures} passed, {failures} failed")
    return failures
