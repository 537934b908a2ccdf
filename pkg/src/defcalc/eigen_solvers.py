"""Numerical verification that each deformed eigen-equation has its claimed solution.

Each solver integrates the ordinary-ODE reformulation of an eigen-equation
with an embedded adaptive Runge-Kutta pair, evaluates the closed-form
eigenfunction on the same grid, and reports residual statistics.  The
fractional case has no ODE form; there the Grunwald-Letnikov chain applied to
the sampled Mittag-Leffler eigenfunction (with the value at 0 subtracted,
realizing the Caputo convention) plays the role of the operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .deformed_algebra import q_exp
from .derivative_ops import (
    DerivativeKind,
    GrunwaldJumarie,
    Hausdorff,
    QDeformed,
    gl_jumarie_derivative,
)
from .errors import DomainError, StepFailure
from .function_catalog import RealFunction
from .special_functions import HausdorffParams, balankin_exp, mittag_leffler_array

__all__ = [
    "EigenProblem",
    "EigenReport",
    "OdeSolution",
    "integrate_ode",
    "solve_q_eigen",
    "solve_hausdorff_eigen",
    "verify_fractional_eigen",
]


@dataclass(frozen=True)
class EigenProblem:
    """A deformed eigen-equation posed on a grid: operator kind, domain, initial value."""

    kind: DerivativeKind
    domain: tuple[float, float]
    y0: float
    grid_points: int

    def __post_init__(self):
        x_start, x_end = self.domain
        if not x_start < x_end:
            raise ValueError(f"domain must satisfy x_start < x_end, got {self.domain}")
        if self.grid_points < 11:
            raise ValueError(f"grid_points must be >= 11, got {self.grid_points}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.domain[0], self.domain[1], self.grid_points)


@dataclass(frozen=True)
class EigenReport:
    """Residual statistics of operator-vs-eigenfunction agreement over a grid."""

    max_rel_residual: float
    rms_rel_residual: float
    grid: tuple[tuple[float, float, float], ...]  # (x, y_numeric, y_closed_form)


def _make_report(xs: Sequence[float], numeric: Sequence[float], closed: Sequence[float]) -> EigenReport:
    res = np.abs(np.asarray(numeric) - np.asarray(closed)) / np.abs(np.asarray(closed))
    return EigenReport(
        max_rel_residual=float(np.max(res)),
        rms_rel_residual=float(math.sqrt(np.mean(res**2))),
        grid=tuple((float(x), float(n), float(c)) for x, n, c in zip(xs, numeric, closed)),
    )


# --- Adaptive embedded Runge-Kutta (Fehlberg 4(5), 5th order propagated) ----

_MIN_STEP_FRACTION = 1e-14


@dataclass(frozen=True)
class OdeSolution:
    """Accepted integration nodes; when a grid was requested, every grid node
    is landed on exactly and its value is in ``at_grid``."""

    xs: np.ndarray
    ys: np.ndarray
    at_grid: np.ndarray | None
    n_accepted: int
    n_rejected: int


def _rkf45_step(rhs, x: float, y: float, h: float) -> tuple[float, float]:
    """One Fehlberg step: returns (5th-order solution increment, error estimate)."""
    k1 = h * rhs(x, y)
    k2 = h * rhs(x + h / 4.0, y + k1 / 4.0)
    k3 = h * rhs(x + 3.0 * h / 8.0, y + 3.0 / 32.0 * k1 + 9.0 / 32.0 * k2)
    k4 = h * rhs(
        x + 12.0 * h / 13.0,
        y + 1932.0 / 2197.0 * k1 - 7200.0 / 2197.0 * k2 + 7296.0 / 2197.0 * k3,
    )
    k5 = h * rhs(
        x + h,
        y + 439.0 / 216.0 * k1 - 8.0 * k2 + 3680.0 / 513.0 * k3 - 845.0 / 4104.0 * k4,
    )
    k6 = h * rhs(
        x + h / 2.0,
        y
        - 8.0 / 27.0 * k1
        + 2.0 * k2
        - 3544.0 / 2565.0 * k3
        + 1859.0 / 4104.0 * k4
        - 11.0 / 40.0 * k5,
    )
    step4 = 25.0 / 216.0 * k1 + 1408.0 / 2565.0 * k3 + 2197.0 / 4104.0 * k4 - k5 / 5.0
    step5 = (
        16.0 / 135.0 * k1
        + 6656.0 / 12825.0 * k3
        + 28561.0 / 56430.0 * k4
        - 9.0 / 50.0 * k5
        + 2.0 / 55.0 * k6
    )
    return step5, abs(step5 - step4)


def integrate_ode(
    rhs: Callable[[float, float], float],
    domain: tuple[float, float],
    y0: float,
    tol: float = 1e-10,
    grid: Sequence[float] | None = None,
) -> OdeSolution:
    """Integrate y' = rhs(x, y) with local error per step <= tol.

    Steps are clipped so that every requested grid node is an integration
    node, making grid output exact rather than interpolated.  Raises
    :class:`StepFailure` if the controller underflows the step size.
    """
    if not 1e-12 <= tol <= 1e-4:
        raise ValueError(f"tol must be in [1e-12, 1e-4], got {tol}")
    x_start, x_end = domain
    if not x_start < x_end:
        raise ValueError(f"domain must satisfy x_start < x_end, got {domain}")
    targets: list[float] = []
    if grid is not None:
        targets = [float(g) for g in grid]
        if any(b < a for a, b in zip(targets, targets[1:])):
            raise ValueError("grid must be non-decreasing")
        if targets and (targets[0] < x_start or targets[-1] > x_end):
            raise ValueError("grid must lie within the integration domain")

    xs = [x_start]
    ys = [float(y0)]
    at_grid: list[float] = []
    ti = 0
    while ti < len(targets) and targets[ti] <= x_start:
        at_grid.append(float(y0))
        ti += 1

    x, y = x_start, float(y0)
    h = (x_end - x_start) / 100.0
    n_accepted = n_rejected = 0
    while x < x_end:
        target = targets[ti] if ti < len(targets) else x_end
        h_step = min(h, x_end - x, target - x)
        clipped = h_step < h
        if h_step < _MIN_STEP_FRACTION * max(abs(x), 1.0):
            raise StepFailure(f"step size underflow at x = {x}")
        dy, err = _rkf45_step(rhs, x, y, h_step)
        factor = min(5.0, max(0.2, 5.0 if err == 0.0 else 0.9 * (tol / err) ** 0.2))
        if err <= tol:
            y += dy
            # min() returned one of its arguments, so landing is exact
            x = target if h_step == target - x else x + h_step
            xs.append(x)
            ys.append(y)
            n_accepted += 1
            while ti < len(targets) and targets[ti] <= x:
                at_grid.append(y)
                ti += 1
            if not clipped:
                h = h_step * factor
        else:
            n_rejected += 1
            h = h_step * factor
    return OdeSolution(
        xs=np.asarray(xs),
        ys=np.asarray(ys),
        at_grid=np.asarray(at_grid) if grid is not None else None,
        n_accepted=n_accepted,
        n_rejected=n_rejected,
    )


# --- Eigen-equation verifications ------------------------------------------


def solve_q_eigen(
    q: float, domain: tuple[float, float], grid_points: int, tol: float = 1e-10
) -> EigenReport:
    """Integrate dy/dx = y^q and compare against the q-exponential."""
    qv = q.q if hasattr(q, "q") else float(q)
    problem = EigenProblem(QDeformed(qv), tuple(domain), q_exp(domain[0], qv), grid_points)
    if problem.y0 <= 0.0:
        raise DomainError(f"domain start {domain[0]} is outside the q-exponential support")
    if 1.0 + (1.0 - qv) * domain[1] <= 0.0:
        raise DomainError(f"domain end {domain[1]} is outside the q-exponential support")
    grid = problem.grid()
    sol = integrate_ode(lambda x, y: y**qv, problem.domain, problem.y0, tol, grid)
    closed = [q_exp(float(x), qv) for x in grid]
    return _make_report(grid, sol.at_grid, closed)


def solve_hausdorff_eigen(
    hp: HausdorffParams, domain: tuple[float, float], grid_points: int, tol: float = 1e-10
) -> EigenReport:
    """Integrate y' = (x/l0 + 1)^(zeta-1) y and compare against the
    fractal-metric exponential (initial value fixed by the closed form)."""
    if domain[0] <= -hp.l0:
        raise DomainError(f"domain must lie inside (-l0, inf) = ({-hp.l0}, inf)")
    problem = EigenProblem(
        Hausdorff(hp.zeta, hp.l0), tuple(domain), balankin_exp(domain[0], hp), grid_points
    )
    grid = problem.grid()
    zeta, l0 = hp.zeta, hp.l0
    sol = integrate_ode(
        lambda x, y: (x / l0 + 1.0) ** (zeta - 1.0) * y, problem.domain, problem.y0, tol, grid
    )
    closed = [balankin_exp(float(x), hp) for x in grid]
    return _make_report(grid, sol.at_grid, closed)


def verify_fractional_eigen(
    alpha: float, domain: tuple[float, float], grid_points: int, h: float
) -> EigenReport:
    """Check that the Grunwald-Letnikov chain reproduces the Mittag-Leffler
    eigenfunction y(x) = E_alpha(x^alpha).

    The value y(0) = 1 is subtracted before the chain is applied (Caputo
    convention), so the constant mode has zero fractional derivative.  The
    residual is first order in h.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"verify_fractional_eigen requires 0 < alpha < 1, got {alpha}")
    if h <= 0.0:
        raise ValueError(f"h must be positive, got {h}")
    if domain[0] <= 0.0:
        raise DomainError(f"domain must lie inside (0, inf), got {domain}")
    if domain[1] ** alpha > 10.0:
        raise DomainError("domain end exceeds the Mittag-Leffler series domain x^alpha <= 10")
    problem = EigenProblem(GrunwaldJumarie(alpha, h), tuple(domain), 1.0, grid_points)
    grid = problem.grid()

    def eigenfunction(t):
        # array-aware so the chain evaluation inside the GL sum stays fast
        return mittag_leffler_array(np.asarray(t, dtype=float) ** alpha, alpha)

    shifted = RealFunction(value=lambda t: eigenfunction(t) - 1.0, label="E_alpha(x^alpha) - 1")
    numeric = [gl_jumarie_derivative(shifted, float(x), alpha, h) for x in grid]
    closed = [float(eigenfunction(x)) for x in grid]
    return _make_report(grid, numeric, closed)
