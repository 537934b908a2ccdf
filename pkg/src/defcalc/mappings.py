"""Parameter bridge between the q-deformed and fractal-metric pictures.

The Hausdorff prefactor (1 + x/l0)^(1-zeta) expands binomially as
1 + (1-zeta)/l0 x + (1-zeta)(-zeta)/(2 l0^2) x^2 + ...; matching the linear
term against the q-prefactor 1 + (1-q) x identifies

    1 - q = (1 - zeta) / l0,

so the q-derivative is the first-order truncation of the Hausdorff
derivative.  This module computes the expansion, the mapping and its limits,
the even-powers expansion of the Kaniadakis prefactor, and the
conformable/Yang identifications with the Hausdorff form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .deformed_algebra import QParam
from .derivative_ops import (
    DiffSettings,
    conformable_derivative,
    hausdorff_derivative,
    yang_lfd,
)
from .errors import DegenerateInput, DomainError
from .function_catalog import RealFunction, as_real_function
from .special_functions import HausdorffParams, gen_binomial

__all__ = [
    "SeriesExpansion",
    "MappingResult",
    "FirstOrderAgreement",
    "ConformableHausdorff",
    "expand_hausdorff_prefactor",
    "q_from_zeta",
    "zeta_from_q",
    "first_order_agreement",
    "kappa_expansion",
    "conformable_hausdorff_check",
    "yang_hausdorff_check",
]


@dataclass(frozen=True)
class SeriesExpansion:
    """Truncated power series: coefficients c_0..c_N about ``expansion_point``."""

    coefficients: tuple[float, ...]
    expansion_point: float
    order: int

    def __post_init__(self):
        if len(self.coefficients) != self.order + 1:
            raise ValueError(
                f"need {self.order + 1} coefficients for order {self.order}, "
                f"got {len(self.coefficients)}"
            )
        if not all(math.isfinite(c) for c in self.coefficients):
            raise ValueError("coefficients must be finite")

    def evaluate(self, x: float) -> float:
        """Horner evaluation of the partial sum at x."""
        u = x - self.expansion_point
        total = 0.0
        for c in reversed(self.coefficients):
            total = total * u + c
        return total


@dataclass(frozen=True)
class MappingResult:
    """A (q, zeta, l0) triple on the bridge 1 - q = (1 - zeta)/l0, with the
    magnitude of the second-order expansion coefficient as residual bound."""

    q: float
    zeta: float
    l0: float
    first_order_residual_bound: float

    def __post_init__(self):
        if abs((1.0 - self.q) - (1.0 - self.zeta) / self.l0) > 1e-14 * max(
            1.0, abs(1.0 - self.q)
        ):
            raise ValueError("(q, zeta, l0) do not satisfy 1 - q = (1 - zeta)/l0")


def _second_order_bound(zeta: float, l0: float) -> float:
    return abs((1.0 - zeta) * zeta) / (2.0 * l0 * l0)


def expand_hausdorff_prefactor(hp: HausdorffParams, order: int) -> SeriesExpansion:
    """Binomial expansion of (1 + x/l0)^(1-zeta): c_k = C(1-zeta, k) l0^-k.

    Partial sums converge to the closed-form prefactor for |x/l0| < 1.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    coeffs = tuple(gen_binomial(1.0 - hp.zeta, k) * hp.l0 ** (-k) for k in range(order + 1))
    return SeriesExpansion(coefficients=coeffs, expansion_point=0.0, order=order)


def q_from_zeta(hp: HausdorffParams) -> MappingResult:
    """Entropic index induced by the fractal metric: q = 1 - (1 - zeta)/l0."""
    q = 1.0 - (1.0 - hp.zeta) / hp.l0
    return MappingResult(q, hp.zeta, hp.l0, _second_order_bound(hp.zeta, hp.l0))


def zeta_from_q(q: QParam | float, l0: float) -> MappingResult:
    """Scaling exponent induced by the entropic index: zeta = 1 - l0 (1 - q)."""
    if l0 <= 0.0:
        raise ValueError(f"l0 must be positive, got {l0}")
    qv = q.q if isinstance(q, QParam) else float(q)
    zeta = 1.0 - l0 * (1.0 - qv)
    return MappingResult(qv, zeta, l0, _second_order_bound(zeta, l0))


class FirstOrderAgreement(NamedTuple):
    hausdorff_prefactor: float
    q_prefactor: float
    residual: float


def first_order_agreement(hp: HausdorffParams, x: float) -> FirstOrderAgreement:
    """Compare the Hausdorff prefactor with its first-order q-form at x.

    With q from the bridge, the residual |(1 + x/l0)^(1-zeta) - (1 + (1-q) x)|
    is second order: bounded by |c_2| x^2 (1 + |x/l0|) inside the series
    regime |x/l0| < 1.
    """
    if abs(x / hp.l0) >= 1.0:
        raise DomainError(f"series regime requires |x/l0| < 1, got x/l0 = {x / hp.l0}")
    p_h = (1.0 + x / hp.l0) ** (1.0 - hp.zeta)
    q = q_from_zeta(hp).q
    p_q = 1.0 + (1.0 - q) * x
    return FirstOrderAgreement(p_h, p_q, abs(p_h - p_q))


def kappa_expansion(kappa, order: int) -> SeriesExpansion:
    """Even-powers expansion of the Kaniadakis prefactor sqrt(1 + k^2 x^2):
    c_{2m} = C(1/2, m) k^(2m), every odd coefficient exactly zero."""
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    k = kappa.kappa if hasattr(kappa, "kappa") else float(kappa)
    coeffs = [0.0] * (order + 1)
    for m in range(order // 2 + 1):
        coeffs[2 * m] = gen_binomial(0.5, m) * k ** (2 * m)
    return SeriesExpansion(coefficients=tuple(coeffs), expansion_point=0.0, order=order)


class ConformableHausdorff(NamedTuple):
    lhs: float
    rhs: float
    rel_diff: float


def conformable_hausdorff_check(
    alpha: float,
    l0: float,
    f,
    x: float,
    settings: DiffSettings | None = None,
) -> ConformableHausdorff:
    """Conformable derivative under t = 1 + x/l0 versus the Hausdorff form.

    lhs applies the conformable limit to g(t) = f(l0 (t - 1)) at t = 1 + x/l0;
    rhs is the chain-rule closed form l0 (1 + x/l0)^(1-alpha) f'(x), i.e. l0
    times the Hausdorff derivative with zeta = alpha.  The two agree for
    differentiable f, so rel_diff stays within the settings tolerance.
    """
    if l0 <= 0.0:
        raise ValueError(f"l0 must be positive, got {l0}")
    t = 1.0 + x / l0
    if t <= 0.0:
        raise DomainError(f"requires 1 + x/l0 > 0, got {t}")
    f = as_real_function(f)
    g = RealFunction(
        value=lambda u: f.value(l0 * (u - 1.0)),
        derivative=(
            (lambda u: l0 * f.derivative(l0 * (u - 1.0))) if f.derivative is not None else None
        ),
        label=f"{f.label} in t = 1 + x/l0",
    )
    lhs = conformable_derivative(g, t, alpha, settings)
    rhs = l0 * hausdorff_derivative(f, x, HausdorffParams(zeta=alpha, l0=l0), settings)
    rel_diff = abs(lhs - rhs) / abs(rhs) if rhs != 0.0 else abs(lhs)
    return ConformableHausdorff(lhs, rhs, rel_diff)


def yang_hausdorff_check(
    alpha: float,
    hp: HausdorffParams,
    f,
    x: float,
    settings: DiffSettings | None = None,
) -> float:
    """Ratio of the Yang local fractional derivative to the Hausdorff
    derivative with zeta = alpha; equals Gamma(alpha + 1) identically."""
    f = as_real_function(f)
    s = settings or DiffSettings()
    fp = f.derivative(x) if f.derivative is not None else None
    if fp is None:
        from .derivative_ops import classical_derivative

        fp = classical_derivative(f, x, s)
    if abs(fp) < 1e-14:
        raise DegenerateInput(f"f'(x) = {fp} at x = {x}; ratio undefined")
    matched = HausdorffParams(zeta=alpha, l0=hp.l0)
    return yang_lfd(f, x, alpha, matched, s) / hausdorff_derivative(f, x, matched, s)
