"""q- and kappa-deformed arithmetic and exponential/logarithm pairs.

The deformed difference x (-)_q y = (x - y) / (1 + (1 - q) y) generates the
q-derivative; the q-exponential e_q(x) = [1 + (1 - q) x]^(1/(1-q)) is its
eigenfunction and solves dy/dx = y^q.  The kappa-exponential
(kx + sqrt(1 + k^2 x^2))^(1/k) plays the same role for the kappa-derivative.

All deformation parameters switch to their classical branch (q -> 1,
kappa -> 0) when the deformation is within ``CLASSICAL_EPS`` of the classical
value, to avoid catastrophic cancellation in exponents like 1/(1 - q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Deformations closer to classical than this take the exact classical branch.
CLASSICAL_EPS = 1e-12

__all__ = [
    "CLASSICAL_EPS",
    "QParam",
    "KappaParam",
    "q_difference",
    "q_sum",
    "q_exp",
    "q_log",
    "kappa_exp",
    "kappa_log",
]


@dataclass(frozen=True)
class QParam:
    """Entropic index q (dimensionless, finite)."""

    q: float

    def __post_init__(self):
        if not math.isfinite(self.q):
            raise ValueError(f"q must be finite, got {self.q}")

    @property
    def is_classical(self) -> bool:
        return abs(1.0 - self.q) < CLASSICAL_EPS


@dataclass(frozen=True)
class KappaParam:
    """Kaniadakis deformation parameter kappa (dimensionless, finite)."""

    kappa: float

    def __post_init__(self):
        if not math.isfinite(self.kappa):
            raise ValueError(f"kappa must be finite, got {self.kappa}")

    @property
    def is_classical(self) -> bool:
        return abs(self.kappa) < CLASSICAL_EPS


def _as_q(q: QParam | float) -> QParam:
    return q if isinstance(q, QParam) else QParam(float(q))


def _as_kappa(kappa: KappaParam | float) -> KappaParam:
    return kappa if isinstance(kappa, KappaParam) else KappaParam(float(kappa))


def q_difference(x: float, y: float, q: QParam | float) -> float:
    """Deformed difference (x - y) / (1 + (1 - q) y).

    Reduces to x - y at q = 1.  Raises :class:`DomainError` on the singular
    line y = 1/(q - 1) (within 1e-12 absolute).
    """
    qp = _as_q(q)
    if qp.is_classical:
        return x - y
    singular = 1.0 / (qp.q - 1.0)
    if abs(y - singular) < 1e-12:
        raise DomainError(f"q_difference singular at y = 1/(q-1) = {singular}")
    return (x - y) / (1.0 + (1.0 - qp.q) * y)


def q_sum(x: float, y: float, q: QParam | float) -> float:
    """Deformed sum x + y + (1 - q) x y, the inverse of :func:`q_difference`."""
    qp = _as_q(q)
    if qp.is_classical:
        return x + y
    return x + y + (1.0 - qp.q) * x * y


def q_exp(x: float, q: QParam | float) -> float:
    """q-exponential [1 + (1 - q) x]^(1/(1-q)).

    Outside the natural support (1 + (1 - q) x <= 0) the standard
    nonextensive cutoff convention applies and 0 is returned.  At q = 1 this
    is the ordinary exponential.
    """
    qp = _as_q(q)
    if qp.is_classical:
        return math.exp(x)
    base = 1.0 + (1.0 - qp.q) * x
    if base <= 0.0:
        return 0.0
    return base ** (1.0 / (1.0 - qp.q))


def q_log(x: float, q: QParam | float) -> float:
    """q-logarithm (x^(1-q) - 1) / (1 - q), inverse of :func:`q_exp` for x > 0."""
    qp = _as_q(q)
    if x <= 0.0:
        raise DomainError(f"q_log requires x > 0, got {x}")
    if qp.is_classical:
        return math.log(x)
    one_minus_q = 1.0 - qp.q
    return (x**one_minus_q - 1.0) / one_minus_q


def kappa_exp(x: float, kappa: KappaParam | float) -> float:
    """kappa-exponential (kx + sqrt(1 + k^2 x^2))^(1/k); exp(x) at kappa = 0.

    The closed form is even in kappa.
    """
    kp = _as_kappa(kappa)
    if kp.is_classical:
        return math.exp(x)
    k = kp.kappa
    return (k * x + math.sqrt(1.0 + k * k * x * x)) ** (1.0 / k)


def kappa_log(x: float, kappa: KappaParam | float) -> float:
    """kappa-logarithm (x^k - x^(-k)) / (2k), inverse of :func:`kappa_exp` for x > 0."""
    kp = _as_kappa(kappa)
    if x <= 0.0:
        raise DomainError(f"kappa_log requires x > 0, got {x}")
    if kp.is_classical:
        return math.log(x)
    k = kp.kappa
    return (x**k - x ** (-k)) / (2.0 * k)
