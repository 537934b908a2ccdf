"""Derivative operators in closed form and limit-quotient numerical form.

Closed forms multiply f'(x) by the operator's prefactor:

    q-deformed     [1 + (1-q) x] f'(x)
    Kaniadakis     sqrt(1 + k^2 x^2) f'(x)
    Hausdorff      (x/l0 + 1)^(1-zeta) f'(x)
    Yang LFD       Gamma(alpha+1) (x/l0 + 1)^(1-alpha) f'(x)
    conformable    t^(1-alpha) f'(t)            (realized as a limit below)

Limit-quotient forms evaluate the defining difference quotient on a geometric
probe sequence (step halving) and Richardson-extrapolate.  The
Grunwald-Letnikov / Jumarie sum realizes the non-local fractional derivative
as an alternating binomial chain anchored at the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .deformed_algebra import KappaParam, QParam, q_difference
from .errors import DomainError
from .function_catalog import RealFunction, as_real_function
from .special_functions import HausdorffParams, gamma

__all__ = [
    "DiffSettings",
    "Classical",
    "QDeformed",
    "Kaniadakis",
    "Hausdorff",
    "Conformable",
    "GrunwaldJumarie",
    "YangLFD",
    "DerivativeKind",
    "classical_derivative",
    "q_derivative",
    "q_derivative_quotient",
    "hausdorff_derivative",
    "hausdorff_quotient",
    "kaniadakis_derivative",
    "conformable_derivative",
    "gl_jumarie_derivative",
    "gl_weights",
    "rl_power_rule",
    "yang_lfd",
    "jumarie_taylor_eval",
    "evaluate_kind",
]


@dataclass(frozen=True)
class DiffSettings:
    """Numerical limit policy: initial step, Richardson depth, agreement tolerance."""

    base_step: float = 1e-2
    richardson_levels: int = 4
    rel_tolerance: float = 1e-8

    def __post_init__(self):
        if self.base_step <= 0.0:
            raise ValueError(f"base_step must be positive, got {self.base_step}")
        if not 1 <= self.richardson_levels <= 6:
            raise ValueError(f"richardson_levels must be in 1..6, got {self.richardson_levels}")
        if self.rel_tolerance <= 0.0:
            raise ValueError(f"rel_tolerance must be positive, got {self.rel_tolerance}")


_DEFAULT_SETTINGS = DiffSettings()


# --- Operator kinds (tagged choice) ---------------------------------------


@dataclass(frozen=True)
class Classical:
    pass


@dataclass(frozen=True)
class QDeformed:
    q: float


@dataclass(frozen=True)
class Kaniadakis:
    kappa: float


@dataclass(frozen=True)
class Hausdorff:
    zeta: float
    l0: float = 1.0

    def __post_init__(self):
        if self.l0 <= 0.0:
            raise ValueError(f"Hausdorff requires l0 > 0, got {self.l0}")


@dataclass(frozen=True)
class Conformable:
    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"Conformable requires 0 < alpha <= 1, got {self.alpha}")


@dataclass(frozen=True)
class GrunwaldJumarie:
    alpha: float
    h: float
    n_terms: Optional[int] = None  # optional cap on the chain length

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"GrunwaldJumarie requires 0 < alpha <= 1, got {self.alpha}")
        if self.h <= 0.0:
            raise ValueError(f"GrunwaldJumarie requires h > 0, got {self.h}")
        if self.n_terms is not None and self.n_terms < 1:
            raise ValueError(f"GrunwaldJumarie requires N >= 1, got {self.n_terms}")


@dataclass(frozen=True)
class YangLFD:
    alpha: float
    l0: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"YangLFD requires 0 < alpha <= 1, got {self.alpha}")
        if self.l0 <= 0.0:
            raise ValueError(f"YangLFD requires l0 > 0, got {self.l0}")


DerivativeKind = Union[
    Classical, QDeformed, Kaniadakis, Hausdorff, Conformable, GrunwaldJumarie, YangLFD
]


# --- Richardson extrapolation ---------------------------------------------


def _richardson(values: Sequence[float], p: int, r: float = 2.0) -> float:
    # values[i] computed at step base * r^-i; error powers p, 2p, 3p, ...
    vals = [float(v) for v in values]
    n = len(vals)
    for j in range(1, n):
        factor = r ** (p * j)
        for k in range(n - 1, j - 1, -1):
            vals[k] = (factor * vals[k] - vals[k - 1]) / (factor - 1.0)
    return vals[-1]


def _steps(settings: DiffSettings) -> list[float]:
    return [settings.base_step * 0.5**j for j in range(settings.richardson_levels + 1)]


def classical_derivative(f, x: float, settings: DiffSettings | None = None) -> float:
    """f'(x) by central differences with Richardson extrapolation.

    Serves as the numerical fallback wherever a symbolic derivative is not
    available.  Requires f evaluable on [x - base_step, x + base_step].
    """
    s = settings or _DEFAULT_SETTINGS
    f = as_real_function(f)
    quotients = [(f.value(x + h) - f.value(x - h)) / (2.0 * h) for h in _steps(s)]
    return _richardson(quotients, p=2)


def _fprime(f: RealFunction, x: float, settings: DiffSettings) -> float:
    if f.derivative is not None:
        return f.derivative(x)
    return classical_derivative(f, x, settings)


# --- Closed-form operators -------------------------------------------------


def q_derivative(f, x: float, q: QParam | float, settings: DiffSettings | None = None) -> float:
    """q-deformed derivative [1 + (1-q) x] f'(x); classical derivative at q = 1."""
    f = as_real_function(f)
    qv = q.q if isinstance(q, QParam) else float(q)
    s = settings or _DEFAULT_SETTINGS
    return (1.0 + (1.0 - qv) * x) * _fprime(f, x, s)


def q_derivative_quotient(
    f, x: float, q: QParam | float, settings: DiffSettings | None = None
) -> float:
    """q-deformed derivative as the limit of (f(x) - f(y)) over the deformed
    difference of x and y, probed at y_n = x - base_step 2^-n and
    Richardson-extrapolated.  Raises :class:`DomainError` if a probe hits the
    deformed-difference singularity y = 1/(q-1)."""
    f = as_real_function(f)
    s = settings or _DEFAULT_SETTINGS
    fx = f.value(x)
    quotients = []
    for h in _steps(s):
        y = x - h
        quotients.append((fx - f.value(y)) / q_difference(x, y, q))
    return _richardson(quotients, p=1)


def hausdorff_derivative(
    f, x: float, hp: HausdorffParams, settings: DiffSettings | None = None
) -> float:
    """Hausdorff (fractal-metric) derivative (x/l0 + 1)^(1-zeta) f'(x) for x > -l0."""
    f = as_real_function(f)
    if x <= -hp.l0:
        raise DomainError(f"hausdorff_derivative requires x > -l0 = {-hp.l0}, got {x}")
    s = settings or _DEFAULT_SETTINGS
    return (x / hp.l0 + 1.0) ** (1.0 - hp.zeta) * _fprime(f, x, s)


def hausdorff_quotient(f, x: float, zeta: float, settings: DiffSettings | None = None) -> float:
    """Derivative with respect to the fractal measure coordinate x^zeta:
    limit of (f(x') - f(x)) / (x'^zeta - x^zeta) with x' -> x from above.

    By the chain rule this equals x^(1-zeta) f'(x) / zeta; it needs x > 0.
    """
    f = as_real_function(f)
    if x <= 0.0:
        raise DomainError(f"hausdorff_quotient requires x > 0, got {x}")
    s = settings or _DEFAULT_SETTINGS
    fx = f.value(x)
    xz = x**zeta
    quotients = []
    for h in _steps(s):
        xp = x + h
        quotients.append((f.value(xp) - fx) / (xp**zeta - xz))
    return _richardson(quotients, p=1)


def kaniadakis_derivative(
    f, x: float, kappa: KappaParam | float, settings: DiffSettings | None = None
) -> float:
    """Kaniadakis derivative sqrt(1 + kappa^2 x^2) f'(x); classical at kappa = 0."""
    f = as_real_function(f)
    k = kappa.kappa if isinstance(kappa, KappaParam) else float(kappa)
    s = settings or _DEFAULT_SETTINGS
    return math.sqrt(1.0 + k * k * x * x) * _fprime(f, x, s)


def conformable_derivative(
    f, t: float, alpha: float, settings: DiffSettings | None = None
) -> float:
    """Conformable derivative lim (f(t + eps t^(1-alpha)) - f(t)) / eps for t > 0.

    Evaluated on a halving eps sequence with Richardson extrapolation; equals
    t^(1-alpha) f'(t) for classically differentiable f.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"conformable_derivative requires 0 < alpha <= 1, got {alpha}")
    if t <= 0.0:
        raise DomainError(f"conformable_derivative requires t > 0, got {t}")
    f = as_real_function(f)
    s = settings or _DEFAULT_SETTINGS
    ft = f.value(t)
    scale = t ** (1.0 - alpha)
    quotients = [(f.value(t + eps * scale) - ft) / eps for eps in _steps(s)]
    return _richardson(quotients, p=1)


# --- Grunwald-Letnikov / Jumarie chain ------------------------------------


def gl_weights(alpha: float, n: int) -> np.ndarray:
    """Weights (-1)^k C(alpha, k) for k = 0..n, by the stable ratio recurrence."""
    k = np.arange(1, n + 1, dtype=float)
    return np.cumprod(np.concatenate(([1.0], (k - 1.0 - alpha) / k)))


def _eval_on_nodes(f: RealFunction, nodes: np.ndarray) -> np.ndarray:
    # Fast path: closures built from numpy ufuncs accept arrays directly.
    try:
        vals = np.asarray(f.value(nodes), dtype=float)
        if vals.shape == nodes.shape:
            return vals
    except Exception:
        pass
    return np.array([f.value(t) for t in nodes], dtype=float)


def gl_jumarie_derivative(
    f, x: float, alpha: float, h: float, n_terms: Optional[int] = None
) -> float:
    """Grunwald-Letnikov sum h^-alpha sum_k (-1)^k C(alpha,k) f(x - kh).

    The chain is anchored at the origin: N = floor(x/h), so the lower
    terminal of the underlying fractional derivative is 0.  ``n_terms``
    optionally caps the chain length.  Requires 0 < alpha <= 1, h > 0,
    x >= 0.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"gl_jumarie_derivative requires 0 < alpha <= 1, got {alpha}")
    if h <= 0.0:
        raise ValueError(f"gl_jumarie_derivative requires h > 0, got {h}")
    if x < 0.0:
        raise DomainError(f"gl_jumarie_derivative requires x >= 0, got {x}")
    f = as_real_function(f)
    n = int(math.floor(x / h))
    if n_terms is not None:
        n = min(n, int(n_terms))
    nodes = x - h * np.arange(n + 1, dtype=float)
    values = _eval_on_nodes(f, nodes)
    return float(h ** (-alpha) * np.dot(gl_weights(alpha, n), values))


def rl_power_rule(gamma_exp: float, alpha: float, x: float) -> float:
    """Fractional power rule Gamma(gamma+1) x^(gamma-alpha) / Gamma(gamma-alpha+1).

    The analytic value the Grunwald-Letnikov sum converges to on f = x^gamma
    (lower terminal 0).  Requires gamma > -1 and x > 0; a pole of the
    denominator gamma propagates as :class:`PoleError`.
    """
    if gamma_exp <= -1.0:
        raise DomainError(f"rl_power_rule requires gamma > -1, got {gamma_exp}")
    if x <= 0.0:
        raise DomainError(f"rl_power_rule requires x > 0, got {x}")
    return gamma(gamma_exp + 1.0) * x ** (gamma_exp - alpha) / gamma(gamma_exp - alpha + 1.0)


def yang_lfd(
    f, x: float, alpha: float, hp: HausdorffParams, settings: DiffSettings | None = None
) -> float:
    """Local fractional derivative Gamma(alpha+1) (x/l0 + 1)^(1-alpha) f'(x).

    The increment approximation Delta^alpha ~ Gamma(alpha+1) Delta turns the
    pointwise fractional limit into a Hausdorff derivative with scaling
    exponent alpha, dilated by the constant Gamma(alpha+1).
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"yang_lfd requires 0 < alpha <= 1, got {alpha}")
    f = as_real_function(f)
    if x <= -hp.l0:
        raise DomainError(f"yang_lfd requires x > -l0 = {-hp.l0}, got {x}")
    s = settings or _DEFAULT_SETTINGS
    return gamma(alpha + 1.0) * (x / hp.l0 + 1.0) ** (1.0 - alpha) * _fprime(f, x, s)


def jumarie_taylor_eval(
    f_derivs: Sequence[float], h: float, alpha: float, terms: int
) -> float:
    """Truncated fractional Taylor sum sum_k h^(alpha k) f^(alpha k)(x) / Gamma(alpha k + 1).

    ``f_derivs[k]`` supplies the alpha-fractional derivative of order alpha*k
    at the expansion point, k = 0..terms-1.
    """
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    if len(f_derivs) < terms:
        raise ValueError(f"need {terms} derivative values, got {len(f_derivs)}")
    values = [float(v) for v in f_derivs[:terms]]
    if not all(math.isfinite(v) for v in values):
        raise ValueError("supplied derivative values must be finite")
    total = 0.0
    for k in range(terms):
        total += math.pow(h, alpha * k) * values[k] / gamma(alpha * k + 1.0)
    return total


# --- Dispatch by operator kind ---------------------------------------------


def evaluate_kind(kind: DerivativeKind, f, x: float, settings: DiffSettings | None = None) -> float:
    """Evaluate any tagged operator at a point (closed form where one exists)."""
    if isinstance(kind, Classical):
        return classical_derivative(f, x, settings)
    if isinstance(kind, QDeformed):
        return q_derivative(f, x, kind.q, settings)
    if isinstance(kind, Kaniadakis):
        return kaniadakis_derivative(f, x, kind.kappa, settings)
    if isinstance(kind, Hausdorff):
        return hausdorff_derivative(f, x, HausdorffParams(kind.zeta, kind.l0), settings)
    if isinstance(kind, Conformable):
        return conformable_derivative(f, x, kind.alpha, settings)
    if isinstance(kind, GrunwaldJumarie):
        return gl_jumarie_derivative(f, x, kind.alpha, kind.h, kind.n_terms)
    if isinstance(kind, YangLFD):
        return yang_lfd(f, x, kind.alpha, HausdorffParams(kind.alpha, kind.l0), settings)
    raise TypeError(f"unknown derivative kind: {kind!r}")
