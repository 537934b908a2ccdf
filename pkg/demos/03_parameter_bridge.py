"""The bridge between the q-deformed and fractal-metric pictures.

Expanding the prefactor (1 + x/l0)^(1-zeta) binomially and matching the
linear term against 1 + (1-q) x identifies 1 - q = (1 - zeta)/l0, so the
q-derivative is the first-order truncation of the Hausdorff derivative.  The
residual of that truncation is second order, with coefficient
(1-zeta)(-zeta)/(2 l0^2).
"""

import numpy as np

from defcalc import (
    HausdorffParams,
    expand_hausdorff_prefactor,
    first_order_agreement,
    gamma,
    kappa_expansion,
    q_from_zeta,
    yang_hausdorff_check,
    zeta_from_q,
)

hp = HausdorffParams(zeta=0.5, l0=1.0)

print("binomial expansion of the Hausdorff prefactor (zeta=0.5, l0=1)")
expansion = expand_hausdorff_prefactor(hp, 6)
for k, c in enumerate(expansion.coefficients):
    print(f"  c_{k} = {c:+.6f}")
print()

print("the q <-> zeta bridge and its limits")
print(f"  zeta=0.5, l0=1   -> q = {q_from_zeta(hp).q}")
print(f"  zeta=1           -> q = {q_from_zeta(HausdorffParams(1.0, 1.0)).q}   (classical both ways)")
print(f"  q=0, l0=1        -> zeta = {zeta_from_q(0.0, 1.0).zeta}   (zeta -> 1 - l0)")
print(f"  zeta=0.5, l0=1e12 -> q = {q_from_zeta(HausdorffParams(0.5, 1e12)).q}  (q -> 1 as l0 -> inf)")
print()

print("the truncation residual is second order in x")
print(f"{'x':>10} {'residual':>14} {'c2*x^2':>14}")
c2 = abs((1 - hp.zeta) * hp.zeta) / (2 * hp.l0**2)
for x in (1e-1, 1e-2, 1e-3, 1e-4):
    agreement = first_order_agreement(hp, x)
    print(f"{x:10.0e} {agreement.residual:14.3e} {c2 * x * x:14.3e}")
print()

print("the Kaniadakis prefactor sqrt(1 + k^2 x^2) expands in even powers only (k=1)")
ke = kappa_expansion(1.0, 8)
for k, c in enumerate(ke.coefficients):
    marker = "" if c else "   (odd -> exactly 0)" if k % 2 else ""
    print(f"  c_{k} = {c:+.6f}{marker}")
print()

print("the Yang local fractional derivative is the Hausdorff derivative")
print("dilated by Gamma(alpha+1):")
for alpha in (0.3, 0.5, 0.9):
    ratio = yang_hausdorff_check(alpha, HausdorffParams(alpha, 1.0), "exp(x)", 0.8)
    print(f"  alpha={alpha}: ratio = {ratio:.15f}, Gamma(alpha+1) = {gamma(alpha + 1):.15f}")
