"""The operator family side by side.

Every closed form is a prefactor times f'(x); each limit-quotient form
evaluates the defining difference quotient on a halving probe sequence with
Richardson extrapolation and agrees with its closed form to high accuracy.
"""

import numpy as np

from defcalc import (
    HausdorffParams,
    RealFunction,
    classical_derivative,
    conformable_derivative,
    gl_jumarie_derivative,
    hausdorff_derivative,
    hausdorff_quotient,
    kaniadakis_derivative,
    q_derivative,
    q_derivative_quotient,
    rl_power_rule,
    yang_lfd,
)

f = RealFunction.from_expression("sin(x)*exp(x/2)")
hp = HausdorffParams(zeta=0.5, l0=1.0)

print(f"operators applied to f(x) = {f.label}")
header = f"{'x':>5} {'classical':>12} {'q=0.5':>12} {'kappa=0.5':>12} {'hausdorff':>12} {'conformable':>12} {'yang a=0.5':>12}"
print(header)
for x in np.linspace(0.2, 2.0, 7):
    x = float(x)
    row = (
        classical_derivative(f, x),
        q_derivative(f, x, 0.5),
        kaniadakis_derivative(f, x, 0.5),
        hausdorff_derivative(f, x, hp),
        conformable_derivative(f, x, 0.5),
        yang_lfd(f, x, 0.5, hp),
    )
    print(f"{x:5.2f} " + " ".join(f"{v:12.6f}" for v in row))
print()

print("closed form vs limit quotient (q = 0.5)")
for x in (0.3, 1.0, 1.7):
    closed = q_derivative(f, x, 0.5)
    quotient = q_derivative_quotient(f, x, 0.5)
    print(f"  x={x}: closed {closed:.12f}  quotient {quotient:.12f}  diff {abs(closed-quotient):.2e}")
print()

print("derivative against the fractal measure coordinate x^zeta (zeta = 0.5)")
for x in (0.5, 1.0, 2.0):
    value = hausdorff_quotient(f, x, 0.5)
    chain = x**0.5 * f.derivative(x) / 0.5
    print(f"  x={x}: quotient {value:.10f}  chain rule {chain:.10f}")
print()

print("Grunwald-Letnikov chain converges to the fractional power rule (alpha = 0.5)")
g = RealFunction.from_expression("x^2")
exact = rl_power_rule(2.0, 0.5, 1.0)
for h in (1e-2, 1e-3, 1e-4):
    approx = gl_jumarie_derivative(g, 1.0, 0.5, h)
    print(f"  h={h:.0e}: {approx:.8f}  (exact {exact:.8f}, rel err {abs(approx-exact)/exact:.2e})")
