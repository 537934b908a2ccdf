"""Deformed exponential/logarithm pairs.

The q-exponential [1 + (1-q) x]^(1/(1-q)) solves dy/dx = y^q and reduces to
exp(x) at q = 1; below its support it is cut off to 0.  The kappa-exponential
(kx + sqrt(1 + k^2 x^2))^(1/k) is the corresponding object of the
kappa-deformed algebra and is even in kappa.
"""

import numpy as np

from defcalc import kappa_exp, kappa_log, q_exp, q_log

xs = np.linspace(-2.0, 2.0, 9)

print("q-exponential for several entropic indices")
print(f"{'x':>6} {'q=0.5':>12} {'q=1':>12} {'q=1.5':>12} {'q=2':>12}")
for x in xs:
    row = [q_exp(float(x), q) for q in (0.5, 1.0, 1.5, 2.0)]
    print(f"{x:6.2f} " + " ".join(f"{v:12.6f}" for v in row))
print("note the cutoff: q=0.5 vanishes once 1 + 0.5 x <= 0 (x <= -2),")
print("and q=2 vanishes past its pole at x = 1.\n")

print("kappa-exponential is even in kappa")
for x in (0.5, 1.0, 2.0):
    a = kappa_exp(x, 0.7)
    b = kappa_exp(x, -0.7)
    print(f"  x={x}: kappa=+0.7 -> {a:.12f}, kappa=-0.7 -> {b:.12f}")
print()

print("logarithms invert their exponentials")
for q in (0.3, 0.7, 1.0, 1.3):
    x = 1.25
    print(f"  q={q}: q_log(q_exp({x})) = {q_log(q_exp(x, q), q):.15f}")
for kappa in (0.0, 0.5, 1.0):
    x = 1.25
    print(f"  kappa={kappa}: kappa_log(kappa_exp({x})) = {kappa_log(kappa_exp(x, kappa), kappa):.15f}")
