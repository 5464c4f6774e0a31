"""
Canonical products and minimal majorants
========================================

``E_beta = prod (1 - z/(n^beta - i))`` grows like ``exp(c |x|^(1/beta))``
on the negative axis.  The product over ``n^2 - i`` has a closed form in
terms of ``sin(pi sqrt(z+i))`` and decays between its zeros, so only the
corrected product with two extra linear factors has ``1/E`` in ``L^2``.
"""

import math

import numpy as np

from majorant_lab import CanonicalProductSpec, canonical_product, minimal_majorant_check, slope_fit
from majorant_lab.constructions import e_circle_closed_form

# Growth of log|E_beta| on the negative axis: exponent 1/beta.
spec = CanonicalProductSpec("E_beta", beta=3.0)
x = np.geomspace(1e3, 1e8, 41)
lm, err = canonical_product(spec, -x)
print(f"E_3: slope of log log|E| = {slope_fit(x, lm).exponent:.4f}, max err {err.max():.2g}")

# Circle product: the truncated product matches the closed form.
circ = CanonicalProductSpec("E_circle", rho=1.0)
pts = np.array([-1e4, -10.0, 2.5, 30.0])
print("product    :", canonical_product(circ, pts)[0])
print("closed form:", e_circle_closed_form(pts))
print(f"log|E(-1e6)| / 1e3 = {canonical_product(circ, -1e6)[0] / 1e3:.5f}   (pi = {math.pi:.5f})")

# Between the zeros k^2 the modulus sits between C/k^2 and C/k.
k = np.arange(1, 1001, dtype=float)
val = np.exp(canonical_product(circ, (k + 0.49) ** 2)[0])
print(f"k^2|E| in [{(k**2 * val).min():.3g}, {(k**2 * val).max():.3g}], k|E| <= {(k * val).max():.3g}")

# The dichotomy: bare product fails, corrected product passes.
for family, W0 in (("E_circle", 1e4), ("E_circle_full", 1.25e5)):
    rep = minimal_majorant_check(CanonicalProductSpec(family, rho=1.0), W0=W0, doublings=3)
    print(f"{family:14s} 1/E in L2: {rep.in_L2}   integrals {[f'{v:.6g}' for v in rep.integrals]}")
