"""
The half-strip map and one-sided smoothing
==========================================

``eta`` maps the upper half-plane onto the plane minus the half-strip
``{Re w >= 0, -2 <= Im w <= 0}``.  Together with the conjugate of the
iterated profile ``U2`` it turns one-sided growth into a two-sided
majorant estimate.
"""

import numpy as np

from majorant_lab import eta, eta_inverse, fit_eta_params, hilbert_derivative, one_sided_smooth, slope_fit

p = fit_eta_params()
print(f"a2 = {p.a2:.12f}; corners: eta(0) = {eta(p, 0j)}, eta({p.vertex}) = {eta(p, complex(p.vertex)):.6g}")

# Real line to boundary: upper edge for t > 0, slit for -1 < t < 0, lower edge beyond.
for t in (5.0, 0.5, -0.5, -5.0):
    print(f"  eta({t:+.1f}) = {eta(p, complex(t)):.6g}")

# The negative axis pulls back into the sector Im z >= |Re z|.
z = eta_inverse(p, -np.geomspace(1, 1e6, 4) + 0j)
print("preimages of the negative axis:", np.round(z, 3))

# Conjugate of U2: its derivative decays like |x|^(alpha-1).
x = np.geomspace(1e2, 1e5, 10)
for alpha in (0.3, 0.7):
    s = one_sided_smooth(alpha)
    d = hilbert_derivative(s.U2, x, threads=4)
    print(f"alpha={alpha}: K={s.K:.4g} M={s.M:.4g}  slope of |H[U2]'| = {slope_fit(x, np.abs(d)).exponent:.4f}")
