"""
Phase growth and critical exponents for power zeros
===================================================

Zeros ``n**beta + i`` thin out (beta > 1) or crowd together (beta < 1)
along the positive axis.  The phase derivative of the Blaschke product
measures that density, and the critical exponents of ``exp(-|x|^alpha)``
majorants follow from it.
"""

import numpy as np

from majorant_lab import limit_exponents, make_sequence, phase, slope_fit

# With crowded zeros the phase derivative follows a power law on each side.
x = np.geomspace(1e3, 1e6, 40)
seq = make_sequence("power-one-sided", beta=0.75)
_, right, _ = phase(seq, x)
_, left, _ = phase(seq, -x)
print(
    f"beta=0.75: slope right {slope_fit(x, right).exponent:+.4f} (1/beta-1 = {1 / 0.75 - 1:+.4f}), "
    f"left {slope_fit(x, left).exponent:+.4f} (1/beta-2 = {1 / 0.75 - 2:+.4f})"
)

# Sparse zeros give isolated peaks of height about 2 at each n**2, so no
# slope exists on the right. The peak heights stay level instead.
seq = make_sequence("power-one-sided", beta=2.0)
peaks = np.arange(30, 300, 30, dtype=float) ** 2
_, d, _ = phase(seq, peaks)
print("beta=2: dphi at n**2 for n = 30..270:", np.array2string(d, precision=3))

# Exponent tables are exact rationals.
from fractions import Fraction as F

for beta in (F(11, 20), F(3, 5), F(2, 3), F(1), F(3, 2), F(3)):
    v = limit_exponents(beta)
    print(f"beta={str(beta):>5}: alpha = alpha_plus = {str(v.alpha):>4}, alpha_minus = {v.alpha_minus}")

# Two-sided zeros: the faster side wins.
print("beta=3, gamma=11/20:", limit_exponents(F(3), F(11, 20)).alpha)
