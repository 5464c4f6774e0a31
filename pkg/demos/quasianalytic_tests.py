"""
Tangential zeros and quasianalytic classes
==========================================

Zeros ``n + i y_n`` approaching the real axis.  Whether fast-decaying
majorants survive depends on a series in ``log(1/y_n)`` and, when it
diverges, on a Denjoy-Carleman test for the moment sequence built from
the heights.
"""

import numpy as np
from scipy.special import gammaln

from majorant_lab import carleman_test, tangential_classify
from majorant_lab.admissibility import carleman_log_T, moment_bounds_from_heights

for law, one_sided in (("inverse-square", False), ("exp", False), ("exp-sqrt", False), ("exp-sqrt", True)):
    v = tangential_classify(law, one_sided=one_sided)
    side = "one-sided" if one_sided else "two-sided"
    print(f"{law:15s} {side:9s} -> {v.regime:22s} summand slope {v.summand_slope}")

# log T(r) = sup_k (k log r - log A_k) through the convex hull of log A_k.
for name, log_A in (
    ("k!", gammaln(np.arange(2001) + 1.0)),
    ("(k!)^2", 2 * gammaln(np.arange(10001) + 1.0)),
    ("heights e^-n", moment_bounds_from_heights("exp", 500, n_max=10**5)),
):
    res = carleman_test(log_A=log_A)
    r = np.array([10.0, 100.0, 1000.0])
    print(f"{name:12s} log T at {r} = {np.round(carleman_log_T(log_A, r), 2)}  divergent={res.divergent}")
