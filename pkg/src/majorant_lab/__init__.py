"""Numerical toolkit for admissible majorants in model spaces of Blaschke products."""

from .zeros import ZeroSequence, carleson_constant, make_sequence, sequence_from_kv
from .blaschke import blaschke_eval, kernel_norm_sq, log_modulus_lower_half, phase, phase_grid, pointwise_bound_check
from .transforms import (
    MajorantProfile,
    halfline_integral,
    hilbert,
    hilbert_derivative,
    legendre,
    log_integral,
    one_sided_smooth,
    smooth_log,
)
from .constructions import (
    CanonicalProductSpec,
    CoefficientSequence,
    canonical_product,
    kb_series_eval,
    legendre_decay_bound,
    minimal_majorant_check,
    moment_vanishing,
    product_function,
)
from .admissibility import (
    carleman_test,
    density_constants,
    inclusion_check,
    limit_exponents,
    mainly_increasing_check,
    sufficiency_pipeline,
    tangential_classify,
    wstar_lower_bound,
)
from .conformal import eta, eta_inverse, fit_eta_params
from .fitting import slope_fit

__version__ = "0.1.0"
