"""Exact and numeric tools for gamma factors of generalized Selberg zeta functions.

The symbolic side works with integer Laurent polynomials (motives) and
formal products of shifted multiple sine functions; the numeric side
evaluates Hurwitz zeta, multiple gamma and multiple sine functions to
cross-check every identity.
"""

from .barnes import (
    AccuracyRequest,
    EvalResult,
    hurwitz_zeta,
    hurwitz_zeta_ds,
    log_multiple_gamma,
    multiple_sine,
)
from .laurent import (
    DEGENERATE,
    Automorphy,
    TateMotive,
    detect_automorphy,
    divide_exact,
    parse_motive,
    symmetrize,
    vanishing_order_at_one,
)
from .sine_calculus import FormalSineProduct, NormalForm, apply_motive, from_level_poly, is_constant, normal_form
from .spaces import Family, Space, gamma_factor, make_space, rho_sum
from .zeta_engine import Certificate, certify_simple_fe, predicted_reflection

__version__ = "0.1.0"
