"""Certified numerics for the reciprocal versine 1/(1 - cos x).

The library evaluates every derivative of 1/(1 - cos x) by independent
routes (an exact trig-rational recurrence, a bilateral pole series with
certified truncation, and truncated Taylor jets), computes the sharp
sub/superadditivity bounds from Bernoulli and Euler numbers, and
machine-verifies the function's complete/absolute monotonicity together
with the Fejer cosine-power series identities and the rational series
for pi they imply.

All inexact results are midpoint-radius enclosures: the reported
interval is guaranteed to contain the exact value.
"""

from .ball import DomainError, PiMultiple, PoleProximityError, PrecReal, as_ball, pi_ball
from .bounds import (
    additivity_defect,
    edge_defect,
    edge_pair_sum,
    pole_growth_probe,
    subadditivity_bound,
    superadditivity_bound,
    sweep_simplex,
)
from .derivatives import (
    SeriesEval,
    coversine_deriv_series,
    coversine_deriv_series_upto,
    deriv,
    deriv_at_half_pi,
    deriv_at_half_pi_fraction,
    deriv_at_pi,
    deriv_at_pi_fraction,
    deriv_upto,
)
from .identities import (
    fejer_cosine_closed,
    fejer_cosine_series,
    fejer_sine,
    halfpi_gap_pair,
    pi_series,
    pi_series_coeffs,
    terms_for_accuracy,
)
from .jets import Jet, PrecisionLossWarning, jet_of, jet_variable
from .monotonic import (
    MonotonicityClaim,
    NAMED_CLAIMS,
    ZeroClassification,
    check_monotonic,
    claims_for,
    classify_zeros,
    pi_grid,
)
from .numbers import (
    bernoulli,
    euler,
    odd_sum,
    polygamma,
    polygamma_quarter_gap,
    zeta_even,
)
from .reports import GridReport, canonical_json
from .trigpoly import TrigRational, eval_trig_rational, recip_versine_deriv_exact

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "GridReport",
    "Jet",
    "MonotonicityClaim",
    "NAMED_CLAIMS",
    "PiMultiple",
    "PoleProximityError",
    "PrecReal",
    "PrecisionLossWarning",
    "SeriesEval",
    "TrigRational",
    "ZeroClassification",
    "additivity_defect",
    "as_ball",
    "bernoulli",
    "canonical_json",
    "check_monotonic",
    "claims_for",
    "classify_zeros",
    "coversine_deriv_series",
    "coversine_deriv_series_upto",
    "deriv",
    "deriv_at_half_pi",
    "deriv_at_half_pi_fraction",
    "deriv_at_pi",
    "deriv_at_pi_fraction",
    "deriv_upto",
    "edge_defect",
    "edge_pair_sum",
    "euler",
    "eval_trig_rational",
    "fejer_cosine_closed",
    "fejer_cosine_series",
    "fejer_sine",
    "halfpi_gap_pair",
    "jet_of",
    "jet_variable",
    "odd_sum",
    "pi_ball",
    "pi_grid",
    "pi_series",
    "pi_series_coeffs",
    "pole_growth_probe",
    "polygamma",
    "polygamma_quarter_gap",
    "recip_versine_deriv_exact",
    "subadditivity_bound",
    "superadditivity_bound",
    "sweep_simplex",
    "terms_for_accuracy",
    "zeta_even",
]
