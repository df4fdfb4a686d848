"""Ratios of Laplace transforms of powers of a function.

The library computes the ratio L{f^n}/L{f^m} of Laplace transforms of
pointwise powers of a function f, expands it at infinity, recovers the
Taylor coefficients of f back from such a ratio, and applies the same
machinery to the top-two-bids auction model where f is the idiosyncratic
bid distribution.
"""

from .algebra import Jet, Poly, Rational, Series, as_rational, beta_rational, convolve, jet_poly_pow
from .auction import (
    AuctionModel,
    DistSpec,
    Exponential,
    Lognormal,
    McConfig,
    PointMass,
    Shifted,
    auction_identify,
    h_from_k,
    k_analytic_exponential,
    k_from_h,
    k_monte_carlo,
    k_quadrature,
    memoryless_check,
    order_stat_cdfs,
    simulate_bids,
)
from .identify import (
    IdentifyResult,
    IdentifyState,
    RatioSpec,
    identify,
    infer_order,
    leading_coefficient,
    next_coefficient,
    pivot_value,
    verify_identity,
)
from .transforms import (
    PiecewisePoly,
    RatioExpansion,
    RationalFunction,
    convolution_residual,
    delay,
    laplace_piecewise,
    laplace_poly,
    ratio_eval_piecewise,
    ratio_expansion,
    ratio_rational,
    shift_vanishing,
    sin_maclaurin,
    sin_ratio_check,
    step_example,
)

__all__ = [
    "AuctionModel",
    "DistSpec",
    "Exponential",
    "IdentifyResult",
    "IdentifyState",
    "Jet",
    "Lognormal",
    "McConfig",
    "PiecewisePoly",
    "PointMass",
    "Poly",
    "Rational",
    "RatioExpansion",
    "RationalFunction",
    "RatioSpec",
    "Series",
    "Shifted",
    "as_rational",
    "auction_identify",
    "beta_rational",
    "convolution_residual",
    "convolve",
    "delay",
    "h_from_k",
    "identify",
    "infer_order",
    "jet_poly_pow",
    "k_analytic_exponential",
    "k_from_h",
    "k_monte_carlo",
    "k_quadrature",
    "laplace_piecewise",
    "laplace_poly",
    "leading_coefficient",
    "memoryless_check",
    "next_coefficient",
    "order_stat_cdfs",
    "pivot_value",
    "ratio_eval_piecewise",
    "ratio_expansion",
    "ratio_rational",
    "shift_vanishing",
    "simulate_bids",
    "sin_maclaurin",
    "sin_ratio_check",
    "step_example",
    "verify_identity",
]

__version__ = "0.1.0"
