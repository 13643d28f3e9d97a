"""Iterative Bayes estimation of a success probability from a single small
sample, with an exact-arithmetic verification suite.

The package computes the limit obtained by repeatedly replacing a chosen
characteristic of a prior (its expectation, its mode, ...) with the current
posterior mean until the two coincide.  For a triangle prior on (0, 1) and one
success in one trial, that limit is the reciprocal of the Golden Ratio,
(sqrt(5) - 1) / 2.  Everything the estimator rests on (polynomial identities,
bracket signs, combinatorial lemmas) is checked in exact rational arithmetic.
"""

from .exact import ExactPoly, binomial, integrate_01
from .types import (
    BetaPrior,
    BinomialObs,
    BracketFailure,
    Characteristic,
    DegenerateStep,
    Estimate,
    EstimationError,
    InvalidStats,
    NoConvergence,
    TrianglePrior,
)
from .conjugate import (
    EXPECTATION,
    EXTREME_POINT,
    ConjugateFamily,
    ConjugateModel,
    IterationTrace,
    SampleStats,
    beta_binomial_posterior_mean,
    characteristic_limit,
    closed_form_step_estimate,
    conjugate_iterative_limit,
    conjugate_mle,
    conjugate_posterior_mean,
    iterate_binomial_characteristic,
    prior_mean,
)
from .triangle import (
    GOLDEN_RATIO,
    GOLDEN_RATIO_RECIPROCAL,
    EstimatingPolynomial,
    balance_integral,
    estimating_polynomial,
    fixed_point_iterate,
    geometric_estimate,
    geometric_polynomial,
    negative_binomial_estimate,
    posterior_mean_exact,
    posterior_mean_one_success,
    solve_iterative_bayes,
    triangle_density,
    triangle_posterior_mean,
)
from .identities import IdentityReport, run_all
from .risk import EstimatorSpec, RiskTable, compare, exact_risk, standard_estimators

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "binomial",
    "ExactPoly",
    "integrate_01",
    "BinomialObs",
    "BetaPrior",
    "Characteristic",
    "TrianglePrior",
    "Estimate",
    "EstimationError",
    "DegenerateStep",
    "NoConvergence",
    "BracketFailure",
    "InvalidStats",
    "EXPECTATION",
    "EXTREME_POINT",
    "ConjugateFamily",
    "ConjugateModel",
    "SampleStats",
    "IterationTrace",
    "beta_binomial_posterior_mean",
    "characteristic_limit",
    "closed_form_step_estimate",
    "conjugate_iterative_limit",
    "conjugate_mle",
    "conjugate_posterior_mean",
    "iterate_binomial_characteristic",
    "prior_mean",
    "GOLDEN_RATIO",
    "GOLDEN_RATIO_RECIPROCAL",
    "EstimatingPolynomial",
    "balance_integral",
    "estimating_polynomial",
    "fixed_point_iterate",
    "geometric_estimate",
    "geometric_polynomial",
    "negative_binomial_estimate",
    "posterior_mean_exact",
    "posterior_mean_one_success",
    "solve_iterative_bayes",
    "triangle_density",
    "triangle_posterior_mean",
    "IdentityReport",
    "run_all",
    "EstimatorSpec",
    "RiskTable",
    "compare",
    "exact_risk",
    "standard_estimators",
]
