"""Characteristic-replacement iteration for conjugate models.

For the beta-binomial model, a prior characteristic (alpha - a)/(alpha + beta - b)
is repeatedly re-solved (beta held fixed at beta0, alpha free) so that it equals
the previous posterior mean.  The iteration has a closed form per step and the
limit is (x + a)/(n + b) whenever the contraction ratio

    c = (beta0 - (b - a)) / (beta0 + n - x)

lies in (0, 1).  With a = b = 0 (expectation replaced) the limit is the MLE x/n;
with a = 1, b = 2 (extreme point replaced) it is the uniform-prior Bayes
estimate (x+1)/(n+2).

The same replacement scheme drives four classical conjugate families (Poisson /
gamma, exponential / inverse gamma, normal mean / normal, normal precision /
gamma), where replacing the prior expectation converges to the MLE of each
family.  One hyperparameter is solved per step so that the prior expectation
equals the previous posterior mean; the other is held fixed, mirroring the
beta-binomial convention of pinning beta at a known value.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple, Union

from .types import (
    METHOD_FIXED_POINT,
    BetaPrior,
    BinomialObs,
    Characteristic,
    DegenerateStep,
    Estimate,
    InvalidStats,
    NoConvergence,
)

__all__ = [
    "EXPECTATION",
    "EXTREME_POINT",
    "beta_binomial_posterior_mean",
    "characteristic_limit",
    "IterationTrace",
    "iterate_binomial_characteristic",
    "closed_form_step_estimate",
    "ConjugateFamily",
    "ConjugateModel",
    "SampleStats",
    "prior_mean",
    "conjugate_posterior_mean",
    "conjugate_mle",
    "conjugate_iterative_limit",
]

EXPECTATION = Characteristic(0, 0)
EXTREME_POINT = Characteristic(1, 2)


def beta_binomial_posterior_mean(prior: BetaPrior, obs: BinomialObs):
    """Posterior mean (alpha + x) / (alpha + beta + n) under quadratic loss.

    Arithmetic follows the input types: Fraction hyperparameters give an
    exact Fraction, floats give a float.
    """
    return (prior.alpha + obs.x) / (prior.alpha + prior.beta + obs.n)


def characteristic_limit(char: Characteristic, obs: BinomialObs):
    """Limit of the characteristic-replacement iteration: (x + a) / (n + b)."""
    if not obs.n + char.b > 0:
        raise ValueError("characteristic_limit: n + b must be positive")
    return (obs.x + char.a) / (obs.n + char.b)


@dataclass(frozen=True)
class IterationTrace:
    """Full record of a characteristic-replacement run in exact rationals.

    ``alphas[k]`` is the solved hyperparameter after k replacements (alphas[0]
    is the starting value) and ``estimates[k]`` the posterior mean it yields.
    Every step satisfies the defining relation exactly and is re-checkable:
    (alphas[k+1] - a) / (alphas[k+1] + beta0 - b) == estimates[k].
    """

    char: Characteristic
    obs: BinomialObs
    beta0: Fraction
    alphas: Tuple[Fraction, ...]
    estimates: Tuple[Fraction, ...]

    @property
    def ratio(self) -> Fraction:
        """Contraction ratio c = (beta0 - (b - a)) / (beta0 + n - x)."""
        a, b = Fraction(self.char.a), Fraction(self.char.b)
        return (self.beta0 - (b - a)) / (self.beta0 + self.obs.n - self.obs.x)


def iterate_binomial_characteristic(
    prior: BetaPrior,
    beta0: Union[int, float, Fraction],
    char: Characteristic,
    obs: BinomialObs,
    m: int,
) -> IterationTrace:
    """Run m characteristic replacements for the beta-binomial model, exactly.

    Each step solves the new alpha from
    (alpha' - a) / (alpha' + beta0 - b) = previous posterior mean, then takes
    the posterior mean at alpha'.  All arithmetic is in Fractions (float
    inputs are converted to their exact binary values), so traces can be
    compared coefficient-exactly against the closed form.

    Raises DegenerateStep if any step produces alpha' <= a, which pushes the
    characteristic out of (0, 1).
    """
    if m < 0:
        raise ValueError("iterate_binomial_characteristic: m must be >= 0")
    alpha = Fraction(prior.alpha)
    b0 = Fraction(beta0)
    if b0 <= 0:
        raise ValueError("iterate_binomial_characteristic: beta0 must be positive")
    a, b = Fraction(char.a), Fraction(char.b)
    n, x = obs.n, obs.x

    denom0 = alpha + b0 - b
    if denom0 == 0 or not 0 < (alpha - a) / denom0 < 1:
        raise ValueError(
            "iterate_binomial_characteristic: initial characteristic "
            f"({alpha} - {a}) / ({alpha} + {b0} - {b}) is not in (0, 1)"
        )

    alphas = [alpha]
    estimates = [(alpha + x) / (alpha + b0 + n)]
    for step in range(1, m + 1):
        e = estimates[-1]
        alpha = (a + e * (b0 - b)) / (1 - e)
        if alpha <= a:
            raise DegenerateStep(
                f"step {step}: solved alpha {alpha} <= a {a}; "
                "characteristic left (0, 1)"
            )
        alphas.append(alpha)
        estimates.append((alpha + x) / (alpha + b0 + n))
    return IterationTrace(char, obs, b0, tuple(alphas), tuple(estimates))


def closed_form_step_estimate(
    prior: BetaPrior,
    beta0: Union[int, float, Fraction],
    char: Characteristic,
    obs: BinomialObs,
    m: int,
) -> Fraction:
    """Closed form of the step-m posterior mean, exactly in rationals.

    Two branches: when a = b and x = n the solved hyperparameter grows
    linearly and the estimate is
        (alpha + n + m(a + n)) / (alpha + n + beta0 + m(a + n));
    otherwise it is the geometric form in the contraction ratio c,
        [(alpha+x)(1-c)c^m + (a+x)(1-c^m)]
        / [(alpha+x)(1-c)c^m - (a+x)c^m + n + b].
    """
    if m < 0:
        raise ValueError("closed_form_step_estimate: m must be >= 0")
    alpha = Fraction(prior.alpha)
    b0 = Fraction(beta0)
    a, b = Fraction(char.a), Fraction(char.b)
    n, x = obs.n, obs.x
    if a == b and x == n:
        return (alpha + n + m * (a + n)) / (alpha + n + b0 + m * (a + n))
    c = (b0 - (b - a)) / (b0 + n - x)
    cm = c**m
    num = (alpha + x) * (1 - c) * cm + (a + x) * (1 - cm)
    den = (alpha + x) * (1 - c) * cm - (a + x) * cm + n + b
    return num / den


class ConjugateFamily(Enum):
    POISSON = "poisson"
    EXPONENTIAL = "exponential"
    NORMAL_MEAN = "normal-mean"
    NORMAL_PRECISION = "normal-precision"


@dataclass(frozen=True)
class ConjugateModel:
    """A conjugate sampling/prior pair with its hyperparameters.

    - POISSON: rate lambda with gamma prior (shape beta, rate alpha);
      prior mean beta/alpha.
    - EXPONENTIAL: scale lambda with inverse-gamma prior (shape beta,
      scale alpha); prior mean alpha/(beta-1), so beta > 1 is required.
    - NORMAL_MEAN: mean mu of a normal with known variance sigma0_sq;
      normal prior with mean alpha and standard deviation beta.
    - NORMAL_PRECISION: precision theta of a normal with known mean mu0;
      gamma prior (shape beta, rate alpha).
    """

    family: ConjugateFamily
    alpha: float
    beta: float
    sigma0_sq: Optional[float] = None
    mu0: Optional[float] = None

    def __post_init__(self):
        f = self.family
        if f is ConjugateFamily.POISSON:
            if not (self.alpha > 0 and self.beta > 0):
                raise ValueError("Poisson model: alpha and beta must be positive")
        elif f is ConjugateFamily.EXPONENTIAL:
            if not self.alpha > 0:
                raise ValueError("exponential model: alpha must be positive")
            if not self.beta > 1:
                raise ValueError("exponential model: beta must exceed 1 for the prior mean to exist")
        elif f is ConjugateFamily.NORMAL_MEAN:
            if self.sigma0_sq is None or not self.sigma0_sq > 0:
                raise ValueError("normal-mean model: sigma0_sq must be positive")
            if self.beta < 0:
                raise ValueError("normal-mean model: prior standard deviation must be >= 0")
        elif f is ConjugateFamily.NORMAL_PRECISION:
            if not (self.alpha > 0 and self.beta > 0):
                raise ValueError("normal-precision model: alpha and beta must be positive")
            if self.mu0 is None:
                raise ValueError("normal-precision model: mu0 is required")


@dataclass(frozen=True)
class SampleStats:
    """Sufficient statistics of an i.i.d. sample.

    ``sum_sq_dev`` is the sum of squared deviations from the known mean
    (normal-precision family only).
    """

    n: int
    sum_x: float = 0.0
    sum_sq_dev: Optional[float] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"SampleStats: n must be >= 1, got {self.n}")
        if self.sum_sq_dev is not None and self.sum_sq_dev < 0:
            raise ValueError("SampleStats: sum_sq_dev must be >= 0")


def prior_mean(model: ConjugateModel):
    """Expectation of the model's prior distribution."""
    f = model.family
    if f is ConjugateFamily.POISSON:
        return model.beta / model.alpha
    if f is ConjugateFamily.EXPONENTIAL:
        return model.alpha / (model.beta - 1)
    if f is ConjugateFamily.NORMAL_MEAN:
        return model.alpha
    return model.beta / model.alpha


def conjugate_posterior_mean(model: ConjugateModel, stats: SampleStats):
    """Posterior expectation of the parameter given the sample statistics."""
    f = model.family
    if f is ConjugateFamily.POISSON:
        if stats.sum_x < 0:
            raise InvalidStats("Poisson: sum of observations must be >= 0")
        return (model.beta + stats.sum_x) / (model.alpha + stats.n)
    if f is ConjugateFamily.EXPONENTIAL:
        if stats.sum_x < 0:
            raise InvalidStats("exponential: sum of observations must be >= 0")
        return (model.alpha + stats.sum_x) / (model.beta + stats.n - 1)
    if f is ConjugateFamily.NORMAL_MEAN:
        var = model.beta * model.beta
        return (model.alpha * model.sigma0_sq + stats.sum_x * var) / (
            model.sigma0_sq + stats.n * var
        )
    if stats.sum_sq_dev is None:
        raise InvalidStats("normal-precision: sum_sq_dev is required")
    return (2 * model.beta + stats.n) / (2 * model.alpha + stats.sum_sq_dev)


def conjugate_mle(model: ConjugateModel, stats: SampleStats):
    """Closed-form maximum-likelihood estimate for the model's parameter."""
    f = model.family
    if f is ConjugateFamily.NORMAL_PRECISION:
        if stats.sum_sq_dev is None or stats.sum_sq_dev <= 0:
            raise InvalidStats("normal-precision: MLE needs sum_sq_dev > 0")
        return stats.n / stats.sum_sq_dev
    return stats.sum_x / stats.n


def _solve_prior_mean(model: ConjugateModel, target) -> ConjugateModel:
    # One hyperparameter is free per family: the one whose solve is linear.
    f = model.family
    if f is ConjugateFamily.POISSON:
        return dataclasses.replace(model, beta=model.alpha * target)
    if f is ConjugateFamily.EXPONENTIAL:
        return dataclasses.replace(model, alpha=target * (model.beta - 1))
    if f is ConjugateFamily.NORMAL_MEAN:
        return dataclasses.replace(model, alpha=target)
    return dataclasses.replace(model, beta=model.alpha * target)


def conjugate_iterative_limit(
    model: ConjugateModel,
    stats: SampleStats,
    tol: float = 1e-12,
    max_iter: int = 10**6,
) -> Estimate:
    """Iterate expectation replacement until the posterior mean stabilizes.

    Each step re-solves the free hyperparameter so the prior expectation
    equals the previous posterior mean, then recomputes the posterior mean.
    Converges geometrically to the family's MLE whenever the contraction is
    strict; degenerate configurations that freeze the iteration away from the
    MLE (zero prior variance, zero squared deviation) are rejected up front.
    """
    if tol <= 0:
        raise ValueError("conjugate_iterative_limit: tol must be positive")
    f = model.family
    if f is ConjugateFamily.NORMAL_MEAN and model.beta == 0:
        raise InvalidStats("normal-mean: zero prior variance freezes the iteration at alpha")
    if f is ConjugateFamily.NORMAL_PRECISION and (
        stats.sum_sq_dev is None or stats.sum_sq_dev <= 0
    ):
        raise InvalidStats("normal-precision: iterative limit needs sum_sq_dev > 0")

    est = conjugate_posterior_mean(model, stats)
    for step in range(1, max_iter + 1):
        model = _solve_prior_mean(model, est)
        new = conjugate_posterior_mean(model, stats)
        delta = abs(new - est)
        est = new
        if delta < tol:
            return Estimate(
                value=float(est),
                method=METHOD_FIXED_POINT,
                iterations=step,
                residual=float(delta),
            )
    raise NoConvergence(
        f"no convergence after {max_iter} iterations (last delta {delta:.3e})",
        last_value=float(est),
        residual=float(delta),
        iterations=max_iter,
    )
