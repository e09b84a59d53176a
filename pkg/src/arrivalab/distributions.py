"""Closed-form evaluators for the arrival-model distribution families.

Covers the Poisson count law, the exponential inter-arrival baseline, the
one-parameter Pareto family ``F(x) = 1 - (1 + x)^(-shape)``, the Lomax
(Pareto type II) two-parameter family, a deliberately inconsistent
"shifted CDF / power-law pdf" two-parameter variant kept for comparison,
and the continuity-corrected normal approximation to the Poisson pmf.

All evaluators accept a float or a numpy array for the evaluation point and
return the matching kind. Masses and densities are computed in log space
(log-gamma for factorials) so large counts or means do not overflow, and
survival functions come from their own closed forms rather than ``1 - cdf``
so deep-tail values keep full relative precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, ndtr

from .errors import DomainError, ParameterError

__all__ = [
    "PoissonParams",
    "ExponentialParams",
    "ParetoOneParams",
    "ParetoTwoParams",
    "poisson_pmf",
    "poisson_cdf",
    "exp_pdf",
    "exp_cdf",
    "exp_survival",
    "pareto1_cdf",
    "pareto1_pdf",
    "pareto1_survival",
    "pareto2_cdf_shifted",
    "pareto2_pdf_powerlaw",
    "lomax_cdf",
    "lomax_pdf",
    "lomax_survival",
    "normal_approx_pmf",
]


def _positive_finite(name: str, value) -> float:
    v = float(value)
    if not math.isfinite(v) or v <= 0.0:
        raise ParameterError(f"{name} must be positive and finite, got {value!r}")
    return v


@dataclass(frozen=True)
class PoissonParams:
    """Arrival rate and observation window of the Poisson count law.

    The count over the window has mean ``rate * duration``.
    """

    rate: float
    duration: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "rate", _positive_finite("rate", self.rate))
        object.__setattr__(self, "duration", _positive_finite("duration", self.duration))
        if not math.isfinite(self.rate * self.duration):
            raise ParameterError("rate * duration must be finite")

    @property
    def mean(self) -> float:
        return self.rate * self.duration


@dataclass(frozen=True)
class ExponentialParams:
    """Rate of the exponential law (events per unit time)."""

    rate: float

    def __post_init__(self):
        object.__setattr__(self, "rate", _positive_finite("rate", self.rate))


@dataclass(frozen=True)
class ParetoOneParams:
    """Tail index of the one-parameter Pareto family on [0, inf)."""

    shape: float

    def __post_init__(self):
        object.__setattr__(self, "shape", _positive_finite("shape", self.shape))


@dataclass(frozen=True)
class ParetoTwoParams:
    """Shape (tail index) and scale of the two-parameter families.

    ``shape`` controls tail decay, ``scale`` sets the distribution's scale;
    scale 1 collapses the Lomax family onto the one-parameter Pareto.
    """

    shape: float
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "shape", _positive_finite("shape", self.shape))
        object.__setattr__(self, "scale", _positive_finite("scale", self.scale))


def _as_support(x, what: str, minimum: float = 0.0, strict: bool = False) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    bad = (arr <= minimum) if strict else (arr < minimum)
    if np.any(bad) or np.any(~np.isfinite(arr)):
        op = ">" if strict else ">="
        raise DomainError(f"{what} requires finite x {op} {minimum:g}")
    return arr


def _as_count(n) -> np.ndarray:
    arr = np.asarray(n, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr < 0) or np.any(arr != np.floor(arr)):
        raise DomainError("count argument must be a nonnegative integer")
    return arr


def _like(x, out):
    if np.ndim(x) == 0:
        return float(out)
    return np.asarray(out, dtype=float)


# --- Poisson count law ------------------------------------------------------

def poisson_pmf(n, p: PoissonParams):
    """Probability of exactly ``n`` arrivals over the window.

    ``(m^n e^-m) / n!`` with ``m = rate * duration``, evaluated via
    ``exp(n log m - m - lgamma(n + 1))``.
    """
    k = _as_count(n)
    m = p.mean
    return _like(n, np.exp(k * math.log(m) - m - gammaln(k + 1.0)))


def poisson_cdf(n, p: PoissonParams):
    """Probability of at most ``n`` arrivals: partial sums of the pmf."""
    k = _as_count(n)
    top = int(np.max(k))
    cum = np.cumsum(poisson_pmf(np.arange(top + 1), p))
    # running float sum can overshoot 1 by a few ulp; trim, monotonicity survives
    cum = np.minimum(cum, 1.0)
    return _like(n, cum[k.astype(np.int64)])


# --- exponential baseline ---------------------------------------------------

def exp_pdf(x, p: ExponentialParams):
    """Density ``rate * exp(-rate x)`` on x >= 0."""
    arr = _as_support(x, "exp_pdf")
    return _like(x, p.rate * np.exp(-p.rate * arr))


def exp_cdf(x, p: ExponentialParams):
    """``1 - exp(-rate x)`` on x >= 0."""
    arr = _as_support(x, "exp_cdf")
    return _like(x, -np.expm1(-p.rate * arr))


def exp_survival(x, p: ExponentialParams):
    """Tail probability ``exp(-rate x)``, computed directly."""
    arr = _as_support(x, "exp_survival")
    return _like(x, np.exp(-p.rate * arr))


# --- one-parameter Pareto ---------------------------------------------------

def pareto1_cdf(x, p: ParetoOneParams):
    """``1 - (1 + x)^(-shape)`` on x >= 0."""
    arr = _as_support(x, "pareto1_cdf")
    return _like(x, -np.expm1(-p.shape * np.log1p(arr)))


def pareto1_pdf(x, p: ParetoOneParams):
    """``shape / (1 + x)^(shape + 1)``, the cdf's derivative everywhere on x > 0."""
    arr = _as_support(x, "pareto1_pdf")
    return _like(x, p.shape * np.exp(-(p.shape + 1.0) * np.log1p(arr)))


def pareto1_survival(x, p: ParetoOneParams):
    """Tail probability ``(1 + x)^(-shape)``, direct closed form.

    Stays strictly positive arbitrarily deep into the tail, which is the
    whole point of the heavy-tailed comparison.
    """
    arr = _as_support(x, "pareto1_survival")
    return _like(x, np.exp(-p.shape * np.log1p(arr)))


# --- two-parameter variant kept as written ----------------------------------

def pareto2_cdf_shifted(x, p: ParetoTwoParams):
    """CDF variant ``1 - (shape + x)^(-scale)`` on x >= 0.

    Only a valid CDF on x >= 0 when shape >= 1: below that the expression is
    negative at the origin, so such parameters are rejected rather than
    clamped. Note the roles: here ``shape`` acts as an additive shift and
    ``scale`` as the tail exponent. The companion density
    :func:`pareto2_pdf_powerlaw` is deliberately NOT this function's
    derivative; the pair is retained so the mismatch itself can be checked.
    """
    if p.shape < 1.0:
        raise ParameterError(
            "pareto2_cdf_shifted needs shape >= 1: 1 - (shape + x)**(-scale) "
            f"is negative at x = 0 for shape = {p.shape!r}"
        )
    arr = _as_support(x, "pareto2_cdf_shifted")
    return _like(x, -np.expm1(-p.scale * np.log(p.shape + arr)))


def pareto2_pdf_powerlaw(x, p: ParetoTwoParams):
    """Density variant ``(shape / scale) * (scale / x)^shape`` on x > 0.

    Not the derivative of :func:`pareto2_cdf_shifted` (see there); kept for
    curve comparison only. Diverges as x -> 0 for any positive shape, hence
    the strictly positive domain.
    """
    arr = _as_support(x, "pareto2_pdf_powerlaw", strict=True)
    return _like(x, (p.shape / p.scale) * np.exp(p.shape * (math.log(p.scale) - np.log(arr))))


# --- Lomax: the self-consistent two-parameter family -------------------------

def lomax_survival(x, p: ParetoTwoParams):
    """Tail probability ``(scale / (scale + x))^shape``, direct closed form."""
    arr = _as_support(x, "lomax_survival")
    return _like(x, np.exp(-p.shape * np.log1p(arr / p.scale)))


def lomax_cdf(x, p: ParetoTwoParams):
    """``1 - (scale / (scale + x))^shape``; equals pareto1_cdf at scale 1."""
    arr = _as_support(x, "lomax_cdf")
    return _like(x, -np.expm1(-p.shape * np.log1p(arr / p.scale)))


def lomax_pdf(x, p: ParetoTwoParams):
    """``(shape / scale) * (scale / (scale + x))^(shape + 1)``.

    Exactly the derivative of :func:`lomax_cdf`, unlike the shifted/power-law
    variant pair above.
    """
    arr = _as_support(x, "lomax_pdf")
    return _like(x, (p.shape / p.scale) * np.exp(-(p.shape + 1.0) * np.log1p(arr / p.scale)))


# --- normal approximation to the Poisson pmf ---------------------------------

def normal_approx_pmf(n, p: PoissonParams):
    """Normal mass on [n - 1/2, n + 1/2] with mean and variance ``rate * duration``.

    The continuity-corrected approximation the Poisson pmf approaches as its
    mean grows; poor for small means, which is what makes the comparison
    interesting.
    """
    k = _as_count(n)
    m = p.mean
    s = math.sqrt(m)
    return _like(n, ndtr((k + 0.5 - m) / s) - ndtr((k - 0.5 - m) / s))
