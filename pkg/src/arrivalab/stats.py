"""Empirical validation tools: ECDF, one-sample KS distance, nearest-rank
quantiles, curve crossover location, and the Poisson-vs-normal error gauge.

The KS distance is used descriptively against the fixed 1% critical value
``1.63 / sqrt(n)``; this is a fitness gauge, not a hypothesis-testing
framework.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distributions import PoissonParams, normal_approx_pmf, poisson_pmf
from .errors import DomainError

__all__ = [
    "KS_CRITICAL_1PCT",
    "EmpiricalSample",
    "empirical_cdf",
    "ks_statistic",
    "ks_critical_value",
    "sample_quantile",
    "crossover_point",
    "normal_approx_error",
]

# one-sample KS critical value at the 1% level is KS_CRITICAL_1PCT / sqrt(n)
KS_CRITICAL_1PCT = 1.63


def ks_critical_value(n: int) -> float:
    return KS_CRITICAL_1PCT / math.sqrt(n)


@dataclass(frozen=True)
class EmpiricalSample:
    """Sorted nonnegative observations plus generation provenance."""

    values: np.ndarray
    family: str = ""
    params: object = None
    seed: int | None = None

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        if vals.size < 1:
            raise DomainError("empirical sample must hold at least one value")
        if np.any(vals < 0) or np.any(~np.isfinite(vals)):
            raise DomainError("empirical sample values must be finite and nonnegative")
        if np.any(np.diff(vals) < 0):
            raise DomainError("empirical sample must be sorted ascending")

    @classmethod
    def from_values(cls, values, family: str = "", params=None, seed: int | None = None):
        """Sort raw draws into a sample."""
        return cls(np.sort(np.asarray(values, dtype=float)), family, params, seed)

    def __len__(self) -> int:
        return int(self.values.size)


def empirical_cdf(s: EmpiricalSample, x):
    """Fraction of observations <= x; right-continuous step function."""
    pos = np.searchsorted(s.values, np.asarray(x, dtype=float), side="right")
    out = pos / len(s)
    if np.ndim(x) == 0:
        return float(out)
    return out


def ks_statistic(s: EmpiricalSample, cdf) -> float:
    """One-sample KS distance ``sup |ECDF - F|`` against an analytic CDF.

    Evaluated at the sorted sample points, where the supremum of the
    difference against a continuous F is attained.
    """
    xs = s.values
    n = xs.size
    try:
        fx = np.asarray(cdf(xs), dtype=float)
        if fx.shape != xs.shape:
            raise TypeError
    except (TypeError, ValueError):  # scalar-only callable
        fx = np.array([float(cdf(v)) for v in xs])
    i = np.arange(1, n + 1, dtype=float)
    return float(max(np.max(i / n - fx), np.max(fx - (i - 1.0) / n)))


def sample_quantile(s: EmpiricalSample, q: float) -> float:
    """Nearest-rank quantile: deterministic, interpolation-free."""
    if not 0.0 < q < 1.0:
        raise DomainError(f"quantile level must lie strictly in (0, 1), got {q!r}")
    rank = math.ceil(q * len(s))
    return float(s.values[max(rank - 1, 0)])


def crossover_point(f, g, lo: float, hi: float, grid: int = 2048, tol: float = 1e-9):
    """Smallest x in [lo, hi] where f(x) >= g(x), or None if f stays below.

    Grid scan to bracket the first sign change of f - g, then bisection to
    absolute tolerance ``tol``. If f >= g already at ``lo`` the interval
    start is returned at once.
    """
    if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
        raise DomainError(f"need a finite interval with lo < hi, got [{lo!r}, {hi!r}]")
    if f(lo) >= g(lo):
        return float(lo)
    xs = np.linspace(lo, hi, grid + 1)
    a = float(lo)
    b = None
    for x in xs[1:]:
        x = float(x)
        if f(x) >= g(x):
            b = x
            break
        a = x
    if b is None:
        return None
    while b - a > tol:
        mid = 0.5 * (a + b)
        if f(mid) >= g(mid):
            b = mid
        else:
            a = mid
    return float(b)


def normal_approx_error(p: PoissonParams) -> float:
    """Largest pointwise gap between the Poisson pmf and its normal-mass
    approximation over counts up to mean + 10 standard deviations."""
    m = p.mean
    ns = np.arange(0, int(math.ceil(m + 10.0 * math.sqrt(m))) + 1)
    return float(np.max(np.abs(poisson_pmf(ns, p) - normal_approx_pmf(ns, p))))
