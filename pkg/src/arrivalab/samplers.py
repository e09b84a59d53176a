"""Deterministic, seedable variate generation for every family.

Continuous families are sampled by inverse transform; Poisson counts are
sampled exactly (product of uniforms for small means, sequential-search
inversion in log space above). Randomness comes from :class:`RngStream`, a
counter-based Philox generator keyed by ``(seed, stream_id)``: identical keys
replay identical sequences bit for bit, distinct stream ids give independent
streams that can be handed to parallel replications.
"""

from __future__ import annotations

import math

import numpy as np

from .distributions import (
    ExponentialParams,
    ParetoOneParams,
    ParetoTwoParams,
    PoissonParams,
)
from .errors import ParameterError

__all__ = [
    "RngStream",
    "exponential_from_uniform",
    "pareto1_from_uniform",
    "lomax_from_uniform",
    "sample_exponential",
    "sample_pareto1",
    "sample_lomax",
    "sample_poisson_count",
]

_U64_MAX = 2**64
# mean above which the Poisson sampler switches from product-of-uniforms
# to sequential-search inversion
_POISSON_PRODUCT_LIMIT = 30.0


class RngStream:
    """Replayable uniform source: Philox keyed by ``(seed, stream_id)``.

    Uniforms are 53-bit midpoints ``(k + 1/2) / 2**53`` and therefore lie
    strictly inside (0, 1): inverse transforms never see 0 or 1, so every
    continuous variate is finite and strictly positive.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        for name, value in (("seed", seed), ("stream_id", stream_id)):
            if not isinstance(value, (int, np.integer)) or not 0 <= value < _U64_MAX:
                raise ParameterError(f"{name} must be an unsigned 64-bit integer, got {value!r}")
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        key = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        self._gen = np.random.Generator(np.random.Philox(key))

    def uniform_open(self, size=None):
        """Uniform draw(s) on the open interval (0, 1)."""
        k = self._gen.integers(0, 1 << 53, size=size, dtype=np.uint64)
        u = (k.astype(np.float64) + 0.5) * 2.0**-53
        if size is None:
            return float(u)
        return u

    def clone(self) -> "RngStream":
        """Fresh stream at the start of the same (seed, stream_id) sequence."""
        return RngStream(self.seed, self.stream_id)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


# --- inverse transforms (pure, unit-testable against closed forms) -----------

def exponential_from_uniform(u, p: ExponentialParams):
    """Map uniform u in (0, 1) to an exponential variate ``-ln(u) / rate``."""
    return -np.log(u) / p.rate


def pareto1_from_uniform(u, p: ParetoOneParams):
    """Map uniform u in (0, 1) to ``u**(-1/shape) - 1``.

    Inverts the one-parameter CDF: u -> 0 gives the deep tail, u -> 1 gives
    the support infimum 0.
    """
    return np.power(u, -1.0 / p.shape) - 1.0


def lomax_from_uniform(u, p: ParetoTwoParams):
    """Map uniform u in (0, 1) to ``scale * (u**(-1/shape) - 1)``."""
    return p.scale * (np.power(u, -1.0 / p.shape) - 1.0)


# --- samplers ----------------------------------------------------------------

def sample_exponential(r: RngStream, p: ExponentialParams, size=None):
    """Exponential variate(s), strictly positive."""
    x = exponential_from_uniform(r.uniform_open(size), p)
    return float(x) if size is None else x


def sample_pareto1(r: RngStream, p: ParetoOneParams, size=None):
    """One-parameter Pareto variate(s), strictly positive."""
    x = pareto1_from_uniform(r.uniform_open(size), p)
    return float(x) if size is None else x


def sample_lomax(r: RngStream, p: ParetoTwoParams, size=None):
    """Lomax variate(s); at scale 1 identical draws to :func:`sample_pareto1`."""
    x = lomax_from_uniform(r.uniform_open(size), p)
    return float(x) if size is None else x


def sample_poisson_count(r: RngStream, p: PoissonParams, size=None):
    """Exact Poisson count(s) with mean ``rate * duration``.

    Means up to 30 use the product-of-uniforms method; larger means use
    inversion by sequential search over the cumulative masses, accumulated
    through a log-space pmf recurrence so the walk stays finite even when
    ``exp(-mean)`` underflows. Both branches draw exactly from the count law,
    so nothing distributional depends on the switch.
    """
    m = p.mean
    if size is None:
        counts = (
            _poisson_product(r, m, 1)
            if m <= _POISSON_PRODUCT_LIMIT
            else _poisson_inverse(r, m, 1)
        )
        return int(counts[0])
    if m <= _POISSON_PRODUCT_LIMIT:
        return _poisson_product(r, m, int(size))
    return _poisson_inverse(r, m, int(size))


def _poisson_product(r: RngStream, m: float, count: int) -> np.ndarray:
    # multiply uniforms until the running product drops below exp(-m);
    # the number of factors minus one is the count
    limit = math.exp(-m)
    out = np.zeros(count, dtype=np.int64)
    prod = np.ones(count, dtype=np.float64)
    active = np.arange(count)
    while active.size:
        prod[active] *= r.uniform_open(active.size)
        still = prod[active] > limit
        out[active[still]] += 1
        active = active[still]
    return out


def _poisson_inverse(r: RngStream, m: float, count: int) -> np.ndarray:
    u = r.uniform_open(count)
    umax = float(np.max(u))
    logm = math.log(m)
    logp = -m
    cum = [math.exp(logp)]
    total = cum[0]
    k = 0
    while total < umax:
        k += 1
        logp += logm - math.log(k)
        q = math.exp(logp)
        total += q
        cum.append(total)
        if q == 0.0 and k > m:
            # tail mass below the float floor; remaining u (< 2**-53 away
            # from 1) land on the last representable count
            break
    table = np.asarray(cum)
    idx = np.searchsorted(table, u, side="left")
    return np.minimum(idx, len(cum) - 1).astype(np.int64)
