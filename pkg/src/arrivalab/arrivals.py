"""Arrival traces: renewal processes with i.i.d. gaps on a finite horizon.

Exponential gaps recover the Poisson counting process exactly; Pareto/Lomax
gaps give the heavy-tailed, bursty alternative. A trace stores its own
provenance (family, params, seed, stream id) so it can be regenerated bit
for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import ExponentialParams, ParetoOneParams, ParetoTwoParams
from .errors import DomainError, ParameterError
from .samplers import RngStream, sample_exponential, sample_lomax, sample_pareto1

__all__ = ["ArrivalTrace", "generate_trace", "regenerate_trace", "count_in_window", "fixed_trace"]

_GAP_SAMPLERS = {
    "exponential": (sample_exponential, ExponentialParams),
    "pareto1": (sample_pareto1, ParetoOneParams),
    "lomax": (sample_lomax, ParetoTwoParams),
}

FAMILIES = tuple(_GAP_SAMPLERS)

_BLOCK = 1024


@dataclass(frozen=True)
class ArrivalTrace:
    """Strictly increasing arrival instants in [0, horizon], plus provenance."""

    times: np.ndarray
    horizon: float
    family: str
    params: object
    seed: int = 0
    stream_id: int = 0

    def __post_init__(self):
        times = np.array(self.times, dtype=float)  # own copy, then frozen
        times.flags.writeable = False
        object.__setattr__(self, "times", times)
        if not (np.isfinite(self.horizon) and self.horizon > 0):
            raise DomainError(f"horizon must be positive and finite, got {self.horizon!r}")
        if times.size:
            if times[0] <= 0 or times[-1] > self.horizon:
                raise DomainError("arrival times must lie in (0, horizon]")
            if np.any(np.diff(times) <= 0):
                raise DomainError("arrival times must be strictly increasing")

    def __len__(self) -> int:
        return int(self.times.size)


def generate_trace(family: str, params, horizon: float, r: RngStream) -> ArrivalTrace:
    """Cumulative sums of i.i.d. gaps, truncated at the horizon.

    May be empty when the first gap already exceeds the horizon, a valid
    outcome and a common one for heavy-tailed gaps.
    """
    if family not in _GAP_SAMPLERS:
        raise ParameterError(f"unknown arrival family {family!r}; expected one of {FAMILIES}")
    sampler, want = _GAP_SAMPLERS[family]
    if not isinstance(params, want):
        raise ParameterError(f"family {family!r} needs {want.__name__}, got {type(params).__name__}")
    if not (np.isfinite(horizon) and horizon > 0):
        raise DomainError(f"horizon must be positive and finite, got {horizon!r}")

    chunks = []
    offset = 0.0
    while True:
        gaps = sampler(r, params, size=_BLOCK)
        cs = offset + np.cumsum(gaps)
        keep = int(np.searchsorted(cs, horizon, side="right"))
        chunks.append(cs[:keep])
        if keep < _BLOCK:
            break
        offset = float(cs[-1])
    times = np.concatenate(chunks) if chunks else np.empty(0)
    times = _enforce_strict_increase(times, horizon)
    return ArrivalTrace(times, float(horizon), family, params, r.seed, r.stream_id)


def regenerate_trace(trace: ArrivalTrace) -> ArrivalTrace:
    """Rebuild a trace from its stored provenance; equal to the original."""
    if trace.family == "fixed":
        return fixed_trace(trace.times, trace.horizon)
    return generate_trace(
        trace.family, trace.params, trace.horizon, RngStream(trace.seed, trace.stream_id)
    )


def fixed_trace(times, horizon: float | None = None) -> ArrivalTrace:
    """Literal trace from explicit arrival instants (fixtures, replays)."""
    arr = np.asarray(list(times), dtype=float)
    if horizon is None:
        if arr.size == 0:
            raise DomainError("fixed_trace needs a horizon when no times are given")
        horizon = float(arr[-1])
    return ArrivalTrace(arr, float(horizon), "fixed", None)


def count_in_window(trace: ArrivalTrace, t0: float, t1: float) -> int:
    """Arrivals in the half-open window (t0, t1].

    Half-open windows make counts additive over adjacent windows with no
    double counting.
    """
    if not (0.0 <= t0 < t1 <= trace.horizon):
        raise DomainError(
            f"window must satisfy 0 <= t0 < t1 <= horizon, got ({t0!r}, {t1!r}] "
            f"with horizon {trace.horizon!r}"
        )
    hi = int(np.searchsorted(trace.times, t1, side="right"))
    lo = int(np.searchsorted(trace.times, t0, side="right"))
    return hi - lo


def _enforce_strict_increase(times: np.ndarray, horizon: float) -> np.ndarray:
    # a sub-ulp gap can vanish in the cumulative sum; bump the later time by
    # one ulp (and truncate in the vanishing chance that pushes past the horizon)
    if times.size < 2 or not np.any(np.diff(times) <= 0):
        return times
    out = times.copy()
    for i in range(1, out.size):
        if out[i] <= out[i - 1]:
            out[i] = np.nextafter(out[i - 1], np.inf)
            if out[i] > horizon:
                return out[:i]
    return out
