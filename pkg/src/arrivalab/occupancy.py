"""Capacity-bounded location occupancy: a loss system driven by an arrival trace.

Each arrival is admitted iff the location is below capacity; admitted nodes
draw an i.i.d. holding time and depart when it elapses; blocked arrivals are
dropped (a location is a place, not a waiting line). Events tied on the same
instant are resolved departures-before-arrivals so freed capacity is visible
to the admission decision.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .arrivals import ArrivalTrace
from .distributions import ExponentialParams, ParetoTwoParams
from .errors import DomainError, ParameterError
from .samplers import RngStream, sample_exponential, sample_lomax

__all__ = [
    "INFINITE_HOLD",
    "LocationConfig",
    "OccupancySeries",
    "PeakStats",
    "simulate_occupancy",
    "peak_stats",
    "blocking_fraction",
]

INFINITE_HOLD = "infinite"

_HOLD_SAMPLERS = {
    "exponential": (sample_exponential, ExponentialParams),
    "lomax": (sample_lomax, ParetoTwoParams),
}

HOLDING_FAMILIES = tuple(_HOLD_SAMPLERS) + (INFINITE_HOLD,)


@dataclass(frozen=True)
class LocationConfig:
    """Capacity bound (None = unbounded) and holding-time law."""

    capacity: int | None = None
    holding_family: str = "exponential"
    holding_params: object = None

    def __post_init__(self):
        if self.capacity is not None:
            if not isinstance(self.capacity, (int, np.integer)) or self.capacity < 1:
                raise ParameterError(f"capacity must be a positive integer or None, got {self.capacity!r}")
            object.__setattr__(self, "capacity", int(self.capacity))
        fam = self.holding_family
        if fam == INFINITE_HOLD:
            if self.holding_params is not None:
                raise ParameterError("infinite holding takes no parameters")
            return
        if fam not in _HOLD_SAMPLERS:
            raise ParameterError(f"unknown holding family {fam!r}; expected one of {HOLDING_FAMILIES}")
        _, want = _HOLD_SAMPLERS[fam]
        params = self.holding_params if self.holding_params is not None else want(1.0)
        if not isinstance(params, want):
            raise ParameterError(f"holding family {fam!r} needs {want.__name__}, got {type(params).__name__}")
        object.__setattr__(self, "holding_params", params)


@dataclass(frozen=True)
class OccupancySeries:
    """Step-function node count: breakpoints, counts after each event, totals.

    ``end_time`` is the later of the driving horizon and the final event, so
    time averages cover the whole observed span.
    """

    breakpoints: np.ndarray
    counts: np.ndarray
    admitted: int
    blocked: int
    end_time: float

    def __post_init__(self):
        bp = np.array(self.breakpoints, dtype=float)
        ct = np.array(self.counts, dtype=np.int64)
        bp.flags.writeable = False
        ct.flags.writeable = False
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "counts", ct)
        if bp.shape != ct.shape:
            raise DomainError("breakpoints and counts must have equal length")
        if bp.size and np.any(np.diff(bp) < 0):
            raise DomainError("breakpoints must be nondecreasing")
        if np.any(ct < 0):
            raise DomainError("counts must be nonnegative")

    @property
    def departed(self) -> int:
        final = int(self.counts[-1]) if self.counts.size else 0
        return self.admitted - final


@dataclass(frozen=True)
class PeakStats:
    peak_count: int
    peak_time: float
    mean_occupancy: float


def simulate_occupancy(trace: ArrivalTrace, loc: LocationConfig, r: RngStream) -> OccupancySeries:
    """Run the loss system over a trace; returns the occupancy step series.

    Holding times are drawn from ``r`` one per admission (blocked arrivals
    consume no randomness), so a fixed (trace, config, stream) triple replays
    the same series exactly.
    """
    infinite = loc.holding_family == INFINITE_HOLD
    if not infinite:
        hold_sampler, _ = _HOLD_SAMPLERS[loc.holding_family]
    cap = loc.capacity

    departures: list[float] = []
    breakpoints: list[float] = []
    counts: list[int] = []
    n = admitted = blocked = 0

    def depart_until(t: float) -> None:
        nonlocal n
        while departures and departures[0] <= t:
            dt = heapq.heappop(departures)
            n -= 1
            breakpoints.append(dt)
            counts.append(n)

    for at in trace.times:
        depart_until(float(at))
        if cap is None or n < cap:
            n += 1
            admitted += 1
            if cap is not None and n > cap:  # pragma: no cover - invariant guard
                raise RuntimeError("internal error: capacity exceeded")
            breakpoints.append(float(at))
            counts.append(n)
            if not infinite:
                heapq.heappush(departures, float(at) + hold_sampler(r, loc.holding_params))
        else:
            blocked += 1
    depart_until(math.inf)

    end = max(trace.horizon, breakpoints[-1]) if breakpoints else trace.horizon
    return OccupancySeries(
        np.asarray(breakpoints), np.asarray(counts, dtype=np.int64), admitted, blocked, float(end)
    )


def peak_stats(s: OccupancySeries) -> PeakStats:
    """Peak count, the earliest time it is attained, and the time-weighted mean."""
    if not (np.isfinite(s.end_time) and s.end_time > 0):
        raise DomainError("series spans no time")
    if s.counts.size == 0:
        return PeakStats(0, 0.0, 0.0)
    peak_idx = int(np.argmax(s.counts))
    peak = int(s.counts[peak_idx])
    peak_time = float(s.breakpoints[peak_idx]) if peak > 0 else 0.0
    # integrate the step function: level counts[i] holds on [bp[i], bp[i+1]),
    # zero before the first event, last level runs out to end_time
    edges = np.concatenate([s.breakpoints, [max(s.end_time, s.breakpoints[-1])]])
    area = float(np.sum(s.counts * np.diff(edges)))
    return PeakStats(peak, peak_time, area / s.end_time)


def blocking_fraction(s: OccupancySeries) -> float:
    """Blocked over total arrivals; the congestion measure of the loss system."""
    total = s.admitted + s.blocked
    if total == 0:
        raise DomainError("blocking fraction undefined for a series with no arrivals")
    return s.blocked / total
