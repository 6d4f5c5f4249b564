"""Partition-based valuation of paths under function-backed metrics.

Cost metrics are valuated from below (partition sums only grow under
refinement), gain metrics from above; dyadic refinement produces a monotone
trace whose last entry is the reported one-sided bound.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np

from .errors import InvariantError
from .extreal import (
    MINUS_INF,
    PLUS_INF,
    ZERO,
    ExtReal,
    add_cost,
    add_gain,
    from_json as ext_from_json,
    to_json as ext_to_json,
)
from .finspace import SpaceKind

# Slack absorbing float re-association noise in the monotonicity assertion.
_MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class MetricFunction:
    """A two-point metric of cost (RHO) or gain (GAMMA) kind."""

    kind: SpaceKind
    fn: Callable[[Any, Any], ExtReal]
    name: str = ""

    def __post_init__(self):
        if self.kind is SpaceKind.DELTA:
            raise ValueError("MetricFunction kind must be RHO or GAMMA")

    def __call__(self, a, b) -> ExtReal:
        return self.fn(a, b)


def _as_point(p):
    if isinstance(p, (int, float)):
        return float(p)
    arr = np.asarray(p, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PolylinePath:
    """Sampled path: strictly increasing parameters 0 = t0 < ... < tp = 1
    with one point per parameter."""

    params: tuple[float, ...]
    points: tuple[Any, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.params) != len(self.points):
            raise ValueError("params and points must have equal length")
        if len(self.params) < 2:
            raise ValueError("a path needs at least two samples")
        if self.params[0] != 0.0 or self.params[-1] != 1.0:
            raise ValueError("path parameters must start at 0 and end at 1")
        if any(a >= b for a, b in zip(self.params, self.params[1:])):
            raise ValueError("path parameters must be strictly increasing")

    @classmethod
    def of(cls, params, points) -> "PolylinePath":
        """Normalize and build: exact repeated parameters are collapsed
        (keeping the first sample), remaining parameters must increase."""
        params = [float(t) for t in params]
        points = [_as_point(p) for p in points]
        if len(params) != len(points):
            raise ValueError("params and points must have equal length")
        kept_t, kept_p = [], []
        for t, p in zip(params, points):
            if kept_t and t == kept_t[-1]:
                continue
            kept_t.append(t)
            kept_p.append(p)
        return cls(tuple(kept_t), tuple(kept_p))

    def __len__(self) -> int:
        return len(self.params)

    def at(self, t: float):
        """Piecewise-linear interpolation at parameter t in [0, 1]."""
        if not 0.0 <= t <= 1.0:
            raise ValueError("parameter out of [0, 1]")
        i = bisect_right(self.params, t) - 1
        if i >= len(self.params) - 1:
            return self.points[-1]
        t0, t1 = self.params[i], self.params[i + 1]
        w = (t - t0) / (t1 - t0)
        return (1.0 - w) * self.points[i] + w * self.points[i + 1]

    def point_array(self) -> np.ndarray:
        """Points stacked as a (samples, dim) float array."""
        return np.atleast_2d(np.vstack([np.atleast_1d(p) for p in self.points]))

    @classmethod
    def from_json(cls, doc) -> "PolylinePath":
        if not isinstance(doc, dict) or "params" not in doc or "points" not in doc:
            raise ValueError('path document must carry "params" and "points"')
        return cls.of(doc["params"], doc["points"])

    def to_json(self) -> dict:
        pts = []
        for p in self.points:
            if isinstance(p, float):
                pts.append(p)
            else:
                pts.append([float(c) for c in np.atleast_1d(p)])
        return {"params": list(self.params), "points": pts}


def partition_sum(metric: MetricFunction, path: PolylinePath, partition: Sequence[int]) -> ExtReal:
    """Sum of metric values over consecutive partition samples.

    The partition is a strictly increasing index subsequence that must
    contain the first and last sample.
    """
    idx = list(partition)
    if not idx or idx[0] != 0 or idx[-1] != len(path) - 1:
        raise ValueError("partition must contain the first and last sample")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError("partition indices must be strictly increasing")
    if idx[0] < 0 or idx[-1] >= len(path):
        raise ValueError("partition index out of range")
    gain = metric.kind is SpaceKind.GAMMA
    add = add_gain if gain else add_cost
    absorb = MINUS_INF if gain else PLUS_INF
    total = ZERO
    for a, b in zip(idx, idx[1:]):
        total = add(total, metric(path.points[a], path.points[b]))
        if total == absorb:
            return absorb
    return total


@dataclass(frozen=True)
class ValuationTrace:
    """Dyadic refinement trace; sums[l] is the partition sum at level l."""

    estimate: ExtReal
    sums: tuple[ExtReal, ...]

    def to_json(self) -> list:
        return [{"level": i, "sum": ext_to_json(s)} for i, s in enumerate(self.sums)]

    @classmethod
    def from_json(cls, doc) -> "ValuationTrace":
        sums = tuple(ext_from_json(item["sum"]) for item in doc)
        return cls(sums[-1], sums)


def _monotone_ok(prev: ExtReal, cur: ExtReal, gain: bool) -> bool:
    if gain:
        lo, hi = cur, prev
    else:
        lo, hi = prev, cur
    if lo <= hi:
        return True
    if lo.is_finite and hi.is_finite:
        slack = _MONOTONE_SLACK * max(1.0, abs(lo.to_float()), abs(hi.to_float()))
        return lo.to_float() <= hi.to_float() + slack
    return False


def refine_valuation(
    metric: MetricFunction, path: Callable[[float], Any], levels: int
) -> ValuationTrace:
    """Partition sums at dyadic partitions of size 2^l + 1 for l = 0..levels.

    The trace must be nondecreasing for cost metrics and nonincreasing for
    gain metrics (checked; a failure means the metric violates its axioms).
    Once an absorbing infinity appears it is final and later levels are not
    evaluated.
    """
    if levels < 1:
        raise ValueError("at least one refinement level is required")
    gain = metric.kind is SpaceKind.GAMMA
    add = add_gain if gain else add_cost
    absorb = MINUS_INF if gain else PLUS_INF
    sums: list[ExtReal] = []
    for lvl in range(levels + 1):
        if sums and sums[-1] == absorb:
            sums.append(absorb)
            continue
        k = 1 << lvl
        pts = [path(i / k) for i in range(k + 1)]
        total = ZERO
        for a, b in zip(pts, pts[1:]):
            total = add(total, metric(a, b))
            if total == absorb:
                break
        if sums and not _monotone_ok(sums[-1], total, gain):
            direction = "nonincreasing" if gain else "nondecreasing"
            raise InvariantError(
                f"refinement trace is not {direction} at level {lvl}: "
                f"{sums[-1]} -> {total}"
            )
        sums.append(total)
    return ValuationTrace(sums[-1], tuple(sums))


def delta_line() -> MetricFunction:
    """Forward-only line metric: x' - x when x <= x', +inf otherwise."""

    def d(x, x_prime):
        x, x_prime = float(x), float(x_prime)
        return ExtReal(x_prime - x) if x <= x_prime else PLUS_INF

    return MetricFunction(SpaceKind.RHO, d, "delta-line")


def rho_line() -> MetricFunction:
    """Linear cost line: rho(x, y) = y - x."""
    return MetricFunction(SpaceKind.RHO, lambda x, y: ExtReal(float(y) - float(x)), "rho-line")


def gain_line() -> MetricFunction:
    """Linear gain line: gamma(x, y) = y - x (the dual of the cost line)."""
    return MetricFunction(SpaceKind.GAMMA, lambda x, y: ExtReal(float(y) - float(x)), "gain-line")


def potential_metric(phi: Callable[[float], float], name: str = "potential") -> MetricFunction:
    """Conservative cost metric rho(x, y) = phi(y) - phi(x)."""
    return MetricFunction(
        SpaceKind.RHO, lambda x, y: ExtReal(float(phi(y)) - float(phi(x))), name
    )
