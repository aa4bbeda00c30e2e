"""Closed-form late-stage estimators for the attachment correlations and the
mean approximation for sequential weighted sampling without replacement."""

from __future__ import annotations

import math
from dataclasses import dataclass


def expected_c1(n: int, m: int) -> float:
    """Late-stage mean of the first-draw correlation: (ln n - ln m) / (2n)."""
    if not n > m >= 1:
        raise ValueError("need n > m >= 1")
    return (math.log(n) - math.log(m)) / (2.0 * n)


def theta_schedule(n: int) -> float:
    """log(1 - 1/(2n)): the exponential tilt that makes the group-mean
    approximation consistent with m draws at size n."""
    if n < 1:
        raise ValueError("need n >= 1")
    return math.log(1.0 - 1.0 / (2.0 * n))


@dataclass(frozen=True)
class WalleniusSpec:
    """Groups of exchangeable items: (weight, size) pairs, and the number of
    sequential weighted draws without replacement."""

    groups: tuple[tuple[float, int], ...]
    draws: int

    def __post_init__(self):
        if any(w <= 0 or nk <= 0 for w, nk in self.groups):
            raise ValueError("weights and group sizes must be positive")
        if self.draws < 1 or self.draws > sum(nk for _, nk in self.groups):
            raise ValueError("draws must be in [1, total items]")


def wallenius_mean_approx(spec: WalleniusSpec) -> list[float]:
    """Approximate mean draw counts per group: mu_k = n_k (1 - t^{w_k}) with
    t = e^theta in (0,1) chosen by bisection so the means sum to the number
    of draws. The objective is strictly decreasing in t, so bisection is
    guaranteed; residual ends below 1e-10.
    """
    total = sum(nk for _, nk in spec.groups)
    m = spec.draws
    if m == total:
        return [float(nk) for _, nk in spec.groups]

    def resid(t: float) -> float:
        return sum(nk * (1.0 - t**w) for w, nk in spec.groups) - m

    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if resid(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    return [nk * (1.0 - t**w) for w, nk in spec.groups]


def expected_q(n: int, m: int) -> float:
    """Late-stage mean of the summed attachment correlations, a function of
    u = n/m alone: (2 + ln u) / (2u)."""
    if not n > m >= 1:
        raise ValueError("need n > m >= 1")
    u = n / m
    return (2.0 + math.log(u)) / (2.0 * u)


def empirical_mean_late(values, late_frac: float = 0.25) -> float:
    """Mean over the final late_frac share of a growth-iteration series."""
    if not values:
        raise ValueError("empty series")
    if not 0.0 < late_frac <= 1.0:
        raise ValueError("late_frac must be in (0, 1]")
    k = max(1, math.ceil(late_frac * len(values)))
    tail = values[len(values) - k :]
    return float(sum(tail) / len(tail))


def empirical_q(trace, late_frac: float = 0.25) -> float:
    """Late-stage mean of the per-iteration summed correlations of a run."""
    return empirical_mean_late(trace.corr_sum, late_frac)


def empirical_c1(trace, late_frac: float = 0.25) -> float:
    """Late-stage mean of the per-iteration first-draw correlation of a run."""
    return empirical_mean_late(trace.first_corr, late_frac)
