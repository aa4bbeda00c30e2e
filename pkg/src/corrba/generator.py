"""Preferential-attachment graph growth with correlated node features.

Growth starts from a complete graph on m nodes. Each iteration adds one node,
draws m distinct neighbours sequentially with probability proportional to
degree (renormalising after each removal), and samples the new node's feature
row so that, per dimension, its correlation with neighbour i matches a target
rho_i derived from the attachment probabilities. Features live in uniform
space [0,1]; sampling round-trips through normal space via the Gaussian
copula, with the target correlations mapped by corr_normal_from_uniform.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .rng import Rng, corr_normal_from_uniform, normal_cdf, normal_quantile

# floor for the conditional variance when a rescaled target degenerates
_VAR_EPS = 1e-12
# clip uniforms into the open interval before the normal quantile
_U_EPS = 1e-15


class CorrelationMode(enum.Enum):
    NONE = "none"
    SIMPLE = "simple"
    RESCALED = "rescaled"


class GenerationError(RuntimeError):
    """A growth iteration could not be completed."""


class CovarianceError(GenerationError):
    """Target correlation vector does not define a positive-definite covariance."""


@dataclass
class GrowthTrace:
    """Per-iteration record of first-draw and summed attachment correlations.

    first_corr[t] is k_first/r for iteration t's first neighbour; corr_sum[t]
    is the sum of k_i/r over all m chosen neighbours. Both use the degree
    snapshot taken before the iteration adds any edge, independent of the
    correlation mode actually used for feature sampling.
    """

    first_corr: list[float] = field(default_factory=list)
    corr_sum: list[float] = field(default_factory=list)
    per_draw: list[np.ndarray] = field(default_factory=list)


def covariance_determinant(rho) -> float:
    """Determinant of the (m+1)x(m+1) unit-diagonal covariance with border rho,
    computed by peeling one neighbour at a time: det_{j+1} = det_j - rho_j^2."""
    det = 1.0
    for r in np.asarray(rho, dtype=float):
        det -= r * r
    return det


def init_seed_graph(m: int, d: int, rng: Rng):
    """Complete graph on m nodes with i.i.d. uniform features in [0,1]^d."""
    from .graphs import Graph

    if m < 1 or d < 1:
        raise ValueError("m and d must be positive")
    g = Graph.complete(m)
    features = rng.random((m, d))
    return g, features


def weighted_sample_sequential(weights, m: int, rng: Rng) -> np.ndarray:
    """Reference sampler: m distinct indices drawn one at a time by
    cumulative-weight inversion, removing each winner and renormalising.

    An all-zero weight vector falls back to uniform choice; this is the
    degree-0 bootstrap for the edgeless single-node seed graph.
    """
    w = np.asarray(weights, dtype=float)
    n = w.size
    if m > n:
        raise GenerationError(f"cannot draw {m} from {n} candidates")
    if np.any(w < 0):
        raise GenerationError("negative weight")
    if float(w.sum()) <= 0.0:
        return rng.permutation(n)[:m].astype(np.int64)

    w = w.copy()
    chosen: list[int] = []
    for _ in range(m):
        cum = np.cumsum(w)
        total = float(cum[-1])
        if total <= 0.0:
            rest = np.setdiff1d(np.arange(n), np.asarray(chosen, dtype=np.int64))
            fill = rest[rng.permutation(rest.size)[: m - len(chosen)]]
            chosen.extend(int(i) for i in fill)
            break
        idx = int(np.searchsorted(cum, rng.random() * total, side="right"))
        idx = min(idx, n - 1)
        chosen.append(idx)
        w[idx] = 0.0
    return np.asarray(chosen, dtype=np.int64)


def weighted_sample_without_replacement(weights, m: int, rng: Rng) -> np.ndarray:
    """m distinct indices with the law of sequential weight-proportional draws
    without replacement, vectorised via the exponential race.

    Index i gets an Exp(weight_i) arrival time -log(u_i)/w_i; the m earliest
    arrivals, in arrival order, have exactly the sequential renormalised-draw
    distribution (memorylessness of the exponential clocks). One vector pass
    instead of m cumulative scans; the harness relies on this at dense sizes.
    """
    w = np.asarray(weights, dtype=float)
    n = w.size
    if m > n:
        raise GenerationError(f"cannot draw {m} from {n} candidates")
    if np.any(w < 0):
        raise GenerationError("negative weight")
    if float(w.sum()) <= 0.0:
        return rng.permutation(n)[:m].astype(np.int64)

    u = rng.random(n)
    with np.errstate(divide="ignore"):
        arrival = -np.log(u) / w  # inf where w == 0
    if np.count_nonzero(np.isfinite(arrival)) < m:
        raise GenerationError(f"fewer than {m} candidates with positive weight")
    if m == n:
        picked = np.arange(n)
    else:
        picked = np.argpartition(arrival, m - 1)[:m]
    return picked[np.argsort(arrival[picked], kind="stable")].astype(np.int64)


def select_neighbors(g, m: int, rng: Rng) -> np.ndarray:
    """Pick m distinct existing nodes, degree-proportional without replacement."""
    if g.n < m:
        raise GenerationError(f"graph has {g.n} nodes, need {m}")
    return weighted_sample_without_replacement(g.degrees(), m, rng)


def compute_correlations(
    degrees: np.ndarray,
    neighbors: np.ndarray,
    mode: CorrelationMode,
    renormalize: bool = False,
) -> np.ndarray:
    """Target uniform-space correlations for the chosen neighbours.

    Degrees must be the snapshot taken before this iteration adds any edge.
    SIMPLE assigns each neighbour its first-draw probability k_i/r; RESCALED
    normalises those so they sum to 1. With renormalize=True, SIMPLE instead
    uses the sequential conditional probabilities k_i / (r - sum of earlier
    chosen degrees).
    """
    degrees = np.asarray(degrees, dtype=float)
    neighbors = np.asarray(neighbors, dtype=np.int64)
    if mode is CorrelationMode.NONE:
        return np.zeros(neighbors.size)
    k = degrees[neighbors]
    r = float(degrees.sum())
    if r <= 0.0 or k.sum() <= 0.0:
        raise GenerationError("zero degree sum, correlations undefined")
    if mode is CorrelationMode.SIMPLE:
        if renormalize:
            denom = r - np.concatenate(([0.0], np.cumsum(k)[:-1]))
            return k / denom
        return k / r
    return k / k.sum()


def _sample_from_normal(z_neighbors: np.ndarray, rho_u, rng: Rng) -> np.ndarray:
    """Draw the new node's normal-space feature row given neighbour rows
    already in normal space: rho_n . z + sqrt(1 - |rho_n|^2) g per dimension."""
    rho_u = np.asarray(rho_u, dtype=float)
    if rho_u.shape != (z_neighbors.shape[0],):
        raise ValueError("one correlation per neighbour row required")
    rho_n = np.asarray(corr_normal_from_uniform(rho_u), dtype=float).reshape(-1)
    s = float(rho_n @ rho_n)
    if s - 1.0 > 1e-9:
        raise CovarianceError(f"|rho|^2 = {s} exceeds 1")
    if s >= 1.0 - _VAR_EPS:
        # degenerate rescaled draw: keep the mean direction, floor the variance
        rho_n = rho_n * np.sqrt((1.0 - _VAR_EPS) / s)
        s = 1.0 - _VAR_EPS
    d = z_neighbors.shape[1]
    return rho_n @ z_neighbors + np.sqrt(max(_VAR_EPS, 1.0 - s)) * rng.normal(d)


def sample_feature_conditional(x_neighbors, rho_u, rng: Rng) -> np.ndarray:
    """Sample one feature row in [0,1]^d correlated with the given neighbours.

    Pipeline per dimension: map neighbour uniforms to normal space via the
    normal quantile, draw conditionally in normal space, map back through the
    normal CDF. rho_u are uniform-space targets; the normal-space vector is
    clamped (scaled toward the sphere) if rounding pushes |rho_n|^2 to 1.
    """
    x_neighbors = np.atleast_2d(np.asarray(x_neighbors, dtype=float))
    z = normal_quantile(np.clip(x_neighbors, _U_EPS, 1.0 - _U_EPS))
    return normal_cdf(_sample_from_normal(z, rho_u, rng))


def generate(
    n: int,
    m: int,
    d: int,
    mode: CorrelationMode,
    rng: Rng,
    record_trace: bool = False,
    rho_renormalize: bool = False,
):
    """Grow a graph to n nodes with m attachments per new node and correlated
    d-dimensional features. Returns (graph, features[, trace])."""
    if not (n >= m >= 1):
        raise ValueError("need n >= m >= 1")
    if d < 1:
        raise ValueError("d must be positive")

    g, seed_features = init_seed_graph(m, d, rng)
    features = np.empty((n, d))
    features[:m] = seed_features
    correlated = mode is not CorrelationMode.NONE
    # normal-space mirror of the uniform features, filled as rows appear, so
    # neighbour rows never go back through the quantile function
    z_features = np.empty((n, d)) if correlated else None
    if correlated:
        z_features[:m] = normal_quantile(np.clip(seed_features, _U_EPS, 1.0 - _U_EPS))
    trace = GrowthTrace() if record_trace else None

    # incremental degree mirror of the graph's bookkeeping; deg[:cur] is the
    # pre-iteration snapshot the correlations are defined on
    deg = np.zeros(n, dtype=np.int64)
    deg[:m] = m - 1

    for cur in range(m, n):
        degrees = deg[:cur]
        r = float(degrees.sum())
        neighbors = weighted_sample_without_replacement(degrees, m, rng)

        if trace is not None and r > 0.0:
            per_draw = degrees[neighbors] / r
            trace.first_corr.append(float(per_draw[0]))
            trace.corr_sum.append(float(per_draw.sum()))
            trace.per_draw.append(per_draw)

        if not correlated or r <= 0.0:
            row = rng.random(d)
            z_row = None
        else:
            rho_u = compute_correlations(degrees, neighbors, mode, rho_renormalize)
            z_row = _sample_from_normal(z_features[neighbors], rho_u, rng)
            row = normal_cdf(z_row)

        new = g.add_node()
        features[new] = row
        if correlated:
            if z_row is None:
                z_row = normal_quantile(np.clip(row, _U_EPS, 1.0 - _U_EPS))
            z_features[new] = z_row
        g.connect_new_node(new, neighbors)
        deg[neighbors] += 1
        deg[new] = m

    if record_trace:
        return g, features, trace
    return g, features
