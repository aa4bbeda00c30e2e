"""Seeded randomness and the uniform/normal correlation copula maps.

The standard-normal CDF and quantile are thin wrappers around scipy's
``ndtr``/``ndtri`` (absolute error well below 1e-9 everywhere we use them),
with the domain checks the rest of the pipeline relies on.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import ndtr, ndtri


class Rng:
    """Deterministic random stream with hierarchical child derivation.

    Streams are keyed by ``(seed, *key)`` through numpy's SeedSequence, so
    ``Rng(seed).child(rep).child(node)`` and ``Rng(seed).child(rep, node)``
    denote the same stream and distinct key tuples give independent streams.
    A stream is single-owner: share work across threads/processes by deriving
    children, never by sharing one instance.
    """

    def __init__(self, seed: int, key: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.key = tuple(int(k) for k in key)
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence([self.seed, *self.key]))
        )

    def child(self, *key: int) -> "Rng":
        return Rng(self.seed, self.key + key)

    def random(self, size=None):
        return self._gen.random(size)

    def normal(self, size=None):
        return self._gen.standard_normal(size)

    def integers(self, low, high=None, size=None):
        return self._gen.integers(low, high, size)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, key={self.key})"


def normal_cdf(z):
    """Standard normal CDF. Accepts a scalar or array; rejects non-finite input."""
    z = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(z)):
        raise ValueError("normal_cdf requires finite input")
    out = ndtr(z)
    return float(out) if out.ndim == 0 else out


def normal_quantile(p):
    """Inverse standard normal CDF on the open interval (0, 1)."""
    p = np.asarray(p, dtype=float)
    if not np.all((p > 0.0) & (p < 1.0)):
        raise ValueError("normal_quantile requires 0 < p < 1")
    out = ndtri(p)
    return float(out) if out.ndim == 0 else out


def corr_uniform_from_normal(rho_n):
    """Map a normal-space Pearson correlation to the uniform-space one.

    For jointly Gaussian pairs pushed through the normal CDF, the correlation
    of the resulting uniforms is (6/pi) * asin(rho/2). Odd, strictly
    increasing, fixes -1, 0 and 1.
    """
    rho_n = np.asarray(rho_n, dtype=float)
    if np.any(np.abs(rho_n) > 1.0):
        raise ValueError("correlation must lie in [-1, 1]")
    out = np.clip((6.0 / math.pi) * np.arcsin(rho_n / 2.0), -1.0, 1.0)
    return float(out) if out.ndim == 0 else out


def corr_normal_from_uniform(rho_u):
    """Inverse of :func:`corr_uniform_from_normal`: rho_n = 2 sin(pi * rho_u / 6)."""
    rho_u = np.asarray(rho_u, dtype=float)
    if np.any(np.abs(rho_u) > 1.0):
        raise ValueError("correlation must lie in [-1, 1]")
    out = np.clip(2.0 * np.sin(math.pi * rho_u / 6.0), -1.0, 1.0)
    return float(out) if out.ndim == 0 else out
