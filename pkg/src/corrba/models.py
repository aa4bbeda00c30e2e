"""Untrained 3-layer GCN/GAT forward pass with mean pooling and a softmax head.

Layers operate on edge arrays precomputed per graph (both edge directions
plus self-loops, sorted by destination) so aggregation is a segment reduce.
Everything is double precision; the harness compares standard deviations of
order 1e-3 and single precision would be comparable noise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from itertools import chain
from scipy import sparse

from .graphs import Graph
from .rng import Rng


class ModelKind(enum.Enum):
    GCN = "gcn"
    GAT = "gat"


@dataclass(frozen=True)
class GnnParams:
    """Weights for the 3 message-passing layers plus the classification head.

    attention is None for GCN; bias starts (and stays) zero — the model is
    never trained.
    """

    kind: ModelKind
    weights: tuple[np.ndarray, ...]        # each d x d
    attention: tuple[np.ndarray, ...] | None  # each 2d, GAT only
    head_weight: np.ndarray                # d x classes
    head_bias: np.ndarray                  # classes

    @property
    def width(self) -> int:
        return self.weights[0].shape[0]


def _glorot(rng: Rng, fan_in: int, fan_out: int, shape) -> np.ndarray:
    bound = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.random(shape) * 2.0 * bound - bound


def init_params(
    kind: ModelKind, d: int = 32, classes: int = 3, seed: int = 0, layers: int = 3
) -> GnnParams:
    """Glorot-uniform weights, zero bias, reproducible from the seed alone."""
    if d < 1 or classes < 2:
        raise ValueError("need d >= 1 and classes >= 2")
    rng = Rng(seed, (0 if kind is ModelKind.GCN else 1,))
    weights = tuple(_glorot(rng, d, d, (d, d)) for _ in range(layers))
    attention = None
    if kind is ModelKind.GAT:
        attention = tuple(_glorot(rng, 2 * d, 1, 2 * d) for _ in range(layers))
    head_weight = _glorot(rng, d, classes, (d, classes))
    head_bias = np.zeros(classes)
    return GnnParams(kind, weights, attention, head_weight, head_bias)


class _EdgeStructure:
    """Self-loop-augmented edge arrays in CSR layout, rows = destination node.

    src[indptr[v]:indptr[v+1]] lists v's neighbourhood including v itself, so
    aggregation is a sparse matmul and attention softmax a segment reduce.
    """

    def __init__(self, g: Graph):
        n = g.n
        counts = np.asarray([len(g.adj[v]) + 1 for v in range(n)], dtype=np.int64)
        self.indptr = np.concatenate(([0], np.cumsum(counts)))
        total = int(self.indptr[-1])
        self.src = np.fromiter(
            chain.from_iterable(g.adj[v] + [v] for v in range(n)),
            dtype=np.int64,
            count=total,
        )
        self.dst = np.repeat(np.arange(n, dtype=np.int64), counts)
        self.seg_starts = self.indptr[:-1]
        self.seg_counts = counts
        deg_tilde = counts.astype(float)  # degree + self-loop
        self.inv_sqrt_deg = 1.0 / np.sqrt(deg_tilde)
        self.gcn_coef = self.inv_sqrt_deg[self.src] * self.inv_sqrt_deg[self.dst]
        self._matrix = sparse.csr_matrix(
            (np.ones(total), self.src.astype(np.int32), self.indptr), shape=(n, n)
        )

    def aggregate(self, edge_values: np.ndarray, p: np.ndarray) -> np.ndarray:
        """Row sums of edge_values[e] * p[src[e]] grouped by destination."""
        mat = self._matrix
        mat.data = edge_values
        return mat @ p


def _structure(g: Graph) -> _EdgeStructure:
    cached = getattr(g, "_edge_structure", None)
    if cached is None or cached.src.size != 2 * g.num_edges + g.n:
        cached = _EdgeStructure(g)
        g._edge_structure = cached
    return cached


def _check_shapes(g: Graph, h: np.ndarray, w: np.ndarray) -> np.ndarray:
    h = np.asarray(h, dtype=float)
    w = np.asarray(w, dtype=float)
    if h.ndim != 2 or h.shape[0] != g.n:
        raise ValueError(f"feature matrix must be {g.n} x d")
    if w.shape[0] != h.shape[1]:
        raise ValueError("weight rows must match feature width")
    return h @ w


def gcn_layer(g: Graph, h: np.ndarray, w: np.ndarray) -> np.ndarray:
    """ReLU(D~^{-1/2} A~ D~^{-1/2} H W) with self-loops added."""
    p = _check_shapes(g, h, w)
    st = _structure(g)
    out = st.aggregate(st.gcn_coef, p)
    return np.maximum(out, 0.0)


def gat_attention(g: Graph, h: np.ndarray, w: np.ndarray, a: np.ndarray):
    """Per-edge attention coefficients; returns (alpha, structure, p = H W).

    Single-head additive attention with LeakyReLU(0.2) scores over each
    node's neighbourhood including itself; alpha sums to 1 per destination.
    """
    p = _check_shapes(g, h, w)
    a = np.asarray(a, dtype=float)
    if a.shape != (2 * p.shape[1],):
        raise ValueError("attention vector must have length 2d")
    st = _structure(g)
    d = p.shape[1]
    score_dst = p @ a[:d]  # contribution of the attending node i
    score_src = p @ a[d:]  # contribution of the attended node j
    e = score_dst[st.dst] + score_src[st.src]
    e = np.where(e >= 0.0, e, 0.2 * e)
    seg_max = np.maximum.reduceat(e, st.seg_starts)
    e = np.exp(e - np.repeat(seg_max, st.seg_counts))
    seg_sum = np.add.reduceat(e, st.seg_starts)
    alpha = e / np.repeat(seg_sum, st.seg_counts)
    return alpha, st, p


def gat_layer(g: Graph, h: np.ndarray, w: np.ndarray, a: np.ndarray) -> np.ndarray:
    alpha, st, p = gat_attention(g, h, w, a)
    out = st.aggregate(alpha, p)
    return np.maximum(out, 0.0)


def softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - np.max(logits)
    e = np.exp(z)
    return e / e.sum()


def classify_forward(
    kind: ModelKind, params: GnnParams, g: Graph, features: np.ndarray
) -> np.ndarray:
    """Three message-passing layers, mean pooling, affine head, softmax."""
    h = np.asarray(features, dtype=float)
    if h.shape[0] != g.n:
        raise ValueError("feature row count must match node count")
    for layer in range(len(params.weights)):
        if kind is ModelKind.GCN:
            h = gcn_layer(g, h, params.weights[layer])
        else:
            h = gat_layer(g, h, params.weights[layer], params.attention[layer])
    pooled = h.mean(axis=0)
    return softmax(pooled @ params.head_weight + params.head_bias)
