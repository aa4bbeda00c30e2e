"""Random graphs with correlated node features and untrained GNN classifiers."""

from .asymptotics import (
    WalleniusSpec,
    expected_c1,
    expected_q,
    theta_schedule,
    wallenius_mean_approx,
)
from .generator import CorrelationMode, CovarianceError, GenerationError, generate
from .graphs import Graph, degree_histogram
from .models import ModelKind, classify_forward, init_params
from .rng import (
    Rng,
    corr_normal_from_uniform,
    corr_uniform_from_normal,
    normal_cdf,
    normal_quantile,
)

__all__ = [
    "CorrelationMode",
    "CovarianceError",
    "GenerationError",
    "Graph",
    "ModelKind",
    "Rng",
    "WalleniusSpec",
    "classify_forward",
    "corr_normal_from_uniform",
    "corr_uniform_from_normal",
    "degree_histogram",
    "expected_c1",
    "expected_q",
    "generate",
    "init_params",
    "normal_cdf",
    "normal_quantile",
    "theta_schedule",
    "wallenius_mean_approx",
]
