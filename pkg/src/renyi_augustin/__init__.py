"""Renyi information measures and the Augustin mean of finite channels."""
from .augustin import (
    SolveReport, TiltingOrder, augustin_iterates, augustin_operator, ehb_sandwich,
    mean_identity_residual, monotonicity_gap, output_distribution,
    output_distribution_tilde, solve_augustin_mean, tilted_augustin_operator,
    tilted_channel,
)
from .channels import bsc, example1_closed_form, example1_discretized, identity, random_channel
from .divergence import conditional_renyi_divergence, pinsker_slack, renyi_divergence
from .estimator import AugustinMean
from .measures import Order, lebesgue_decompose, normalize, tv_distance
from .oracle import descent_minimize, grid_minimize
from .validation import DimensionError, DomainError, PreconditionError, ZeroMeasureError

__version__ = "0.1.0"

__all__ = [
    "AugustinMean", "DimensionError", "DomainError", "Order", "PreconditionError",
    "SolveReport", "TiltingOrder", "ZeroMeasureError", "augustin_iterates",
    "augustin_operator", "bsc", "conditional_renyi_divergence", "descent_minimize",
    "ehb_sandwich", "example1_closed_form", "example1_discretized", "grid_minimize",
    "identity", "lebesgue_decompose", "mean_identity_residual", "monotonicity_gap",
    "normalize", "output_distribution", "output_distribution_tilde", "pinsker_slack",
    "random_channel", "renyi_divergence", "solve_augustin_mean",
    "tilted_augustin_operator", "tilted_channel", "tv_distance",
]
