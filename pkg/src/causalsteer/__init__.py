"""Causally optimal interventions for linear and logistic predictions.

Couples a linear structural causal model with the causal structure of a
prediction model, ranks predictors by their causal effect on the
prediction, and computes the exact intervention value that steers the
expected prediction to a desired target.

Variables are numbered 1..n throughout the public API, matching the file
formats and printed output; vectors indexed by variable put variable k at
position k-1.
"""

__version__ = "0.1.0"

from .causal import (
    EffectDecomposition,
    InterventionPlan,
    causal_effect,
    causal_effect_on_prediction,
    causal_effect_regression,
    naive_intervention_value,
    observation_specific_plan,
    optimal_intervention_value,
    plan_for_scm,
    propagate,
    select_intervention_target,
    total_effect_expectation,
)
from .datagen import DagGenConfig, generate_random_scm, median_split_labels, pick_random_target
from .graph import Dag, children, parents, roots, topological_order, validate
from .models import (
    AugmentedGraph,
    PredictionModel,
    augment_graph,
    decision,
    fit_linear,
    fit_logistic,
    predict,
    scores,
)
from .scm import (
    Dataset,
    NoiseSpec,
    Scm,
    analytic_means,
    estimate_noise_means,
    sample,
    sample_interventional,
)
from .sweep import SweepConfig, SweepResult, evaluate_intervention, run_sweep

__all__ = [
    "AugmentedGraph",
    "Dag",
    "DagGenConfig",
    "Dataset",
    "EffectDecomposition",
    "InterventionPlan",
    "NoiseSpec",
    "PredictionModel",
    "Scm",
    "SweepConfig",
    "SweepResult",
    "analytic_means",
    "augment_graph",
    "causal_effect",
    "causal_effect_on_prediction",
    "causal_effect_regression",
    "children",
    "decision",
    "estimate_noise_means",
    "evaluate_intervention",
    "fit_linear",
    "fit_logistic",
    "generate_random_scm",
    "median_split_labels",
    "naive_intervention_value",
    "observation_specific_plan",
    "optimal_intervention_value",
    "parents",
    "pick_random_target",
    "plan_for_scm",
    "predict",
    "propagate",
    "roots",
    "run_sweep",
    "sample",
    "sample_interventional",
    "scores",
    "select_intervention_target",
    "topological_order",
    "total_effect_expectation",
    "validate",
]
