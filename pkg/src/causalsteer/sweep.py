"""Experiment harness: many random DAGs, one intervention sweep per DAG.

Per DAG: sample training data, median-split a random target, fit a logistic
model on the remaining variables, discover the predictor with the greatest
causal effect on the prediction, then steer the expected log-odds to each
desired value d both with the closed-form optimal value and with the naive
per-equation solution. The score per d is the fraction of fresh
post-intervention samples the classifier assigns to class 1.

Each DAG's randomness derives from an independently spawned seed, so the
result is invariant to execution order and bitwise reproducible.
"""

import dataclasses
import io
from dataclasses import dataclass, field

import numpy as np

from . import fileio
from .causal import (
    naive_intervention_value,
    optimal_intervention_value,
    select_intervention_target,
)
from .datagen import DagGenConfig, generate_random_scm, median_split_labels, pick_random_target
from .errors import AllEffectsZero, CausalSteerError, InvalidConfig, ZeroCausalEffect, ZeroCoefficient
from .models import PredictionModel, augment_graph, fit_logistic, scores
from .scm import Scm, analytic_means, estimate_noise_means, sample, sample_interventional


@dataclass(frozen=True)
class SweepConfig:
    d_values: tuple[float, ...] = tuple(float(d) for d in range(11))
    n_dags: int = 1000
    n_train: int = 1000
    n_post: int = 1000
    datagen: DagGenConfig = field(default_factory=DagGenConfig)
    seed: int = 0

    def check(self) -> None:
        if not self.d_values:
            raise InvalidConfig("d_values must be nonempty")
        for name in ("n_dags", "n_train", "n_post"):
            if getattr(self, name) < 1:
                raise InvalidConfig(f"{name} must be >= 1, got {getattr(self, name)}")
        self.datagen.check()


@dataclass(frozen=True)
class SweepRow:
    d: float
    accuracy_optimal: float
    accuracy_naive: float
    n_failed: int


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    n_dags: int

    @property
    def n_failed(self) -> int:
        return self.rows[0].n_failed


def evaluate_intervention(scm: Scm, model: PredictionModel, i: int, c: float, n_post: int, seed) -> float:
    """Fraction of post-intervention samples the model assigns to class 1.

    Exact zero scores (measure zero for continuous data) get a fair coin.
    """
    rng = np.random.default_rng(seed)
    data = sample_interventional(scm, i, c, n_post, rng)
    s = scores(model, data.rows)
    ones = int((s > 0).sum())
    ties = int((s == 0).sum())
    if ties:
        ones += int(rng.integers(2, size=ties).sum())
    return ones / n_post


def _run_one_dag(config: SweepConfig, seed: np.random.SeedSequence):
    """Class-1 counts for one DAG: (n_post, counts_optimal, counts_naive) per d."""
    s_scm, s_train, s_target, s_eval = seed.spawn(4)
    scm = generate_random_scm(dataclasses.replace(config.datagen, seed=s_scm))
    train = sample(scm, config.n_train, s_train)
    target = pick_random_target(scm.n, s_target)
    labels = median_split_labels(train, target)
    model = fit_logistic(train, labels, target_index=target)
    augmented = augment_graph(scm.dag, model)
    intervene_on = select_intervention_target(augmented, model.predictor_indices)

    mu = analytic_means(scm)
    noise = estimate_noise_means(scm.dag, mu)
    # Compute every intervention value up front so a degenerate DAG fails
    # before contributing to any row.
    values = []
    for d in config.d_values:
        c_opt = optimal_intervention_value(mu, scm.dag, noise, model, intervene_on, d).value
        c_naive = naive_intervention_value(model, mu, intervene_on, d)
        values.append((c_opt, c_naive))

    eval_seeds = s_eval.spawn(2 * len(config.d_values))
    opt_counts, naive_counts = [], []
    for k, (c_opt, c_naive) in enumerate(values):
        acc_opt = evaluate_intervention(scm, model, intervene_on, c_opt, config.n_post, eval_seeds[2 * k])
        acc_naive = evaluate_intervention(scm, model, intervene_on, c_naive, config.n_post, eval_seeds[2 * k + 1])
        opt_counts.append(round(acc_opt * config.n_post))
        naive_counts.append(round(acc_naive * config.n_post))
    return opt_counts, naive_counts


def run_sweep(config: SweepConfig) -> SweepResult:
    """Pool class-1 fractions over all DAGs for each desired value d.

    DAGs on which no finite intervention can move the prediction (zero
    causal effect, or a zero naive coefficient) are counted in ``n_failed``
    and excluded; individual failures never abort the sweep.
    """
    config.check()
    dag_seeds = np.random.SeedSequence(config.seed).spawn(config.n_dags)
    n_d = len(config.d_values)
    opt_total = np.zeros(n_d, dtype=int)
    naive_total = np.zeros(n_d, dtype=int)
    n_failed = 0
    n_ok = 0
    for seed in dag_seeds:
        try:
            opt_counts, naive_counts = _run_one_dag(config, seed)
        except (ZeroCausalEffect, AllEffectsZero, ZeroCoefficient):
            n_failed += 1
            continue
        opt_total += opt_counts
        naive_total += naive_counts
        n_ok += 1
    if n_ok == 0:
        raise CausalSteerError(f"all {config.n_dags} DAGs failed; nothing to report")
    denom = n_ok * config.n_post
    rows = tuple(
        SweepRow(float(d), opt_total[k] / denom, naive_total[k] / denom, n_failed)
        for k, d in enumerate(config.d_values)
    )
    return SweepResult(rows, config.n_dags)


def sweep_result_to_csv(result: SweepResult) -> str:
    out = io.StringIO()
    out.write("d,accuracy_optimal,accuracy_naive,n_failed\n")
    for row in result.rows:
        out.write(f"{row.d:g},{row.accuracy_optimal:.6f},{row.accuracy_naive:.6f},{row.n_failed}\n")
    return out.getvalue()


def sweep_config_from_dict(doc: dict) -> SweepConfig:
    kwargs = dict(doc)
    if "datagen" in kwargs:
        kwargs["datagen"] = fileio.datagen_config_from_dict(kwargs["datagen"])
    if "d_values" in kwargs:
        kwargs["d_values"] = tuple(float(d) for d in kwargs["d_values"])
    return SweepConfig(**kwargs)


def sweep_config_to_dict(config: SweepConfig) -> dict:
    return {
        "d_values": list(config.d_values),
        "n_dags": config.n_dags,
        "n_train": config.n_train,
        "n_post": config.n_post,
        "datagen": fileio.datagen_config_to_dict(config.datagen),
        "seed": config.seed,
    }


def run_manifest(config: SweepConfig, result: SweepResult) -> dict:
    from . import __version__

    return {
        "causalsteer_version": __version__,
        "config": sweep_config_to_dict(config),
        "n_dags": result.n_dags,
        "n_failed": result.n_failed,
    }
