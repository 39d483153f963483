"""Total-effect propagation and optimal intervention values.

The central object is the decomposition E[X_j | do(X_i = c)] = mu_j +
alpha_j * c, computed by one pass over the graph in topological order.
From it follow the causal effect of any variable on the prediction node,
the ranking that picks the intervention target, and the closed-form
intervention value that makes the expected prediction hit a desired value.
"""

from dataclasses import dataclass

import numpy as np

from . import graph
from .errors import (
    AllEffectsZero,
    EmptyCandidates,
    IndexOutOfRange,
    InterveneOnTarget,
    ZeroCausalEffect,
    ZeroCoefficient,
)
from .graph import Dag
from .models import AugmentedGraph, PredictionModel, fit_linear
from .scm import Dataset, Scm, analytic_means, estimate_noise_means, noise_means

#: Below this sensitivity the desired prediction is unreachable at finite c.
EFFECT_THRESHOLD = 1e-12


@dataclass(frozen=True)
class EffectDecomposition:
    """Per-variable response to do(X_i = c): E[X_j | do] = mu[j-1] + alpha[j-1]*c.

    alpha is 1 at the intervened variable, 0 at every non-descendant of it;
    mu holds the c-independent part of each post-intervention mean.
    """

    intervened_index: int
    mu: np.ndarray
    alpha: np.ndarray

    def expectations(self, c: float) -> np.ndarray:
        """Post-intervention means of all variables under do(X_i = c)."""
        return self.mu + self.alpha * c


@dataclass(frozen=True)
class InterventionPlan:
    """A single intervention do(X_i = value) aimed at a desired prediction.

    ``predicted_expectation`` is the expected prediction the plan achieves;
    for the closed-form optimal value it equals ``desired_prediction`` up to
    rounding. ``effects`` carries the per-variable sensitivity alpha.
    """

    target_variable: int
    value: float
    desired_prediction: float
    predicted_expectation: float
    effects: np.ndarray
    warnings: tuple[str, ...] = ()


def propagate(dag: Dag, base_terms, i: int) -> EffectDecomposition:
    """Decompose every variable's mean under do(X_i = c) into mu + alpha*c.

    ``base_terms`` is a length-n vector holding, per variable, the noise
    expectation for non-roots and the pre-intervention mean for roots (for
    an Scm both equal its noise means; use per-observation values for the
    observation-specific variant). Entry i is never read.

    One topological pass: alpha accumulates edge-weight products along all
    directed paths out of i, mu accumulates everything that does not depend
    on c. Roots other than i keep their mean and are insensitive to c.
    """
    n = dag.n
    if not 1 <= i <= n:
        raise IndexOutOfRange(i, n)
    base = np.asarray(base_terms, dtype=float)
    if base.shape != (n,):
        raise ValueError(f"expected a length-{n} vector, got shape {base.shape}")
    w = dag.weights
    i0 = i - 1
    alpha = np.zeros(n)
    mu = np.zeros(n)
    alpha[i0] = 1.0
    for v1 in graph.topological_order(dag):
        v = v1 - 1
        if v == i0:
            continue
        pa = np.flatnonzero(w[v])
        if pa.size == 0:
            mu[v] = base[v]
            continue
        alpha[v] = w[v, pa] @ alpha[pa]
        # mu[i0] stays 0, so the intervened parent drops out of this sum.
        mu[v] = w[v, pa] @ mu[pa] + base[v]
    return EffectDecomposition(i, mu, alpha)


def total_effect_expectation(scm: Scm, i: int, c: float, j: int) -> float:
    """E[X_j | do(X_i = c)] from the analytic decomposition."""
    if not 1 <= j <= scm.n:
        raise IndexOutOfRange(j, scm.n)
    dec = propagate(scm.dag, noise_means(scm), i)
    return float(dec.mu[j - 1] + dec.alpha[j - 1] * c)


def causal_effect(dag: Dag, i: int, j: int) -> float:
    """d/dc of E[X_j | do(X_i = c)]: the sum of path products from i to j."""
    if not 1 <= j <= dag.n:
        raise IndexOutOfRange(j, dag.n)
    return float(propagate(dag, np.zeros(dag.n), i).alpha[j - 1])


def causal_effect_regression(data: Dataset, dag: Dag, i: int, j: int) -> float:
    """Empirical causal effect: coefficient of X_i when regressing X_j on X_i and pa(X_i).

    A sampling-based estimator of ``causal_effect``; the analytic value is
    authoritative when the weight matrix is known.
    """
    preds = (i,) + tuple(sorted(graph.parents(dag, i) - {j}))
    model = fit_linear(data, j, preds)
    return float(model.coeffs[0])


def causal_effect_on_prediction(augmented: AugmentedGraph, i: int) -> float:
    """d/dc of the expected prediction under do(X_i = c)."""
    dec = propagate(augmented.base, np.zeros(augmented.base.n), i)
    return float(augmented.expanded_coeffs() @ dec.alpha)


def select_intervention_target(augmented: AugmentedGraph, candidates) -> int:
    """The candidate with the greatest absolute causal effect on the prediction.

    Ties break toward the lowest index. Raises AllEffectsZero when no
    candidate moves the prediction at all.
    """
    cands = sorted(set(int(i) for i in candidates))
    if not cands:
        raise EmptyCandidates("no candidate variables supplied")
    best, best_effect = None, -1.0
    for cand in cands:
        effect = abs(causal_effect_on_prediction(augmented, cand))
        if effect > best_effect:
            best, best_effect = cand, effect
    if best_effect < EFFECT_THRESHOLD:
        raise AllEffectsZero("no candidate has a causal effect on the prediction")
    return best


def optimal_intervention_value(
    mu,
    dag: Dag,
    noise,
    model: PredictionModel,
    i: int,
    d: float,
) -> InterventionPlan:
    """The intervention value c making E[prediction | do(X_i = c)] equal d.

    Inputs mirror the per-variable bookkeeping: ``mu`` holds pre-intervention
    expectations (only root entries are consumed), ``noise`` the noise
    expectations (only non-root entries are consumed; pass the output of
    ``estimate_noise_means``). The closed form is exact for linear structure:

        c = (d - w . mu_prop - bias) / (w . alpha)

    with w the model coefficients scattered over all n variables (zero at
    the target) and (mu_prop, alpha) from ``propagate``. Raises
    ZeroCausalEffect when the denominator vanishes and InterveneOnTarget
    when i is the model's target variable.
    """
    if i == model.target_index:
        raise InterveneOnTarget(i)
    mu = np.asarray(mu, dtype=float)
    noise = np.asarray(noise, dtype=float)
    if mu.shape != (dag.n,) or noise.shape != (dag.n,):
        raise ValueError(f"mu and noise must be length-{dag.n} vectors")
    base = np.where(graph.root_mask(dag), mu, noise)
    dec = propagate(dag, base, i)
    aug = AugmentedGraph(dag, model.predictor_indices, model.coeffs, model.bias)
    w = aug.expanded_coeffs()
    sensitivity = float(w @ dec.alpha)
    if abs(sensitivity) < EFFECT_THRESHOLD:
        raise ZeroCausalEffect(i, sensitivity)
    c = (d - float(w @ dec.mu) - model.bias) / sensitivity
    achieved = float(w @ dec.expectations(c)) + model.bias
    return InterventionPlan(i, float(c), float(d), achieved, dec.alpha)


def naive_intervention_value(model: PredictionModel, x, i: int, d: float) -> float:
    """Solve the prediction equation for x_i at a fixed observation.

    Ignores all causal propagation: the remaining predictors are held at
    their observed values, so the realized post-intervention prediction
    generally misses d whenever i has descendants among the predictors.
    """
    if i not in model.predictor_indices:
        # A non-predictor has coefficient zero in the expanded vector.
        raise ZeroCoefficient(i)
    x = np.asarray(x, dtype=float)
    pos = model.predictor_indices.index(i)
    wi = model.coeffs[pos]
    if wi == 0.0:
        raise ZeroCoefficient(i)
    others = [k for k in range(len(model.coeffs)) if k != pos]
    cols = [model.predictor_indices[k] - 1 for k in others]
    rest = float(model.coeffs[others] @ x[cols])
    return float((d - rest - model.bias) / wi)


def observation_specific_plan(
    observation,
    dag: Dag,
    model: PredictionModel,
    i: int,
    d: float,
) -> InterventionPlan:
    """Optimal intervention tailored to one fully-observed sample.

    The observation replaces the population expectations, and the noise
    values are recovered from it parent-by-parent, so the plan answers
    "what value would steer this individual's prediction to d".
    """
    observation = np.asarray(observation, dtype=float)
    noise = estimate_noise_means(dag, observation)
    return optimal_intervention_value(observation, dag, noise, model, i, d)


def plan_for_scm(scm: Scm, model: PredictionModel, i: int, d: float) -> InterventionPlan:
    """Population-level plan with expectations taken from the Scm itself."""
    mu = analytic_means(scm)
    return optimal_intervention_value(mu, scm.dag, estimate_noise_means(scm.dag, mu), model, i, d)


def interventional_means_solve(dag: Dag, base_terms, i: int, c: float) -> np.ndarray:
    """E[X | do(X_i = c)] by a dense linear solve; cross-check for propagate.

    Solves (I - W~) x = t where W~ zeroes the intervened row and t holds the
    base terms with t_i = c. Shares no code path with the recursion.
    """
    n = dag.n
    if not 1 <= i <= n:
        raise IndexOutOfRange(i, n)
    w = dag.weights.copy()
    t = np.asarray(base_terms, dtype=float).copy()
    w[i - 1, :] = 0.0
    t[i - 1] = c
    return np.linalg.solve(np.eye(n) - w, t)


def grid_refine_intervention_value(
    dag: Dag,
    mu,
    noise,
    model: PredictionModel,
    i: int,
    d: float,
    lo: float = -1e6,
    hi: float = 1e6,
    rounds: int = 12,
    points: int = 129,
) -> float:
    """Numerically minimize the squared prediction gap over c.

    A brute-force check of the closed form: evaluates the objective through
    ``interventional_means_solve`` on a shrinking grid. Only useful as a
    verification tool; the closed form is exact and fast.
    """
    base = np.where(graph.root_mask(dag), np.asarray(mu, float), np.asarray(noise, float))
    aug = AugmentedGraph(dag, model.predictor_indices, model.coeffs, model.bias)
    w = aug.expanded_coeffs()

    def objective(c: float) -> float:
        means = interventional_means_solve(dag, base, i, c)
        return (float(w @ means) + model.bias - d) ** 2

    for _ in range(rounds):
        grid = np.linspace(lo, hi, points)
        values = [objective(c) for c in grid]
        k = int(np.argmin(values))
        lo = grid[max(k - 1, 0)]
        hi = grid[min(k + 1, points - 1)]
    return float(0.5 * (lo + hi))
