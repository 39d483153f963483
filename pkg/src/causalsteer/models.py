"""Linear and logistic prediction models and their grafting into the DAG.

A fitted model's coefficients live on the original variable scales; they
become edge weights of the prediction node when the model is grafted onto
the causal graph.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DidNotConvergeWarning,
    IndexOutOfRange,
    InsufficientRows,
    RankDeficient,
    SingleClass,
)
from .graph import Dag, validate
from .scm import Dataset


@dataclass(frozen=True)
class PredictionModel:
    """Bias and coefficients of a linear or logistic model.

    ``coeffs[k]`` belongs to variable ``predictor_indices[k]`` (1-based).
    For a logistic model the linear score is the log-odds of class 1.
    """

    kind: str
    bias: float
    coeffs: np.ndarray
    predictor_indices: tuple[int, ...]
    target_index: int
    converged: bool = True
    n_iter: int = 0
    loglik_trace: tuple[float, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.kind not in ("linear", "logistic"):
            raise ValueError(f"unknown model kind {self.kind!r}")
        coeffs = np.array(self.coeffs, dtype=float).reshape(-1)
        coeffs.flags.writeable = False
        object.__setattr__(self, "coeffs", coeffs)
        preds = tuple(int(i) for i in self.predictor_indices)
        object.__setattr__(self, "predictor_indices", preds)
        if len(preds) != coeffs.size:
            raise ValueError(f"{len(preds)} predictors but {coeffs.size} coefficients")
        if len(set(preds)) != len(preds):
            raise ValueError("duplicate predictor indices")
        if self.target_index in preds:
            raise ValueError(f"target variable {self.target_index} cannot be a predictor")


@dataclass(frozen=True)
class AugmentedGraph:
    """A Dag with the prediction node grafted on as a sink.

    The prediction node's parents are the predictors and its incoming
    weights are the model coefficients; the bias acts as a constant noise
    on the node. Adding a sink keeps the graph acyclic.
    """

    base: Dag
    yhat_parents: tuple[int, ...]
    yhat_weights: np.ndarray
    yhat_bias: float

    def expanded_coeffs(self) -> np.ndarray:
        """Coefficients scattered into a length-n vector, zero off-predictor.

        The model target (and any unused variable) gets a zero, which is the
        "insert a zero at the target position" expansion when the predictors
        are all remaining variables.
        """
        w = np.zeros(self.base.n)
        w[np.array(self.yhat_parents) - 1] = self.yhat_weights
        return w

    def to_dag(self) -> Dag:
        """The combined graph on n+1 vertices; the prediction node is vertex n+1."""
        n = self.base.n
        w = np.zeros((n + 1, n + 1))
        w[:n, :n] = self.base.weights
        w[n, :n] = self.expanded_coeffs()
        names = None
        if self.base.names is not None:
            names = self.base.names + ("yhat",)
        return Dag(w, names)


def fit_linear(data: Dataset, target_index: int, predictor_indices=None) -> PredictionModel:
    """Ordinary least squares of the target column on the predictor columns.

    Defaults to all remaining variables as predictors. Requires more rows
    than predictors and a full-rank design matrix.
    """
    preds = _resolve_predictors(data.n, target_index, predictor_indices)
    x = data.rows[:, [p - 1 for p in preds]]
    y = data.rows[:, target_index - 1]
    m, p = x.shape
    if m <= p:
        raise InsufficientRows(f"{m} rows cannot identify {p} coefficients plus a bias")
    design = np.column_stack([np.ones(m), x])
    beta, _, rank, _ = np.linalg.lstsq(design, y, rcond=None)
    if rank < p + 1:
        raise RankDeficient(f"design matrix rank {rank} < {p + 1}; predictors are collinear")
    return PredictionModel("linear", float(beta[0]), beta[1:], preds, target_index)


def fit_logistic(
    data: Dataset,
    labels,
    predictor_indices=None,
    target_index: int | None = None,
    tol: float = 1e-8,
    max_iter: int = 100,
    l2: float = 1e-6,
) -> PredictionModel:
    """Penalized maximum-likelihood logistic regression via IRLS.

    Newton updates with step-halving keep the penalized log-likelihood
    non-decreasing; the L2 penalty ``l2`` on the coefficients (never the
    bias) guarantees a finite optimum under complete separation. Converged
    when the largest absolute coefficient update drops below ``tol``. On
    hitting ``max_iter`` a DidNotConvergeWarning is issued and the model is
    returned with ``converged=False``.

    ``target_index`` records which variable the labels were derived from; it
    defaults to the single variable left out of the predictors.
    """
    labels = np.asarray(labels)
    if labels.shape != (data.m,):
        raise ValueError(f"expected {data.m} labels, got shape {labels.shape}")
    classes = set(np.unique(labels).tolist())
    if not classes <= {0, 1}:
        raise ValueError(f"labels must be 0/1, got {sorted(classes)}")
    if len(classes) < 2:
        raise SingleClass(f"all labels are {classes.pop()}; need both classes")

    if target_index is None:
        if predictor_indices is None:
            raise ValueError("pass target_index, predictor_indices, or both")
        left_out = set(range(1, data.n + 1)) - set(predictor_indices)
        if len(left_out) != 1:
            raise ValueError("target_index is ambiguous; pass it explicitly")
        target_index = left_out.pop()
    preds = _resolve_predictors(data.n, target_index, predictor_indices)

    x = np.column_stack([np.ones(data.m), data.rows[:, [p - 1 for p in preds]]])
    y = labels.astype(float)
    penalty = np.full(x.shape[1], l2)
    penalty[0] = 0.0

    beta = np.zeros(x.shape[1])
    trace = [_penalized_loglik(x, y, beta, penalty)]
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        score = x @ beta
        prob = _sigmoid(score)
        grad = x.T @ (y - prob) - penalty * beta
        w = prob * (1.0 - prob)
        hess = (x.T * w) @ x + np.diag(penalty)
        try:
            step = np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError:
            step = np.linalg.lstsq(hess, grad, rcond=None)[0]
        # Step-halving: shrink until the penalized log-likelihood does not drop.
        scale = 1.0
        current = trace[-1]
        improved = False
        for _ in range(30):
            candidate = beta + scale * step
            ll = _penalized_loglik(x, y, candidate, penalty)
            if ll >= current:
                improved = True
                break
            scale *= 0.5
        if not improved:
            # No movement along the Newton direction helps; the optimum is
            # resolved to machine precision.
            converged = True
            break
        beta = candidate
        trace.append(ll)
        if np.max(np.abs(scale * step)) < tol:
            converged = True
            break
    if not converged:
        warnings.warn(
            f"IRLS did not meet tol={tol} within {max_iter} iterations",
            DidNotConvergeWarning,
        )
    return PredictionModel(
        "logistic",
        float(beta[0]),
        beta[1:],
        preds,
        target_index,
        converged=converged,
        n_iter=it,
        loglik_trace=tuple(trace),
    )


def _resolve_predictors(n: int, target_index: int, predictor_indices) -> tuple[int, ...]:
    if not 1 <= target_index <= n:
        raise IndexOutOfRange(target_index, n, "target index")
    if predictor_indices is None:
        return tuple(i for i in range(1, n + 1) if i != target_index)
    preds = tuple(int(i) for i in predictor_indices)
    for i in preds:
        if not 1 <= i <= n:
            raise IndexOutOfRange(i, n, "predictor index")
    if target_index in preds:
        raise ValueError(f"target variable {target_index} cannot be a predictor")
    return preds


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _penalized_loglik(x, y, beta, penalty) -> float:
    score = x @ beta
    return float((y * score - np.logaddexp(0.0, score)).sum() - 0.5 * penalty @ beta**2)


def predict(model: PredictionModel, x) -> float:
    """Linear score bias + coeffs . x at one observation.

    ``x`` supplies all n variables; only predictor positions are read. For a
    logistic model this is the log-odds, not the probability.
    """
    x = np.asarray(x, dtype=float)
    idx = [p - 1 for p in model.predictor_indices]
    return float(model.bias + model.coeffs @ x[idx])


def scores(model: PredictionModel, rows: np.ndarray) -> np.ndarray:
    """Vectorized ``predict`` over the rows of an m x n matrix."""
    rows = np.asarray(rows, dtype=float)
    idx = [p - 1 for p in model.predictor_indices]
    return model.bias + rows[:, idx] @ model.coeffs


def decision(model: PredictionModel, x, rng: np.random.Generator | None = None) -> int:
    """Class 0 when the log-odds is negative, 1 when positive.

    An exact zero is broken by a fair coin from ``rng`` (a fixed seed when
    not supplied, so repeated calls stay deterministic).
    """
    if model.kind != "logistic":
        raise ValueError("decision applies to logistic models only")
    score = predict(model, x)
    if score < 0:
        return 0
    if score > 0:
        return 1
    if rng is None:
        rng = np.random.default_rng(0)
    return int(rng.integers(2))


def augment_graph(dag: Dag, model: PredictionModel) -> AugmentedGraph:
    """Graft the prediction node onto the graph as a sink.

    Its parents are the model predictors with the coefficients as incoming
    weights; the base graph is not modified.
    """
    for i in model.predictor_indices + (model.target_index,):
        if not 1 <= i <= dag.n:
            raise IndexOutOfRange(i, dag.n)
    aug = AugmentedGraph(dag, model.predictor_indices, model.coeffs, model.bias)
    validate(aug.to_dag())
    return aug
