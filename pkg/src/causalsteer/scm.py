"""Linear structural causal models: the data generation process.

Every variable obeys X_i = sum_k b_ik * X_k + N_i with independent noise
N_i; a root variable's value is its noise draw. Sampling is the ground
truth oracle for all interventional expectations. All samplers take a
``seed`` accepted by ``numpy.random.default_rng`` (int, SeedSequence, or
Generator), and identical seeds give bitwise-identical datasets.
"""

from dataclasses import dataclass

import numpy as np

from . import graph
from .errors import IndexOutOfRange
from .graph import Dag

_FAMILIES = ("gaussian", "uniform", "constant")


@dataclass(frozen=True)
class NoiseSpec:
    """One noise distribution: gaussian(mean, stddev), uniform(lo, hi), or constant(value)."""

    family: str
    params: tuple[float, ...]

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown noise family {self.family!r}")
        params = tuple(float(p) for p in self.params)
        if not all(np.isfinite(params)):
            raise ValueError(f"noise parameters must be finite, got {params}")
        if self.family == "gaussian":
            if len(params) != 2 or params[1] < 0:
                raise ValueError("gaussian noise needs (mean, stddev) with stddev >= 0")
        elif self.family == "uniform":
            if len(params) != 2 or params[0] > params[1]:
                raise ValueError("uniform noise needs (lo, hi) with lo <= hi")
        elif len(params) != 1:
            raise ValueError("constant noise needs a single value")
        object.__setattr__(self, "params", params)

    @classmethod
    def gaussian(cls, mean: float = 0.0, stddev: float = 1.0) -> "NoiseSpec":
        return cls("gaussian", (mean, stddev))

    @classmethod
    def uniform(cls, lo: float = -1.0, hi: float = 1.0) -> "NoiseSpec":
        return cls("uniform", (lo, hi))

    @classmethod
    def constant(cls, value: float) -> "NoiseSpec":
        return cls("constant", (value,))

    def mean(self) -> float:
        if self.family == "gaussian":
            return self.params[0]
        if self.family == "uniform":
            return 0.5 * (self.params[0] + self.params[1])
        return self.params[0]

    def draw(self, rng: np.random.Generator, m: int) -> np.ndarray:
        if self.family == "gaussian":
            return rng.normal(self.params[0], self.params[1], size=m)
        if self.family == "uniform":
            return rng.uniform(self.params[0], self.params[1], size=m)
        return np.full(m, self.params[0])


@dataclass(frozen=True)
class Scm:
    """A Dag plus one NoiseSpec per variable."""

    dag: Dag
    noises: tuple[NoiseSpec, ...]

    def __post_init__(self):
        noises = tuple(self.noises)
        if len(noises) != self.dag.n:
            raise ValueError(f"expected {self.dag.n} noise specs, got {len(noises)}")
        object.__setattr__(self, "noises", noises)

    @property
    def n(self) -> int:
        return self.dag.n


@dataclass(frozen=True)
class Dataset:
    """An m x n matrix of observations; column k holds variable k+1."""

    rows: np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        rows = np.array(self.rows, dtype=float)
        if rows.ndim != 2:
            raise ValueError(f"rows must be 2-D, got shape {rows.shape}")
        if not np.isfinite(rows).all():
            raise ValueError("dataset contains non-finite entries")
        rows.flags.writeable = False
        object.__setattr__(self, "rows", rows)
        if self.names is not None:
            names = tuple(str(s) for s in self.names)
            if len(names) != rows.shape[1]:
                raise ValueError(f"expected {rows.shape[1]} names, got {len(names)}")
            object.__setattr__(self, "names", names)

    @property
    def m(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def column(self, i: int) -> np.ndarray:
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(i, self.n)
        return self.rows[:, i - 1]


def noise_means(scm: Scm) -> np.ndarray:
    """Vector of E[N_k]; for a root this is also its pre-intervention mean."""
    return np.array([spec.mean() for spec in scm.noises])


def _draw_noise(scm: Scm, rng: np.random.Generator, m: int) -> np.ndarray:
    # Drawn per variable in index order, independent of evaluation order, so
    # that an intervention leaves every other variable's draws untouched.
    noise = np.empty((m, scm.n))
    for k, spec in enumerate(scm.noises):
        noise[:, k] = spec.draw(rng, m)
    return noise


def _evaluate(scm: Scm, noise: np.ndarray, intervened: tuple[int, float] | None) -> np.ndarray:
    w = scm.dag.weights
    x = np.empty_like(noise)
    for v1 in graph.topological_order(scm.dag):
        v = v1 - 1
        if intervened is not None and v == intervened[0]:
            x[:, v] = intervened[1]
            continue
        pa = np.flatnonzero(w[v])
        x[:, v] = noise[:, v] if pa.size == 0 else x[:, pa] @ w[v, pa] + noise[:, v]
    return x


def sample(scm: Scm, m: int, seed) -> Dataset:
    """Draw m observations by evaluating variables in topological order."""
    if m < 1:
        raise ValueError(f"sample count must be >= 1, got {m}")
    rng = np.random.default_rng(seed)
    return Dataset(_evaluate(scm, _draw_noise(scm, rng, m), None), scm.dag.names)


def sample_interventional(scm: Scm, i: int, c: float, m: int, seed) -> Dataset:
    """Draw m observations under do(X_i = c).

    Variable i is fixed to c (its parents and noise ignored); descendants
    respond through the structural equations. With the same seed, columns of
    variables unaffected by the intervention match ``sample`` exactly.
    """
    if m < 1:
        raise ValueError(f"sample count must be >= 1, got {m}")
    if not 1 <= i <= scm.n:
        raise IndexOutOfRange(i, scm.n)
    rng = np.random.default_rng(seed)
    return Dataset(_evaluate(scm, _draw_noise(scm, rng, m), (i - 1, float(c))), scm.dag.names)


def analytic_means(scm: Scm) -> np.ndarray:
    """E[X_k] for every variable, by propagating noise means forward."""
    w = scm.dag.weights
    nm = noise_means(scm)
    mu = np.zeros(scm.n)
    for v1 in graph.topological_order(scm.dag):
        v = v1 - 1
        mu[v] = w[v] @ mu + nm[v]
    return mu


def estimate_noise_means(dag: Dag, mu: np.ndarray) -> np.ndarray:
    """Recover noise expectations from per-variable expectations.

    Entry k is mu_k minus the weighted sum of its parents' entries. Root
    entries are reported as 0: the intervention algorithm never consumes
    them (root means travel through the mu vector instead).

    ``mu`` may be analytic means, empirical column means, or one observation
    (which yields the observation-specific noise values).
    """
    mu = np.asarray(mu, dtype=float)
    if mu.shape != (dag.n,):
        raise ValueError(f"expected a length-{dag.n} vector, got shape {mu.shape}")
    est = mu - dag.weights @ mu
    est[graph.root_mask(dag)] = 0.0
    return est
