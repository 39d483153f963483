"""Weighted directed acyclic graphs holding the causal connection matrix.

Variables are numbered 1..n in every public signature, file format, and
printed output. Internally weights are stored as a dense n x n numpy array
where ``weights[i-1, j-1]`` is the connection strength of variable j into
variable i; an entry of exactly zero means "no edge".
"""

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import CycleDetected, IndexOutOfRange, NonFiniteWeight, NonzeroDiagonal


@dataclass(frozen=True)
class Dag:
    """Immutable weighted DAG over variables 1..n."""

    weights: np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"weights must be a square matrix, got shape {w.shape}")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)
        if self.names is not None:
            names = tuple(str(s) for s in self.names)
            if len(names) != w.shape[0]:
                raise ValueError(f"expected {w.shape[0]} names, got {len(names)}")
            object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def name_of(self, i: int) -> str:
        _check_index(self, i)
        return self.names[i - 1] if self.names is not None else f"x{i}"

    @classmethod
    def from_edges(cls, n: int, edges, names=None) -> "Dag":
        """Build a Dag from ``(from, to, weight)`` triples with 1-based indices.

        Duplicate (from, to) pairs are rejected.
        """
        w = np.zeros((n, n))
        seen = set()
        for frm, to, weight in edges:
            for idx in (frm, to):
                if not 1 <= idx <= n:
                    raise IndexOutOfRange(idx, n, "edge endpoint")
            if (frm, to) in seen:
                raise ValueError(f"duplicate edge {frm} -> {to}")
            seen.add((frm, to))
            w[to - 1, frm - 1] = weight
        return cls(w, names)


def _check_index(dag: Dag, i: int) -> None:
    if not 1 <= i <= dag.n:
        raise IndexOutOfRange(i, dag.n)


def validate(dag: Dag) -> None:
    """Raise unless the weight matrix describes a finite, zero-diagonal DAG.

    Raises NonFiniteWeight, NonzeroDiagonal, or CycleDetected (with one
    witness cycle); returns None when the graph is valid.
    """
    w = dag.weights
    bad = np.argwhere(~np.isfinite(w))
    if bad.size:
        i, j = bad[0]
        raise NonFiniteWeight(int(i) + 1, int(j) + 1)
    diag = np.flatnonzero(np.diagonal(w))
    if diag.size:
        raise NonzeroDiagonal(int(diag[0]) + 1)
    topological_order(dag)


def topological_order(dag: Dag) -> list[int]:
    """Topological order of the variables, 1-based.

    Among simultaneously ready vertices the lowest index comes first, so the
    result is deterministic. Raises CycleDetected when no order exists.
    """
    n = dag.n
    adj = dag.weights != 0.0
    indegree = adj.sum(axis=1)
    ready = [v for v in range(n) if indegree[v] == 0]
    heapq.heapify(ready)
    order: list[int] = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v + 1)
        for child in np.flatnonzero(adj[:, v]):
            indegree[child] -= 1
            if indegree[child] == 0:
                heapq.heappush(ready, int(child))
    if len(order) < n:
        raise CycleDetected(_find_cycle(adj, set(range(n)) - {v - 1 for v in order}))
    return order


def _find_cycle(adj: np.ndarray, remaining: set[int]) -> list[int]:
    # Every vertex left over by Kahn's algorithm has a parent among the
    # leftovers, so walking parent links must revisit a vertex.
    start = min(remaining)
    walk = [start]
    pos = {start: 0}
    while True:
        parents_in = [p for p in np.flatnonzero(adj[walk[-1]]) if p in remaining]
        nxt = int(min(parents_in))
        if nxt in pos:
            s = pos[nxt]
            tail = walk[s:]
            # tail = [v_s .. v_t] with edges v_{k+1} -> v_k and closing edge
            # v_s -> v_t; report vertices in edge order starting at v_s.
            cycle = [tail[0]] + tail[:0:-1]
            m = cycle.index(min(cycle))
            cycle = cycle[m:] + cycle[:m]
            return [v + 1 for v in cycle]
        pos[nxt] = len(walk)
        walk.append(nxt)


def parents(dag: Dag, i: int) -> set[int]:
    """Variables with a direct edge into i."""
    _check_index(dag, i)
    return {int(j) + 1 for j in np.flatnonzero(dag.weights[i - 1])}


def children(dag: Dag, i: int) -> set[int]:
    """Variables that i feeds directly."""
    _check_index(dag, i)
    return {int(j) + 1 for j in np.flatnonzero(dag.weights[:, i - 1])}


def roots(dag: Dag) -> set[int]:
    """Variables with no parents."""
    return {int(v) + 1 for v in np.flatnonzero(~(dag.weights != 0.0).any(axis=1))}


def root_mask(dag: Dag) -> np.ndarray:
    """Boolean vector, position k true iff variable k+1 has no parents."""
    return ~(dag.weights != 0.0).any(axis=1)
