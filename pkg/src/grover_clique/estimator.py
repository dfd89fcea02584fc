"""scikit-learn style front end.

Rows of the adjacency matrix are treated as samples (vertices), so
``fit_predict(A)`` labels each vertex 1 when it belongs to the maximum clique
that was measured, 0 otherwise.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted

from .driver import DEFAULT_SEED, SolveConfig, solve
from .errors import DomainError
from .graph import Graph, parse_dimacs


def check_graph(X) -> Graph:
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a ``Graph``, a DIMACS string, or a square symmetric 0/1 adjacency
    matrix with an empty diagonal.
    """
    if isinstance(X, Graph):
        return X
    if isinstance(X, str):
        return parse_dimacs(X)
    A = check_array(X, dtype=None, ensure_min_samples=1, ensure_min_features=1)
    if A.shape[0] != A.shape[1]:
        raise DomainError(f"adjacency matrix must be square, got shape {A.shape}")
    if not np.isin(A, (0, 1)).all():
        raise DomainError("adjacency matrix must be 0/1")
    A = A.astype(bool)
    if (A != A.T).any():
        raise DomainError("adjacency matrix must be symmetric")
    if A.diagonal().any():
        raise DomainError("adjacency matrix must have an empty diagonal")
    rows, cols = np.nonzero(np.triu(A, 1))
    return Graph(A.shape[0], frozenset(zip(rows + 1, cols + 1)))


class GroverCliqueSearch(BaseEstimator):
    """Maximum clique by level-descending Grover search.

    Parameters
    ----------
    backend : {"compiled", "dense"}
        ``dense`` simulates every ancilla and is limited to tiny graphs.
    m_mode : {"known", "unknown"}
        Whether round counts use the exact solution count per level or the
        randomized exponential schedule.
    attempts_per_level : int
        Measurements per level before descending (known mode).
    random_state : int or None
        Seed for the measurement draws.

    Attributes
    ----------
    graph_ : Graph
    clique_size_ : int
    witnesses_ : list of str
    trace_ : list of LevelAttempt
    oracle_calls_ : int
    """

    def __init__(self, backend="compiled", m_mode="known", attempts_per_level=3, random_state=DEFAULT_SEED):
        self.backend = backend
        self.m_mode = m_mode
        self.attempts_per_level = attempts_per_level
        self.random_state = random_state

    def _config(self) -> SolveConfig:
        return SolveConfig(
            backend=self.backend,
            m_mode=self.m_mode,
            attempts_per_level=self.attempts_per_level,
            seed=self.random_state,
        )

    def fit(self, X, y=None):
        graph = check_graph(X)
        result = solve(graph, self._config())
        self.graph_ = graph
        self.n_features_in_ = graph.n
        self.clique_size_ = result.clique_size
        self.witnesses_ = result.witnesses
        self.trace_ = result.trace
        self.oracle_calls_ = result.oracle_calls
        self.result_ = result
        return self

    def predict(self, X=None):
        """Membership vector of the first witness found for the fitted graph."""
        check_is_fitted(self, "result_")
        if X is not None and check_graph(X) != self.graph_:
            raise DomainError("predict() called on a graph other than the fitted one; use fit_predict")
        return np.array([int(b) for b in self.witnesses_[0]], dtype=np.int8)

    def fit_predict(self, X, y=None):
        return self.fit(X).predict()
