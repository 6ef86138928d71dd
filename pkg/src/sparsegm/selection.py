"""Regularization selection: subsampling stability (StARS), a
permutation-calibrated information criterion, and extended BIC.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .dataset import Dataset
from .errors import NumericError, ParameterError
from .estimators import (GraphPath, PrecisionPath,
                         correlation_matrix, correlation_threshold_path,
                         glasso_path, lambda_max, mb_path, _lambda_values)
from .graphs import AdjacencyMatrix
from .screening import CovarianceSummary


@dataclass
class StarsConfig:
    """Subsampling parameters for stability selection.

    Defaults follow the usual conventions: subsample size floor(10*sqrt(n))
    capped at n-1, 20 replications, instability threshold 0.1.
    """

    n: int
    subsample_size: int | None = None
    reps: int = 20
    beta: float = 0.1

    def __post_init__(self):
        if self.subsample_size is None:
            self.subsample_size = min(int(np.floor(10 * np.sqrt(self.n))),
                                      self.n - 1)
        if not 1 <= self.subsample_size < self.n:
            raise ParameterError(
                f"subsample size must be in [1, {self.n - 1}]"
            )
        if self.reps < 2:
            raise ParameterError("at least two replications are required")
        if not 0.0 < self.beta <= 0.5:
            raise ParameterError(f"beta must be in (0, 0.5], got {self.beta}")


@dataclass
class SelectionResult:
    """A chosen penalty level with its supporting per-lambda scores."""

    criterion: str
    lambda_index: int | None
    lam: float
    graph: AdjacencyMatrix
    scores: np.ndarray
    boundary_warning: bool = False


def gaussian_loglik(theta, summary: CovarianceSummary) -> float:
    """log det(Theta) - trace(S Theta), the scaled Gaussian log-likelihood."""
    if sp.issparse(theta):
        theta = theta.toarray()
    theta = np.asarray(theta, dtype=np.float64)
    sign, logdet = np.linalg.slogdet(theta)
    if sign <= 0:
        raise NumericError("precision estimate is not positive definite")
    return float(logdet - np.sum(summary.s * theta))


def _estimate_path(method: str, summary: CovarianceSummary, lambdas) -> GraphPath:
    if method == "mb":
        return mb_path(summary, lambdas)
    if method == "glasso":
        return glasso_path(summary, lambdas).base
    if method == "correlation":
        return correlation_threshold_path(summary, lambdas)
    raise ParameterError(f"unknown estimator {method!r}")


def edge_instability(edge_freq: np.ndarray, d: int) -> np.ndarray:
    """Total instability per lambda from per-pair selection frequencies.

    edge_freq has shape (nlambda, d, d) with entries in [0, 1].
    """
    xi = edge_freq
    pairs = d * (d - 1) / 2.0
    iu = np.triu_indices(d, k=1)
    return np.array([(2.0 * x[iu] * (1.0 - x[iu])).sum() / pairs for x in xi])


def stars_select(x: Dataset, lambdas, method: str = "mb",
                 config: StarsConfig | None = None,
                 seed: int = 0) -> SelectionResult:
    """Stability-based selection over a fixed penalty sequence.

    Estimates the path on many random subsamples, averages per-edge
    selection indicators, monotonizes the total instability along the
    descending penalties, and picks the least regularization whose
    monotonized instability stays within config.beta.  The chosen graph is
    refit on the full data.
    """
    values = _lambda_values(lambdas)
    config = config or StarsConfig(n=x.n)
    d = x.d
    nl = len(values)
    counts = np.zeros((nl, d, d))
    streams = np.random.SeedSequence(seed).spawn(config.reps)
    for r in range(config.reps):
        rng = np.random.default_rng(streams[r])
        rows = rng.choice(x.n, size=config.subsample_size, replace=False)
        sub = Dataset(values=x.values[rows], labels=list(x.labels))
        path = _estimate_path(method, correlation_matrix(sub), values)
        for k, graph in enumerate(path.graphs):
            for i, j in graph.edges:
                counts[k, i, j] += 1.0
    dbar = edge_instability(counts / config.reps, d)
    dbar_mono = np.maximum.accumulate(dbar)

    ok = np.nonzero(dbar_mono <= config.beta)[0]
    boundary = len(ok) == 0
    k = 0 if boundary else int(ok[-1])

    full_path = _estimate_path(method, correlation_matrix(x), values)
    return SelectionResult(criterion="stars", lambda_index=k,
                           lam=float(values[k]), graph=full_path.graphs[k],
                           scores=dbar_mono, boundary_warning=boundary)


def ric_select(x: Dataset, method: str = "mb", reps: int = 20,
               seed: int = 0) -> SelectionResult:
    """Permutation-calibrated penalty selection.

    Each replication permutes the row order independently within every
    column (destroying cross-column dependence while preserving the
    marginals) and records the largest off-diagonal |correlation| of the
    permuted data.  The penalty is the mean over replications and the
    estimator is refit on the original data at that level.
    """
    if reps < 1:
        raise ParameterError("at least one replication is required")
    summary = correlation_matrix(x)
    streams = np.random.SeedSequence(seed).spawn(reps)
    lam_r = np.empty(reps)
    for r in range(reps):
        rng = np.random.default_rng(streams[r])
        permuted = np.column_stack([
            x.values[rng.permutation(x.n), j] for j in range(x.d)
        ])
        lam_r[r] = lambda_max(
            correlation_matrix(Dataset(values=permuted, labels=list(x.labels)))
        )
    lam_star = float(lam_r.mean())
    path = _estimate_path(method, summary, np.array([lam_star]))
    return SelectionResult(criterion="ric", lambda_index=None, lam=lam_star,
                           graph=path.graphs[0], scores=lam_r)


def ebic_select(path: PrecisionPath, summary: CovarianceSummary,
                gamma: float = 0.5) -> SelectionResult:
    """Extended BIC over a graphical-lasso path.

    EBIC(lam) = -n * loglik + |E| log n + 4 gamma |E| log d, minimized over
    the path; ties go to the larger penalty (the sparser model).
    """
    if gamma < 0:
        raise ParameterError(f"gamma must be >= 0, got {gamma}")
    base = path.base
    n, d = summary.n, summary.d
    scores = np.empty(len(base.lambdas))
    for k, theta in enumerate(path.thetas):
        try:
            loglik = gaussian_loglik(theta, summary)
        except NumericError as exc:
            raise NumericError(
                f"non-PD precision estimate at path index {k}"
            ) from exc
        ne = base.graphs[k].num_edges
        scores[k] = (-n * loglik + ne * np.log(n)
                     + 4.0 * gamma * ne * np.log(d))
    # first index of the minimum = largest lambda among ties
    k = int(np.argmin(scores))
    return SelectionResult(criterion="ebic", lambda_index=k,
                           lam=float(base.lambdas[k]), graph=base.graphs[k],
                           scores=scores)
