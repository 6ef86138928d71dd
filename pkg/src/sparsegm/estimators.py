"""Regularization-path graph estimators.

Three methods over a shared sample correlation matrix: neighborhood
regression (per-node lasso with OR/AND symmetrization), the graphical
lasso (block coordinate descent over columns of the working covariance,
with optional exact block screening), and plain correlation thresholding.
Paths are warm-started along a descending penalty sequence and stored
sparsely (edge lists, sparse precision triplets).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .dataset import Dataset
from .errors import (DegenerateColumnError, DegeneratePathError, NumericError,
                     ParameterError)
from .graphs import AdjacencyMatrix
from .lasso import solve_indexed
from .screening import CovarianceSummary, NeighborhoodPlan, lossless_partition

METHODS = ("mb", "glasso", "correlation")


@dataclass
class LambdaSequence:
    """Strictly decreasing sequence of positive penalty levels."""

    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1 or len(self.values) == 0:
            raise ParameterError("lambda sequence must be a non-empty vector")
        if np.any(self.values <= 0):
            raise ParameterError("lambda values must be positive")
        if len(self.values) > 1 and np.any(np.diff(self.values) >= 0):
            raise ParameterError("lambda values must be strictly decreasing")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


@dataclass
class GraphPath:
    """One estimated graph per penalty level, most penalized first."""

    lambdas: np.ndarray
    graphs: list[AdjacencyMatrix]
    sparsity: list[float]
    method: str
    # (node, lambda index) pairs for mb, lambda indices for glasso
    nonconverged: list = field(default_factory=list)


@dataclass
class PrecisionPath:
    """Graphical-lasso path with sparse precision estimates per lambda."""

    base: GraphPath
    thetas: list[sp.csr_matrix]


def _lambda_values(lambdas) -> np.ndarray:
    """Accept a LambdaSequence or a raw descending array (zeros allowed,
    so the unpenalized solution can be requested explicitly)."""
    if isinstance(lambdas, LambdaSequence):
        return lambdas.values
    values = np.atleast_1d(np.asarray(lambdas, dtype=np.float64))
    if np.any(values < 0):
        raise ParameterError("lambda values must be >= 0")
    if len(values) > 1 and np.any(np.diff(values) >= 0):
        raise ParameterError("lambda values must be strictly decreasing")
    return values


def correlation_matrix(x: Dataset) -> CovarianceSummary:
    """Sample Pearson correlation of the dataset columns.

    Columns are centered and scaled by the sample sd (divisor n); constant
    columns are rejected.
    """
    if x.n < 2:
        raise ParameterError("at least two rows are required")
    values = x.values
    sd = values.std(axis=0, ddof=0)
    bad = np.nonzero(sd == 0)[0]
    if len(bad):
        raise DegenerateColumnError(f"column {x.labels[bad[0]]!r} is constant")
    z = (values - values.mean(axis=0)) / sd
    s = (z.T @ z) / x.n
    s = np.clip((s + s.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(s, 1.0)
    return CovarianceSummary(s=s, n=x.n)


def lambda_max(summary: CovarianceSummary) -> float:
    """Largest off-diagonal |correlation|: the smallest penalty giving an
    empty graph for every estimator here."""
    a = np.abs(summary.s).copy()
    np.fill_diagonal(a, 0.0)
    return float(a.max())


def lambda_sequence(summary: CovarianceSummary, nlambda: int = 10,
                    ratio: float = 0.1) -> LambdaSequence:
    """Log-spaced penalties from lambda_max down to ratio * lambda_max."""
    if nlambda < 1:
        raise ParameterError(f"nlambda must be >= 1, got {nlambda}")
    if not 0.0 < ratio < 1.0:
        raise ParameterError(f"ratio must be in (0, 1), got {ratio}")
    lmax = lambda_max(summary)
    if lmax == 0.0:
        raise DegeneratePathError(
            "correlation matrix is diagonal; no path exists"
        )
    if nlambda == 1:
        return LambdaSequence(np.array([lmax]))
    return LambdaSequence(np.geomspace(lmax, ratio * lmax, nlambda))


def mb_path(summary: CovarianceSummary, lambdas, plan: NeighborhoodPlan | None = None,
            sym: str = "or", tol: float = 1e-4) -> GraphPath:
    """Neighborhood-regression path.

    Each node is lasso-regressed on its candidate set (all other nodes
    unless a screening plan restricts it), warm-started along the
    descending penalties; an edge is kept when either (sym="or") or both
    (sym="and") endpoint regressions select it.
    """
    if sym not in ("or", "and"):
        raise ParameterError(f"sym must be 'or' or 'and', got {sym!r}")
    values = _lambda_values(lambdas)
    s = np.ascontiguousarray(summary.s)
    d = summary.d
    if plan is not None and len(plan.candidates) != d:
        raise ParameterError("screening plan dimension mismatch")
    nl = len(values)
    selected = [np.zeros((d, d), dtype=bool) for _ in range(nl)]
    nonconverged: list[tuple[int, int]] = []

    all_idx = np.arange(d, dtype=np.int64)
    for j in range(d):
        cand = (plan.candidates[j].astype(np.int64) if plan is not None
                else np.delete(all_idx, j))
        c = s[cand, j]
        beta = np.zeros(len(cand))
        for k, lam in enumerate(values):
            beta, converged, _ = solve_indexed(s, cand, c, lam, tol=tol,
                                               beta=beta)
            if not converged:
                nonconverged.append((j, k))
            selected[k][j, cand[beta != 0]] = True

    graphs, sparsity = [], []
    for k in range(nl):
        mask = (selected[k] | selected[k].T if sym == "or"
                else selected[k] & selected[k].T)
        graph = AdjacencyMatrix.from_dense(mask)
        graphs.append(graph)
        sparsity.append(graph.density)
    return GraphPath(lambdas=values, graphs=graphs, sparsity=sparsity,
                     method="mb", nonconverged=nonconverged)


def correlation_threshold_path(summary: CovarianceSummary, lambdas) -> GraphPath:
    """Edge (i, j) at penalty lam iff |S_ij| > lam; graphs are nested."""
    values = _lambda_values(lambdas)
    a = np.abs(summary.s).copy()
    np.fill_diagonal(a, 0.0)
    graphs, sparsity = [], []
    for lam in values:
        graph = AdjacencyMatrix.from_dense(a > lam)
        graphs.append(graph)
        sparsity.append(graph.density)
    return GraphPath(lambdas=values, graphs=graphs, sparsity=sparsity,
                     method="correlation")


def _glasso_block(s_block: np.ndarray, lam: float, tol: float, max_outer: int,
                  w_init: np.ndarray, allowed: np.ndarray | None,
                  betas: list[np.ndarray] | None,
                  kkt_factor: float = 1e-3):
    """Graphical lasso on one (sub)problem by block coordinate descent.

    Each column of the working covariance W is refreshed by a lasso on the
    remaining columns; the outer loop stops when the mean absolute change
    of W's off-diagonals falls below tol times the mean |S| off-diagonal,
    then the exact KKT residual of the reconstructed precision is checked
    and sweeps continue (with tightened thresholds) while it exceeds
    kkt_factor * tol * max(1, lam).  The tight certification keeps
    independent runs of the same problem (warm vs cold starts, screened
    vs unscreened) in agreement well inside the path tolerances.  Returns
    (theta, w, betas, converged).
    """
    p = s_block.shape[0]
    w = np.ascontiguousarray(w_init)
    np.fill_diagonal(w, np.diag(s_block) + lam)
    cands = []
    for j in range(p):
        others = np.delete(np.arange(p, dtype=np.int64), j)
        if allowed is not None:
            others = others[allowed[others, j]]
        cands.append(others)
        # entries outside the allowed set are pinned at zero
        if allowed is not None:
            blocked = np.setdiff1d(np.arange(p), np.append(others, j))
            w[blocked, j] = 0.0
            w[j, blocked] = 0.0
    if betas is None:
        betas = [np.zeros(len(cands[j])) for j in range(p)]

    off = ~np.eye(p, dtype=bool)
    mean_s_off = float(np.abs(s_block[off]).mean()) if p > 1 else 0.0
    thresh = tol * mean_s_off if mean_s_off > 0 else tol
    kkt_bound = kkt_factor * tol * max(1.0, lam)
    inner_tol = tol

    converged = False
    outer = 0
    while outer < max_outer:
        outer += 1
        w_old = w.copy()
        for j in range(p):
            idx = cands[j]
            if len(idx) == 0:
                continue
            beta = betas[j]
            solve_indexed(w, idx, s_block[idx, j], lam, tol=inner_tol, beta=beta)
            act = np.nonzero(beta)[0]
            w12 = (w[np.ix_(idx, idx[act])] @ beta[act] if len(act)
                   else np.zeros(len(idx)))
            w[idx, j] = w12
            w[j, idx] = w12
        if float(np.abs((w - w_old)[off]).mean()) >= thresh:
            continue
        theta = _recover_theta(w, cands, betas)
        if theta is not None:
            try:
                if _kkt_residual_dense(theta, s_block, lam) <= kkt_bound:
                    converged = True
                    break
            except NumericError:
                pass
        # stop rule met but stationarity not yet certified: keep sweeping
        thresh *= 0.1
        inner_tol = max(inner_tol * 0.1, 1e-12)
    if not converged:
        theta = _recover_theta(w, cands, betas)
    return theta, w, betas, converged


def _recover_theta(w, cands, betas):
    """Rebuild the precision estimate from the working covariance and the
    per-column lasso coefficients, symmetrized by averaging."""
    p = w.shape[0]
    theta = np.zeros((p, p))
    for j in range(p):
        idx = cands[j]
        beta = betas[j]
        denom = w[j, j] - (w[idx, j] @ beta if len(idx) else 0.0)
        if denom <= 0:
            return None
        theta[j, j] = 1.0 / denom
        if len(idx):
            theta[idx, j] += -beta * theta[j, j]
    out = (theta + theta.T) / 2.0
    np.fill_diagonal(out, np.diag(theta))
    return out


def _kkt_residual_dense(theta: np.ndarray, s: np.ndarray, lam: float) -> float:
    """Max off-diagonal stationarity violation of a dense precision
    estimate: inv(theta) - S must equal lam * sign(theta) on the support
    and stay within lam elsewhere."""
    try:
        chol = np.linalg.cholesky(theta)
    except np.linalg.LinAlgError as exc:
        raise NumericError("precision estimate is not positive definite") from exc
    inv_chol = np.linalg.inv(chol)
    w = inv_chol.T @ inv_chol
    r = w - s
    off = ~np.eye(theta.shape[0], dtype=bool)
    zero = (theta == 0.0) & off
    nz = (theta != 0.0) & off
    v = 0.0
    if zero.any():
        v = max(v, float(np.maximum(0.0, np.abs(r[zero]) - lam).max()))
    if nz.any():
        v = max(v, float(np.abs(r[nz] - lam * np.sign(theta[nz])).max()))
    return v


def glasso_kkt_residual(theta, summary: CovarianceSummary, lam: float) -> float:
    """Exact stationarity residual of a precision estimate; 0 for exact
    solutions of the penalized likelihood problem."""
    if sp.issparse(theta):
        theta = theta.toarray()
    theta = np.asarray(theta, dtype=np.float64)
    return _kkt_residual_dense(theta, summary.s, lam)


def glasso_path(summary: CovarianceSummary, lambdas, lossless: bool = True,
                plan: NeighborhoodPlan | None = None, tol: float = 1e-4,
                max_outer: int = 100) -> PrecisionPath:
    """Graphical-lasso path with a penalized diagonal (W_jj = S_jj + lam).

    With lossless=True each penalty level is decomposed into the connected
    components of the |S| > lam graph and solved blockwise, which is exact.
    A screening plan additionally pins entries outside the screened edge
    set at zero (lossy).  Warm starts carry W across the descending path.
    """
    values = _lambda_values(lambdas)
    s = summary.s
    d = summary.d
    allowed = plan.edge_mask() if plan is not None else None
    w_prev: np.ndarray | None = None

    graphs: list[AdjacencyMatrix] = []
    sparsity: list[float] = []
    thetas: list[sp.csr_matrix] = []
    nonconverged: list[int] = []

    for k, lam in enumerate(values):
        theta_full = np.zeros((d, d))
        w_full = np.zeros((d, d))
        blocks = (lossless_partition(summary, lam).blocks if lossless
                  else [np.arange(d)])
        ok = True
        for block in blocks:
            if len(block) == 1:
                j = int(block[0])
                theta_full[j, j] = 1.0 / (s[j, j] + lam)
                w_full[j, j] = s[j, j] + lam
                continue
            sub = np.ix_(block, block)
            s_block = s[sub]
            w_init = w_prev[sub].copy() if w_prev is not None else s_block.copy()
            allowed_b = allowed[sub] if allowed is not None else None
            theta_b, w_b, _, conv = _glasso_block(
                s_block, lam, tol, max_outer, w_init, allowed_b, None
            )
            if theta_b is None:
                raise NumericError(
                    f"graphical lasso failed at lambda index {k}"
                )
            theta_full[sub] = theta_b
            w_full[sub] = w_b
            ok = ok and conv
        if not ok:
            nonconverged.append(k)
        w_prev = w_full
        graph = AdjacencyMatrix.from_dense(
            theta_full - np.diag(np.diag(theta_full))
        )
        graphs.append(graph)
        sparsity.append(graph.density)
        thetas.append(sp.csr_matrix(theta_full))

    base = GraphPath(lambdas=values, graphs=graphs, sparsity=sparsity,
                     method="glasso", nonconverged=nonconverged)
    return PrecisionPath(base=base, thetas=thetas)
