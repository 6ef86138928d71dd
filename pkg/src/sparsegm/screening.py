"""Correlation screening ahead of graph estimation.

Two rules: an exact block decomposition (connected components of the
lambda-thresholded correlation graph, after Witten et al.'s result that
the graphical lasso decomposes across them), and a lossy top-k candidate
neighborhood restriction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass
class CovarianceSummary:
    """Sample correlation matrix S with the originating sample count."""

    s: np.ndarray
    n: int

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=np.float64)
        if self.s.ndim != 2 or self.s.shape[0] != self.s.shape[1]:
            raise ParameterError("correlation matrix must be square")
        if not np.allclose(self.s, self.s.T, atol=1e-10):
            raise ParameterError("correlation matrix must be symmetric")
        if not np.allclose(np.diag(self.s), 1.0, atol=1e-8):
            raise ParameterError("correlation matrix must have unit diagonal")
        if np.abs(self.s).max() > 1.0 + 1e-8:
            raise ParameterError("correlation entries must lie in [-1, 1]")

    @property
    def d(self) -> int:
        return self.s.shape[0]


@dataclass
class BlockPartition:
    """Connected components of the |S| > lambda graph."""

    blocks: list[np.ndarray]
    lam: float


@dataclass
class NeighborhoodPlan:
    """Per-node candidate neighbor sets of size min(k, d-1)."""

    candidates: list[np.ndarray]
    k: int

    def edge_mask(self) -> np.ndarray:
        """Symmetrized union of the candidate neighborhoods as a boolean
        d-by-d matrix (zero diagonal)."""
        d = len(self.candidates)
        mask = np.zeros((d, d), dtype=bool)
        for j, cand in enumerate(self.candidates):
            mask[j, cand] = True
        return mask | mask.T


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def lossless_partition(summary: CovarianceSummary, lam: float) -> BlockPartition:
    """Partition nodes into connected components of the graph with an edge
    wherever |S_ij| > lambda (strict).

    Solving the graphical lasso independently on each block reproduces the
    unrestricted solution exactly.
    """
    if lam < 0:
        raise ParameterError(f"lambda must be >= 0, got {lam}")
    d = summary.d
    uf = _UnionFind(d)
    iu, ju = np.nonzero(np.triu(np.abs(summary.s) > lam, k=1))
    for i, j in zip(iu.tolist(), ju.tolist()):
        uf.union(i, j)
    roots: dict[int, list[int]] = {}
    for i in range(d):
        roots.setdefault(uf.find(i), []).append(i)
    blocks = [np.asarray(members) for _, members in sorted(roots.items())]
    return BlockPartition(blocks=blocks, lam=lam)


def lossy_neighborhoods(summary: CovarianceSummary, k: int) -> NeighborhoodPlan:
    """Retain, for each node, the k neighbors of largest |correlation|.

    Ties break toward the smaller index; the candidate sets are sorted.
    """
    d = summary.d
    if not 1 <= k <= d - 1:
        raise ParameterError(f"k must be in [1, {d - 1}], got {k}")
    a = np.abs(summary.s).copy()
    np.fill_diagonal(a, -np.inf)
    candidates = []
    idx = np.arange(d)
    for j in range(d):
        # stable sort on (-|s|, index) implements the smaller-index tie-break
        order = np.lexsort((idx, -a[j]))
        candidates.append(np.sort(order[:k]))
    return NeighborhoodPlan(candidates=candidates, k=k)
