"""Undirected graph container with a canonical sparse edge-list form."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class AdjacencyMatrix:
    """An undirected graph on d nodes stored as a sorted edge list.

    Edges are 0-indexed pairs (i, j) with i < j, sorted lexicographically,
    with no duplicates and no self-loops.
    """

    d: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.d < 1:
            raise ParameterError(f"node count must be >= 1, got {self.d}")
        object.__setattr__(self, "edges", tuple(
            (int(i), int(j)) for i, j in self.edges
        ))
        seen = set()
        prev = None
        for i, j in self.edges:
            if not (0 <= i < j < self.d):
                raise ParameterError(f"invalid edge ({i}, {j}) for d={self.d}")
            if (i, j) in seen:
                raise ParameterError(f"duplicate edge ({i}, {j})")
            if prev is not None and (i, j) < prev:
                raise ParameterError("edges must be sorted lexicographically")
            seen.add((i, j))
            prev = (i, j)

    @classmethod
    def from_pairs(cls, d: int, pairs) -> "AdjacencyMatrix":
        """Build from any iterable of (i, j) pairs; normalizes order."""
        canon = sorted({(min(i, j), max(i, j)) for i, j in pairs})
        return cls(d=d, edges=tuple(canon))

    @classmethod
    def from_dense(cls, a: np.ndarray) -> "AdjacencyMatrix":
        """Build from the nonzero off-diagonal pattern of a square matrix."""
        a = np.asarray(a)
        iu, ju = np.triu_indices(a.shape[0], k=1)
        mask = (a[iu, ju] != 0) | (a[ju, iu] != 0)
        return cls(a.shape[0], tuple(zip(iu[mask].tolist(), ju[mask].tolist())))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def density(self) -> float:
        pairs = self.d * (self.d - 1) // 2
        return len(self.edges) / pairs if pairs else 0.0

    def to_dense(self) -> np.ndarray:
        """0/1 symmetric adjacency matrix with zero diagonal."""
        a = np.zeros((self.d, self.d))
        for i, j in self.edges:
            a[i, j] = a[j, i] = 1.0
        return a

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges)

    def relabel(self, perm: np.ndarray) -> "AdjacencyMatrix":
        """Apply a node permutation: new index of node i is perm[i]."""
        return AdjacencyMatrix.from_pairs(
            self.d, ((perm[i], perm[j]) for i, j in self.edges)
        )
