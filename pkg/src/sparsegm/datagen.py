"""Synthetic graph structures, Gaussian covariance models, and samplers.

Supported structures: hub, cluster, band, scale-free (preferential
attachment), and Erdos-Renyi random graphs.  A structure is converted to a
positive-definite precision matrix by placing a constant magnitude on edge
positions, shifting the spectrum, and rescaling to unit marginal variances;
multivariate Gaussian data is then drawn through the Cholesky factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .errors import NumericError, ParameterError
from .graphs import AdjacencyMatrix

STRUCTURES = ("hub", "cluster", "band", "scale-free", "random")


@dataclass
class GraphStructureSpec:
    """Parameters of a simulated graph structure.

    Only the fields relevant to the chosen structure are used: ``g`` for
    hub/cluster, ``bandwidth`` for band, ``edge_prob`` for random,
    ``intra_prob`` for cluster.  Unset fields take their documented defaults.
    """

    structure: str
    d: int
    g: int | None = None
    bandwidth: int = 1
    edge_prob: float | None = None
    intra_prob: float = 0.3

    def __post_init__(self):
        if self.structure not in STRUCTURES:
            raise ParameterError(f"unknown structure {self.structure!r}")
        if self.d < 2:
            raise ParameterError(f"d must be >= 2, got {self.d}")
        if self.g is None:
            self.g = math.ceil(self.d / 20)
        if not 1 <= self.g <= self.d:
            raise ParameterError(f"g must be in [1, {self.d}], got {self.g}")
        if not 1 <= self.bandwidth <= self.d - 1:
            raise ParameterError(
                f"bandwidth must be in [1, {self.d - 1}], got {self.bandwidth}"
            )
        if self.edge_prob is None:
            self.edge_prob = min(1.0, 3.0 / self.d)
        for name, p in (("edge_prob", self.edge_prob),
                        ("intra_prob", self.intra_prob)):
            if not 0.0 <= p <= 1.0:
                raise ParameterError(f"{name} must be in [0, 1], got {p}")


@dataclass
class CovarianceModel:
    """A Gaussian model whose precision support matches a known graph.

    ``omega`` is the rescaled precision matrix, ``sigma`` its exact inverse
    with unit diagonal, and ``truth`` the generating edge set.
    """

    omega: np.ndarray
    sigma: np.ndarray
    truth: AdjacencyMatrix

    @property
    def d(self) -> int:
        return self.truth.d


@dataclass
class SyntheticDataset:
    """Sampled data together with the model that generated it."""

    data: Dataset
    model: CovarianceModel
    seed: int


def _contiguous_groups(d: int, g: int) -> list[np.ndarray]:
    """Split 0..d-1 into g contiguous blocks, earlier blocks larger."""
    return [np.asarray(b) for b in np.array_split(np.arange(d), g)]


def generate_structure(spec: GraphStructureSpec, seed: int = 0) -> AdjacencyMatrix:
    """Simulate a ground-truth graph of the requested structure.

    Deterministic given (spec, seed).  Hub and cluster partition the nodes
    into ``g`` contiguous groups; the hub is the first node of each group.
    Scale-free growth adds one edge per arriving node, starting from a
    single edge.
    """
    rng = np.random.default_rng(seed)
    d = spec.d
    pairs: list[tuple[int, int]] = []

    if spec.structure == "band":
        pairs = [(i, j) for i in range(d)
                 for j in range(i + 1, min(i + spec.bandwidth + 1, d))]
    elif spec.structure == "hub":
        for block in _contiguous_groups(d, spec.g):
            hub = int(block[0])
            pairs.extend((hub, int(j)) for j in block[1:])
    elif spec.structure == "cluster":
        for block in _contiguous_groups(d, spec.g):
            for a in range(len(block)):
                for b in range(a + 1, len(block)):
                    if rng.random() < spec.intra_prob:
                        pairs.append((int(block[a]), int(block[b])))
    elif spec.structure == "scale-free":
        pairs = [(0, 1)]
        degree = np.zeros(d)
        degree[:2] = 1
        for t in range(2, d):
            p = degree[:t] / degree[:t].sum()
            target = int(rng.choice(t, p=p))
            pairs.append((target, t))
            degree[target] += 1
            degree[t] += 1
    else:  # random (Erdos-Renyi)
        for i in range(d):
            for j in range(i + 1, d):
                if rng.random() < spec.edge_prob:
                    pairs.append((i, j))

    return AdjacencyMatrix.from_pairs(d, pairs)


def build_covariance_model(adj: AdjacencyMatrix, v: float = 0.3,
                           u: float = 0.1) -> CovarianceModel:
    """Turn an adjacency pattern into a valid Gaussian covariance model.

    The base precision is v*A + I; its spectrum is shifted up by
    max(0, -lambda_min) + 0.1 + u to force positive definiteness, and the
    inverse is rescaled to a unit-diagonal covariance.  The returned
    ``omega`` is rescaled consistently, so sigma @ omega = I exactly.
    """
    if v <= 0:
        raise ParameterError(f"v must be > 0, got {v}")
    if u < 0:
        raise ParameterError(f"u must be >= 0, got {u}")
    a = adj.to_dense()
    omega0 = v * a + np.eye(adj.d)
    lam_min = float(np.linalg.eigvalsh(omega0)[0])
    shift = max(0.0, -lam_min) + 0.1 + u
    omega_raw = omega0 + shift * np.eye(adj.d)

    inv = np.linalg.inv(omega_raw)
    inv = (inv + inv.T) / 2.0
    scale = np.sqrt(np.diag(inv))
    sigma = inv / np.outer(scale, scale)
    np.fill_diagonal(sigma, 1.0)
    omega = omega_raw * np.outer(scale, scale)
    omega = (omega + omega.T) / 2.0
    return CovarianceModel(omega=omega, sigma=sigma, truth=adj)


def sample_dataset(model: CovarianceModel, n: int, seed: int = 0,
                   labels: list[str] | None = None) -> SyntheticDataset:
    """Draw n i.i.d. rows from N(0, sigma) via the Cholesky factor."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    try:
        chol = np.linalg.cholesky(model.sigma)
    except np.linalg.LinAlgError as exc:
        raise NumericError("covariance matrix is not positive definite") from exc
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, model.d))
    data = Dataset(values=z @ chol.T, labels=labels or [])
    return SyntheticDataset(data=data, model=model, seed=seed)
