"""Rank-based marginal Gaussianization (truncated empirical CDF transform).

Each column is replaced by standard normal quantiles of its truncated
empirical CDF values, then rescaled to unit sample standard deviation.
Monotone per-column distortions of the input leave the output unchanged,
since only ranks enter the transform.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri
from scipy.stats import rankdata

from .dataset import Dataset
from .errors import DegenerateColumnError


def truncation_level(n: int) -> float:
    """Truncation bound delta = 1 / (4 n^(1/4) sqrt(pi log n))."""
    return 1.0 / (4.0 * n ** 0.25 * np.sqrt(np.pi * np.log(n)))


def npn_truncation(x: Dataset) -> Dataset:
    """Apply the truncated rank transform column by column.

    One pass per column: average-ranks / n are clipped into
    [delta, 1 - delta], mapped through the standard normal quantile
    function, and the column is rescaled to unit sample sd.
    """
    n = x.n
    if n < 2:
        raise DegenerateColumnError("at least two rows are required")
    delta = truncation_level(n)
    out = np.empty_like(x.values)
    for j in range(x.d):
        col = x.values[:, j]
        if np.all(col == col[0]):
            raise DegenerateColumnError(
                f"column {x.labels[j]!r} is constant"
            )
        u = rankdata(col, method="average") / n
        z = ndtri(np.clip(u, delta, 1.0 - delta))
        out[:, j] = z / z.std(ddof=1)
    return Dataset(values=out, labels=list(x.labels))
