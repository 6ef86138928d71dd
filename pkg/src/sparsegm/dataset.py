"""Tabular dataset container used throughout the package."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError


@dataclass
class Dataset:
    """An n-by-d numeric data matrix with column labels.

    Rows are observations, columns are variables.  Values must be finite.
    """

    values: np.ndarray
    labels: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2:
            raise InputError("dataset must be a 2-d matrix")
        if not np.isfinite(self.values).all():
            bad = np.argwhere(~np.isfinite(self.values))[0]
            raise InputError(
                f"non-finite value at row {bad[0]}, column {bad[1]}"
            )
        if not self.labels:
            self.labels = [f"V{j + 1}" for j in range(self.values.shape[1])]
        if len(self.labels) != self.values.shape[1]:
            raise InputError(
                f"{len(self.labels)} labels for {self.values.shape[1]} columns"
            )

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]
