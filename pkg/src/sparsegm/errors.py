"""Exception hierarchy shared across the package.

The CLI maps these onto distinct exit codes: input errors (bad files or
degenerate data), config errors (invalid option combinations), and numeric
errors (failed factorizations, singular matrices).
"""


class SparseGMError(Exception):
    """Base class for all package errors."""


class ParameterError(SparseGMError):
    """An argument violates its documented precondition."""


class InputError(SparseGMError):
    """Input data is malformed or unusable."""


class FormatError(InputError):
    """A serialized file does not match its expected format."""


class DegenerateColumnError(InputError):
    """A data column is constant (or has too few distinct values)."""


class DegeneratePathError(ParameterError):
    """No regularization path exists (e.g. diagonal correlation matrix)."""


class NumericError(SparseGMError):
    """A numeric operation failed (non-PD matrix, singularity, ...)."""


class ConfigError(SparseGMError):
    """A pipeline configuration combines options that are not allowed."""
