"""
Exception hierarchy shared by every package.

The CLI and the HTTP backend translate these into exit codes and status codes,
so library code raises them instead of bare ValueError/RuntimeError.
"""


class ZTensorError(Exception):
    """Base class for all toolkit errors."""


# Input and shape errors

class TensorInputError(ZTensorError, ValueError):
    """Malformed tensor data or arguments."""


class IndexOutOfRangeError(TensorInputError):
    """An index tuple has the wrong length or an index outside [1, n]."""


class DuplicateEntryError(TensorInputError):
    """The same index tuple was supplied twice with different values."""


class DimensionMismatchError(TensorInputError):
    """Vector length, order or dimension do not agree."""


class InvalidIndexSetError(TensorInputError):
    """An index set is empty, improper, or leaves [n]."""


class TensorFormatError(TensorInputError):
    """A tensor file could not be parsed."""


class ZeroScalingError(TensorInputError):
    """A diagonal scaling vector has a zero component."""


# Z-form errors

class ZFormError(ZTensorError, ValueError):
    """The tensor is outside the D - C form the toolkit works with."""


class PositiveOffDiagonalError(ZFormError):
    """An off-diagonal entry is positive, so the tensor is not a Z-tensor."""


class NegativeDiagonalError(ZFormError):
    """A diagonal entry is negative."""


class NotZTensorError(ZFormError):
    """Raised by callers that need a Z-tensor and got something else."""


# Structural preconditions

class StructureError(ZTensorError, ValueError):
    """A structural precondition of an operation does not hold."""


class NotNonnegativeError(StructureError):
    """A nonnegative tensor was required."""


class NotWeaklyIrreducibleError(StructureError):
    """A weakly irreducible tensor was required."""


class GuardExceededError(ZTensorError):
    """A size guard (dense tuples, subsets, oracle size) would be exceeded."""


# Numerical failures

class NumericalError(ZTensorError):
    """A solver failed to produce a validated result."""


class MaxItersExceededError(NumericalError):
    """An iterative method hit its iteration budget."""


class NoEigenpairFoundError(NumericalError):
    """The brute-force oracle found no real eigenpair."""


class DegeneratePolynomialError(NumericalError):
    """A characteristic polynomial vanished identically."""


# Harness

class HarnessError(ZTensorError):
    """Base class for theorem-harness errors."""


class RetriesExhaustedError(HarnessError):
    """Rejection sampling did not produce an admissible tensor."""


class UnknownTheoremError(HarnessError, KeyError):
    """No check is registered under the requested id."""
