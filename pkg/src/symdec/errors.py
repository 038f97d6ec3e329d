"""Exception types raised by the decoupling pipelines."""

from __future__ import annotations

__all__ = [
    "SymdecError",
    "NotASymplex",
    "NotSymplectic",
    "DimensionMismatch",
    "ComplexEigenvalues",
    "DegenerateB",
    "PrecisionLoss",
    "UnstableBlock",
    "BranchMismatch",
    "BoostDomain",
    "MaxStepsExceeded",
    "PivotComplex",
    "UnstableSystem",
]


class SymdecError(Exception):
    """Base class for all library-specific errors."""


class NotASymplex(SymdecError):
    """Matrix has cosymplex content above tolerance."""


class NotSymplectic(SymdecError):
    """Matrix violates the symplectic condition above tolerance."""


class DimensionMismatch(SymdecError):
    """Operands have incompatible shapes."""


class ComplexEigenvalues(SymdecError):
    """Eigenvalues lie off the real/imaginary axes; the real-axis
    block-diagonalization is infeasible (second invariant negative)."""


class DegenerateB(SymdecError):
    """Auxiliary vector b and all mass components vanish while the matrix
    is not block-diagonal; the geometric strategy has no handle on it."""


class PrecisionLoss(SymdecError):
    """Off-pattern entries above tolerance after a canonical-form step."""


class UnstableBlock(SymdecError):
    """A 2x2 block carries a real (hyperbolic) eigenvalue pair, so it has
    no rotation normal form; the block stays in Hamiltonian form."""

    def __init__(self, message: str, block: int | None = None):
        super().__init__(message)
        self.block = block


class BranchMismatch(SymdecError):
    """Input does not satisfy the chosen procedure's precondition."""


class BoostDomain(SymdecError):
    """A boost rapidity arctanh argument has modulus >= 1."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class MaxStepsExceeded(SymdecError):
    """Iteration did not converge within the step budget."""


class PivotComplex(SymdecError):
    """A 4x4 pivot subproblem has complex (off-axis) eigenvalues."""

    def __init__(self, message: str, pivot: tuple[int, int] | None = None):
        super().__init__(message)
        self.pivot = pivot


class UnstableSystem(SymdecError):
    """A matched distribution requires purely imaginary eigenvalue pairs."""
