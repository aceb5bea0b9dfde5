# core/errors.py

class BranchingError(Exception):
    """Root of every error raised by the toolkit. Carries the CLI exit code."""
    exit_code = 3


class DomainError(BranchingError):
    """A documented precondition of an operation does not hold."""
    exit_code = 1


class ContextMismatchError(DomainError):
    """Objects built for different values of e were combined."""


class ResourceBoundError(BranchingError):
    """A configured size bound (rank, n, ...) was exceeded."""
    exit_code = 2


class InvariantError(BranchingError):
    """An internal invariant failed. This always signals a bug or a wrong decision."""
    exit_code = 3


class InterpolationError(InvariantError):
    """Counting data could not be fitted by a stable integral polynomial."""


class CanonicalBasisError(InvariantError):
    """The triangular construction of a canonical basis element failed."""


class HeckeRelationError(InvariantError):
    """A defining relation of the affine Hecke algebra failed on some input."""

    def __init__(self, relation: str, witness):
        super().__init__(f"relation '{relation}' fails; witness: {witness}")
        self.relation = relation
        self.witness = witness


def check_bound(name: str, value: int, bound: int):
    """
    Raises ResourceBoundError when `value` exceeds `bound`.

    Args:
        name (str): Human readable name of the bounded quantity.
        value (int): The requested size.
        bound (int): The configured maximum.
    """
    if value > bound:
        raise ResourceBoundError(f"{name} = {value} exceeds the configured bound {bound}")
