"""Exception types raised across the package."""


class SemigroupError(ValueError):
    """Base class for every error raised by ordtree."""


class GcdError(SemigroupError):
    """Generators share a common factor, so the complement is infinite."""


class EmptyInput(SemigroupError):
    pass


class NotClosed(SemigroupError):
    """A candidate set is not closed under addition."""


class NotMember(SemigroupError):
    pass


class OrdinaryInput(SemigroupError):
    """The ordinarization transform is undefined on ordinary semigroups."""


class ResourceLimit(SemigroupError):
    """An enumeration would exceed the configured node cap."""


class UnboundedSystem(SemigroupError):
    pass


class InsufficientSamples(SemigroupError):
    pass


class InconsistentSamples(SemigroupError):
    """Samples disagree with the fitted quasipolynomial.

    ``first_mismatch`` is the largest sample argument that failed validation
    and ``validated_from`` the smallest argument from which every sample
    agrees.
    """

    def __init__(self, message, first_mismatch=None, validated_from=None):
        super().__init__(message)
        self.first_mismatch = first_mismatch
        self.validated_from = validated_from


class IntegralityViolation(SemigroupError):
    """A counting formula produced a non-integral or negative value."""


class NotPairwiseCoprime(SemigroupError):
    pass


class BadOrder(SemigroupError):
    pass


class BadRange(SemigroupError):
    pass
