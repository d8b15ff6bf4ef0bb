"""Ordinarization invariants of numerical semigroups.

Exact computations on numerical semigroups: the ordinarization transform and
tree, counts of semigroups by genus and ordinarization number, lattice-point
counting and quasipolynomial fitting, and closed forms for two-generator,
supersymmetric and interval-generated semigroups.
"""

from ordtree.errors import (
    BadOrder,
    BadRange,
    EmptyInput,
    GcdError,
    InconsistentSamples,
    InsufficientSamples,
    IntegralityViolation,
    NotClosed,
    NotMember,
    NotPairwiseCoprime,
    OrdinaryInput,
    ResourceLimit,
    SemigroupError,
    UnboundedSystem,
)
from ordtree.semigroup import (
    AperyData,
    GeneratorData,
    NumericalSemigroup,
    apery_set,
    factorizations,
    first_multi_factorization,
    from_gaps,
    from_generators,
    from_kunz,
    minimal_generators,
    ordinary,
)

__version__ = "0.1.0"

__all__ = [
    "AperyData",
    "BadOrder",
    "BadRange",
    "EmptyInput",
    "GcdError",
    "GeneratorData",
    "InconsistentSamples",
    "InsufficientSamples",
    "IntegralityViolation",
    "NotClosed",
    "NotMember",
    "NotPairwiseCoprime",
    "NumericalSemigroup",
    "OrdinaryInput",
    "ResourceLimit",
    "SemigroupError",
    "UnboundedSystem",
    "apery_set",
    "factorizations",
    "first_multi_factorization",
    "from_gaps",
    "from_generators",
    "from_kunz",
    "minimal_generators",
    "ordinary",
]
