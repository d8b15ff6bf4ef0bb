"""Numerical semigroups as a conductor plus a membership bit-table.

A numerical semigroup S is stored as its conductor ``c`` (least integer with
every larger integer in S) and a Python int whose bit ``i`` is set iff ``i`` is
in S, for ``0 <= i < c``. Everything else (gaps, generators, Apery sets) is
derived on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd
from typing import Iterable, Iterator, Sequence

from ordtree.errors import BadRange, EmptyInput, GcdError, NotClosed, NotMember

FactorizationVector = tuple  # coefficients over the minimal generators


def _low(n: int) -> int:
    return (1 << n) - 1


def is_closed(mask: int, window: int) -> bool:
    """Additive closure of the set given by ``mask`` below ``window``.

    Integers ``>= window`` are taken to be members, so only sums landing
    inside the window need checking, and the smaller summand is at most
    ``window // 2``.
    """
    gapmask = _low(window) & ~mask
    if not gapmask:
        return True
    for s in range(1, window // 2 + 1):
        if (mask >> s) & 1 and (mask << s) & gapmask:
            return False
    return True


@dataclass(frozen=True)
class NumericalSemigroup:
    """Immutable numerical semigroup.

    Build instances with :func:`from_generators`, :func:`from_gaps`,
    :func:`from_kunz` or :func:`ordinary`; the raw constructor trusts that
    ``members_below`` describes a set closed under addition.
    """

    conductor: int
    members_below: int

    def __post_init__(self):
        if self.conductor < 0:
            raise BadRange("conductor must be nonnegative")
        if self.conductor == 0:
            if self.members_below:
                raise BadRange("full monoid has an empty table")
            return
        if not self.members_below & 1:
            raise BadRange("0 must be a member")
        if self.members_below >> self.conductor:
            raise BadRange("table extends past the conductor")
        if (self.members_below >> (self.conductor - 1)) & 1:
            raise BadRange("conductor is not minimal")

    @classmethod
    def from_window(cls, mask: int, window: int) -> NumericalSemigroup:
        """Normalize a membership mask on ``[0, window)`` (members beyond)."""
        gapmask = _low(window) & ~mask
        conductor = gapmask.bit_length()
        return cls(conductor, mask & _low(conductor))

    # -- cached invariants -------------------------------------------------

    @cached_property
    def genus(self) -> int:
        return self.conductor - self.members_below.bit_count()

    @cached_property
    def frobenius(self) -> int:
        return self.conductor - 1

    @cached_property
    def multiplicity(self) -> int:
        if self.conductor == 0:
            return 1
        rest = self.members_below >> 1
        if not rest:
            return self.conductor
        return (rest & -rest).bit_length()

    @cached_property
    def generator_data(self) -> GeneratorData:
        return minimal_generators(self)

    # -- views -------------------------------------------------------------

    def contains(self, x: int) -> bool:
        if x < 0:
            return False
        if x >= self.conductor:
            return True
        return bool((self.members_below >> x) & 1)

    __contains__ = contains

    def gaps(self) -> list[int]:
        gapmask = _low(self.conductor) & ~self.members_below
        return [i for i in range(self.conductor) if (gapmask >> i) & 1]

    def members(self, upto: int) -> Iterator[int]:
        """Members in ``[0, upto]`` in increasing order."""
        for x in range(upto + 1):
            if self.contains(x):
                yield x

    def mask(self, window: int) -> int:
        """Membership bits on ``[0, window)``, window at least the conductor."""
        if window < self.conductor:
            return self.members_below & _low(window)
        return self.members_below | (_low(window) ^ _low(self.conductor))

    def count_members(self, lo: int, hi: int) -> int:
        """Number of members x with ``lo <= x <= hi``."""
        if hi < lo:
            return 0
        lo = max(lo, 0)
        bits = self.mask(hi + 1) >> lo
        return bits.bit_count()

    def is_ordinary(self) -> bool:
        return self.members_below == 1 or self.conductor == 0

    def replace(self, remove: int, add: int) -> NumericalSemigroup | None:
        """``S \\ {remove} | {add}`` if that set is a semigroup, else None."""
        window = max(self.conductor, remove + 1, add + 1)
        mask = self.mask(window)
        if not (mask >> remove) & 1 or (mask >> add) & 1:
            raise BadRange("remove must be a member and add a gap")
        mask = (mask & ~(1 << remove)) | (1 << add)
        if not is_closed(mask, window):
            return None
        return NumericalSemigroup.from_window(mask, window)

    def __repr__(self) -> str:
        if self.genus <= 12:
            return f"NumericalSemigroup(gaps={self.gaps()})"
        return f"NumericalSemigroup(genus={self.genus}, frobenius={self.frobenius})"


@dataclass(frozen=True)
class GeneratorData:
    minimal_generators: tuple[int, ...]
    effective_generators: tuple[int, ...]

    @property
    def embedding_dimension(self) -> int:
        return len(self.minimal_generators)

    @property
    def effectivity(self) -> int:
        return len(self.effective_generators)


@dataclass(frozen=True)
class AperyData:
    modulus: int
    apery: tuple[int, ...]
    kunz: tuple[int, ...] | None = None


# -- constructors ------------------------------------------------------------


def _check_positive(values: Iterable[int], what: str) -> list[int]:
    out = [int(v) for v in values]
    for v in out:
        if v < 1:
            raise BadRange(f"{what} must be positive integers, got {v}")
    return out


def from_generators(gens: Sequence[int]) -> NumericalSemigroup:
    """The semigroup of nonnegative integer combinations of ``gens``."""
    gens = sorted(set(_check_positive(gens, "generators")))
    if not gens:
        raise EmptyInput("need at least one generator")
    if reduce(gcd, gens) != 1:
        raise GcdError(f"gcd of {gens} is not 1")
    m = gens[0]
    window = 2 * gens[-1] + m + 1
    while True:
        full = _low(window)
        reach = 1
        for gen in gens:
            step = gen
            while step < window:
                reach = (reach | (reach << step)) & full
                step <<= 1
        conductor = (full & ~reach).bit_length()
        # m consecutive members inside the window settle everything above it
        if conductor + m <= window:
            return NumericalSemigroup(conductor, reach & _low(conductor))
        window *= 2


def from_gaps(gaps: Iterable[int]) -> NumericalSemigroup:
    gaps = set(_check_positive(gaps, "gaps"))
    if not gaps:
        return NumericalSemigroup(0, 0)
    window = max(gaps) + 1
    mask = _low(window)
    for x in gaps:
        mask &= ~(1 << x)
    if not is_closed(mask, window):
        raise NotClosed(f"complement of {sorted(gaps)} is not closed under addition")
    return NumericalSemigroup(window, mask)


def ordinary(g: int) -> NumericalSemigroup:
    """S_g = {0, g+1, g+2, ...}."""
    if g < 0:
        raise BadRange("genus must be nonnegative")
    if g == 0:
        return NumericalSemigroup(0, 0)
    return NumericalSemigroup(g + 1, 1)


def from_kunz(m: int, kunz: Sequence[int]) -> NumericalSemigroup:
    """Semigroup of multiplicity ``m`` whose Apery entries are ``k_i*m + i``."""
    if m < 2:
        raise BadRange("multiplicity must be at least 2")
    kunz = _check_positive(kunz, "Kunz coordinates")
    if len(kunz) != m - 1:
        raise BadRange(f"expected {m - 1} Kunz coordinates, got {len(kunz)}")
    apery = [0] + [k * m + i for i, k in enumerate(kunz, start=1)]
    window = max(apery) - m + 1
    mask = 0
    for x in range(window):
        if x >= apery[x % m]:
            mask |= 1 << x
    if not is_closed(mask, window):
        raise NotClosed(f"{tuple(kunz)} is not a Kunz coordinate vector")
    return NumericalSemigroup.from_window(mask, window)


# -- invariants --------------------------------------------------------------


def apery_set(S: NumericalSemigroup, n: int) -> AperyData:
    """Least member of S in each residue class modulo ``n``."""
    if n < 1 or not S.contains(n):
        raise NotMember(f"{n} is not a positive member")
    apery = []
    for i in range(n):
        x = i
        while not S.contains(x):
            x += n
        apery.append(x)
    kunz = None
    if n == S.multiplicity:
        kunz = tuple((w - i) // n for i, w in enumerate(apery) if i)
    return AperyData(n, tuple(apery), kunz)


def minimal_generators(S: NumericalSemigroup) -> GeneratorData:
    """Minimal generating set and the generators exceeding the Frobenius number.

    With m the multiplicity, the minimal generators are m together with the
    nonzero Apery elements that are not a sum of two nonzero Apery elements.
    """
    m = S.multiplicity
    if m == 1:
        return GeneratorData((1,), (1,))
    ap = sorted(apery_set(S, m).apery[1:])
    apset = set(ap)
    gens = [m]
    for w in ap:
        decomposable = False
        for u in ap:
            if 2 * u > w:
                break
            if (w - u) in apset:
                decomposable = True
                break
        if not decomposable:
            gens.append(w)
    gens.sort()
    eff = tuple(n for n in gens if n > S.frobenius)
    return GeneratorData(tuple(gens), eff)


def factorizations(S: NumericalSemigroup, n: int) -> set[FactorizationVector]:
    """All coefficient vectors over the minimal generators that sum to ``n``."""
    gens = S.generator_data.minimal_generators
    if n < 0:
        return set()
    out: set[FactorizationVector] = set()
    coeffs = [0] * len(gens)

    def dfs(i: int, rest: int) -> None:
        if i == len(gens) - 1:
            if rest % gens[i] == 0:
                coeffs[i] = rest // gens[i]
                out.add(tuple(coeffs))
            return
        for c in range(rest // gens[i] + 1):
            coeffs[i] = c
            dfs(i + 1, rest - c * gens[i])
        coeffs[i] = 0

    dfs(0, n)
    return out


def factorization_counts(S: NumericalSemigroup, bound: int) -> list[int]:
    """``counts[n] = |Z(n)|`` for ``0 <= n <= bound`` (coin-change recurrence)."""
    counts = [0] * (bound + 1)
    counts[0] = 1
    for gen in S.generator_data.minimal_generators:
        for x in range(gen, bound + 1):
            counts[x] += counts[x - gen]
    return counts


def first_multi_factorization(S: NumericalSemigroup, bound: int) -> int | None:
    """Least ``n <= bound`` with at least two factorizations, if any."""
    for n, c in enumerate(factorization_counts(S, bound)):
        if c >= 2:
            return n
    return None
