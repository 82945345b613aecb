"""The two ring families we support, points of their spectra, and
specialization-closed subsets of those spectra.

Over Z the spectrum is the generic point (0) together with one closed point
(p) per prime.  Over Z/n only the closed points (p)/(n) with p | n exist.
A specialization-closed subset is either everything or a finite set of
closed points; over Z/n "everything" is itself a finite set of closed points
and is stored that way, so that structural equality is set equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from sympy import isprime, primefactors


class RingMismatch(ValueError):
    """Two values that must live over the same ring do not."""


@dataclass(frozen=True, order=True)
class RingSpec:
    """Z when ``n == 0``, otherwise Z/n with n >= 2."""

    n: int = 0

    def __post_init__(self):
        if self.n < 0 or self.n == 1:
            raise ValueError(f"unsupported ring modulus {self.n}")

    @classmethod
    def integers(cls) -> RingSpec:
        return cls(0)

    @classmethod
    def mod(cls, n: int) -> RingSpec:
        if n < 2:
            raise ValueError(f"Z/n needs n >= 2, got {n}")
        return cls(n)

    @property
    def is_integers(self) -> bool:
        return self.n == 0

    @property
    def modulus(self) -> int:
        return self.n

    @cached_property
    def closed_points(self) -> tuple[int, ...]:
        """Primes of the closed points; only finite over Z/n."""
        if self.is_integers:
            raise ValueError("Z has infinitely many closed points")
        return tuple(int(p) for p in primefactors(self.n))

    def __str__(self):
        return "Z" if self.is_integers else f"Z/{self.n}"


ZZ = RingSpec(0)


def same_ring(*rings: RingSpec) -> RingSpec:
    first = rings[0]
    for r in rings[1:]:
        if r != first:
            raise RingMismatch(f"ring mismatch: {first} vs {r}")
    return first


@dataclass(frozen=True)
class PrimeIdeal:
    """A point of Spec R.  ``p == 0`` is the generic point of Spec Z."""

    ring: RingSpec
    p: int

    def __post_init__(self):
        if self.p == 0:
            if not self.ring.is_integers:
                raise ValueError(f"(0) is not prime in {self.ring}")
        elif not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        elif not self.ring.is_integers and self.ring.n % self.p:
            raise ValueError(f"{self.p} does not divide {self.ring.n}")

    @classmethod
    def generic(cls, ring: RingSpec = ZZ) -> PrimeIdeal:
        return cls(ring, 0)

    @property
    def is_generic(self) -> bool:
        return self.p == 0

    def __lt__(self, other: PrimeIdeal) -> bool:
        return self.p < other.p

    def __str__(self):
        return f"({self.p})"


@dataclass(frozen=True)
class SuppSet:
    """A specialization-closed subset of Spec R.

    Build with :meth:`everything`, :meth:`closed`, or :meth:`empty`; the
    constructor canonicalizes, so ``==`` is equality of subsets.
    """

    ring: RingSpec
    is_everything: bool = False
    primes: tuple[int, ...] = field(default=())

    def __post_init__(self):
        primes = tuple(sorted(set(int(p) for p in self.primes)))
        for p in primes:
            # raises on 0, composites, and primes not dividing n
            if p == 0:
                raise ValueError("the generic point only appears inside 'everything'")
            PrimeIdeal(self.ring, p)
        if self.is_everything:
            if self.ring.is_integers:
                primes = ()
            else:
                primes = self.ring.closed_points
        everything = self.is_everything
        if not self.ring.is_integers:
            everything = False
        object.__setattr__(self, "primes", primes)
        object.__setattr__(self, "is_everything", everything)

    @classmethod
    def everything(cls, ring: RingSpec) -> SuppSet:
        return cls(ring, True)

    @classmethod
    def closed(cls, ring: RingSpec, primes) -> SuppSet:
        return cls(ring, False, tuple(primes))

    @classmethod
    def empty(cls, ring: RingSpec) -> SuppSet:
        return cls(ring, False, ())

    @property
    def is_empty(self) -> bool:
        return not self.is_everything and not self.primes

    @property
    def is_full(self) -> bool:
        """True when this is all of Spec R (over either ring family)."""
        if self.ring.is_integers:
            return self.is_everything
        return self.primes == self.ring.closed_points

    def points(self) -> list[PrimeIdeal]:
        """Explicit points; only possible when the set is finite."""
        if self.is_everything:
            raise ValueError("Spec Z is infinite")
        return [PrimeIdeal(self.ring, p) for p in self.primes]

    def __contains__(self, p: PrimeIdeal) -> bool:
        return supp_contains(self, p)

    def __le__(self, other: SuppSet) -> bool:
        return supp_subset(self, other)

    def __or__(self, other: SuppSet) -> SuppSet:
        return supp_union(self, other)

    def __str__(self):
        if self.is_everything:
            return "Spec Z"
        return "{" + ", ".join(f"({p})" for p in self.primes) + "}"


def supp_contains(s: SuppSet, p: PrimeIdeal) -> bool:
    same_ring(s.ring, p.ring)
    if s.is_everything:
        return True
    return p.p in s.primes


def supp_subset(a: SuppSet, b: SuppSet) -> bool:
    same_ring(a.ring, b.ring)
    if b.is_everything:
        return True
    if a.is_everything:
        return False
    return set(a.primes) <= set(b.primes)


def supp_union(a: SuppSet, b: SuppSet) -> SuppSet:
    same_ring(a.ring, b.ring)
    if a.is_everything or b.is_everything:
        return SuppSet.everything(a.ring)
    return SuppSet.closed(a.ring, a.primes + b.primes)


def first_outside(a: SuppSet, b: SuppSet) -> PrimeIdeal | None:
    """Smallest point of ``a`` not in ``b`` (the generic point sorts first)."""
    same_ring(a.ring, b.ring)
    if supp_subset(a, b):
        return None
    if a.is_everything:
        return PrimeIdeal.generic(a.ring)
    return PrimeIdeal(a.ring, min(set(a.primes) - set(b.primes)))


def support_of_integer(ring: RingSpec, d: int) -> SuppSet:
    """Supp(R/(d)) for a torsion order d >= 1 (d = 0 gives everything)."""
    if d == 0:
        return SuppSet.everything(ring)
    return SuppSet.closed(ring, (int(p) for p in primefactors(d)))
