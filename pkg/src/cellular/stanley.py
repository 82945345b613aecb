"""The phi-invariant of acyclic classes of finite complexes.

For an acyclic class A, phi_A(i) is the union of Supp(H_k X) over k <= i and
X in A.  It is increasing in i and determines A on finite complexes, so two
finitely generated classes agree exactly when their phi functions agree.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

from .complexes import Finite, homology
from .rings import RingSpec, SuppSet, same_ring


@dataclass(frozen=True)
class PhiFunction:
    """A step function Z -> {specialization-closed sets of primes}.

    ``breakpoints`` is a sorted tuple of (degree, value); the value is empty
    below the first breakpoint and constant between consecutive ones.
    """

    ring: RingSpec
    breakpoints: tuple[tuple[int, SuppSet], ...] = ()

    def __post_init__(self):
        points = []
        current = SuppSet.empty(self.ring)
        for degree, value in sorted(self.breakpoints, key=lambda b: b[0]):
            if value.ring != self.ring:
                raise ValueError("breakpoint support lives over another ring")
            if points and points[-1][0] == degree:
                raise ValueError(f"degree {degree} appears twice among the breakpoints")
            if not current <= value:
                raise ValueError(f"phi must be increasing; it drops at degree {degree}")
            if value != current:
                points.append((degree, value))
                current = value
        object.__setattr__(self, "breakpoints", tuple(points))

    @classmethod
    def constant(cls, ring: RingSpec, value: SuppSet, start: int) -> PhiFunction:
        return cls(ring, ((start, value),))

    def __call__(self, i: int) -> SuppSet:
        degrees = [d for d, _ in self.breakpoints]
        j = bisect_right(degrees, i)
        if j == 0:
            return SuppSet.empty(self.ring)
        return self.breakpoints[j - 1][1]

    @property
    def final(self) -> SuppSet:
        """The eventual (largest) value."""
        if not self.breakpoints:
            return SuppSet.empty(self.ring)
        return self.breakpoints[-1][1]


def _check_gens(gens: Sequence[Finite]) -> RingSpec:
    if not gens:
        raise ValueError("need at least one generator")
    return same_ring(*[g.ring for g in gens])


def phi_of_generators(gens: Sequence[Finite]) -> PhiFunction:
    ring = _check_gens(gens)
    jumps: dict[int, SuppSet] = {}
    for x in gens:
        for k, s in homology(x).support_profile:
            jumps[k] = jumps.get(k, SuppSet.empty(ring)) | s
    points = []
    running = SuppSet.empty(ring)
    for k in sorted(jumps):
        running = running | jumps[k]
        points.append((k, running))
    return PhiFunction(ring, tuple(points))


def phi_member(x: Finite, phi: PhiFunction) -> bool:
    same_ring(x.ring, phi.ring)
    return all(s <= phi(k) for k, s in homology(x).support_profile)


def classes_equal(gens1: Sequence[Finite], gens2: Sequence[Finite]) -> bool:
    same_ring(_check_gens(gens1), _check_gens(gens2))
    return phi_of_generators(gens1) == phi_of_generators(gens2)


def class_contained(gens1: Sequence[Finite], gens2: Sequence[Finite]) -> bool:
    """A(gens1) inside A(gens2), checked generator by generator."""
    same_ring(_check_gens(gens1), _check_gens(gens2))
    phi = phi_of_generators(gens2)
    return all(phi_member(x, phi) for x in gens1)


def localizing_member(x: Finite, primes: SuppSet) -> bool:
    """Whether x lies in the localizing class of ``primes``: degree-blind."""
    same_ring(x.ring, primes.ring)
    return homology(x).total_support <= primes
