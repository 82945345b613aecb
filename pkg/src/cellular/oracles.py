"""Brute-force reference computations for small inputs.

Nothing here shares an algorithm with the main engine: minors instead of
row reduction, element enumeration instead of lattices.  Inputs beyond the
stated size limits raise :class:`OracleSizeError` rather than being sampled.
"""

from __future__ import annotations

import random
from collections import deque
from itertools import combinations, product
from math import gcd, prod

from sympy import factorint

from .complexes import FreeComplex, HomologyObject
from .exactla import IntMatrix, determinant
from .modules import FPModule
from .rings import same_ring

MAX_MINOR_DIM = 5
MAX_GROUP_ORDER = 4096
MAX_ENUM_MODULUS = 9
MAX_ENUM_RANK = 3


class OracleSizeError(ValueError):
    """The input is too large for exhaustive checking."""


def oracle_snf_minors(a: IntMatrix) -> list[int]:
    """[g_1, g_2, ...] with g_k the gcd of all k x k minors of a."""
    k_max = min(a.rows, a.cols)
    if k_max > MAX_MINOR_DIM:
        raise OracleSizeError(f"minor enumeration is limited to dimension {MAX_MINOR_DIM}")
    out = []
    for k in range(1, k_max + 1):
        g = 0
        for rs in combinations(range(a.rows), k):
            for cs in combinations(range(a.cols), k):
                g = gcd(g, determinant(a.select_rows(rs).select_columns(cs)))
        out.append(g)
    return out


class FiniteGroupTable:
    """The elements of Z/d_1 + ... + Z/d_m, stored as tuples of residues."""

    def __init__(self, orders):
        self.orders = tuple(int(d) for d in orders)
        if any(d <= 0 for d in self.orders):
            raise OracleSizeError("only finite groups have a group table")
        size = prod(self.orders)
        if size > MAX_GROUP_ORDER:
            raise OracleSizeError(f"group of order {size} exceeds {MAX_GROUP_ORDER}")
        self.elements = list(product(*[range(d) for d in self.orders]))
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.zero = tuple(0 for _ in self.orders)

    @classmethod
    def of_module(cls, m: FPModule) -> FiniteGroupTable:
        return cls(m.cyclic_orders)

    @property
    def order(self) -> int:
        return len(self.elements)

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.orders))

    def neg(self, a):
        return tuple(-x % d for x, d in zip(a, self.orders))

    def multiple(self, k: int, a):
        return tuple(k * x % d for x, d in zip(a, self.orders))

    def spot_check(self, samples: int = 50, seed: int = 0) -> bool:
        """Associativity, commutativity and inverses on random triples."""
        rng = random.Random(seed)
        for _ in range(samples):
            a, b, c = (rng.choice(self.elements) for _ in range(3))
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)):
                return False
            if self.add(a, b) != self.add(b, a):
                return False
            if self.add(a, self.neg(a)) != self.zero:
                return False
        return self.order == prod(self.orders)

    def generated_subgroup(self, gens) -> set:
        seen = {self.zero}
        queue = deque([self.zero])
        gens = list(gens)
        while queue:
            e = queue.popleft()
            for g in gens:
                f = self.add(e, g)
                if f not in seen:
                    seen.add(f)
                    queue.append(f)
        return seen


def oracle_quotient_of_sum(n: FPModule, m: FPModule) -> bool:
    """Whether the images of all homomorphisms m -> n generate n.

    A homomorphism out of Z/a_1 + ... + Z/a_k is a free choice of generator
    images e_i with a_i * e_i = 0, so the subgroup generated by all images
    is the one generated by every admissible generator image.
    """
    ring = same_ring(n.ring, m.ring)
    if ring.is_integers and n.free_rank:
        # a finitely generated torsion-free part is reachable only from Z
        return m.free_rank > 0
    if ring.is_integers and m.free_rank:
        return True
    target = FiniteGroupTable.of_module(n)
    images = set()
    for a in m.cyclic_orders:
        images.update(e for e in target.elements if target.multiple(a, e) == target.zero)
    return len(target.generated_subgroup(images)) == target.order


def _vectors(n: int, r: int):
    return list(product(range(n), repeat=r))


def _apply(d: IntMatrix, v, n: int):
    return tuple(sum(d[i, j] * v[j] for j in range(d.cols)) % n for i in range(d.rows))


def _quotient_invariants(cycles: set, boundaries: set, n: int) -> list[int]:
    """Invariant factors of cycles/boundaries from the sizes of p^e-torsion."""
    size = len(cycles) // len(boundaries)
    if size == 1:
        return []

    def scaled(k, v):
        return tuple(k * x % n for x in v)

    elementary = []
    for p in factorint(size):
        counts = [1]
        e = 1
        while True:
            pe = p ** e
            c = sum(1 for z in cycles if scaled(pe, z) in boundaries) // len(boundaries)
            counts.append(c)
            if c == counts[-2]:
                break
            e += 1
        # number of cyclic p-factors of order >= p^e
        at_least = []
        for e in range(1, len(counts)):
            ratio = counts[e] // counts[e - 1]
            r = 0
            while ratio > 1:
                ratio //= p
                r += 1
            at_least.append(r)
        for e, r in enumerate(at_least, start=1):
            nxt = at_least[e] if e < len(at_least) else 0
            elementary.extend([p ** e] * (r - nxt))
    # combine elementary divisors into an ascending divisibility chain
    by_prime: dict[int, list[int]] = {}
    for q in elementary:
        by_prime.setdefault(next(iter(factorint(q))), []).append(q)
    length = max(len(v) for v in by_prime.values())
    factors = [1] * length
    for qs in by_prime.values():
        qs.sort(reverse=True)
        for i, q in enumerate(qs):
            factors[length - 1 - i] *= q
    return factors


def oracle_homology_enum(x: FreeComplex) -> HomologyObject:
    """Homology of a complex over Z/n by listing every chain."""
    ring = x.ring
    n = ring.n
    if ring.is_integers or n > MAX_ENUM_MODULUS:
        raise OracleSizeError(f"enumeration needs Z/n with n <= {MAX_ENUM_MODULUS}")
    if any(x.rank(k) > MAX_ENUM_RANK for k in x.degrees):
        raise OracleSizeError(f"enumeration needs ranks <= {MAX_ENUM_RANK}")
    out = {}
    for k in x.degrees:
        zero = tuple([0] * x.rank(k - 1))
        dk = x.d(k)
        cycles = {v for v in _vectors(n, x.rank(k)) if _apply(dk, v, n) == zero}
        dk1 = x.d(k + 1)
        boundaries = {_apply(dk1, w, n) for w in _vectors(n, x.rank(k + 1))}
        factors = _quotient_invariants(cycles, boundaries, n)
        if factors:
            out[k] = FPModule.from_invariants(ring, factors)
    return HomologyObject(ring, out)
