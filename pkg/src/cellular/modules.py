"""Finitely presented modules over Z and Z/n, and the exact module-level
decisions: support containment (acyclicity) and "quotient of a sum of M"
(cellularity).

A module is stored by a presentation matrix whose columns are relations.
Its invariant-factor normal form is computed once at construction.  Over
Z/n a summand isomorphic to Z/n is counted as free.

Canonical generators: several operations (evaluation images, witnesses of
surjections) speak about the cyclic decomposition
``Z/d_1 + ... + Z/d_m + F^r`` in exactly that order, torsion factors first
(ascending), then the free summands.  :attr:`FPModule.cyclic_orders` lists
the orders, using 0 for a free Z summand and n for a free Z/n summand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod

from sympy import factorint

from .exactla import (IntMatrix, block_diag, column_basis, hstack, in_span,
                      invariant_factors, kernel_lattice, solve)
from .rings import RingSpec, SuppSet, same_ring, support_of_integer


@dataclass(frozen=True, eq=False)
class FPModule:
    ring: RingSpec
    presentation: IntMatrix
    free_rank: int = field(init=False)
    invariant_factors: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        free, factors = invariant_factors(self.presentation, self.ring.n)
        object.__setattr__(self, "free_rank", free)
        object.__setattr__(self, "invariant_factors", tuple(factors))

    @classmethod
    def from_invariants(cls, ring: RingSpec, factors=(), free_rank: int = 0) -> FPModule:
        factors = [f for f in factors if abs(f) != 1]
        g = len(factors) + free_rank
        return cls(ring, IntMatrix.diagonal(factors, rows=g, cols=len(factors)))

    @classmethod
    def cyclic(cls, ring: RingSpec, order: int) -> FPModule:
        """R/(order); order 0 over Z (or n over Z/n) is the free module."""
        if order == 0 or (ring.n and order % ring.n == 0):
            return cls.free(ring, 1)
        return cls.from_invariants(ring, [order])

    @classmethod
    def free(cls, ring: RingSpec, rank: int = 1) -> FPModule:
        return cls(ring, IntMatrix.zeros(rank, 0))

    @classmethod
    def zero(cls, ring: RingSpec) -> FPModule:
        return cls(ring, IntMatrix.zeros(0, 0))

    @property
    def generators(self) -> int:
        return self.presentation.rows

    @property
    def normal_form(self) -> tuple[int, tuple[int, ...]]:
        return self.free_rank, self.invariant_factors

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_torsion(self) -> bool:
        """No free Z summand.  Every Z/n-module is torsion."""
        return not self.ring.is_integers or self.free_rank == 0

    @property
    def cyclic_orders(self) -> tuple[int, ...]:
        free_order = self.ring.n
        return self.invariant_factors + (free_order,) * self.free_rank

    @property
    def exponent(self) -> int:
        """Largest cyclic order; 0 if there is a free Z summand, 1 for 0."""
        orders = self.cyclic_orders
        if 0 in orders:
            return 0
        return max(orders, default=1)

    @property
    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        orders = self.cyclic_orders
        if 0 in orders:
            return None
        return prod(orders)

    def canonical(self) -> FPModule:
        return FPModule.from_invariants(self.ring, self.invariant_factors, self.free_rank)

    @cached_property
    def support(self) -> SuppSet:
        return support_of_integer(self.ring, self.exponent)

    def __eq__(self, other):
        """Isomorphism: same ring and same normal form."""
        if not isinstance(other, FPModule):
            return NotImplemented
        return self.ring == other.ring and self.normal_form == other.normal_form

    def __hash__(self):
        return hash((self.ring, self.normal_form))

    def __repr__(self):
        return f"FPModule({self.ring}, {self})"

    def __str__(self):
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            free = "Z" if self.ring.is_integers else f"Z/{self.ring.n}"
            parts.append(free if self.free_rank == 1 else f"{free}^{self.free_rank}")
        return " + ".join(parts) or "0"


def normal_form(m: FPModule) -> tuple[int, tuple[int, ...]]:
    return m.normal_form


def annihilator(m: FPModule) -> int:
    """Generator of Ann(m): 0 for the zero ideal, 1 for the unit ideal.

    Over Z/n the ideal (e)/(n) is reported by e = exp(m); so a module with
    a free summand reports n.
    """
    if m.is_zero:
        return 1
    return m.exponent


def support(m: FPModule) -> SuppSet:
    return m.support


def direct_sum(a: FPModule, b: FPModule) -> FPModule:
    ring = same_ring(a.ring, b.ring)
    return FPModule(ring, block_diag(a.presentation, b.presentation))


def module_sum(ms, ring: RingSpec) -> FPModule:
    out = FPModule.zero(ring)
    for m in ms:
        out = direct_sum(out, m)
    return out


def _hom_image_order(a: int, b: int) -> int:
    """Order of the submodule of R/(b) hit by all maps R/(a) -> R/(b).

    Orders use the cyclic_orders convention; 0 means free over Z.
    """
    if b == 0:
        return 0 if a == 0 else 1
    if a == 0:
        return b
    return gcd(a, b)


def evaluation_image(m: FPModule, n: FPModule) -> FPModule:
    """The largest submodule of n that is a quotient of a sum of copies of m.

    Computed on the cyclic decomposition of n: a homomorphism into a direct
    sum is a tuple of homomorphisms, so the image is the direct sum over the
    summands Z/b of the largest cyclic image of some summand Z/a of m.
    """
    ring = same_ring(m.ring, n.ring)
    free = 0
    factors = []
    for b in n.cyclic_orders:
        orders = [_hom_image_order(a, b) for a in m.cyclic_orders]
        if b == 0:
            if 0 in orders:
                free += 1
            continue
        factors.append(max(orders, default=1))
    # Over Z/n a full-order image is a free summand; cyclic() handles both.
    out = FPModule.free(ring, free)
    for d in factors:
        out = direct_sum(out, FPModule.cyclic(ring, d))
    return out


def _valuation(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


FREE_RANK_OBSTRUCTION = "free_rank"


@dataclass(frozen=True)
class QuotientDecision:
    """Outcome of :func:`is_quotient_of_sum`.

    On success ``witness`` is a matrix from ``t`` copies of the source's
    canonical generators to the target's canonical generators.  On failure
    ``obstruction`` is the smallest prime whose exponent is too large, or
    :data:`FREE_RANK_OBSTRUCTION`.
    """

    holds: bool
    t: int = 0
    witness: IntMatrix | None = None
    obstruction: int | str | None = None

    def __bool__(self):
        return self.holds


def is_quotient_of_sum(n: FPModule, m: FPModule) -> QuotientDecision:
    """Whether n is a quotient of a finite direct sum of copies of m.

    Over these rings this happens exactly when m has a free summand, or n
    is torsion and exp(n) divides exp(m): the top cyclic summand of m then
    maps onto every cyclic summand of n.
    """
    ring = same_ring(n.ring, m.ring)
    m_orders = m.cyclic_orders
    n_orders = n.cyclic_orders
    if m.free_rank > 0:
        source = len(m_orders) - 1  # a free generator
    elif ring.is_integers and n.free_rank > 0:
        return QuotientDecision(False, obstruction=FREE_RANK_OBSTRUCTION)
    else:
        exp_n, exp_m = n.exponent, m.exponent
        if exp_m % exp_n:
            bad = min(p for p in factorint(exp_n)
                      if _valuation(exp_n, p) > _valuation(exp_m, p))
            return QuotientDecision(False, obstruction=int(bad))
        source = len(m_orders) - 1  # top invariant factor = exp(m)
    t = len(n_orders)
    g = len(m_orders)
    w = [[0] * (t * g) for _ in range(t)]
    for j in range(t):
        w[j][j * g + source] = 1
    return QuotientDecision(True, t=t, witness=IntMatrix(t, t * g, w))


def module_acyclic(n: FPModule, m: FPModule) -> bool:
    """n lies in the acyclic class of m: Supp(n) inside Supp(m)."""
    same_ring(n.ring, m.ring)
    return n.support <= m.support


def nonzero_hom_exists(m: FPModule, n: FPModule) -> bool:
    """Hom(m, n) != 0, from Hom(R/a, R/b) = R/gcd(a, b) summand by summand."""
    same_ring(m.ring, n.ring)
    for a in m.cyclic_orders:
        for b in n.cyclic_orders:
            if b == 0:
                if a == 0:
                    return True
            elif gcd(a, b) > 1:
                return True
    return False


@dataclass(frozen=True)
class ModuleMap:
    """A homomorphism coker(P) -> coker(Q) given on generators by ``matrix``
    (target generators x source generators)."""

    source: FPModule
    target: FPModule
    matrix: IntMatrix

    def __post_init__(self):
        same_ring(self.source.ring, self.target.ring)
        if self.matrix.shape != (self.target.generators, self.source.generators):
            raise ValueError("module map matrix has the wrong shape")

    @property
    def ring(self) -> RingSpec:
        return self.source.ring

    def _target_relations(self) -> IntMatrix:
        q = self.target.presentation
        n = self.ring.n
        if n:
            q = hstack(q, IntMatrix.identity(q.rows).scale(n))
        return q

    def is_well_defined(self) -> bool:
        """Relations of the source go to relations of the target."""
        return in_span(self._target_relations(), self.matrix @ self.source.presentation)

    @cached_property
    def cokernel(self) -> FPModule:
        return FPModule(self.ring, hstack(self.matrix, self.target.presentation))

    @cached_property
    def kernel(self) -> FPModule:
        n = self.ring.n
        g = self.source.generators
        rel = self._target_relations()
        # x lies in the kernel iff matrix @ x is a combination of relations.
        lifted = hstack(self.matrix, rel)
        lat = kernel_lattice(lifted, 0).select_rows(range(g))
        basis = column_basis(lat)
        src_rel = self.source.presentation
        if n:
            src_rel = hstack(src_rel, IntMatrix.identity(g).scale(n))
        coords = solve(basis, src_rel)
        return FPModule(self.ring, coords)

    @property
    def is_epi(self) -> bool:
        return self.cokernel.is_zero

    @property
    def is_mono(self) -> bool:
        return self.kernel.is_zero

    @property
    def is_iso(self) -> bool:
        return self.is_epi and self.is_mono
