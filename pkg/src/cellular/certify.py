"""Certificates for "Y is X-cellular" and their verifier.

The verifier recomputes everything it needs straight from matrices with
:mod:`cellular.exactla`.  It never calls the homology or module code the
decision procedure uses, so a bug there cannot vouch for itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from sympy import primefactors

from .exactla import (IntMatrix, hstack, in_span, invariant_factors, kernel_lattice,
                      snf, solve)
from .rings import RingSpec, SuppSet, same_ring


class MalformedCertificate(ValueError):
    """The certificate does not even describe the objects it is about."""


@dataclass(frozen=True)
class ModuleEpi:
    """Both objects are modules in ``degree`` and ``matrix`` maps ``t``
    copies of x's canonical generators onto y's canonical generators."""

    degree: int
    t: int
    matrix: IntMatrix


@dataclass(frozen=True)
class HomEpi:
    """A chain map x -> y that is onto in every homology degree."""

    map: object  # ChainMap; typed loosely to keep this module independent


@dataclass(frozen=True)
class ShiftedSupport:
    """Recorded inclusions ``Supp(H_k y) <= Supp(sum_{i<k} H_i x)``."""

    inclusions: tuple[tuple[int, SuppSet, SuppSet], ...]


@dataclass(frozen=True)
class HomologyPiece:
    """y is Sigma^degree H_degree(x)."""

    degree: int


CellCertificate = Union[ModuleEpi, HomEpi, ShiftedSupport, HomologyPiece]

Invariants = dict[int, tuple[int, tuple[int, ...]]]


def _module_invariants(presentation: IntMatrix, n: int) -> tuple[int, tuple[int, ...]]:
    free, factors = invariant_factors(presentation, n)
    return free, tuple(factors)


def _complex_invariants(x) -> Invariants:
    n = x.ring.n
    out = {}
    for k in x.degrees:
        dk, dk1 = x.d(k), x.d(k + 1)
        if n == 0:
            # rank-nullity plus the elementary divisors of the boundary map
            rank_k = snf(dk).rank
            res = snf(dk1)
            free = x.rank(k) - rank_k - res.rank
            inv = (free, tuple(d for d in res.diag if d > 1))
        else:
            r = x.rank(k)
            lat = kernel_lattice(dk, n)
            rel = solve(lat, hstack(dk1, IntMatrix.identity(r).scale(n)))
            inv = _module_invariants(rel, n)
        if inv != (0, ()):
            out[k] = inv
    return out


def homology_invariants(obj) -> Invariants:
    """degree -> (free rank, invariant factors), nonzero degrees only."""
    if hasattr(obj, "differentials"):
        return _complex_invariants(obj)
    out = {}
    for k, m in obj.summands:
        inv = _module_invariants(m.presentation, obj.ring.n)
        if inv != (0, ()):
            out[k] = inv
    return out


def _orders(inv: tuple[int, tuple[int, ...]], ring: RingSpec) -> list[int]:
    free, factors = inv
    return list(factors) + [ring.n] * free


def _support(inv: tuple[int, tuple[int, ...]], ring: RingSpec) -> SuppSet:
    free, factors = inv
    if free and ring.is_integers:
        return SuppSet.everything(ring)
    primes = set()
    for d in _orders(inv, ring):
        primes.update(int(p) for p in primefactors(d))
    return SuppSet.closed(ring, primes)


def _support_below(inv: Invariants, k: int, ring: RingSpec) -> SuppSet:
    s = SuppSet.empty(ring)
    for j, m in inv.items():
        if j < k:
            s = s | _support(m, ring)
    return s


def _check_module_epi(cert: ModuleEpi, iy: Invariants, ix: Invariants, ring: RingSpec) -> bool:
    if len(iy) > 1 or len(ix) > 1:
        return False
    if any(k != cert.degree for k in iy) or any(k != cert.degree for k in ix):
        return False
    b = _orders(iy.get(cert.degree, (0, ())), ring)
    a = _orders(ix.get(cert.degree, (0, ())), ring)
    w = cert.matrix
    if cert.t < 0 or w.shape != (len(b), cert.t * len(a)):
        raise MalformedCertificate(
            f"witness should be {len(b)}x{cert.t * len(a)}, got {w.rows}x{w.cols}")
    if not b:
        return True
    # each source generator of order a_i must land in the a_i-torsion
    for col in range(w.cols):
        ai = a[col % len(a)]
        for j, bj in enumerate(b):
            image = ai * w[j, col]
            if (bj == 0 and image != 0) or (bj != 0 and image % bj):
                return False
    rel = hstack(w, IntMatrix.diagonal(b))
    return _module_invariants(rel, ring.n) == (0, ())


def _check_hom_epi(cert: HomEpi, y, x) -> bool:
    f = cert.map
    if not (hasattr(x, "differentials") and hasattr(y, "differentials")):
        raise MalformedCertificate("a chain-map certificate needs two free complexes")
    if f.source != x or f.target != y:
        raise MalformedCertificate("the chain map does not go from x to y")
    n = y.ring.n
    degrees = set(x.degrees) | set(y.degrees)
    for k in sorted(degrees | {k + 1 for k in degrees}):
        if not (f.component(k - 1) @ x.d(k) - y.d(k) @ f.component(k)).is_zero(n):
            return False
    for k in y.degrees:
        ry = y.rank(k)
        zy = kernel_lattice(y.d(k), n)
        zx = kernel_lattice(x.d(k), n)
        hit = hstack(f.component(k) @ zx, y.d(k + 1))
        if n:
            hit = hstack(hit, IntMatrix.identity(ry).scale(n))
        if not in_span(hit, zy):
            return False
    return True


def verify_certificate(cert: CellCertificate, y, x) -> bool:
    """Re-check ``cert`` for the claim "y is x-cellular" from scratch."""
    ring = same_ring(y.ring, x.ring)
    if isinstance(cert, HomEpi):
        return _check_hom_epi(cert, y, x)
    iy = homology_invariants(y)
    ix = homology_invariants(x)
    if isinstance(cert, ModuleEpi):
        return _check_module_epi(cert, iy, ix, ring)
    if isinstance(cert, ShiftedSupport):
        recorded = {k: (sy, sx) for k, sy, sx in cert.inclusions}
        if set(recorded) != set(iy):
            return False
        for k, inv in iy.items():
            sy = _support(inv, ring)
            sx = _support_below(ix, k, ring)
            if recorded[k] != (sy, sx) or not sy <= sx:
                return False
        return True
    if isinstance(cert, HomologyPiece):
        k = cert.degree
        return k in ix and iy == {k: ix[k]}
    raise MalformedCertificate(f"unknown certificate type {type(cert).__name__}")
