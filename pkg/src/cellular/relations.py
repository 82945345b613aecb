"""Deciding "Y is X-acyclic" exactly and "Y is X-cellular" soundly.

Acyclicity between finite objects depends only on homology supports: Y is
X-acyclic iff ``Supp(H_k Y) <= Supp(sum_{i<=k} H_i X)`` for every k.

Cellularity has no complete criterion for complexes, so
:func:`cellular_decide` runs an ordered list of rules and answers yes (with
a certificate), no (with an obstruction), or unknown.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .certify import (CellCertificate, HomEpi, HomologyPiece, MalformedCertificate, ModuleEpi,
                      ShiftedSupport, verify_certificate)
from .complexes import ChainMap, Finite, FreeComplex, homology, induced_homology_maps
from .modules import FREE_RANK_OBSTRUCTION, is_quotient_of_sum
from .rings import PrimeIdeal, SuppSet, first_outside, same_ring

__all__ = [
    "Obstruction", "Verdict", "RULES", "InvalidHint", "acyclic_over", "cellular_decide",
    "verify_certificate", "hom_mono_acyclic", "support_up_to", "MalformedCertificate",
    "ModuleEpi", "HomEpi", "ShiftedSupport", "HomologyPiece", "CellCertificate",
]

RULES = ("acyclicity", "module_quotient", "homology_epi", "shifted_support", "homology_piece")


class InvalidHint(ValueError):
    """The supplied chain map does not go from x to y."""


@dataclass(frozen=True)
class Obstruction:
    """Why y is not (x-cellular | x-acyclic).

    ``kind`` is "support" (a prime of Supp(H_degree y) outside the allowed
    support), "exponent" (module case: the prime's power in exp(y) is too
    big) or "free_rank" (module case: y has a free summand, x does not).
    """

    degree: int
    prime: PrimeIdeal | None
    kind: str = "support"


@dataclass(frozen=True)
class Verdict:
    status: str  # "yes" | "no" | "unknown"
    certificate: CellCertificate | None = None
    obstruction: Obstruction | None = None
    rules_tried: tuple[str, ...] = field(default=())

    @classmethod
    def yes(cls, certificate: CellCertificate) -> Verdict:
        return cls("yes", certificate=certificate)

    @classmethod
    def no(cls, obstruction: Obstruction) -> Verdict:
        return cls("no", obstruction=obstruction)

    @classmethod
    def unknown(cls, rules_tried: Sequence[str]) -> Verdict:
        return cls("unknown", rules_tried=tuple(rules_tried))

    @property
    def is_yes(self) -> bool:
        return self.status == "yes"

    @property
    def is_no(self) -> bool:
        return self.status == "no"

    @property
    def is_unknown(self) -> bool:
        return self.status == "unknown"


def support_up_to(objs: Sequence[Finite], k: int, strict: bool = False) -> SuppSet:
    """``Supp(sum_{i<=k} H_i X)`` over all X in objs (``i < k`` if strict)."""
    ring = objs[0].ring
    s = SuppSet.empty(ring)
    for x in objs:
        for i, t in homology(x).support_profile:
            if i < k or (i == k and not strict):
                s = s | t
    return s


def acyclic_over(y: Finite, gens: Sequence[Finite]) -> tuple[bool, Obstruction | None]:
    """Whether y is in the acyclic class generated by ``gens``.

    On failure the obstruction names the least failing degree and the
    smallest prime outside the allowed support.
    """
    if not gens:
        raise ValueError("acyclic_over needs at least one generator")
    same_ring(y.ring, *[g.ring for g in gens])
    for k, s in homology(y).support_profile:
        p = first_outside(s, support_up_to(gens, k))
        if p is not None:
            return False, Obstruction(k, p)
    return True, None


def _single_degree(h) -> int | None:
    degrees = h.degrees
    return degrees[0] if len(degrees) == 1 else None


def cellular_decide(y: Finite, x: Finite, hint: ChainMap | None = None) -> Verdict:
    same_ring(y.ring, x.ring)
    ring = y.ring
    hy, hx = homology(y), homology(x)
    if hint is not None:
        if not (isinstance(x, FreeComplex) and isinstance(y, FreeComplex)):
            raise InvalidHint("a hint needs both objects as free complexes")
        if hint.source != x or hint.target != y:
            raise InvalidHint("the hint is not a chain map from x to y")

    # 1. cellular implies acyclic
    ok, obstruction = acyclic_over(y, [x])
    if not ok:
        return Verdict.no(obstruction)

    # 2. two modules in the same degree: quotient of a sum, exactly
    if len(hx.degrees) <= 1 and len(hy.degrees) <= 1:
        degree = (hx.degrees or hy.degrees or [0])[0]
        if not hy.degrees or hy.degrees[0] == degree:
            decision = is_quotient_of_sum(hy[degree], hx[degree])
            if decision.holds:
                return Verdict.yes(ModuleEpi(degree, decision.t, decision.witness))
            if decision.obstruction == FREE_RANK_OBSTRUCTION:
                return Verdict.no(Obstruction(degree, None, "free_rank"))
            return Verdict.no(Obstruction(degree, PrimeIdeal(ring, decision.obstruction),
                                          "exponent"))

    # 3. a map onto homology in every degree; x itself needs no hint
    if hint is None and isinstance(x, FreeComplex) and x == y:
        hint = ChainMap.identity(x)
    if hint is not None:
        if all(m.is_epi for m in induced_homology_maps(hint).values()):
            return Verdict.yes(HomEpi(hint))

    # 4. y is a suspension of something x-acyclic
    inclusions = []
    for k, s in hy.support_profile:
        below = support_up_to([x], k, strict=True)
        if not s <= below:
            break
        inclusions.append((k, s, below))
    else:
        return Verdict.yes(ShiftedSupport(tuple(inclusions)))

    # 5. y is one shifted homology module of x
    k = _single_degree(hy)
    if k is not None and hy[k] == hx[k]:
        return Verdict.yes(HomologyPiece(k))

    return Verdict.unknown(RULES)


def hom_mono_acyclic(f: ChainMap) -> bool | None:
    """For f: X -> Y injective on homology, whether X is Y-acyclic.

    That is always the case, so False signals an engine bug.  Returns None
    when some H_k(f) has a kernel and the statement does not apply.
    """
    if not all(m.is_mono for m in induced_homology_maps(f).values()):
        return None
    ok, _ = acyclic_over(f.source, [f.target])
    return ok
