import random

import pytest

from corpus import Z4, random_complex, random_map
from cellular.certify import (HomEpi, HomologyPiece, MalformedCertificate, ModuleEpi,
                              ShiftedSupport, homology_invariants)
from cellular.complexes import (ChainMap, FreeComplex, HomologyObject, homology,
                                induced_homology_maps)
from cellular.exactla import IntMatrix
from cellular.modules import FPModule
from cellular.relations import (RULES, InvalidHint, acyclic_over, cellular_decide,
                                hom_mono_acyclic, verify_certificate)
from cellular.rings import ZZ, RingMismatch, SuppSet


def mod(d, degree=0, ring=ZZ):
    return HomologyObject.of(FPModule.cyclic(ring, d), degree)


def test_acyclic_examples():
    assert acyclic_over(mod(2, 1), [mod(2)]) == (True, None)
    ok, obs = acyclic_over(mod(2), [mod(2, 1)])
    assert not ok and (obs.degree, obs.prime.p) == (0, 2)
    assert acyclic_over(mod(4), [mod(2)])[0]


def test_acyclic_errors():
    with pytest.raises(ValueError):
        acyclic_over(mod(2), [])
    with pytest.raises(RingMismatch):
        acyclic_over(mod(2), [mod(2, ring=Z4)])


def test_acyclic_obstruction_is_least_degree_and_prime():
    y = HomologyObject(ZZ, {0: FPModule.cyclic(ZZ, 2), 1: FPModule.cyclic(ZZ, 15)})
    x = HomologyObject(ZZ, {0: FPModule.cyclic(ZZ, 2)})
    ok, obs = acyclic_over(y, [x])
    assert not ok and obs.degree == 1 and obs.prime.p == 3
    free = HomologyObject.of(FPModule.free(ZZ), 0)
    ok, obs = acyclic_over(free, [x])
    assert not ok and obs.prime.is_generic


def test_cellular_examples():
    v = cellular_decide(mod(2), mod(4))
    assert v.is_yes and isinstance(v.certificate, ModuleEpi) and v.certificate.t == 1
    v = cellular_decide(mod(4), mod(2))
    assert v.is_no and v.obstruction.kind == "exponent" and v.obstruction.prime.p == 2
    x = FreeComplex.from_differentials(Z4, 0, [[[2]]])
    y = HomologyObject(Z4, {0: FPModule.cyclic(Z4, 2), 1: FPModule.cyclic(Z4, 2)})
    v = cellular_decide(y, x)
    assert v.is_unknown and v.rules_tried == RULES


def test_cellular_rules_in_order():
    # rule 1
    assert cellular_decide(mod(3), mod(2)).obstruction.kind == "support"
    # rule 4: a suspension of something acyclic
    v = cellular_decide(mod(2, 1), mod(2))
    assert isinstance(v.certificate, ShiftedSupport)
    # rule 5: one homology piece of a two-piece object
    x = HomologyObject(ZZ, {0: FPModule.cyclic(ZZ, 2), 1: FPModule.cyclic(ZZ, 3)})
    v = cellular_decide(mod(2, 0), x)
    assert isinstance(v.certificate, HomologyPiece) and v.certificate.degree == 0
    # rule 3: an explicit hint that is onto in homology
    z = FreeComplex(ZZ, 0, (1,))
    two = FreeComplex.from_differentials(ZZ, 0, [[[2]]])
    y = FreeComplex(ZZ, 0, (1, 1), (IntMatrix.from_rows([[0]]),))
    onto = ChainMap(y, y, {0: IntMatrix.from_rows([[1]]), 1: IntMatrix.from_rows([[1]])})
    v = cellular_decide(y, y, onto)
    assert isinstance(v.certificate, HomEpi)
    assert cellular_decide(y, y).is_yes  # x itself is x-cellular without a hint
    with pytest.raises(InvalidHint):
        cellular_decide(two, z, ChainMap.identity(z))


def test_verify_examples():
    v = cellular_decide(mod(2), mod(4))
    assert verify_certificate(v.certificate, mod(2), mod(4))
    x = FreeComplex(ZZ, 0, (1,))
    assert not verify_certificate(HomEpi(ChainMap.zero(x, x)), x, x)
    cert = ShiftedSupport(((1, SuppSet.closed(ZZ, [2]), SuppSet.closed(ZZ, [2])),))
    assert verify_certificate(cert, mod(2, 1), mod(2))


def test_verify_rejects_forged_certificates():
    assert not verify_certificate(ModuleEpi(0, 1, IntMatrix.from_rows([[1]])), mod(4), mod(2))
    assert not verify_certificate(HomologyPiece(0), mod(4), mod(2))
    forged = ShiftedSupport(((0, SuppSet.closed(ZZ, [2]), SuppSet.closed(ZZ, [2])),))
    assert not verify_certificate(forged, mod(2), mod(2))
    with pytest.raises(MalformedCertificate):
        verify_certificate(ModuleEpi(0, 1, IntMatrix.zeros(2, 2)), mod(2), mod(4))
    x = FreeComplex(ZZ, 0, (1,))
    with pytest.raises(MalformedCertificate):
        verify_certificate(HomEpi(ChainMap.identity(x)), mod(2), mod(2))


def test_verifier_invariants_match_engine():
    rng = random.Random(9)
    for _ in range(60):
        x = random_complex(rng, rng.choice([ZZ, Z4]))
        h = homology(x)
        assert homology_invariants(x) == {k: m.normal_form for k, m in h.summands}


def test_hom_mono():
    x = FreeComplex(ZZ, 0, (1,))
    assert hom_mono_acyclic(ChainMap.identity(x)) is True
    assert hom_mono_acyclic(ChainMap(x, x, {0: IntMatrix.from_rows([[2]])})) is True
    two = FreeComplex.from_differentials(ZZ, 0, [[[2]]])
    kills = ChainMap(two, two, {0: IntMatrix.from_rows([[2]]), 1: IntMatrix.from_rows([[2]])})
    assert hom_mono_acyclic(kills) is None


def test_epi_maps_fire_rule_three_and_never_contradict_rule_one():
    rng = random.Random(31)
    fired = 0
    for _ in range(150):
        f = random_map(rng, rng.choice([ZZ, Z4]))
        v = cellular_decide(f.target, f.source, f)
        if all(m.is_epi for m in induced_homology_maps(f).values()):
            assert v.is_yes
            fired += 1
        if v.is_yes:
            assert verify_certificate(v.certificate, f.target, f.source)
    assert fired > 10


def test_mono_maps_give_acyclicity():
    rng = random.Random(41)
    for _ in range(100):
        f = random_map(rng, rng.choice([ZZ, Z4]))
        assert hom_mono_acyclic(f) in (True, None)
