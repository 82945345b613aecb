import pytest
from hypothesis import given, strategies as st

from cellular.rings import (ZZ, PrimeIdeal, RingMismatch, RingSpec, SuppSet, first_outside,
                            supp_contains, supp_subset, supp_union, support_of_integer)

Z6 = RingSpec.mod(6)


def test_ring_specs():
    assert str(ZZ) == "Z" and str(RingSpec.mod(4)) == "Z/4"
    assert RingSpec.integers() == ZZ
    with pytest.raises(ValueError):
        RingSpec.mod(1)
    assert Z6.closed_points == (2, 3)


def test_prime_ideal_validation():
    PrimeIdeal(ZZ, 0)
    PrimeIdeal(Z6, 3)
    for bad in [(ZZ, 4), (Z6, 5), (Z6, 0), (ZZ, -2)]:
        with pytest.raises(ValueError):
            PrimeIdeal(*bad)


def test_contains_examples():
    assert supp_contains(SuppSet.everything(ZZ), PrimeIdeal.generic())
    assert not supp_contains(SuppSet.closed(ZZ, [2, 3]), PrimeIdeal(ZZ, 5))
    assert not supp_contains(SuppSet.closed(ZZ, [2]), PrimeIdeal.generic())


def test_subset_examples():
    two = SuppSet.closed(ZZ, [2])
    assert supp_subset(two, SuppSet.everything(ZZ))
    assert not supp_subset(SuppSet.everything(ZZ), two)
    assert supp_subset(SuppSet.closed(ZZ, [2, 3]), SuppSet.closed(ZZ, [2, 3, 5]))


def test_union_examples():
    assert supp_union(SuppSet.closed(ZZ, [2]), SuppSet.closed(ZZ, [3])) == SuppSet.closed(ZZ, [2, 3])
    assert supp_union(SuppSet.closed(ZZ, [2]), SuppSet.everything(ZZ)) == SuppSet.everything(ZZ)
    u = supp_union(SuppSet.closed(Z6, [2]), SuppSet.closed(Z6, [3]))
    assert u == SuppSet.everything(Z6) and u.is_full


def test_generic_point_never_closed():
    with pytest.raises(ValueError):
        SuppSet.closed(ZZ, [0])


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        supp_subset(SuppSet.empty(ZZ), SuppSet.empty(Z6))


def test_first_outside_prefers_generic_point():
    assert first_outside(SuppSet.everything(ZZ), SuppSet.closed(ZZ, [2])).is_generic
    assert first_outside(SuppSet.closed(ZZ, [2, 3, 5]), SuppSet.closed(ZZ, [3])).p == 2
    assert first_outside(SuppSet.closed(ZZ, [3]), SuppSet.everything(ZZ)) is None


def test_support_of_integer():
    assert support_of_integer(ZZ, 0) == SuppSet.everything(ZZ)
    assert support_of_integer(ZZ, 12) == SuppSet.closed(ZZ, [2, 3])
    assert support_of_integer(ZZ, 1).is_empty


PRIMES = [2, 3, 5, 7]


@st.composite
def supps(draw, ring=ZZ):
    if ring.is_integers and draw(st.integers(0, 5)) == 0:
        return SuppSet.everything(ring)
    pool = PRIMES if ring.is_integers else list(ring.closed_points)
    return SuppSet.closed(ring, draw(st.lists(st.sampled_from(pool), max_size=4)))


@given(supps(), supps(), supps())
def test_subset_is_a_partial_order(a, b, c):
    assert a <= a
    if a <= b and b <= a:
        assert a == b
    if a <= b and b <= c:
        assert a <= c


@given(supps(), supps(), supps())
def test_union_laws(a, b, c):
    assert a | b == b | a
    assert (a | b) | c == a | (b | c)
    assert a | a == a
    assert a <= a | b


@given(supps(RingSpec.mod(30)))
def test_quotient_ring_everything_is_all_closed_points(a):
    full = SuppSet.closed(RingSpec.mod(30), [2, 3, 5])
    assert SuppSet.everything(RingSpec.mod(30)) == full
    assert a <= full
