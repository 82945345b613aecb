"""Exit criteria.  Every check is exact; a summary line per criterion is
printed at the end of the run (see conftest.py)."""

import json
import os
import random
from math import gcd, lcm
from pathlib import Path

import pytest
from sympy import primefactors

from corpus import Z4, by_ring, corpus, random_complex, random_map, torsion_groups
from cellular.certify import ModuleEpi, homology_invariants
from cellular.cli import run
from cellular.complexes import (ChainMap, FreeComplex, HomologyObject, cone,
                                euler_characteristics, homology, module_to_complex, tensor)
from cellular.exactla import IntMatrix, determinant, snf
from cellular.modules import FPModule, is_quotient_of_sum
from cellular.oracles import oracle_homology_enum, oracle_quotient_of_sum, oracle_snf_minors
from cellular.relations import acyclic_over, cellular_decide, verify_certificate
from cellular.rings import ZZ, RingSpec
from cellular.stanley import classes_equal, phi_member, phi_of_generators

FIXTURES = Path(__file__).parent / "fixtures" / "cli"


# independent support bookkeeping, straight from the verifier's invariants

def _points(inv, ring):
    """Points of Supp as a set of ints, 0 standing for the generic point."""
    free, factors = inv
    if free and ring.is_integers:
        return None  # everything
    orders = list(factors) + [ring.n] * free
    return {int(p) for d in orders for p in primefactors(d)}


def _union(a, b):
    return None if a is None or b is None else a | b


def _inside(a, b):
    return b is None or (a is not None and a <= b)


def _support_through(inv_x, k, ring):
    s = set()
    for j, inv in inv_x.items():
        if j <= k:
            s = _union(s, _points(inv, ring))
    return s


def _check_support_obstruction(y, xs, obstruction):
    ring = y.ring
    inv_y = homology_invariants(y)
    invs_x = [homology_invariants(x) for x in xs]
    k, p = obstruction.degree, obstruction.prime.p
    for j in sorted(inv_y):
        allowed = set()
        for inv_x in invs_x:
            allowed = _union(allowed, _support_through(inv_x, j, ring))
        have = _points(inv_y[j], ring)
        if j < k:
            assert _inside(have, allowed)
        elif j == k:
            assert not _inside(have, allowed)
            # p lies in Supp(H_k y), outside the allowed set, and is the least such point
            if have is None:
                outside = {0} if allowed is not None else set()
            else:
                outside = have - (allowed or set())
            assert p == min(outside)
            return
    pytest.fail("obstruction degree carries no homology")


# 1 ------------------------------------------------------------------------

@pytest.mark.acceptance(1, "SNF correctness on 500 random matrices")
def test_snf_correctness():
    rng = random.Random(1)
    for _ in range(500):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        a = IntMatrix(r, c, [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)])
        res = snf(a)
        assert res.u @ a @ res.v == res.s
        assert abs(determinant(res.u)) == 1 and abs(determinant(res.v)) == 1
        assert all(res.s[i, j] == 0 for i in range(r) for j in range(c) if i != j)
        nonzero = [d for d in res.diag if d]
        assert list(res.diag) == nonzero + [0] * (len(res.diag) - len(nonzero))
        assert all(b % a_ == 0 for a_, b in zip(nonzero, nonzero[1:]))
        running = 1
        for k, g in enumerate(oracle_snf_minors(a)):
            running *= res.diag[k]
            assert running == g


# 2 ------------------------------------------------------------------------

@pytest.mark.acceptance(2, "module quotient-of-sum decision against the oracle")
def test_module_decision_completeness():
    groups = torsion_groups(36)
    modules = [FPModule.from_invariants(ZZ, g, free) for g in groups for free in (0, 1)]
    yes = 0
    for n in modules:
        for m in modules:
            decision = is_quotient_of_sum(n, m)
            assert bool(decision) == oracle_quotient_of_sum(n, m), (n, m)
            if decision:
                yes += 1
                cert = ModuleEpi(0, decision.t, decision.witness)
                assert verify_certificate(cert, HomologyObject.of(n), HomologyObject.of(m))
    assert len(groups) == 62 and 0 < yes < len(modules) ** 2


# 3 ------------------------------------------------------------------------

@pytest.mark.acceptance(3, "acyclicity: reflexive, transitive, obstructions recomputed")
def test_acyclicity_algebra():
    objs = corpus()
    assert len(objs) == 200
    failures = 0
    for ring in (ZZ, Z4):
        group = by_ring(objs, ring)
        relation = []
        for y in group:
            row = set()
            for j, x in enumerate(group):
                ok, obstruction = acyclic_over(y, [x])
                if ok:
                    row.add(j)
                else:
                    failures += 1
                    _check_support_obstruction(y, [x], obstruction)
            relation.append(row)
        for i, row in enumerate(relation):
            assert i in row
            for j in row:
                assert relation[j] <= row
    assert failures > 1000


# 4 ------------------------------------------------------------------------

@pytest.mark.acceptance(4, "homology pieces and the homology sum generate the same class")
def test_homology_pieces():
    for x in corpus():
        h = homology(x)
        for k, m in h.summands:
            assert acyclic_over(HomologyObject.of(m, k), [x])[0]
        pieces = HomologyObject(x.ring, dict(h.summands))
        assert acyclic_over(x, [pieces])[0]
        assert acyclic_over(pieces, [x])[0]


# 5 ------------------------------------------------------------------------

@pytest.mark.acceptance(5, "sum, product and lcm generate the same acyclic class")
def test_sum_product_lcm_classes():
    def gen(*factors):
        return [HomologyObject.of(FPModule.from_invariants(ZZ, factors))]

    for a in range(2, 31):
        for b in range(2, 31):
            s, p, l_ = gen(a, b), gen(a * b), gen(lcm(a, b))
            assert classes_equal(s, p) and classes_equal(s, l_) and classes_equal(p, l_)


# 6 ------------------------------------------------------------------------

@pytest.mark.acceptance(6, "phi comparison agrees with corpus membership vectors")
def test_stanley_cross_validation():
    objs = list(corpus())
    rng = random.Random(6)
    equal_seen = unequal_seen = 0
    for trial in range(50):
        ring = (ZZ, Z4)[trial % 2]
        pool = by_ring(objs, ring)
        g1 = rng.sample(pool, rng.randint(1, 3))
        if trial % 3 == 0:
            # same class by construction: homology pieces of g1 plus a suspension
            g2 = [HomologyObject(ring, dict(homology(g).summands)) for g in g1]
            g2.append(HomologyObject(ring, {k + 1: m for k, m in homology(g1[0]).summands}))
        else:
            g2 = rng.sample(pool, rng.randint(1, 3))
        phi1, phi2 = phi_of_generators(g1), phi_of_generators(g2)
        v1 = [phi_member(x, phi1) for x in pool]
        v2 = [phi_member(x, phi2) for x in pool]
        same = classes_equal(g1, g2)
        assert same == (v1 == v2)
        equal_seen += same
        unequal_seen += not same
    assert equal_seen >= 10 and unequal_seen >= 10


# 7 ------------------------------------------------------------------------

@pytest.mark.acceptance(7, "Euler characteristics across cones")
def test_triangle_bookkeeping():
    rng = random.Random(7)
    finite = 0
    for i in range(100):
        f = random_map(rng, (ZZ, Z4)[i % 2])
        c = cone(f).complex
        (fx, mx), (fy, my), (fc, mc) = map(euler_characteristics, (f.source, f.target, c))
        assert fc == fy - fx
        if mx is not None and my is not None:
            finite += 1
            assert mc == my / mx
        assert homology(cone(ChainMap.identity(f.source)).complex).is_zero
    assert finite > 20


# 8 ------------------------------------------------------------------------

@pytest.mark.acceptance(8, "derived tensor: Tor of cyclic groups and acyclicity")
def test_derived_tensor():
    for a in range(2, 13):
        for b in range(2, 13):
            ra = module_to_complex(FPModule.cyclic(ZZ, a))
            rb = module_to_complex(FPModule.cyclic(ZZ, b))
            g = FPModule.cyclic(ZZ, gcd(a, b))
            assert homology(tensor(ra, rb)) == HomologyObject(ZZ, {0: g, 1: g})
    rng = random.Random(8)
    triples = 0
    while triples < 50:
        x, y, w = (random_complex(rng, ZZ, max_rank=2) for _ in range(3))
        if not acyclic_over(y, [x])[0]:
            continue
        triples += 1
        assert acyclic_over(tensor(y, w), [tensor(x, w)])[0]


# 9 ------------------------------------------------------------------------

@pytest.mark.acceptance(9, "homology over Z/n against element enumeration")
def test_quotient_ring_homology_oracle():
    rng = random.Random(9)
    for _ in range(100):
        ring = RingSpec.mod(rng.randint(2, 9))
        x = random_complex(rng, ring, max_rank=3)
        assert homology(x) == oracle_homology_enum(x)


# 10 -----------------------------------------------------------------------

def _check_no(verdict, y, x):
    o = verdict.obstruction
    if o.kind == "support":
        _check_support_obstruction(y, [x], o)
        return
    inv_y, inv_x = homology_invariants(y), homology_invariants(x)
    assert set(inv_y) <= {o.degree} and set(inv_x) <= {o.degree}
    fy, ty = inv_y.get(o.degree, (0, ()))
    fx, tx = inv_x.get(o.degree, (0, ()))
    if o.kind == "free_rank":
        assert fy and not fx and y.ring.is_integers
        return
    p = o.prime.p
    ey = max(list(ty) + [y.ring.n] * fy, default=1)
    ex = max(list(tx) + [x.ring.n] * fx, default=1)

    def v(d):
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        return e
    assert v(ey) > v(ex)


@pytest.mark.acceptance(10, "trichotomy soundness on the corpus")
def test_trichotomy_soundness():
    counts = {"yes": 0, "no": 0, "unknown": 0}
    pairs = []
    for ring in (ZZ, Z4):
        group = by_ring(corpus(), ring)[:60]
        pairs += [(y, x, None) for y in group for x in group]
    rng = random.Random(10)
    for i in range(60):
        f = random_map(rng, (ZZ, Z4)[i % 2])
        pairs.append((f.target, f.source, f))
    for y, x, hint in pairs:
        verdict = cellular_decide(y, x, hint)
        counts[verdict.status] += 1
        if verdict.is_yes:
            assert verify_certificate(verdict.certificate, y, x)
            assert acyclic_over(y, [x])[0]
        elif verdict.is_no:
            _check_no(verdict, y, x)
    assert counts["yes"] > 100 and counts["no"] > 100
    x = FreeComplex.from_differentials(Z4, 0, [[[2]]])
    y = HomologyObject(Z4, {0: FPModule.cyclic(Z4, 2), 1: FPModule.cyclic(Z4, 2)})
    assert cellular_decide(y, x).is_unknown


# 11 -----------------------------------------------------------------------

@pytest.mark.acceptance(11, "CLI golden fixtures, byte-exact")
def test_cli_golden(capsys):
    cases = json.loads((FIXTURES / "cases.json").read_text())
    names = {c["name"] for c in cases}
    assert len(cases) >= 20
    assert {"cellular_module_epi", "acyclic_degree_obstruction", "classes_sum_vs_product"} <= names
    cwd = os.getcwd()
    os.chdir(FIXTURES)
    try:
        for case in cases:
            code = run(case["args"])
            out, _ = capsys.readouterr()
            assert code == case["exit"], case["name"]
            assert out == (FIXTURES / "expected" / f"{case['name']}.json").read_text(), case["name"]
    finally:
        os.chdir(cwd)
