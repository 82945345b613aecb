"""Bounded complexes of finitely generated free modules, chain maps, and the
constructions built from them: homology, suspension, cones, finite
homotopy colimits, tensor products, and the map onto the lowest homology.

Grading is homological: ``d_k`` goes from degree k to degree k-1 and is a
``rank(k-1) x rank(k)`` matrix acting on column vectors.

Sign conventions (fixed once here and used everywhere):

* suspension by n multiplies every differential by (-1)^n;
* the cone of f: X -> Y has ``C_k = Y_k + X_{k-1}`` and differential
  ``[[d^Y, f], [0, -d^X]]``;
* the tensor product uses ``d(x (x) y) = dx (x) y + (-1)^p x (x) dy`` for x
  in degree p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence, Union

from .exactla import (IntMatrix, NoSolution, block_diag, hstack, in_span, kernel_lattice,
                      kron, solve, vstack)
from .modules import FPModule, ModuleMap
from .rings import PrimeIdeal, RingSpec, SuppSet, same_ring


class InvalidComplex(ValueError):
    """Shapes do not fit or d o d != 0."""


class InvalidChainMap(ValueError):
    """Component shapes do not fit or the map does not commute with d."""


class HypothesisFailed(ValueError):
    """A construction was asked for outside the range where it exists."""


class UnresolvableOverQuotientRing(ValueError):
    """A non-free Z/n-module has no bounded free resolution."""


@dataclass(frozen=True)
class FreeComplex:
    """``ranks[i]`` is the rank in degree ``bottom + i`` and
    ``differentials[i]`` is d_{bottom+i+1}.  Zero ranks at either end are
    trimmed on construction so structural equality is meaningful."""

    ring: RingSpec
    bottom: int
    ranks: tuple[int, ...]
    differentials: tuple[IntMatrix, ...] = ()

    def __post_init__(self):
        ranks = [int(r) for r in self.ranks]
        diffs = list(self.differentials)
        bottom = self.bottom
        if any(r < 0 for r in ranks):
            raise InvalidComplex("negative rank")
        if len(diffs) != max(len(ranks) - 1, 0):
            raise InvalidComplex(
                f"{len(ranks)} degrees need {max(len(ranks) - 1, 0)} differentials, "
                f"got {len(diffs)}")
        for i, d in enumerate(diffs):
            if d.shape != (ranks[i], ranks[i + 1]):
                raise InvalidComplex(
                    f"d_{bottom + i + 1} should be {ranks[i]}x{ranks[i + 1]}, got {d.rows}x{d.cols}")
        n = self.ring.n
        for i in range(len(diffs) - 1):
            if not (diffs[i] @ diffs[i + 1]).is_zero(n):
                raise InvalidComplex(f"d_{bottom + i + 1} o d_{bottom + i + 2} != 0")
        while ranks and ranks[0] == 0:
            ranks.pop(0)
            if diffs:
                diffs.pop(0)
            bottom += 1
        while ranks and ranks[-1] == 0:
            ranks.pop()
            if diffs:
                diffs.pop()
        if not ranks:
            bottom = 0
        object.__setattr__(self, "ranks", tuple(ranks))
        object.__setattr__(self, "differentials", tuple(diffs))
        object.__setattr__(self, "bottom", bottom)

    @classmethod
    def zero(cls, ring: RingSpec) -> FreeComplex:
        return cls(ring, 0, ())

    @classmethod
    def from_differentials(cls, ring: RingSpec, bottom: int,
                           differentials: Sequence[Sequence[Sequence[int]] | IntMatrix],
                           ranks: Sequence[int] | None = None) -> FreeComplex:
        """Build from nested lists; ranks are read off the matrices when the
        shapes determine them."""
        mats = [d if isinstance(d, IntMatrix) else IntMatrix.from_rows(d) for d in differentials]
        if ranks is None:
            if not mats:
                raise InvalidComplex("ranks are required when there are no differentials")
            ranks = [mats[0].rows] + [m.cols for m in mats]
        return cls(ring, bottom, tuple(ranks), tuple(mats))

    @property
    def top(self) -> int:
        return self.bottom + len(self.ranks) - 1

    @property
    def degrees(self) -> range:
        return range(self.bottom, self.bottom + len(self.ranks))

    @property
    def is_zero_complex(self) -> bool:
        return not self.ranks

    def rank(self, k: int) -> int:
        if self.bottom <= k <= self.top:
            return self.ranks[k - self.bottom]
        return 0

    def d(self, k: int) -> IntMatrix:
        """The differential out of degree k (zero outside the support)."""
        if self.bottom < k <= self.top:
            return self.differentials[k - self.bottom - 1]
        return IntMatrix.zeros(self.rank(k - 1), self.rank(k))

    def _cycles(self, k: int) -> IntMatrix:
        return kernel_lattice(self.d(k), self.ring.n)

    def _homology_in(self, k: int) -> tuple[IntMatrix, FPModule]:
        """Cycle generators of H_k (columns) and H_k presented on them."""
        r = self.rank(k)
        if r == 0:
            return IntMatrix.zeros(0, 0), FPModule.zero(self.ring)
        cycles = self._cycles(k)
        boundaries = self.d(k + 1)
        if self.ring.n:
            boundaries = hstack(boundaries, IntMatrix.identity(r).scale(self.ring.n))
        return cycles, FPModule(self.ring, solve(cycles, boundaries))

    @cached_property
    def homology_data(self) -> dict[int, tuple[IntMatrix, FPModule]]:
        return {k: self._homology_in(k) for k in self.degrees}

    def cycles_and_homology(self, k: int) -> tuple[IntMatrix, FPModule]:
        if k in self.homology_data:
            return self.homology_data[k]
        return IntMatrix.zeros(0, 0), FPModule.zero(self.ring)

    @cached_property
    def homology(self) -> HomologyObject:
        return HomologyObject(self.ring, {k: m for k, (_, m) in self.homology_data.items()})

    def __str__(self):
        if not self.ranks:
            return f"0 over {self.ring}"
        parts = [f"{self.ring}^{r}[{k}]" for k, r in zip(reversed(self.degrees), reversed(self.ranks))]
        return " -> ".join(parts)


@dataclass(frozen=True)
class HomologyObject:
    """The formal sum of shifted modules ``sum_k Sigma^k H_k``.

    Zero modules are dropped, so two objects compare equal exactly when the
    modules in every degree are isomorphic.
    """

    ring: RingSpec
    summands: tuple[tuple[int, FPModule], ...] = field(default=())

    def __init__(self, ring: RingSpec, summands: Mapping[int, FPModule] | Sequence = ()):
        items = summands.items() if isinstance(summands, Mapping) else summands
        seen = {}
        for k, m in items:
            if k in seen:
                raise ValueError(f"degree {k} appears twice")
            same_ring(ring, m.ring)
            seen[int(k)] = m
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "summands", tuple(
            (k, seen[k]) for k in sorted(seen) if not seen[k].is_zero))

    @classmethod
    def of(cls, module: FPModule, degree: int = 0) -> HomologyObject:
        return cls(module.ring, {degree: module})

    @property
    def homology(self) -> HomologyObject:
        return self

    @property
    def degrees(self) -> list[int]:
        return [k for k, _ in self.summands]

    def __getitem__(self, k: int) -> FPModule:
        for j, m in self.summands:
            if j == k:
                return m
        return FPModule.zero(self.ring)

    @property
    def is_zero(self) -> bool:
        return not self.summands

    @cached_property
    def support_profile(self) -> tuple[tuple[int, SuppSet], ...]:
        return tuple((k, m.support) for k, m in self.summands)

    @cached_property
    def total_support(self) -> SuppSet:
        s = SuppSet.empty(self.ring)
        for _, t in self.support_profile:
            s = s | t
        return s

    def __str__(self):
        if not self.summands:
            return "0"
        return " + ".join(f"S^{k}({m})" for k, m in self.summands)


Finite = Union[FreeComplex, HomologyObject]


def homology(x: Finite) -> HomologyObject:
    return x.homology


@dataclass(frozen=True)
class ChainMap:
    source: FreeComplex
    target: FreeComplex
    components: tuple[tuple[int, IntMatrix], ...] = ()

    def __init__(self, source: FreeComplex, target: FreeComplex,
                 components: Mapping[int, IntMatrix] | Sequence = ()):
        ring = same_ring(source.ring, target.ring)
        items = components.items() if isinstance(components, Mapping) else components
        comps = {}
        for k, m in items:
            k = int(k)
            if not isinstance(m, IntMatrix):
                m = IntMatrix(target.rank(k), source.rank(k), m)
            if m.shape != (target.rank(k), source.rank(k)):
                raise InvalidChainMap(
                    f"component in degree {k} should be {target.rank(k)}x{source.rank(k)}")
            if m.rows and m.cols:
                comps[k] = m
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "components", tuple(sorted(comps.items())))
        degrees = set(source.degrees) | set(target.degrees)
        for k in sorted(degrees | {k + 1 for k in degrees}):
            lhs = self.component(k - 1) @ source.d(k)
            rhs = target.d(k) @ self.component(k)
            if not (lhs - rhs).is_zero(ring.n):
                raise InvalidChainMap(f"f_{k - 1} d_{k} != d_{k} f_{k}")

    @classmethod
    def identity(cls, x: FreeComplex) -> ChainMap:
        return cls(x, x, {k: IntMatrix.identity(x.rank(k)) for k in x.degrees})

    @classmethod
    def zero(cls, source: FreeComplex, target: FreeComplex) -> ChainMap:
        return cls(source, target, {})

    @property
    def ring(self) -> RingSpec:
        return self.source.ring

    def component(self, k: int) -> IntMatrix:
        for j, m in self.components:
            if j == k:
                return m
        return IntMatrix.zeros(self.target.rank(k), self.source.rank(k))


@dataclass(frozen=True)
class ModuleValuedMap:
    """A chain map ``source -> Sigma^degree target`` for a module target,
    given by one matrix from ``source`` in that degree to the target's
    generators."""

    source: FreeComplex
    degree: int
    matrix: IntMatrix
    target: FPModule

    def __post_init__(self):
        same_ring(self.source.ring, self.target.ring)
        k = self.degree
        if self.matrix.shape != (self.target.generators, self.source.rank(k)):
            raise InvalidChainMap("module-valued map has the wrong shape")
        rel = self.target.presentation
        if self.source.ring.n:
            rel = hstack(rel, IntMatrix.identity(rel.rows).scale(self.source.ring.n))
        if not in_span(rel, self.matrix @ self.source.d(k + 1)):
            raise InvalidChainMap("boundaries are not sent to zero")

    def homology_map(self) -> ModuleMap:
        cycles, hk = self.source.cycles_and_homology(self.degree)
        if not hk.generators:
            return ModuleMap(hk, self.target, IntMatrix.zeros(self.target.generators, 0))
        return ModuleMap(hk, self.target, self.matrix @ cycles)


def suspend(x: Finite, n: int = 1) -> Finite:
    if isinstance(x, HomologyObject):
        return HomologyObject(x.ring, {k + n: m for k, m in x.summands})
    sign = -1 if n % 2 else 1
    return FreeComplex(x.ring, x.bottom + n, x.ranks,
                       tuple(d.scale(sign) for d in x.differentials))


def _span(*xs: FreeComplex) -> range:
    nonzero = [x for x in xs if x.ranks]
    if not nonzero:
        return range(0)
    return range(min(x.bottom for x in nonzero), max(x.top for x in nonzero) + 1)


def _complex_from(ring: RingSpec, degrees: range, rank, diff) -> FreeComplex:
    if not degrees:
        return FreeComplex.zero(ring)
    ranks = tuple(rank(k) for k in degrees)
    diffs = tuple(diff(k) for k in degrees[1:])
    return FreeComplex(ring, degrees.start, ranks, diffs)


def _grid(blocks: list[list[IntMatrix]]) -> IntMatrix:
    return vstack(*[hstack(*row) for row in blocks])


def direct_sum(xs: Sequence[FreeComplex]) -> FreeComplex:
    if not xs:
        raise ValueError("direct sum of an empty list needs a ring; use FreeComplex.zero")
    ring = same_ring(*[x.ring for x in xs])
    return _complex_from(ring, _span(*xs),
                         lambda k: sum(x.rank(k) for x in xs),
                         lambda k: block_diag(*[x.d(k) for x in xs]))


@dataclass(frozen=True)
class MappingCone:
    """The triangle ``X -f-> Y -inclusion-> C_f -projection-> Sigma X``."""

    complex: FreeComplex
    inclusion: ChainMap
    projection: ChainMap


def cone(f: ChainMap) -> MappingCone:
    x, y = f.source, f.target
    ring = f.ring
    degrees = _span(y, suspend(x, 1))

    def diff(k):
        return _grid([
            [y.d(k), f.component(k - 1)],
            [IntMatrix.zeros(x.rank(k - 2), y.rank(k)), -x.d(k - 1)],
        ])

    c = _complex_from(ring, degrees, lambda k: y.rank(k) + x.rank(k - 1), diff)
    inclusion = ChainMap(y, c, {
        k: vstack(IntMatrix.identity(y.rank(k)), IntMatrix.zeros(x.rank(k - 1), y.rank(k)))
        for k in y.degrees})
    sx = suspend(x, 1)
    projection = ChainMap(c, sx, {
        k: hstack(IntMatrix.zeros(x.rank(k - 1), y.rank(k)), IntMatrix.identity(x.rank(k - 1)))
        for k in c.degrees})
    return MappingCone(c, inclusion, projection)


def hocolim(maps: Sequence[ChainMap], start: FreeComplex | None = None) -> FreeComplex:
    """Homotopy colimit of ``X_0 -> X_1 -> ... -> X_m``.

    The cone of ``1 - shift: sum_{i<m} X_i -> sum_{i<=m} X_i``; the last
    object is terminal in a finite system, so it gets no shift of its own.
    With no maps, ``start`` is returned up to trimming.
    """
    if not maps:
        if start is None:
            raise ValueError("an empty system needs its single object")
        objects = [start]
    else:
        for a, b in zip(maps, maps[1:]):
            if a.target != b.source:
                raise ValueError("consecutive maps do not compose")
        if start is not None and start != maps[0].source:
            raise ValueError("start object does not match the first map")
        objects = [f.source for f in maps] + [maps[-1].target]
    ring = same_ring(*[x.ring for x in objects])
    head = objects[:-1]
    domain = direct_sum(head) if head else FreeComplex.zero(ring)
    codomain = direct_sum(objects)
    comps = {}
    for k in domain.degrees:
        rows = []
        for i, xi in enumerate(objects):
            row = []
            for j, xj in enumerate(head):
                if i == j:
                    row.append(IntMatrix.identity(xi.rank(k)))
                elif i == j + 1:
                    row.append(-maps[j].component(k))
                else:
                    row.append(IntMatrix.zeros(xi.rank(k), xj.rank(k)))
            rows.append(row)
        comps[k] = _grid(rows)
    return cone(ChainMap(domain, codomain, comps)).complex


def tensor(x: FreeComplex, y: FreeComplex) -> FreeComplex:
    ring = same_ring(x.ring, y.ring)
    if x.is_zero_complex or y.is_zero_complex:
        return FreeComplex.zero(ring)
    degrees = range(x.bottom + y.bottom, x.top + y.top + 1)

    def blocks(n):
        # (p, q, offset, size) with p ascending
        out, off = [], 0
        for p in x.degrees:
            q = n - p
            size = x.rank(p) * y.rank(q)
            out.append((p, q, off, size))
            off += size
        return out, off

    def rank(n):
        return blocks(n)[1]

    def diff(n):
        src, cols = blocks(n)
        dst, rows = blocks(n - 1)
        where = {(p, q): off for p, q, off, _ in dst}
        out = [[0] * cols for _ in range(rows)]

        def place(r0, c0, m):
            for i, row in enumerate(m.data):
                for j, v in enumerate(row):
                    if v:
                        out[r0 + i][c0 + j] += v

        for p, q, off, size in src:
            if not size:
                continue
            if (p - 1, q) in where:
                place(where[(p - 1, q)], off, kron(x.d(p), IntMatrix.identity(y.rank(q))))
            if (p, q - 1) in where:
                sign = -1 if p % 2 else 1
                place(where[(p, q - 1)], off,
                      kron(IntMatrix.identity(x.rank(p)), y.d(q)).scale(sign))
        return IntMatrix(rows, cols, out)

    return _complex_from(ring, degrees, rank, diff)


def module_to_complex(m: FPModule, degree: int = 0) -> FreeComplex:
    """A free complex quasi-isomorphic to ``Sigma^degree m``.

    Over Z the canonical presentation is already a resolution.  Over Z/n
    only free modules have one of finite length.
    """
    ring = m.ring
    factors = m.invariant_factors
    if not ring.is_integers and factors:
        raise UnresolvableOverQuotientRing(
            f"{m} over {ring} has no bounded free resolution")
    g = len(factors) + m.free_rank
    if not factors:
        return FreeComplex(ring, degree, (g,))
    return FreeComplex(ring, degree, (g, len(factors)),
                       (IntMatrix.diagonal(factors, rows=g, cols=len(factors)),))


def induced_homology_maps(f: ChainMap) -> dict[int, ModuleMap]:
    """H_k(f) for every degree where either side can have homology."""
    out = {}
    for k in sorted(set(f.source.degrees) | set(f.target.degrees)):
        kx, hx = f.source.cycles_and_homology(k)
        ky, hy = f.target.cycles_and_homology(k)
        if hx.generators and hy.generators:
            coords = solve(ky, f.component(k) @ kx)
        else:
            coords = IntMatrix.zeros(hy.generators, hx.generators)
        out[k] = ModuleMap(hx, hy, coords)
    return out


def homology_map(f: ChainMap | ModuleValuedMap, k: int) -> ModuleMap:
    if isinstance(f, ModuleValuedMap):
        if f.degree == k:
            return f.homology_map()
        _, hk = f.source.cycles_and_homology(k)
        zero = FPModule.zero(f.target.ring)
        return ModuleMap(hk, zero, IntMatrix.zeros(0, hk.generators))
    maps = induced_homology_maps(f)
    if k in maps:
        return maps[k]
    zero = FPModule.zero(f.ring)
    return ModuleMap(zero, zero, IntMatrix.zeros(0, 0))


def quotient_map_to_bottom_homology(x: FreeComplex, k: int) -> ModuleValuedMap:
    """The map ``x -> Sigma^k H_k(x)`` inducing an isomorphism on H_k.

    Needs H_i(x) = 0 for i < k.  Then the cycles Z_k are a direct summand of
    x_k, and the map is a retraction onto Z_k followed by the quotient.
    """
    for i, m in x.homology.summands:
        if i < k:
            raise HypothesisFailed(f"H_{i} = {m} is nonzero below degree {k}")
    cycles, hk = x.cycles_and_homology(k)
    r = x.rank(k)
    g = hk.generators
    rel = hk.presentation
    c = rel.cols
    n = x.ring.n
    # Unknowns: Phi (g x r), Lambda (c x g), M (g x g, only over Z/n) with
    # Phi @ cycles - rel @ Lambda - n * M == I.
    n_phi, n_lam = g * r, c * g
    n_m = g * g if n else 0
    rows = []
    rhs = []
    for i in range(g):
        for j in range(g):
            eq = [0] * (n_phi + n_lam + n_m)
            for l in range(r):
                eq[i * r + l] = cycles[l, j]
            for s in range(c):
                eq[n_phi + s * g + j] = -rel[i, s]
            if n:
                eq[n_phi + n_lam + i * g + j] = -n
            rows.append(eq)
            rhs.append([int(i == j)])
    if g:
        try:
            z = solve(IntMatrix(len(rows), n_phi + n_lam + n_m, rows),
                      IntMatrix(len(rhs), 1, rhs))
        except NoSolution as exc:  # pragma: no cover - excluded by the hypothesis
            raise RuntimeError("cycles are not a direct summand") from exc
        phi = IntMatrix(g, r, [[z[i * r + l, 0] for l in range(r)] for i in range(g)])
    else:
        phi = IntMatrix.zeros(0, r)
    out = ModuleValuedMap(x, k, phi, hk)
    if not out.homology_map().is_iso:  # pragma: no cover
        raise RuntimeError("quotient map is not an isomorphism on H_k")
    return out


def verify_local_h_iso(f: ChainMap | ModuleValuedMap, k: int, p: PrimeIdeal) -> bool:
    """Whether f localized at p is an isomorphism on H_k."""
    hm = homology_map(f, k)
    return p not in hm.kernel.support and p not in hm.cokernel.support


def euler_characteristics(x: FreeComplex) -> tuple[int, Fraction | None]:
    """Alternating sum of ranks, and the alternating product of |H_k| when
    every homology module is finite (None otherwise)."""
    chi = sum((-1) ** (k % 2) * r for k, r in zip(x.degrees, x.ranks))
    prod = Fraction(1)
    for k, m in x.homology.summands:
        order = m.order
        if order is None:
            return chi, None
        prod = prod * order if k % 2 == 0 else prod / order
    return chi, prod
