"""Exact integer matrices: Smith normal form with unimodular transforms,
Hermite bases of lattices, kernels, exact solving, and cokernel
presentations.

Everything over Z/n is done by lifting to Z and adjoining the relations
n*e_i, so a single Smith normal form routine serves both ring families.
Entries are Python ints, so nothing overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Iterable, Sequence


class NoSolution(ValueError):
    """The integer linear system has no solution."""


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        data = tuple(tuple(int(x) for x in row) for row in self.data)
        if len(data) != self.rows or any(len(row) != self.cols for row in data):
            raise ValueError(
                f"entries do not fit a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "data", data)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count is ambiguous for an empty row list")
            cols = len(rows[0])
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        columns = [list(c) for c in columns]
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence[int], rows: int | None = None,
                 cols: int | None = None) -> IntMatrix:
        rows = len(entries) if rows is None else rows
        cols = len(entries) if cols is None else cols
        m = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(entries):
            m[i][i] = d
        return cls(rows, cols, m)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def select_columns(self, idx: Iterable[int]) -> IntMatrix:
        idx = list(idx)
        return IntMatrix(self.rows, len(idx), [[r[j] for j in idx] for r in self.data])

    def select_rows(self, idx: Iterable[int]) -> IntMatrix:
        idx = list(idx)
        return IntMatrix(len(idx), self.cols, [self.data[i] for i in idx])

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return IntMatrix(self.rows, other.cols,
                         [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.data])

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        return IntMatrix(self.rows, self.cols,
                         [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self) -> IntMatrix:
        return self.scale(-1)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, [[k * a for a in r] for r in self.data])

    def reduce(self, n: int) -> IntMatrix:
        """Entries reduced into [0, n); the identity when n == 0."""
        if n == 0:
            return self
        return IntMatrix(self.rows, self.cols, [[a % n for a in r] for r in self.data])

    def is_zero(self, n: int = 0) -> bool:
        if n == 0:
            return all(a == 0 for r in self.data for a in r)
        return all(a % n == 0 for r in self.data for a in r)

    def __str__(self):
        if not self.rows or not self.cols:
            return f"<{self.rows}x{self.cols}>"
        return "\n".join(" ".join(f"{a:>3}" for a in r) for r in self.data)


def hstack(*ms: IntMatrix) -> IntMatrix:
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise ValueError("hstack needs equal row counts")
    return IntMatrix(rows, sum(m.cols for m in ms),
                     [sum((m.data[i] for m in ms), ()) for i in range(rows)])


def vstack(*ms: IntMatrix) -> IntMatrix:
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ValueError("vstack needs equal column counts")
    return IntMatrix(sum(m.rows for m in ms), cols, [r for m in ms for r in m.data])


def block_diag(*ms: IntMatrix) -> IntMatrix:
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in ms:
        for i, row in enumerate(m.data):
            out[r0 + i][c0:c0 + m.cols] = row
        r0 += m.rows
        c0 += m.cols
    return IntMatrix(rows, cols, out)


def kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Kronecker product; basis index (i, j) maps to i * dim_b + j."""
    rows = a.rows * b.rows
    cols = a.cols * b.cols
    out = [[0] * cols for _ in range(rows)]
    for i, j in product(range(a.rows), range(a.cols)):
        x = a.data[i][j]
        if x:
            for k, row in enumerate(b.data):
                target = out[i * b.rows + k]
                base = j * b.cols
                for l, y in enumerate(row):
                    target[base + l] = x * y
    return IntMatrix(rows, cols, out)


@dataclass(frozen=True)
class SNFResult:
    """``u @ a @ v == s`` with u, v unimodular; ``u_inv``/``v_inv`` are
    their exact inverses.  ``diag`` has length min(rows, cols)."""

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix
    diag: tuple[int, ...]
    u_inv: IntMatrix
    v_inv: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d)


def snf(a: IntMatrix) -> SNFResult:
    """Smith normal form by pivoting on the smallest nonzero entry.

    Ties go to the lowest row, then the lowest column, so the output is a
    deterministic function of the input.
    """
    m, n = a.shape
    A = a.to_lists()
    U = IntMatrix.identity(m).to_lists()
    Ui = IntMatrix.identity(m).to_lists()
    V = IntMatrix.identity(n).to_lists()
    Vi = IntMatrix.identity(n).to_lists()

    # Each elementary operation is applied to A and mirrored on the
    # transforms: row ops hit U from the left and Ui from the right.
    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i != j:
            for r in A:
                r[i], r[j] = r[j], r[i]
            for r in V:
                r[i], r[j] = r[j], r[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]
        for r in Ui:
            r[src] -= q * r[dst]

    def add_col(dst, src, q):
        # col dst += q * col src
        for r in A:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]
        Vi[src] = [x - q * y for x, y in zip(Vi[src], Vi[dst])]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for r in Ui:
            r[i] = -r[i]

    def smallest(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return best

    t = 0
    while t < min(m, n):
        found = smallest(t)
        if found is None:
            break
        while True:
            _, pi, pj = found
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            dirty = any(A[i][t] for i in range(t + 1, m)) or any(
                A[t][j] for j in range(t + 1, n))
            if not dirty:
                bad = next((i for i in range(t + 1, m)
                            if any(A[i][j] % p for j in range(t + 1, n))), None)
                if bad is None:
                    break
                add_row(t, bad, 1)
            found = smallest(t)
        if A[t][t] < 0:
            negate_row(t)
        t += 1

    diag = tuple(A[i][i] for i in range(min(m, n)))
    return SNFResult(IntMatrix(m, m, U), IntMatrix(m, n, A), IntMatrix(n, n, V), diag,
                     IntMatrix(m, m, Ui), IntMatrix(n, n, Vi))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx, y, ny = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
    if a < 0:
        a, x, y = -a, -x, -y
    return a, x, y


def row_hnf(rows: Sequence[Sequence[int]], width: int) -> list[list[int]]:
    """Hermite normal form of the row lattice; returns its nonzero rows.

    Pivots are positive and entries above a pivot lie in [0, pivot), which
    makes the basis canonical for the lattice.
    """
    M = [list(r) for r in rows if any(r)]
    r = 0
    for c in range(width):
        if r >= len(M):
            break
        nz = [i for i in range(r, len(M)) if M[i][c]]
        if not nz:
            continue
        k = nz[0]
        M[r], M[k] = M[k], M[r]
        for i in range(r + 1, len(M)):
            b = M[i][c]
            if not b:
                continue
            a = M[r][c]
            g, x, y = _xgcd(a, b)
            ra, rb = M[r], M[i]
            M[r] = [x * p + y * q for p, q in zip(ra, rb)]
            M[i] = [(a // g) * q - (b // g) * p for p, q in zip(ra, rb)]
        if M[r][c] < 0:
            M[r] = [-x for x in M[r]]
        p = M[r][c]
        for i in range(r):
            q = M[i][c] // p
            if q:
                M[i] = [x - q * y for x, y in zip(M[i], M[r])]
        r += 1
    return [row for row in M[:r] if any(row)]


def column_basis(a: IntMatrix) -> IntMatrix:
    """A canonical (Hermite) basis of the lattice spanned by a's columns."""
    rows = row_hnf(a.T.data, a.rows)
    return IntMatrix.from_columns(rows, a.rows)


def kernel_lattice(a: IntMatrix, modulus: int = 0) -> IntMatrix:
    """Hermite basis of {x in Z^cols : a x = 0 (mod modulus)}."""
    if modulus:
        lifted = hstack(a, IntMatrix.identity(a.rows).scale(modulus))
        res = snf(lifted)
        gens = res.v.select_columns(range(res.rank, lifted.cols))
        gens = gens.select_rows(range(a.cols))
    else:
        res = snf(a)
        gens = res.v.select_columns(range(res.rank, a.cols))
    return column_basis(gens)


def kernel_basis(a: IntMatrix, modulus: int = 0) -> IntMatrix:
    """Columns generating the kernel of ``a`` over Z (modulus 0) or Z/n.

    Over Z the columns are a lattice basis.  Over Z/n they are the Hermite
    basis of the lifted kernel, reduced mod n with zero columns dropped.
    """
    basis = kernel_lattice(a, modulus)
    if not modulus:
        return basis
    cols = []
    for c in basis.reduce(modulus).columns():
        if any(c) and c not in cols:
            cols.append(c)
    return IntMatrix.from_columns(cols, a.cols)


def solve(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Some integer x with ``a @ x == b``; raises NoSolution otherwise."""
    if a.rows != b.rows:
        raise ValueError(f"cannot solve {a.shape} against {b.shape}")
    res = snf(a)
    ub = res.u @ b
    y = [[0] * b.cols for _ in range(a.cols)]
    for i in range(a.rows):
        d = res.diag[i] if i < len(res.diag) else 0
        for j in range(b.cols):
            x = ub.data[i][j]
            if d == 0:
                if x:
                    raise NoSolution("right-hand side leaves the column span")
            elif x % d:
                raise NoSolution("right-hand side is not an integer combination")
            else:
                y[i][j] = x // d
    return res.v @ IntMatrix(a.cols, b.cols, y)


def in_span(a: IntMatrix, b: IntMatrix) -> bool:
    """Whether every column of b is an integer combination of a's columns."""
    try:
        solve(a, b)
    except NoSolution:
        return False
    return True


def cokernel_presentation(a: IntMatrix, modulus: int = 0) -> IntMatrix:
    """Presentation (generators = rows of a) of coker(a) over Z or Z/n."""
    if modulus:
        return hstack(a, IntMatrix.identity(a.rows).scale(modulus))
    return a


def invariant_factors(a: IntMatrix, modulus: int = 0) -> tuple[int, list[int]]:
    """(free rank, nonunit invariant factors) of coker(a) over Z or Z/n.

    Over Z/n a summand Z/n counts towards the free rank.
    """
    res = snf(cokernel_presentation(a, modulus))
    diag = list(res.diag) + [0] * (a.rows - len(res.diag))
    free = 0
    factors = []
    for d in diag:
        if d == 0 or (modulus and d == modulus):
            free += 1
        elif d != 1:
            factors.append(d)
    return free, factors


def determinant(a: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant of a square matrix."""
    n = a.rows
    if n != a.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = a.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def gcd_all(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
