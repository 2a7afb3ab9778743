"""Exact algebra of finitely generated free abelian groups.

Matrices are lists of rows of Python ints; vectors are tuples of ints.
Nothing here touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

Matrix = list[list[int]]
Vector = tuple[int, ...]

INFINITE_INDEX = math.inf


class LatticeError(ValueError):
    pass


class DimensionMismatch(LatticeError):
    pass


# ---------- small matrix helpers ----------

def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def transpose(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*A)]


def columns_to_matrix(vectors: Sequence[Sequence[int]], rows: int) -> Matrix:
    """Matrix whose columns are the given vectors (rows x len(vectors))."""
    return [[int(v[i]) for v in vectors] for i in range(rows)]


def determinant(A: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if M[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            M[c], M[pivot] = M[pivot], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def rank(A: Sequence[Sequence]) -> int:
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """One exact solution of A x = b (free variables set to 0), or None."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * p for a, p in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][cols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return x


def integer_inverse(A: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    n = len(A)
    det = determinant(A)
    if abs(det) != 1:
        raise LatticeError(f"matrix is not unimodular (det = {det})")
    inv = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        inv.append(solve_rational(A, e))
    # solve_rational returned columns of the inverse
    return [[int(inv[j][i]) for j in range(n)] for i in range(n)]


# ---------- domain types ----------

@dataclass(frozen=True)
class IntegerLattice:
    rank: int
    name: str = ""

    def __post_init__(self):
        if self.rank < 0:
            raise LatticeError("lattice rank must be nonnegative")


@dataclass(frozen=True)
class LatticeHom:
    source: IntegerLattice
    target: IntegerLattice
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.rank or any(len(row) != self.source.rank for row in m):
            raise DimensionMismatch(
                f"matrix must be {self.target.rank}x{self.source.rank}")

    def __call__(self, v: Sequence[int]) -> Vector:
        if len(v) != self.source.rank:
            raise DimensionMismatch(f"expected vector of length {self.source.rank}")
        return matvec(self.matrix, v)

    def compose(self, other: LatticeHom) -> LatticeHom:
        """self after other."""
        if other.target != self.source:
            raise DimensionMismatch("cannot compose: lattices differ")
        return LatticeHom(other.source, self.target,
                          matmul([list(r) for r in self.matrix], [list(r) for r in other.matrix]))


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V == D with U, V unimodular and D diagonal, d_i | d_{i+1}."""
    U: Matrix
    D: Matrix
    V: Matrix
    U_inv: Matrix = field(repr=False, compare=False, default_factory=list)

    @property
    def invariant_factors(self) -> list[int]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k) if self.D[i][i] != 0]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form by elementary row/column operations.

    The pivot at each stage is the nonzero entry of least absolute value in
    the remaining block; rows and columns are reduced against it until it
    divides everything left.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    D = [[int(x) for x in row] for row in M]
    U = identity(m)
    U_inv = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in U_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for row in U_inv:
            row[src] -= q * row[dst]

    def add_col(src, dst, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for row in U_inv:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # pivot must divide the whole remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            negate_row(t)
        t += 1
    return SmithDecomposition(U=U, D=D, V=V, U_inv=U_inv)


@dataclass(frozen=True)
class Sublattice:
    ambient: IntegerLattice
    basis: tuple[Vector, ...]

    def __post_init__(self):
        basis = tuple(tuple(int(x) for x in v) for v in self.basis)
        object.__setattr__(self, "basis", basis)
        for v in basis:
            if len(v) != self.ambient.rank:
                raise DimensionMismatch(
                    f"basis vector {v} does not live in a rank-{self.ambient.rank} lattice")
        if basis and rank(list(basis)) != len(basis):
            raise LatticeError("sublattice basis vectors are linearly dependent")

    @classmethod
    def full(cls, r: int) -> Sublattice:
        return cls(IntegerLattice(r), tuple(tuple(row) for row in identity(r)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def matrix(self) -> Matrix:
        """Ambient-rank x rank matrix with the basis as columns."""
        return columns_to_matrix(self.basis, self.ambient.rank)

    def inclusion(self) -> LatticeHom:
        return LatticeHom(IntegerLattice(self.rank), self.ambient,
                          tuple(tuple(r) for r in self.matrix()))

    def contains(self, v: Sequence[int]) -> bool:
        return member_preimage(self, v) is not None


def member_preimage(S: Sublattice, v: Sequence[int]) -> Optional[Vector]:
    """Integer coordinates c with sum(c_i * basis_i) == v, or None if v is not in S."""
    if len(v) != S.ambient.rank:
        raise DimensionMismatch(
            f"vector of length {len(v)} in a rank-{S.ambient.rank} lattice")
    if S.rank == 0:
        return () if not any(v) else None
    snf = smith_normal_form(S.matrix())
    w = matvec(snf.U, v)
    z = []
    for i, wi in enumerate(w):
        d = snf.D[i][i] if i < S.rank else 0
        if d == 0:
            if wi != 0:
                return None
        else:
            if wi % d:
                return None
            z.append(wi // d)
    return matvec(snf.V, z)


def sublattice_index(S: Sublattice) -> int | float:
    """[ambient : S], or INFINITE_INDEX when S has lower rank."""
    if S.rank < S.ambient.rank:
        return INFINITE_INDEX
    return abs(int(determinant(S.matrix())))


def cokernel_order(M: Sequence[Sequence[int]]) -> int | float:
    """Order of Z^rows / image(M): product of invariant factors, or infinite."""
    snf = smith_normal_form(M)
    if snf.rank < len(M):
        return INFINITE_INDEX
    return math.prod(snf.invariant_factors)


def hermite_basis(vectors: Sequence[Sequence[int]]) -> list[Vector]:
    """Row-style Hermite basis (upper echelon, positive pivots) of the span."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        while len([r for r in rows if r[col]]) > 1:
            nz = sorted((r for r in rows if r[col]), key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for k in range(ncols):
                    r[k] -= q * p[k]
            rows = [r for r in rows if any(r)]
        p = next(r for r in rows if r[col])
        if p[col] < 0:
            p = [-x for x in p]
        rows = [r for r in rows if r[col] == 0 and any(r)]
        out.append(p)
        col += 1
    # reduce entries above pivots
    for i, p in enumerate(out):
        pc = next(k for k, x in enumerate(p) if x)
        for j in range(i):
            q = out[j][pc] // p[pc]
            out[j] = [a - q * b for a, b in zip(out[j], p)]
    return [tuple(r) for r in out]


def generated_sublattice(vectors: Sequence[Sequence[int]], ambient_rank: int) -> Sublattice:
    """The sublattice spanned by arbitrary (possibly dependent) integer vectors."""
    return Sublattice(IntegerLattice(ambient_rank), tuple(hermite_basis(vectors)))
