"""Augmentation polynomials: vertex shift, descent to the lift, positive bases."""

from __future__ import annotations

import itertools
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import determinant, integer_inverse, matvec, member_preimage, rank, solve_rational
from .laurent import LaurentPoly
from .lift import LiftSpec
from .toric import DelzantPolytope, disk_potential, monotone_fiber, validate_delzant


class AugPolyError(ValueError):
    pass


class NotAVertex(AugPolyError):
    pass


class NotDescendable(AugPolyError):
    def __init__(self, exponent):
        self.exponent = tuple(exponent)
        super().__init__(f"exponent {list(exponent)} is not in the image of H1 of the lift")


class NotRepresentable(AugPolyError):
    pass


class ZeroCoordinate(AugPolyError):
    pass


# ---------- Newton polytopes ----------

def _in_hull(p, points) -> bool:
    """Exact convex-hull membership via Caratheodory: p is a convex combination
    of at most dim+1 affinely independent points."""
    if not points:
        return False
    d = len(p)
    if tuple(p) in {tuple(q) for q in points}:
        return True
    for k in range(2, min(len(points), d + 1) + 1):
        for subset in itertools.combinations(points, k):
            base = subset[0]
            diffs = [[q[i] - base[i] for q in subset[1:]] for i in range(d)]
            if rank(diffs) != k - 1:
                continue
            lam = solve_rational(diffs, [p[i] - base[i] for i in range(d)])
            if lam is None:
                continue
            if all(x >= 0 for x in lam) and sum(lam) <= 1:
                return True
    return False


@dataclass(frozen=True)
class NewtonPolytope:
    points: frozenset

    @classmethod
    def of(cls, W: LaurentPoly) -> NewtonPolytope:
        if W.is_zero():
            raise AugPolyError("the zero polynomial has no Newton polytope")
        return cls(frozenset(W.exponents()))

    def vertices(self) -> list[tuple[int, ...]]:
        pts = sorted(self.points)
        return [p for p in pts if not _in_hull(p, [q for q in pts if q != p])]

    def is_vertex(self, v) -> bool:
        v = tuple(v)
        return v in self.points and not _in_hull(v, [q for q in self.points if q != v])

    def contains(self, p) -> bool:
        return _in_hull(tuple(p), sorted(self.points))


def vertex_shift(W: LaurentPoly, v: Optional[Sequence[int]] = None) -> LaurentPoly:
    """x^{-v} W for a vertex v of the Newton polytope (default: lex-smallest)."""
    newton = NewtonPolytope.of(W)
    if v is None:
        v = newton.vertices()[0]
    elif not newton.is_vertex(v):
        raise NotAVertex(f"{list(v)} is not a vertex of the Newton polytope")
    return W.shift(tuple(-x for x in v))


def descend(W_shifted: LaurentPoly, spec: LiftSpec) -> LaurentPoly:
    """Rewrite every exponent in coordinates of the lift's H1 sublattice."""
    if not NewtonPolytope.of(W_shifted).is_vertex((0,) * W_shifted.nvars):
        raise NotAVertex("0 must be a vertex of the Newton polytope before descending")
    terms = {}
    for e, c in W_shifted.items():
        coords = member_preimage(spec.pi1_image, e)
        if coords is None:
            raise NotDescendable(e)
        terms[coords] = c
    return LaurentPoly(terms, spec.pi1_image.rank)


# ---------- positive bases ----------

@dataclass(frozen=True)
class BasisChange:
    """to_new maps old coordinates to new ones; basis holds the new basis
    vectors written in old coordinates (the columns of to_new^-1)."""
    to_new: tuple[tuple[int, ...], ...]
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_matrix(cls, T) -> BasisChange:
        inv = integer_inverse([list(r) for r in T])
        cols = tuple(tuple(inv[i][j] for i in range(len(inv))) for j in range(len(inv)))
        return cls(tuple(tuple(r) for r in T), cols)

    @classmethod
    def identity(cls, k: int) -> BasisChange:
        return cls.from_matrix([[int(i == j) for j in range(k)] for i in range(k)])

    def apply(self, exp) -> tuple[int, ...]:
        return matvec(self.to_new, exp)

    @property
    def is_identity(self) -> bool:
        return all(self.to_new[i][j] == int(i == j) for i in range(len(self.to_new))
                   for j in range(len(self.to_new)))


def _extreme_rays(vectors: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Generators of the cone that are not nonnegative combinations of the others,
    after removing positive multiples."""
    prim = []
    for v in vectors:
        if not any(v):
            continue
        if any(_positive_multiple(v, w) for w in prim):
            continue
        prim = [w for w in prim if not _positive_multiple(w, v)] + [v]
    rays = []
    for v in prim:
        others = [w for w in prim if w != v]
        if not _in_cone(v, others):
            rays.append(v)
    return sorted(rays)


def _positive_multiple(v, w) -> bool:
    """True when v = t*w for some rational t > 0."""
    if rank([list(v), list(w)]) > 1:
        return False
    return sum(a * b for a, b in zip(v, w)) > 0


def _in_cone(v, gens) -> bool:
    """Exact conic membership (Caratheodory for cones)."""
    d = len(v)
    for k in range(1, min(len(gens), d) + 1):
        for subset in itertools.combinations(gens, k):
            A = [[g[i] for g in subset] for i in range(d)]
            if rank(A) != k:
                continue
            lam = solve_rational(A, list(v))
            if lam is not None and all(x >= 0 for x in lam):
                return True
    return False


def positive_basis(exponents, entry_bound: int = 3) -> BasisChange:
    """A unimodular change of coordinates making every exponent nonnegative.

    Tries the identity, then the extreme rays of the exponent cone when they
    form a lattice basis, then all unimodular matrices whose rows lie in the
    dual cone with entries bounded by entry_bound.
    """
    pts = sorted({tuple(e) for e in exponents})
    if not pts:
        raise AugPolyError("no exponents given")
    k = len(pts[0])
    if (0,) * k not in pts:
        raise AugPolyError("0 must be among the exponents")
    if all(x >= 0 for p in pts for x in p):
        return BasisChange.identity(k)
    rays = _extreme_rays(pts)
    if len(rays) == k and abs(determinant([[r[i] for r in rays] for i in range(k)])) == 1:
        R = [[r[i] for r in rays] for i in range(k)]
        T = integer_inverse(R)
        if all(x >= 0 for p in pts for x in matvec(T, p)):
            return BasisChange.from_matrix(T)
    rng = range(-entry_bound, entry_bound + 1)
    candidates = [row for row in itertools.product(rng, repeat=k)
                  if any(row) and all(sum(a * b for a, b in zip(row, p)) >= 0 for p in pts)]
    candidates.sort(key=lambda r: (sum(abs(x) for x in r), tuple(-x for x in r)))
    for rows in itertools.combinations(candidates, k):
        if abs(determinant(rows)) == 1:
            return BasisChange.from_matrix([list(r) for r in rows])
    raise NotRepresentable(
        f"no unimodular basis with entries in [-{entry_bound}, {entry_bound}] puts "
        "every exponent in the positive orthant")


# ---------- the augmentation polynomial ----------

@dataclass(frozen=True)
class AugmentationPolynomial:
    poly: LaurentPoly
    basis_used: tuple[tuple[int, ...], ...]
    vertex_used: tuple[int, ...]
    positive: bool = True

    def format(self, prefix: str = "y") -> str:
        return self.poly.format([f"{prefix}{i + 1}" for i in range(self.poly.nvars)])

    def __str__(self):
        return self.format()


def augmentation_polynomial(P: DelzantPolytope, spec: LiftSpec,
                            vertex: Optional[Sequence[int]] = None,
                            signs: Optional[Sequence[int]] = None,
                            integrality: str = "warn") -> AugmentationPolynomial:
    """W_Lambda: shifted disk potential descended to the lift, in a positive basis
    when one exists (otherwise in the lift's own coordinates, positive=False)."""
    validate_delzant(P, integrality=integrality)
    fiber = monotone_fiber(P)
    W = disk_potential(P, fiber, signs)
    if vertex is None:
        vertex = NewtonPolytope.of(W).vertices()[0]
    vertex = tuple(vertex)
    shifted = vertex_shift(W, vertex)
    down = descend(shifted, spec)
    B = spec.pi1_image.matrix()
    try:
        change = positive_basis(down.exponents())
        positive = True
    except NotRepresentable:
        change = BasisChange.identity(down.nvars)
        positive = False
    poly = down.linear_change(change.to_new) if not change.is_identity else down
    # new basis vectors in H1 of the base: B @ (columns of to_new^-1)
    basis_cols = [list(col) for col in change.basis]
    basis_used = tuple(tuple(matvec(B, col)) for col in basis_cols)
    return AugmentationPolynomial(poly, basis_used, vertex, positive)


def variety_member(W, point: Sequence, tolerance: float = 1e-9) -> bool:
    """Does the point lie on {W = 0}?  Exact for rational points."""
    poly = W.poly if isinstance(W, AugmentationPolynomial) else W
    for x in point:
        if x == 0:
            raise ZeroCoordinate("coordinates of a point of the torus must be nonzero")
    exact = all(isinstance(x, (int, Fraction)) or
                (isinstance(x, numbers.Rational) and not isinstance(x, bool)) for x in point)
    if exact:
        return poly.evaluate([Fraction(x) for x in point]) == 0
    return abs(poly.evaluate([complex(x) for x in point])) <= tolerance


def change_point(change: BasisChange, point: Sequence) -> list:
    """Coordinates of a torus point after the monomial basis change.

    A monomial y^e in old coordinates equals z^{T e} in new ones, so
    y_i = prod_j z_j^{T_ji}; conversely z_j = prod_i y_i^{(T^-1)_ij}.
    """
    exact = all(isinstance(x, (int, Fraction)) for x in point)
    pt = [Fraction(x) for x in point] if exact else list(point)
    out = []
    for col in change.basis:  # col[i] = (T^-1)_{ij}
        val = Fraction(1) if exact else 1
        for x, e in zip(pt, col):
            if e:
                val *= x ** e
        out.append(val)
    return out
