"""Delzant polytopes, their monotone fibers, and toric disk potentials."""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import determinant, rank, solve_rational
from .laurent import LaurentPoly


class PolytopeError(ValueError):
    pass


class NotBounded(PolytopeError):
    pass


class NotPrimitive(PolytopeError):
    def __init__(self, facet_index: int, normal):
        self.facet_index = facet_index
        self.normal = normal
        super().__init__(f"facet {facet_index} has non-primitive normal {list(normal)}")


class NotSmooth(PolytopeError):
    def __init__(self, vertex, normals):
        self.vertex = vertex
        self.normals = normals
        super().__init__(
            f"vertex {[str(x) for x in vertex]} is not smooth: incident normals "
            f"{[list(n) for n in normals]} do not form a lattice basis")


class DegeneratePolytope(PolytopeError):
    """Empty interior or redundant facet inequalities."""


class NoMonotonePoint(PolytopeError):
    pass


class NotTame(PolytopeError):
    pass


class IntegralityWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(int(x) for x in self.normal))
        object.__setattr__(self, "offset", Fraction(self.offset))

    def value(self, x: Sequence) -> Fraction:
        """<normal, x> + offset; nonnegative on the polytope."""
        return sum((n * Fraction(xi) for n, xi in zip(self.normal, x)), Fraction(0)) + self.offset


@dataclass(frozen=True)
class DelzantPolytope:
    facets: tuple[Facet, ...]

    def __post_init__(self):
        facets = tuple(f if isinstance(f, Facet) else Facet(*f) for f in self.facets)
        object.__setattr__(self, "facets", facets)
        if not facets:
            raise PolytopeError("a polytope needs at least one facet")
        dims = {len(f.normal) for f in facets}
        if len(dims) != 1:
            raise PolytopeError("facet normals have inconsistent dimensions")

    @property
    def dim(self) -> int:
        return len(self.facets[0].normal)

    @property
    def normals(self) -> list[tuple[int, ...]]:
        return [f.normal for f in self.facets]

    def scaled(self, s) -> DelzantPolytope:
        s = Fraction(s)
        return DelzantPolytope(tuple(Facet(f.normal, f.offset * s) for f in self.facets))


@dataclass(frozen=True)
class ValidationReport:
    dim: int
    vertices: tuple[tuple[Fraction, ...], ...]
    incident: tuple[tuple[int, ...], ...]
    integral: bool

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class MonotoneFiber:
    point: tuple[Fraction, ...]
    tau: Fraction
    ell: Fraction


def _recession_nonzero(normals: list[tuple[int, ...]], d: int) -> bool:
    """True when some nonzero x has <n, x> >= 0 for every normal."""
    if rank(normals) < d:
        return True
    # extreme rays of a pointed recession cone are cut out by d-1 tight normals
    for subset in itertools.combinations(normals, d - 1):
        if rank(list(subset)) != d - 1:
            continue
        ray = _kernel_vector(list(subset), d)
        for r in (ray, [-x for x in ray]):
            if all(sum(a * b for a, b in zip(n, r)) >= 0 for n in normals):
                return True
    return False


def _kernel_vector(rows: list[tuple[int, ...]], d: int) -> list[Fraction]:
    """A nonzero vector orthogonal to d-1 independent rows (generalized cross product)."""
    if d == 1:
        return [Fraction(1)]
    out = []
    for j in range(d):
        minor = [[r[k] for k in range(d) if k != j] for r in rows]
        out.append((-1) ** j * determinant(minor))
    return out


def _vertices(P: DelzantPolytope):
    d = P.dim
    found: dict[tuple[Fraction, ...], set[int]] = {}
    for subset in itertools.combinations(range(len(P.facets)), d):
        A = [P.facets[i].normal for i in subset]
        if determinant(A) == 0:
            continue
        x = solve_rational(A, [-P.facets[i].offset for i in subset])
        x = tuple(x)
        if all(f.value(x) >= 0 for f in P.facets):
            found.setdefault(x, set()).update(subset)
    vertices = sorted(found)
    incident = [tuple(sorted(i for i, f in enumerate(P.facets) if f.value(v) == 0))
                for v in vertices]
    return vertices, incident


def validate_delzant(P: DelzantPolytope, integrality: str = "warn") -> ValidationReport:
    """Check boundedness, primitivity, smoothness; enumerate vertices.

    `integrality` controls what happens when vertex differences are not
    integral (the symplectic class would not be integral): "warn", "error"
    or "ignore".
    """
    d = P.dim
    for i, f in enumerate(P.facets):
        if math.gcd(*f.normal) != 1:
            raise NotPrimitive(i, f.normal)
    if _recession_nonzero(P.normals, d):
        raise NotBounded("facet normals do not positively span; the polytope is unbounded")
    vertices, incident = _vertices(P)
    if not vertices:
        raise DegeneratePolytope("the facet inequalities have no common solution")
    v0 = vertices[0]
    if rank([[a - b for a, b in zip(v, v0)] for v in vertices[1:]] or [[0] * d]) < d:
        raise DegeneratePolytope("the polytope has empty interior")
    for i in range(len(P.facets)):
        on_facet = [v for v, inc in zip(vertices, incident) if i in inc]
        if len(on_facet) < d or (d > 1 and rank(
                [[a - b for a, b in zip(v, on_facet[0])] for v in on_facet[1:]]) < d - 1):
            raise DegeneratePolytope(f"facet {i} is redundant (does not support a facet)")
    for v, inc in zip(vertices, incident):
        normals = [P.facets[i].normal for i in inc]
        if len(inc) != d or abs(determinant(normals)) != 1:
            raise NotSmooth(v, normals)
    integral = all((a - b).denominator == 1 for v in vertices for a, b in zip(v, v0))
    if not integral:
        msg = "vertex differences are not integral; the symplectic class is not integral"
        if integrality == "error":
            raise PolytopeError(msg)
        if integrality == "warn":
            warnings.warn(msg, IntegralityWarning, stacklevel=2)
    return ValidationReport(d, tuple(vertices), tuple(incident), integral)


def monotone_fiber(P: DelzantPolytope, require_tame: bool = True) -> MonotoneFiber:
    """The interior point at equal lattice distance from all facets.

    Solves <nu_i, p> + c_i = ell for (p, ell); tau = 1 / ell.
    """
    d = P.dim
    A = [list(f.normal) + [-1] for f in P.facets]
    b = [-f.offset for f in P.facets]
    sol = solve_rational(A, b)
    if sol is None:
        raise NoMonotonePoint("no point is equidistant from all facets; not monotone "
                              "in this normalization")
    if rank(A) < d + 1:
        raise NoMonotonePoint("equidistance system is underdetermined")
    p, ell = tuple(sol[:d]), sol[d]
    if ell <= 0:
        raise NoMonotonePoint(f"equidistant point lies outside the polytope (ell = {ell})")
    tau = 1 / ell
    if require_tame and tau <= 1:
        raise NotTame(f"monotonicity constant tau = {tau} must exceed 1")
    return MonotoneFiber(point=p, tau=tau, ell=ell)


def disk_potential(P: DelzantPolytope, fiber: Optional[MonotoneFiber] = None,
                   signs: Optional[Sequence[int]] = None) -> LaurentPoly:
    """Maslov-two disk potential of the monotone fiber: one x^{nu_i} per facet.

    All facet areas equal ell at the monotone point, so coefficients are the
    signs (default all +1).
    """
    if fiber is None:
        fiber = monotone_fiber(P)
    for f in P.facets:
        if f.value(fiber.point) != fiber.ell:
            raise NoMonotonePoint("supplied fiber is not equidistant from all facets")
    if signs is None:
        signs = [1] * len(P.facets)
    if len(signs) != len(P.facets) or any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be one of +1/-1 per facet")
    return LaurentPoly({f.normal: s for f, s in zip(P.facets, signs)}, P.dim)


# ---------- standard polytopes ----------

def standard_simplex(dim: int) -> DelzantPolytope:
    """{x_i >= 0, 1 - sum x_i >= 0}: moment polytope of CP^dim."""
    facets = [Facet(tuple(int(i == j) for j in range(dim)), 0) for i in range(dim)]
    facets.append(Facet(tuple([-1] * dim), 1))
    return DelzantPolytope(tuple(facets))


def cube(dim: int, side=1) -> DelzantPolytope:
    facets = []
    for i in range(dim):
        e = tuple(int(i == j) for j in range(dim))
        facets.append(Facet(e, 0))
        facets.append(Facet(tuple(-x for x in e), side))
    return DelzantPolytope(tuple(facets))


def box(sides: Sequence) -> DelzantPolytope:
    dim = len(sides)
    facets = []
    for i, s in enumerate(sides):
        e = tuple(int(i == j) for j in range(dim))
        facets.append(Facet(e, 0))
        facets.append(Facet(tuple(-x for x in e), s))
    return DelzantPolytope(tuple(facets))
