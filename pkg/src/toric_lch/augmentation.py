"""Verification of augmentations, chain maps and Maurer-Cartan residuals; matchings."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .ce_algebra import (CEElement, CEError, CoefficientRing, DifferentialTable, MissingGenerator,
                         NO_TRUNCATION, Truncation, derive, substitute_letters)
from .laurent import LaurentPoly
from .lift import Generator


class MissingValue(CEError):
    def __init__(self, generator):
        self.generator = generator
        super().__init__(f"augmentation has no value on {generator}")


class MissingTable(CEError):
    def __init__(self, d: int):
        self.d = d
        super().__init__(f"no m_{d} table supplied but its contribution is not truncated away")


class EndpointMismatch(CEError):
    pass


class UnobstructednessUnknown(UserWarning):
    pass


def _subst_coeff(c: LaurentPoly, images: Sequence[LaurentPoly], target: CoefficientRing) -> LaurentPoly:
    if c.nvars == 0:
        return target.const(c.constant_term())
    return c.substitute(list(images))


def _identity_images(ring: CoefficientRing) -> tuple[LaurentPoly, ...]:
    return tuple(LaurentPoly.variable(i, ring.nvars) for i in range(ring.nvars))


# ---------- augmentations ----------

@dataclass(frozen=True, eq=False)
class Augmentation:
    """Unital algebra map CE -> target ring, given on generators and on the
    source ring's variables (variables default to themselves when the
    source and target rings agree)."""
    source: CoefficientRing
    target: CoefficientRing
    values: Mapping[Generator, LaurentPoly]
    variables: tuple[LaurentPoly, ...] = ()
    label: str = ""

    def __post_init__(self):
        vals = {g: self.target.coerce(v) for g, v in self.values.items()}
        object.__setattr__(self, "values", vals)
        variables = tuple(self.target.coerce(v) for v in self.variables)
        if not variables and self.source.nvars:
            if self.source != self.target:
                raise CEError("variable values are required when source and target rings differ")
            variables = _identity_images(self.source)
        if len(variables) != self.source.nvars:
            raise CEError(f"need {self.source.nvars} variable values, got {len(variables)}")
        object.__setattr__(self, "variables", variables)

    def __call__(self, x: CEElement) -> LaurentPoly:
        if x.ring != self.source:
            raise CEError("element does not live over the augmentation's source ring")
        total = self.target.zero()
        for word, c in x.terms.items():
            term = _subst_coeff(c, self.variables, self.target)
            for g in word:
                if g not in self.values:
                    raise MissingValue(g)
                term = term * self.values[g]
                if term.is_zero():
                    break
            total = total + term
        return total

    def is_graded(self) -> bool:
        """True when every nonzero value sits on a degree-zero generator."""
        return all(g.deg_R == 0 for g, v in self.values.items() if not v.is_zero())

    def after(self, phi: ChainMap) -> Augmentation:
        """The composite self o phi."""
        if phi.target != self.source:
            raise EndpointMismatch("chain map target ring differs from augmentation source ring")
        values = {g: self(img.with_truncation(NO_TRUNCATION)) for g, img in phi.images.items()}
        variables = tuple(_subst_coeff(v, self.variables, self.target) for v in phi.variables)
        return Augmentation(phi.source, self.target, values, variables, self.label)


@dataclass(frozen=True)
class CheckReport:
    ok: bool
    residuals: tuple[tuple[Generator, object], ...] = ()

    def failures(self) -> list[str]:
        return [f"{g}: {r}" for g, r in self.residuals]


def check_augmentation(table: DifferentialTable, eps: Augmentation,
                       truncation: Optional[Truncation] = None) -> CheckReport:
    """eps(delta g) == 0 for every generator g with a table entry."""
    truncation = truncation or table.truncation
    residuals = []
    for g in sorted(table.entries, key=lambda h: h.symbol):
        val = eps(table.entries[g])
        val = eps.target.truncate(val, truncation.max_area)
        if not val.is_zero():
            residuals.append((g, val))
    return CheckReport(not residuals, tuple(residuals))


# ---------- chain maps ----------

@dataclass(frozen=True, eq=False)
class ChainMap:
    """Unital algebra map between CE algebras, given on generators."""
    source: CoefficientRing
    target: CoefficientRing
    images: Mapping[Generator, CEElement]
    variables: tuple[LaurentPoly, ...] = ()
    truncation: Truncation = NO_TRUNCATION

    def __post_init__(self):
        images = {}
        for g, img in self.images.items():
            if img.ring != self.target:
                raise CEError(f"image of {g} does not live over the target ring")
            images[g] = img.with_truncation(self.truncation)
        object.__setattr__(self, "images", images)
        variables = tuple(self.target.coerce(v) for v in self.variables)
        if not variables and self.source.nvars:
            if self.source != self.target:
                raise CEError("variable images are required when source and target rings differ")
            variables = _identity_images(self.source)
        if len(variables) != self.source.nvars:
            raise CEError(f"need {self.source.nvars} variable images, got {len(variables)}")
        object.__setattr__(self, "variables", variables)

    @classmethod
    def identity(cls, table: DifferentialTable) -> ChainMap:
        return cls(table.ring, table.ring,
                   {g: CEElement.gen(table.ring, g, truncation=table.truncation)
                    for g in table.generators}, (), table.truncation)

    @classmethod
    def zero(cls, source: DifferentialTable, target: DifferentialTable) -> ChainMap:
        """Sends every generator to 0; variables go to themselves when the rings
        agree and to 1 otherwise."""
        same = source.ring == target.ring
        variables = () if same else tuple(target.ring.one() for _ in range(source.ring.nvars))
        return cls(source.ring, target.ring,
                   {g: CEElement.zero(target.ring, target.truncation) for g in source.generators},
                   variables, target.truncation)

    def __call__(self, x: CEElement) -> CEElement:
        if x.ring != self.source:
            raise CEError("element does not live over the chain map's source ring")
        return substitute_letters(x, self.images, self.variables, self.target, self.truncation)

    def then(self, other: ChainMap) -> ChainMap:
        """The composite other o self."""
        if self.target != other.source:
            raise EndpointMismatch("target ring of the first map differs from source ring of the second")
        images = {g: other(img) for g, img in self.images.items()}
        variables = tuple(_subst_coeff(v, other.variables, other.target) for v in self.variables)
        return ChainMap(self.source, other.target, images, variables, other.truncation)

    def same_as(self, other: ChainMap) -> bool:
        return (self.source == other.source and self.target == other.target
                and self.variables == other.variables
                and set(self.images) == set(other.images)
                and all(self.images[g] == other.images[g] for g in self.images))


def check_chain_map(phi: ChainMap, table_minus: DifferentialTable, table_plus: DifferentialTable,
                    truncation: Optional[Truncation] = None) -> CheckReport:
    """phi(delta_- g) == delta_+(phi(g)) for every generator with a table entry."""
    truncation = truncation or table_plus.truncation
    for g in table_minus.generators:
        if g not in phi.images:
            raise MissingGenerator(g)
    residuals = []
    for g in sorted(table_minus.entries, key=lambda h: h.symbol):
        lhs = phi(table_minus.entries[g]).with_truncation(truncation)
        rhs = derive(table_plus, phi.images[g].with_truncation(table_plus.truncation))
        diff = lhs - rhs.with_truncation(truncation)
        if not diff.is_zero():
            residuals.append((g, diff))
    return CheckReport(not residuals, tuple(residuals))


def composition_associative(f: ChainMap, g: ChainMap, h: ChainMap) -> bool:
    """(f then g) then h equals f then (g then h), compared exactly on generators."""
    return f.then(g).then(h).same_as(f.then(g.then(h)))


# ---------- Maurer-Cartan residuals ----------

@dataclass(frozen=True, eq=False)
class MCProblem:
    """m_tables[d] maps d-tuples of generators to outputs; tuples absent from a
    table contribute 0.  b is a linear combination of single generators."""
    m_tables: Mapping[int, Mapping[tuple[Generator, ...], CEElement]]
    b: CEElement
    max_d: Optional[int] = None

    def __post_init__(self):
        for word in self.b.terms:
            if len(word) != 1:
                raise CEError("b must be a linear combination of generators")

    def coefficients(self) -> dict[Generator, LaurentPoly]:
        return {w[0]: c for w, c in self.b.terms.items()}


def _needed_degrees(problem: MCProblem, truncation: Truncation) -> int:
    if problem.b.is_zero():
        return 0
    if problem.max_d is not None:
        return problem.max_d
    ring = problem.b.ring
    if truncation.max_area is not None:
        areas = [ring.area(e) for c in problem.b.terms.values() for e in c.terms]
        lowest = min(areas)
        if lowest > 0:
            return int(truncation.max_area // lowest)
    return max(problem.m_tables, default=0)


def mc_contributions(problem: MCProblem, truncation: Optional[Truncation] = None) -> dict[int, CEElement]:
    """d -> (1/d!) m_d(b, ..., b), for every d that survives truncation."""
    truncation = truncation or problem.b.truncation
    top = _needed_degrees(problem, truncation)
    coeffs = sorted(problem.coefficients().items(), key=lambda t: t[0].symbol)
    out = {}
    for d in range(top + 1):
        if d not in problem.m_tables:
            raise MissingTable(d)
        table = problem.m_tables[d]
        total = None
        for args, val in sorted(table.items(), key=lambda t: tuple(g.symbol for g in t[0])):
            if len(args) != d:
                raise CEError(f"m_{d} entry has {len(args)} inputs")
            weight = val.ring.one()
            coeff_map = dict(coeffs)
            for g in args:
                weight = weight * coeff_map.get(g, val.ring.zero())
            if weight.is_zero():
                continue
            term = val.with_truncation(truncation).scale(weight * Fraction(1, math.factorial(d)))
            total = term if total is None else total + term
        out[d] = total if total is not None else CEElement.zero(problem.b.ring, truncation)
    return out


def mc_residual(problem: MCProblem, truncation: Optional[Truncation] = None) -> CEElement:
    """m(b) = sum_d (1/d!) m_d(b, ..., b); b is bounding exactly when this is 0."""
    truncation = truncation or problem.b.truncation
    parts = mc_contributions(problem, truncation)
    total = CEElement.zero(problem.b.ring, truncation)
    for d in sorted(parts):
        total = total + parts[d].with_truncation(truncation)
    return total


# ---------- matchings ----------

@dataclass(frozen=True)
class Endpoint:
    side: str  # "-" or "+"
    label: str
    phase: Fraction = Fraction(0)

    def __post_init__(self):
        if self.side not in ("-", "+"):
            raise EndpointMismatch(f"endpoint side must be '-' or '+', got {self.side!r}")
        object.__setattr__(self, "label", str(self.label))
        object.__setattr__(self, "phase", Fraction(self.phase))


@dataclass(frozen=True)
class Matching:
    """A one-manifold in the strip joining the negative boundary points to the
    positive ones.  Intervals may join two points on the same side (caps);
    circles counts closed components."""
    minus_points: tuple[Endpoint, ...]
    plus_points: tuple[Endpoint, ...]
    intervals: tuple[tuple[Endpoint, Endpoint], ...]
    circles: int = 0

    def __post_init__(self):
        used = [p for iv in self.intervals for p in iv]
        boundary = list(self.minus_points) + list(self.plus_points)
        for p in self.minus_points:
            if p.side != "-":
                raise EndpointMismatch(f"{p} listed among negative points")
        for p in self.plus_points:
            if p.side != "+":
                raise EndpointMismatch(f"{p} listed among positive points")
        if sorted(used, key=repr) != sorted(boundary, key=repr):
            raise EndpointMismatch("intervals must use every boundary point exactly once")
        if self.circles < 0:
            raise EndpointMismatch("circle count must be nonnegative")

    @property
    def simply_connected(self) -> bool:
        return self.circles == 0

    def straight(self) -> dict[str, str]:
        """Negative label -> positive label along intervals crossing the strip."""
        out = {}
        for a, b in self.intervals:
            if a.side == "+" and b.side == "-":
                a, b = b, a
            if a.side == "-" and b.side == "+":
                out[a.label] = b.label
        return out

    def is_trivial(self) -> bool:
        """Every interval crosses the strip and keeps its label (circles allowed)."""
        s = self.straight()
        return len(s) == len(self.intervals) and all(k == v for k, v in s.items())

    @classmethod
    def trivial(cls, labels: Sequence[str], phases: Optional[Sequence] = None) -> Matching:
        phases = list(phases) if phases is not None else [0] * len(labels)
        minus = tuple(Endpoint("-", l, p) for l, p in zip(labels, phases))
        plus = tuple(Endpoint("+", l, p) for l, p in zip(labels, phases))
        return cls(minus, plus, tuple(zip(minus, plus)))


Piece = Union[ChainMap, Augmentation]


def compose_matching(m: Matching, pieces: Sequence[Piece],
                     table: Optional[DifferentialTable] = None) -> Piece:
    """Compose the maps of successive cobordism pieces across a matching.

    pieces[0] is applied first.  The matching itself must be trivial (it then
    contributes the identity, built from `table` when there are no pieces).
    A final Augmentation makes the result an Augmentation.
    """
    if not m.simply_connected:
        warnings.warn("matching has closed components; unobstructedness is not guaranteed",
                      UnobstructednessUnknown, stacklevel=2)
    if not m.is_trivial():
        raise EndpointMismatch("only trivial (straight, label-preserving) matchings can be "
                               "composed without supplied pieces for each interval class")
    if not pieces:
        if table is None:
            raise CEError("an empty composition needs a table to build the identity on")
        return ChainMap.identity(table)
    result: Piece = pieces[0]
    for nxt in pieces[1:]:
        if isinstance(result, Augmentation):
            raise EndpointMismatch("an augmentation must be the last piece")
        if isinstance(nxt, Augmentation):
            result = nxt.after(result)
        else:
            result = result.then(nxt)
    return result
