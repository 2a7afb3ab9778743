"""Leading-order differentials of lifted toric fibers, plus the two-torus classical table."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .augpoly import AugmentationPolynomial, augmentation_polynomial
from .ce_algebra import CEElement, CoefficientRing, DifferentialTable, Truncation, NO_TRUNCATION
from .laurent import LaurentPoly
from .lift import (Generator, LiftSpec, ReebChordComponent, classical_generators,
                   enumerate_chords, generators)
from .toric import DelzantPolytope, monotone_fiber


def variable_names(spec: LiftSpec, rank: int) -> list[str]:
    """y<k> for a connected lift, y<k>_<label> when there are several components."""
    if len(spec.components) == 1:
        return [f"y{k + 1}" for k in range(rank)]
    return [f"y{k + 1}_{c.label}" for c in spec.components for k in range(rank)]


def component_positions(spec: LiftSpec, label: str, rank: int) -> list[int]:
    if len(spec.components) == 1:
        return list(range(rank))
    i = [c.label for c in spec.components].index(label)
    return [i * rank + k for k in range(rank)]


def chord_concatenations(spec: LiftSpec, chord: ReebChordComponent
                         ) -> list[tuple[ReebChordComponent, ReebChordComponent]]:
    """Ordered pairs (first, second) with first from chord.source to some sheet,
    second from that sheet to chord.target, and angles summing to chord.angle."""
    shorter = [c for c in enumerate_chords(spec, chord.angle) if c.angle < chord.angle]
    out = []
    for first in shorter:
        if first.source != chord.source:
            continue
        for second in shorter:
            if (second.source == first.target and second.target == chord.target
                    and first.angle + second.angle == chord.angle):
                out.append((first, second))
    return out


def leading_differential(P: DelzantPolytope, spec: LiftSpec,
                         signs: Optional[Sequence[int]] = None,
                         vertex: Optional[Sequence[int]] = None,
                         truncation: Truncation = NO_TRUNCATION,
                         augpoly: Optional[AugmentationPolynomial] = None) -> DifferentialTable:
    """Leading terms of delta on chords up to the Maslov-two angle 1/tau.

    a-generator of a chord: W_Lambda in the source component's variables when
    the chord is a closed Maslov-two chord, plus one word a'a'' for every
    concatenation of shorter chords.  Index-one generator along direction k
    of a chord from i to j: (1 - y_{k,i} y_{k,j}^-1) times the a-generator.
    Classical generators: 0.  Everything else is left unknown and the table is
    marked truncated.
    """
    fiber = monotone_fiber(P)
    W = augpoly or augmentation_polynomial(P, spec, vertex=vertex, signs=signs)
    r = W.poly.nvars
    names = variable_names(spec, r)
    ring = CoefficientRing(tuple(names))
    nv = ring.nvars
    gens = generators(spec, fiber.tau)
    a_of = {g.chord: g for g in gens.reeb if g.morse_index == 0}
    entries: dict[Generator, CEElement] = {}
    for g in gens.classical:
        entries[g] = CEElement.zero(ring, truncation)
    for chord, a in a_of.items():
        d = CEElement.zero(ring, truncation)
        if chord.source == chord.target and chord.angle == 1 / fiber.tau:
            pos = component_positions(spec, chord.source, r)
            d = d + CEElement.scalar(ring, W.poly.embed(pos, nv), truncation)
        for first, second in chord_concatenations(spec, chord):
            d = d + CEElement.word(ring, (a_of[first], a_of[second]), 1, truncation)
        entries[a] = d
    for g in gens.reeb:
        if g.morse_index != 1:
            continue
        (k,) = g.directions
        i, j = g.chord.source, g.chord.target
        yi = LaurentPoly.variable(component_positions(spec, i, r)[k - 1], nv)
        yj = LaurentPoly.variable(component_positions(spec, j, r)[k - 1], nv)
        coeff = 1 - yi * yj ** -1
        entries[g] = CEElement.gen(ring, a_of[g.chord], coeff, truncation)
    return DifferentialTable(ring, tuple(gens.all()), entries, truncation, truncated=True,
                             notes=("leading order only; higher terms unknown",))


def t2_classical_table(sign: int = 1, unit_terms: bool = False,
                       truncation: Truncation = NO_TRUNCATION) -> DifferentialTable:
    """Classical sector of a two-torus component: delta b = +-(c1 c2 - c2 c1),
    optionally plus b a + a b; delta a = delta c_i = 0."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ring = CoefficientRing(())
    a, c1, c2, b = classical_generators("1", 2)
    db = CEElement.word(ring, (c1, c2), sign, truncation) - CEElement.word(ring, (c2, c1), sign, truncation)
    if unit_terms:
        db = db + CEElement.word(ring, (b, a), 1, truncation) + CEElement.word(ring, (a, b), 1, truncation)
    zero = CEElement.zero(ring, truncation)
    return DifferentialTable(ring, (a, c1, c2, b), {a: zero, c1: zero, c2: zero, b: db},
                             truncation, truncated=True,
                             notes=("classical sector only",))


def divisor_assignments(table: DifferentialTable, spec: LiftSpec, rank: int) -> dict[int, Generator]:
    """Variable index -> classical index-one generator along the same direction."""
    by = {(g.component, g.directions): g for g in table.generators
          if g.kind == "classical" and g.morse_index == 1}
    out = {}
    for c in spec.components:
        for k, pos in enumerate(component_positions(spec, c.label, rank)):
            out[pos] = by[(c.label, (k + 1,))]
    return out
