import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toric_lch.augpoly import (NotAVertex, NotDescendable, NotRepresentable, ZeroCoordinate,
                               augmentation_polynomial, change_point, descend, positive_basis,
                               variety_member, vertex_shift)
from toric_lch.inputs import clifford, cliffordanti, hopf, p1xp1
from toric_lch.lattice import IntegerLattice, Sublattice, determinant, matvec
from toric_lch.laurent import LaurentPoly
from toric_lch.lift import Component, LiftSpec
from toric_lch.toric import cube, disk_potential, standard_simplex

F = Fraction
CP2 = disk_potential(standard_simplex(2))
SQ = disk_potential(cube(2))


def test_vertex_shift_examples():
    assert vertex_shift(CP2, (1, 0)) == LaurentPoly({(0, 0): 1, (-1, 1): 1, (-2, -1): 1}, 2)
    assert vertex_shift(LaurentPoly.monomial((3, -1)), (3, -1)) == 1
    assert vertex_shift(SQ, (-1, 0)) == LaurentPoly({(2, 0): 1, (0, 0): 1, (1, 1): 1, (1, -1): 1}, 2)


def test_vertex_shift_rejects_non_vertex():
    with pytest.raises(NotAVertex):
        vertex_shift(SQ + 1, (0, 0))


def test_vertex_shift_default_is_lex_smallest():
    assert vertex_shift(CP2) == CP2.shift((1, 1))


def test_descend_examples():
    spec = clifford(3).lift
    assert descend(vertex_shift(CP2, (1, 0)), spec) == LaurentPoly({(0, 0): 1, (1, 0): 1, (0, 1): 1}, 2)
    sq = p1xp1().lift
    assert descend(vertex_shift(SQ, (-1, 0)), sq) == LaurentPoly(
        {(0, 0): 1, (1, 1): 1, (1, 0): 1, (0, 1): 1}, 2)
    full = cliffordanti(3).lift
    assert descend(vertex_shift(CP2, (-1, -1)), full) == LaurentPoly(
        {(0, 0): 1, (2, 1): 1, (1, 2): 1}, 2)


def test_not_descendable():
    bad = LiftSpec(Sublattice(IntegerLattice(2), [(2, 0), (0, 1)]), (Component("1", 0),), 2)
    with pytest.raises(NotDescendable):
        descend(vertex_shift(CP2, (1, 0)), bad)


@pytest.mark.parametrize("preset", [clifford(2), clifford(3), clifford(4), cliffordanti(3),
                                    cliffordanti(4), p1xp1(), hopf(3)])
def test_descend_preserves_coefficients(preset):
    W = disk_potential(preset.polytope)
    down = descend(vertex_shift(W, preset.vertex), preset.lift)
    assert Counter(down.coefficients()) == Counter(W.coefficients())


def test_identity_sublattice_is_identity_on_exponents():
    shifted = vertex_shift(CP2, (-1, -1))
    assert descend(shifted, cliffordanti(3).lift) == shifted


def test_positive_basis_examples():
    assert positive_basis([(0, 0), (1, 0), (0, 1)]).is_identity
    assert positive_basis([(0, 0), (1, 1), (1, 0), (0, 1)]).is_identity
    ch = positive_basis([(0, 0), (1, 0), (-1, 2)])
    assert abs(determinant([list(r) for r in ch.to_new])) == 1
    assert all(x >= 0 for p in [(1, 0), (-1, 2)] for x in ch.apply(p))


def brute_force_representable(points, bound=3):
    rng = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(rng, repeat=4):
        if abs(a * d - b * c) == 1 and all(a * x + b * y >= 0 and c * x + d * y >= 0 for x, y in points):
            return True
    return False


def test_not_representable():
    # exponents spanning a half-plane cannot fit in a simplicial unimodular cone
    pts = [(0, 0), (1, 0), (-1, 0), (0, 1)]
    assert not brute_force_representable(pts)
    with pytest.raises(NotRepresentable):
        positive_basis(pts)


@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=4))
def test_positive_basis_agrees_with_bruteforce(pts):
    pts = [(0, 0)] + pts
    try:
        ch = positive_basis(pts)
    except NotRepresentable:
        assert not brute_force_representable(pts)
        return
    assert abs(determinant([list(r) for r in ch.to_new])) == 1
    assert ch.apply((0, 0)) == (0, 0)
    assert all(x >= 0 for p in pts for x in ch.apply(p))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_clifford_polynomial(n):
    spec = clifford(n)
    W = augmentation_polynomial(spec.polytope, spec.lift, spec.vertex)
    assert W.format() == " + ".join(["1"] + [f"y{i}" for i in range(1, n)])


def test_other_presets():
    a = cliffordanti(3)
    assert augmentation_polynomial(a.polytope, a.lift, a.vertex).format() == "1 + y1^2*y2 + y1*y2^2"
    p = p1xp1()
    assert augmentation_polynomial(p.polytope, p.lift, p.vertex).format() == "1 + y1 + y2 + y1*y2"


def test_vertex_choices_related_by_monomial_change():
    spec = clifford(3)
    polys = [augmentation_polynomial(spec.polytope, spec.lift, v).poly
             for v in [(1, 0), (0, 1), (-1, -1)]]
    for p in polys:
        assert len(p) == 3 and p.constant_term() == 1 and p.is_polynomial()


def test_basis_used_spans_sublattice():
    spec = clifford(3)
    W = augmentation_polynomial(spec.polytope, spec.lift, spec.vertex)
    assert abs(determinant([list(v) for v in W.basis_used])) == 3


def test_signs():
    spec = clifford(3)
    W = augmentation_polynomial(spec.polytope, spec.lift, spec.vertex, signs=(1, -1, -1))
    assert W.format() == "1 - y1 - y2"


def test_variety_member_examples():
    assert variety_member(LaurentPoly({(0,): 1, (1,): 1}, 1), [F(-1)])
    unknot = LaurentPoly({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}, 2)
    assert variety_member(unknot, [F(-1), F(5)])
    cp2 = LaurentPoly({(0, 0): 1, (1, 0): 1, (0, 1): 1}, 2)
    assert not variety_member(cp2, [1, 1])
    with pytest.raises(ZeroCoordinate):
        variety_member(cp2, [0, 1])
    assert variety_member(unknot, [-1.0, 0.3 + 2j])


@given(st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool),
       st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool))
def test_membership_invariant_under_basis_change(y1, y2):
    W = LaurentPoly({(0, 0): 1, (1, 0): 1, (-1, 2): 1}, 2)
    ch = positive_basis(W.exponents())
    new = W.linear_change(ch.to_new)
    z = change_point(ch, [y1, y2])
    assert variety_member(W, [y1, y2]) == variety_member(new, z)
    assert W.evaluate([y1, y2]) == new.evaluate(z)
