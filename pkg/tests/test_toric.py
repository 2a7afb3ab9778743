import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toric_lch.augpoly import NewtonPolytope
from toric_lch.laurent import LaurentPoly
from toric_lch.toric import (DegeneratePolytope, DelzantPolytope, Facet, IntegralityWarning,
                             NoMonotonePoint, NotBounded, NotPrimitive, NotSmooth, NotTame, box,
                             cube, disk_potential, monotone_fiber, standard_simplex,
                             validate_delzant)


def test_simplex_valid():
    r = validate_delzant(standard_simplex(2))
    assert r.n_vertices == 3


def test_square_valid():
    assert validate_delzant(cube(2)).n_vertices == 4


def test_not_smooth_names_vertex():
    P = DelzantPolytope((Facet((1, 0), 0), Facet((-1, 2), 0), Facet((0, -1), 1)))
    with pytest.raises(NotSmooth) as exc:
        validate_delzant(P)
    assert tuple(exc.value.vertex) == (0, 0)


def test_not_primitive():
    P = DelzantPolytope((Facet((2, 0), 0), Facet((0, 1), 0), Facet((-1, -1), 1)))
    with pytest.raises(NotPrimitive) as exc:
        validate_delzant(P)
    assert exc.value.facet_index == 0


def test_not_bounded():
    P = DelzantPolytope((Facet((1, 0), 0), Facet((0, 1), 0)))
    with pytest.raises(NotBounded):
        validate_delzant(P)


def test_redundant_facet():
    P = DelzantPolytope(standard_simplex(2).facets + (Facet((1, 0), 5),))
    with pytest.raises(DegeneratePolytope):
        validate_delzant(P)


def test_integrality_warning_default():
    P = standard_simplex(2).scaled(Fraction(1, 2))
    with pytest.warns(IntegralityWarning):
        validate_delzant(P)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        validate_delzant(P, integrality="ignore")


def test_monotone_simplex():
    f = monotone_fiber(standard_simplex(2))
    assert f.point == (Fraction(1, 3), Fraction(1, 3))
    assert f.ell == Fraction(1, 3) and f.tau == 3


def test_monotone_square():
    f = monotone_fiber(cube(2))
    assert f.point == (Fraction(1, 2), Fraction(1, 2)) and f.tau == 2


def test_rectangle_not_monotone():
    with pytest.raises(NoMonotonePoint):
        monotone_fiber(box([1, 2]))


def test_not_tame():
    with pytest.raises(NotTame):
        monotone_fiber(cube(2, side=2))
    assert monotone_fiber(cube(2, side=2), require_tame=False).tau == 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_simplex_tau_is_n(n):
    assert monotone_fiber(standard_simplex(n - 1)).tau == n


def test_potentials():
    W = disk_potential(standard_simplex(2))
    assert W == LaurentPoly({(1, 0): 1, (0, 1): 1, (-1, -1): 1}, 2)
    assert disk_potential(cube(2)) == LaurentPoly({(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1}, 2)
    assert disk_potential(standard_simplex(1)) == LaurentPoly({(1,): 1, (-1,): 1}, 1)


@pytest.mark.parametrize("P", [standard_simplex(2), standard_simplex(3), cube(2), cube(3)])
def test_potential_newton_polytope_is_hull_of_normals(P):
    W = disk_potential(P)
    assert len(W) == len(P.facets) and set(W.coefficients()) == {1}
    assert sorted(NewtonPolytope.of(W).vertices()) == sorted(P.normals)


@given(st.fractions(min_value=Fraction(1, 7), max_value=10, max_denominator=7),
       st.sampled_from([standard_simplex(2), cube(2), standard_simplex(3)]))
def test_rescaling(s, P):
    base = monotone_fiber(P, require_tame=False)
    scaled = monotone_fiber(P.scaled(s), require_tame=False)
    assert scaled.ell == base.ell * s and scaled.tau == base.tau / s
    for f in P.scaled(s).facets:
        assert f.value(scaled.point) == 1 / scaled.tau
    assert disk_potential(P.scaled(s), scaled) == disk_potential(P, base)
