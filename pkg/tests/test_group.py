import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra.group import (
    GroupPoint,
    bch_multiply,
    bch_terms,
    coordinate_symbols,
    dilate,
    gauge_polynomial,
    homogeneous_norm_exponent,
    left_invariant_fields,
)
from src.algebra.lie_algebra import builtin_group
from src.errors import DimensionMismatch, NonpositiveLambda
from tests.strategies import rational_points, small_rationals

ENGEL = builtin_group('engel')
H3 = builtin_group('heisenberg', 1)


def test_heisenberg_product(h3):
    p = bch_multiply(h3, GroupPoint.of([1, 0, 0]), GroupPoint.of([0, 1, 0]))
    assert p.coords == (1, 1, sp.Rational(1, 2))


def test_second_order_bch_coefficients():
    terms = dict(bch_terms(2))
    assert terms[(0,)] == 1 and terms[(1,)] == 1
    # [X, Y] / 2 split over the words XY and YX
    assert terms[(0, 1)] - terms[(1, 0)] == sp.Rational(1, 2)


def test_inverse_is_negation(engel):
    x = GroupPoint.of([1, 2, sp.Rational(1, 3), -1])
    minus = GroupPoint.of([-c for c in x.coords])
    assert bch_multiply(engel, x, minus).coords == (0, 0, 0, 0)


@settings(max_examples=25, deadline=None)
@given(rational_points(4), rational_points(4), rational_points(4))
def test_engel_product_is_associative(a, b, c):
    x, y, z = GroupPoint.of(a), GroupPoint.of(b), GroupPoint.of(c)
    left = bch_multiply(ENGEL, bch_multiply(ENGEL, x, y), z)
    right = bch_multiply(ENGEL, x, bch_multiply(ENGEL, y, z))
    assert left == right


@settings(max_examples=25, deadline=None)
@given(rational_points(3), rational_points(3), small_rationals.filter(lambda v: v > 0))
def test_dilation_is_an_automorphism(a, b, lam):
    x, y = GroupPoint.of(a), GroupPoint.of(b)
    assert dilate(H3, lam, bch_multiply(H3, x, y)) == bch_multiply(H3, dilate(H3, lam, x), dilate(H3, lam, y))


def test_dilation_rejects_nonpositive_factor(h3):
    with pytest.raises(NonpositiveLambda):
        dilate(h3, 0, GroupPoint.of([1, 1, 1]))


def test_dimension_mismatch(h3):
    with pytest.raises(DimensionMismatch):
        bch_multiply(h3, GroupPoint.of([1, 2]), GroupPoint.of([1, 2, 3]))


def test_float_points_stay_floats(h3):
    p = bch_multiply(h3, GroupPoint.of([1.0, 0.0, 0.0]), GroupPoint.of([0.0, 1.0, 0.0]))
    assert p.coords == pytest.approx((1.0, 1.0, 0.5))


def test_heisenberg_fields(h3):
    x1, x2, x3 = coordinate_symbols(3)
    X1, X2, X3 = left_invariant_fields(h3)
    assert [c.as_expr() for c in X1.coefficients] == [1, 0, -x2 / 2]
    assert [c.as_expr() for c in X2.coefficients] == [0, 1, x1 / 2]
    assert [c.as_expr() for c in X3.coefficients] == [0, 0, 1]


@pytest.mark.parametrize("name, param", [('heisenberg', 1), ('heisenberg', 2), ('engel', None)])
def test_fields_realise_the_brackets(name, param):
    g = builtin_group(name, param)
    fields = left_invariant_fields(g)
    for i in range(g.n):
        for j in range(i + 1, g.n):
            expected = [sum(c * fields[k].coefficients[t].as_expr() for k, c in g.bracket_basis(i, j).items())
                        for t in range(g.n)]
            actual = [sp.expand(c.as_expr()) for c in fields[i].commutator(fields[j])]
            assert actual == [sp.expand(e) for e in expected]


def test_gauge_polynomial(h3, engel):
    x1, x2, x3 = coordinate_symbols(3)
    assert gauge_polynomial(h3).as_expr() == sp.expand((x1 ** 2 + x2 ** 2) ** 2 + x3 ** 2)
    assert homogeneous_norm_exponent(engel) == 6


@settings(max_examples=20, deadline=None)
@given(rational_points(4), st.integers(min_value=1, max_value=4))
def test_gauge_polynomial_is_homogeneous(a, lam):
    P = gauge_polynomial(ENGEL)
    scaled = dilate(ENGEL, lam, GroupPoint.of(a)).coords
    N = homogeneous_norm_exponent(ENGEL)
    assert P.eval(tuple(scaled)) == lam ** (2 * N) * P.eval(tuple(a))
