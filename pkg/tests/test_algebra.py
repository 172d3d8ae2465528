from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperwron.algebra import (
    HomogeneousPoly,
    PolyFormatError,
    UPoly,
    compose,
    count_with_multiplicity,
    dim_forms,
    format_poly,
    identity_map,
    is_real_rooted,
    isolate_real_roots,
    lagrange_diagonalize,
    linear_map,
    monomial_exponents,
    parse_poly,
    parse_polys,
    restrict_line,
    signature,
    squarefree_part,
    sturm_count,
)

x1, x2, x3 = (HomogeneousPoly.variable(3, i) for i in range(3))


def forms(nvars=3, degree=2):
    exps = monomial_exponents(nvars, degree)
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.lists(coeff, min_size=len(exps), max_size=len(exps)).map(
        lambda cs: HomogeneousPoly(nvars, degree, zip(exps, cs))
    )


def test_dim_forms_matches_monomial_count():
    for m in range(1, 6):
        for d in range(0, 5):
            assert dim_forms(m, d) == comb(m + d - 1, d) == len(monomial_exponents(m, d))


def test_monomials_graded_lex_descending():
    assert monomial_exponents(2, 2) == [(2, 0), (1, 1), (0, 2)]


def test_zero_keeps_degree_but_compares_equal():
    z4 = HomogeneousPoly.zero(3, 4)
    assert z4.degree == 4 and z4.is_zero()
    assert z4 == HomogeneousPoly.zero(3, 1)
    assert (x1 * x2 - x2 * x1).degree == 2


def test_mixed_degree_addition_rejected():
    with pytest.raises(ValueError):
        x1 + x1 * x2


def test_directional_derivative_high_order_is_zero():
    p = x1 * x2 * x3
    assert p.directional_derivative((1, 1, 1), 3) == HomogeneousPoly.constant(3, 6)
    assert p.directional_derivative((1, 1, 1), 4).is_zero()


def test_euler_identity():
    p = x1**3 + Fraction(2, 3) * x1 * x2 * x3 - x3**3
    lhs = sum((xi * g for xi, g in zip((x1, x2, x3), p.gradient())), HomogeneousPoly.zero(3, 3))
    assert lhs == p.scale(3)


@settings(max_examples=40, deadline=None)
@given(forms(3, 2), forms(3, 2))
def test_product_evaluates_pointwise(p, q):
    pt = (Fraction(1, 2), -2, 3)
    assert (p * q)(pt) == p(pt) * q(pt)


@settings(max_examples=40, deadline=None)
@given(forms(3, 3))
def test_compose_with_linear_map_evaluates(p):
    A = [[1, 2, 0], [0, -1, 1], [3, 0, 1]]
    phi = linear_map(A)
    pt = (2, -1, Fraction(1, 3))
    image = [sum(Fraction(a) * b for a, b in zip(row, pt)) for row in A]
    assert compose(p, phi)(pt) == p(image)


def test_compose_identity_and_zero_degree():
    p = x1**2 - x2 * x3
    assert compose(p, identity_map(3)) == p
    zero = compose(x1 * x2, [x1, HomogeneousPoly.zero(3, 1), x3])
    assert zero.is_zero() and zero.degree == 2


def test_evaluator_matches_evaluate():
    p = Fraction(1, 3) * x1**2 - Fraction(5, 7) * x2 * x3
    ev = p.evaluator()
    for pt in [(1, 2, 3), (-4, 0, 7), (0, 0, 1)]:
        assert ev(pt) == p(pt)


@settings(max_examples=30, deadline=None)
@given(forms(3, 2))
def test_text_round_trip(p):
    assert parse_poly(format_poly(p)) == p


def test_text_format_errors():
    with pytest.raises(PolyFormatError):
        parse_poly("poly m=2 deg=2\n1/1 [1,0]\n")
    with pytest.raises(PolyFormatError):
        parse_poly("1/1 [1,1]\n")
    with pytest.raises(PolyFormatError):
        parse_poly("poly m=2 deg=2\n1/0 [1,1]\n")
    assert len(parse_polys("poly m=1 deg=1\n2 [1]\n# c\npoly m=1 deg=0\n")) == 2


# -- univariate ----------------------------------------------------------------------


def test_sturm_counts_respect_endpoints():
    f = UPoly.from_roots([-1, 0, 2, 2])
    assert sturm_count(f) == 3
    assert sturm_count(f, -1, 2) == 1
    assert sturm_count(f, -1, 2, closed_hi=True) == 2
    assert sturm_count(f, -1, 2, closed_lo=True, closed_hi=True) == 3
    assert sturm_count(f, 2, None) == 0
    assert count_with_multiplicity(f) == 4
    assert squarefree_part(f).degree == 3


def test_real_rootedness():
    assert is_real_rooted(UPoly.from_roots([1, 1, Fraction(-3, 2)]))
    assert not is_real_rooted(UPoly([1, 0, 1]))
    assert is_real_rooted(UPoly([5]))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=6), min_size=1, max_size=6))
def test_isolation_contains_each_root(roots):
    f = UPoly.from_roots(roots)
    boxes = isolate_real_roots(f)
    assert len(boxes) == len(set(roots))
    for r in set(roots):
        assert sum(a < r <= b for a, b in boxes) == 1


def test_restrict_line_orientation():
    p = x1 * x2 * x3
    e, x = (1, 1, 1), (1, 2, 3)
    t = restrict_line(p, x, e)
    assert t == UPoly.from_roots([1, 2, 3])
    s = restrict_line(p, x, e, orientation="shift")
    assert s == UPoly.from_roots([-1, -2, -3])


# -- quadratic forms -------------------------------------------------------------------


def test_lorentz_signature():
    assert signature(x1**2 - x2**2 - x3**2) == (1, 2, 0)
    assert signature(x1 * x2) == (1, 1, 1)


@settings(max_examples=40, deadline=None)
@given(forms(3, 2))
def test_diagonalization_reconstructs(q):
    diag = lagrange_diagonalize(q)
    assert diag.reconstruct() == q
    pos, neg, zero = diag.signature
    assert pos + neg + zero == 3
