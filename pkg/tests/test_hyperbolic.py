from fractions import Fraction

import pytest

from hyperwron.algebra import HomogeneousPoly, UPoly, is_real_rooted, restrict_line, signature
from hyperwron.hyperbolic import (
    Certified,
    NotHyperbolicError,
    Refuted,
    Sampled,
    boundary_derivative_check,
    check_hyperbolic,
    cone_membership,
    det_symmetric_pencil,
    elementary_symmetric,
    hyperbolic_eigen_poly,
    known_family,
    lorentz,
    product_of_linears,
    sample_cone_point,
)

x1, x2 = (HomogeneousPoly.variable(2, i) for i in range(2))


def test_product_of_two_variables_certified():
    pair = check_hyperbolic(x1 * x2, (1, 1))
    assert isinstance(pair.verdict, Certified)


def test_lorentz_certified_with_signature():
    pair = lorentz((1, 1, 0))
    assert pair.p((1, 1, 0)) == 1
    assert signature(pair.p) == (1, 2, 0)
    assert isinstance(check_hyperbolic(pair.p, (1, 1, 0)).verdict, Certified)


def test_sum_of_squares_refuted_with_checkable_witness():
    p = x1**2 + x2**2
    pair = check_hyperbolic(p, (1, 0))
    assert isinstance(pair.verdict, Refuted)
    w = pair.verdict.witness
    assert w == (0, 1)
    assert restrict_line(p, w, (1, 0)) == UPoly([1, 0, 1])
    assert not is_real_rooted(restrict_line(p, w, (1, 0)))


def test_nonpositive_at_e_refuted():
    pair = check_hyperbolic(-x1 * x2, (1, 1))
    assert pair.refuted and pair.verdict.reason == "nonpositive-at-e"


def test_sampled_strategy_on_cubic():
    x = [HomogeneousPoly.variable(3, i) for i in range(3)]
    p = x[0] * x[1] * x[2] + x[0] * x[0] * x[1]
    pair = check_hyperbolic(p, (1, 1, 1), strategy="sampled", samples=30, seed=3)
    assert isinstance(pair.verdict, (Sampled, Refuted))
    assert check_hyperbolic(p, (1, 1, 1), strategy="sampled", samples=30, seed=3) == pair


def test_eigen_polynomials():
    pair = check_hyperbolic(x1 * x2, (1, 1))
    assert hyperbolic_eigen_poly(pair, (1, 2)) == UPoly.from_roots([1, 2])
    assert hyperbolic_eigen_poly(pair, (1, 1)) == UPoly.from_roots([1, 1])
    det2 = det_symmetric_pencil(2)
    assert hyperbolic_eigen_poly(det2, (1, 0, 0)) == UPoly.from_roots([1, 0])


def test_cone_membership_kinds():
    pair = check_hyperbolic(x1 * x2, (1, 1))
    assert cone_membership(pair, (1, 1)).kind == "inside-strict"
    assert cone_membership(pair, (-1, 1)).kind == "outside"
    cubic = product_of_linears([(1, 0, 0), (0, 1, 0), (0, 0, 1)], (1, 1, 1))
    m = cone_membership(cubic, (1, 1, 0))
    assert m.kind == "boundary" and m.multiplicity == 1


def test_cone_membership_refuses_refuted_pair():
    pair = check_hyperbolic(x1**2 + x2**2, (1, 0))
    with pytest.raises(NotHyperbolicError):
        cone_membership(pair, (1, 0))


@pytest.mark.parametrize("name,params", [
    ("product-of-linears", {"forms": [(1, 0, 0), (0, 1, 0), (0, 0, 1)], "e": (1, 1, 1)}),
    ("elementary-symmetric", {"n": 4, "k": 2}),
    ("det-symmetric-pencil", {"n": 2}),
    ("lorentz", {"e": (1, 1, 0)}),
])
def test_interior_samples_are_strict_and_seeded(name, params):
    pair = known_family(name, **params)
    a = sample_cone_point(pair, seed=11)
    assert cone_membership(pair, a).kind == "inside-strict"
    assert sample_cone_point(pair, seed=11) == a


def test_boundary_sample_for_cubic():
    cubic = product_of_linears([(1, 0, 0), (0, 1, 0), (0, 0, 1)], (1, 1, 1))
    b = sample_cone_point(cubic, seed=0, kind="boundary")
    assert b == (1, 1, 0)


def test_boundary_derivative_cone_inclusion():
    cubic = product_of_linears([(1, 0, 0), (0, 1, 0), (0, 0, 1)], (1, 1, 1))
    rep = boundary_derivative_check(cubic, (1, 1, 0), trials=10, seed=2)
    assert not rep.vanishes and rep.ok
    quad = check_hyperbolic(x1 * x2, (1, 1))
    rep2 = boundary_derivative_check(quad, (1, 0), trials=5)
    assert rep2.derivative == x2 and rep2.ok
    with pytest.raises(ValueError):
        boundary_derivative_check(quad, (1, 1))


def test_determinant_pencil_form():
    pair = det_symmetric_pencil(2)
    a, b, c = (HomogeneousPoly.variable(3, i) for i in range(3))
    assert pair.p == a * c - b * b
    assert pair.e == (1, 0, 1)


def test_elementary_symmetric_is_certified():
    pair = elementary_symmetric(4, 2)
    assert isinstance(pair.verdict, Certified)
    assert pair.p((1, 1, 1, 1)) == 6


def test_eigenvalue_scaling_identity():
    # eigenvalues of x are those of e at x = e, and scale linearly
    pair = elementary_symmetric(3, 2)
    g = hyperbolic_eigen_poly(pair, (2, 2, 2))
    assert g == UPoly.from_roots([2, 2])
    assert pair.p((Fraction(1, 2),) * 3) == Fraction(3, 4)
