import random
from fractions import Fraction

import pytest

from hyperwron.algebra import HomogeneousPoly, UPoly, charpoly, is_psd_exact
from hyperwron.bezoutian import (
    GradedTuple,
    HyperzoutWitness,
    bezout_matrix,
    build_hyperzout,
    degree_restricted,
    evaluate_matrix,
    factor_2x2_psd,
    mu2_hyperzout_to_sos,
    parameterized_bezoutian,
    verify_hyperzout,
)
from hyperwron.hyperbolic import check_hyperbolic, lorentz, product_of_linears
from hyperwron.report import FAIL, INFO, PASS
from hyperwron.wronskian import NotNonnegativeError, build_hyperwron, HyperwronWitness

x1, x2 = (HomogeneousPoly.variable(2, i) for i in range(2))
PAIR = check_hyperbolic(x1 * x2, (1, 1))
CUBIC = product_of_linears([(1, 0, 0), (0, 1, 0), (0, 0, 1)], (1, 1, 1))


def bezout_form(f: UPoly, g: UPoly, t, s):
    return (f(t) * g(s) - f(s) * g(t)) / (t - s)


def test_bezout_matrix_small():
    assert bezout_matrix(UPoly([-1, 0, 1]), UPoly([0, 2]), 2) == [[2, 0], [0, 2]]
    assert bezout_matrix(UPoly([-1, 0, 1]), UPoly([]), 2) == [[0, 0], [0, 0]]


def test_bezout_matrix_symbolic_coefficients():
    b, c = (HomogeneousPoly.variable(2, i) for i in range(2))
    one = HomogeneousPoly.constant(2, 1)
    B = bezout_matrix([c * c, b, one], [b, one.scale(2)], 2, zero=HomogeneousPoly.zero(2, 0))
    # f = t^2 + b t + c^2 (c^2 keeps the entries homogeneous-compatible)
    assert B[0][0] == b * b - (c * c).scale(2)
    assert B[0][1] == b and B[1][0] == b
    assert B[1][1] == one.scale(2)


@pytest.mark.parametrize("d", range(2, 9))
def test_bezout_identity_random(d):
    rng = random.Random(d)
    f = UPoly([rng.randint(-5, 5) for _ in range(d)] + [rng.randint(1, 5)])
    g = UPoly([rng.randint(-5, 5) for _ in range(d)])
    B = bezout_matrix(f, g, d)
    for _ in range(3):
        t, s = Fraction(rng.randint(-9, 9), 7), Fraction(rng.randint(-9, 9), 5)
        if t == s:
            continue
        lhs = bezout_form(f, g, t, s)
        rhs = sum(B[j][l] * t**j * s**l for j in range(d) for l in range(d))
        assert lhs == rhs
    assert all(B[j][l] == B[l][j] for j in range(d) for l in range(d))


def test_parameterized_bezoutian_of_product():
    B = parameterized_bezoutian(PAIR, (1, 1), (1, 1))
    assert B[0][0] == x1**2 + x2**2
    assert B[0][1] == x1 + x2 and B[1][0] == x1 + x2
    assert B[1][1] == HomogeneousPoly.constant(2, 2)


def test_bezoutian_grading_and_wronskian_entry():
    B = parameterized_bezoutian(CUBIC, (1, 1, 1), (1, 1, 1))
    d = 3
    for j in range(d):
        for l in range(d):
            assert B[j][l].degree == 2 * (d - 1) - (j + l)
    w = HyperwronWitness.make(CUBIC, (1, 1, 1), (1, 1, 1))
    assert B[0][0] == build_hyperwron(w)


def test_zero_v_gives_zero_matrix():
    B = parameterized_bezoutian(CUBIC, (1, 1, 1), (0, 0, 0))
    assert all(e.is_zero() for row in B for e in row)


def test_psd_at_a_point():
    B = parameterized_bezoutian(PAIR, (1, 1), (1, 1))
    M = evaluate_matrix(B, (1, 2))
    assert M == [[5, 3], [3, 2]]
    assert charpoly(M) == UPoly([1, -7, 1])
    assert is_psd_exact(M)


def test_degree_restricted_table():
    assert degree_restricted(2, 7)
    assert degree_restricted(3, 3)
    assert not degree_restricted(3, 4)
    with pytest.raises(ValueError):
        degree_restricted(5, 4)


def test_hyperzout_recovers_hyperwron():
    one = HomogeneousPoly.constant(3, 1)
    xi = GradedTuple((one, HomogeneousPoly.zero(3, 1), HomogeneousPoly.zero(3, 2)), mu=3, k=1)
    w = HyperzoutWitness(CUBIC, (1, 1, 1), (1, 1, 1), xi)
    theta = build_hyperwron(HyperwronWitness.make(CUBIC, (1, 1, 1), (1, 1, 1)))
    assert build_hyperzout(w) == theta
    rep = verify_hyperzout(w, theta, psd_samples=50)
    assert rep.passed and rep.status_of("degree-restricted") == PASS


def test_mu2_hyperzout_example():
    xi = GradedTuple((HomogeneousPoly.constant(2, 1), x1), mu=2, k=1)
    w = HyperzoutWitness(PAIR, (1, 1), (1, 1), xi)
    eta = build_hyperzout(w)
    assert eta == (x1**2 + x2**2) + 2 * x1 * (x1 + x2) + 2 * x1**2
    rep = verify_hyperzout(w, eta, psd_samples=100)
    assert rep.passed
    sos = mu2_hyperzout_to_sos(w)
    assert sos.expand() == eta
    tampered = verify_hyperzout(w, eta + x1 * x2, psd_samples=10)
    assert tampered.status_of("identity") == FAIL


def test_degree_restriction_is_informational():
    pair = product_of_linears([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], (1, 1, 1, 1))
    one = HomogeneousPoly.constant(4, 1)
    slots = (HomogeneousPoly.zero(4, 0), one, HomogeneousPoly.variable(4, 0), HomogeneousPoly.zero(4, 2))
    w = HyperzoutWitness(pair, (1, 1, 1, 1), (1, 1, 1, 1), GradedTuple(slots, mu=3, k=1))
    rep = verify_hyperzout(w, build_hyperzout(w), psd_samples=20)
    assert rep.status_of("degree-restricted") == INFO and rep.passed


def test_factor_2x2_examples():
    fac = factor_2x2_psd(x1**2 + x2**2, x1, 1)
    assert fac.reconstruct() == (x1**2 + x2**2, x1, HomogeneousPoly.constant(2, 1))
    M = fac.matrix()
    assert sum((a * a for a in M[0]), HomogeneousPoly.zero(2, 2)) == x1**2 + x2**2
    fac0 = factor_2x2_psd(x1**2, HomogeneousPoly.zero(2, 1), 0)
    assert fac0.reconstruct()[0] == x1**2
    with pytest.raises(NotNonnegativeError):
        factor_2x2_psd(x1**2, x1, 0)


def test_lorentz_mu2_sos_is_norm():
    pair = lorentz((1, 1, 0))
    y = [HomogeneousPoly.variable(3, i) for i in range(3)]
    one = HomogeneousPoly.constant(3, 1)
    w = HyperzoutWitness(pair, pair.e, pair.e, GradedTuple((one, HomogeneousPoly.zero(3, 1)), mu=2, k=1))
    sos = mu2_hyperzout_to_sos(w)
    assert sos.expand() == y[0] ** 2 + y[1] ** 2 + y[2] ** 2
