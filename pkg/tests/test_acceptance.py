"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in
the terminal summary under "acceptance criteria".
"""

import contextlib
import itertools
import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from hyperwron.algebra import HomogeneousPoly, UPoly, is_psd_exact, is_real_rooted, monomial_exponents, restrict_line
from hyperwron.bezoutian import bezout_matrix, degree_restricted, evaluate_matrix, parameterized_bezoutian
from hyperwron.cli import main
from hyperwron.gate import bezoutian_gate, closed_form_g, g_binomial, gate_table, hyperzout_variable_bound, wronskian_gate
from hyperwron.hyperbolic import (
    Refuted,
    check_hyperbolic,
    cone_membership,
    det_symmetric_pencil,
    elementary_symmetric,
    lorentz,
    product_of_linears,
    sample_cone_point,
)
from hyperwron.manifest import Manifest, write_bundle
from hyperwron.quaternion import (
    NAMED_HESSIAN_POINT,
    cubics_vanishing_on_rank_one,
    extremality_dimension,
    hessian_rank,
    random_sp2,
    rank_one_vanishing,
    restriction_h,
    sp2_invariance_check,
)
from hyperwron.report import integer_points
from hyperwron.wronskian import (
    HyperwronWitness,
    WeightedSOS,
    build_hyperwron,
    decompose_quartic_hyperwron,
    sos_to_hyperwron,
    wronskian,
)


@contextlib.contextmanager
def criterion(number: int, title: str, budget: float):
    start = time.perf_counter()
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget:.0f}s"
    except BaseException as exc:
        line = f"FAIL criterion {number}: {title} ({exc})"
        print(line)
        ACCEPTANCE_LINES.append(line)
        raise
    line = f"PASS criterion {number}: {title} ({elapsed:.2f}s)"
    print(line)
    ACCEPTANCE_LINES.append(line)


def library_pairs():
    return {
        "x1x2x3": product_of_linears([(1, 0, 0), (0, 1, 0), (0, 0, 1)], (1, 1, 1)),
        "e2-4vars": elementary_symmetric(4, 2),
        "det-2x2-sym": det_symmetric_pencil(2),
        "lorentz": lorentz((1, 1, 0)),
    }


def cone_pair(pair, seed):
    # every fifth pair puts v on the boundary of the cone
    u = sample_cone_point(pair, 1000 + seed)
    kind = "boundary" if seed % 5 == 4 else "interior"
    v = sample_cone_point(pair, 2000 + seed, kind=kind)
    assert cone_membership(pair, u).in_cone and cone_membership(pair, v).in_cone
    return u, v


def rational_points(n, count, seed):
    """Seeded rational points, returned with the integer point they scale to."""
    rng = random.Random(seed)
    for base in integer_points(n, count, seed):
        den = rng.randint(1, 9)
        yield tuple(Fraction(a, den) for a in base), base


def test_c1_wronskian_gate_region():
    with criterion(1, "Wronskian gate region on m 3..12, 2y 4..16", 5):
        region = {(m, y) for m in range(3, 13) for y in range(2, 9)
                  if (m == 4 and y >= 4) or (m == 5 and y >= 3) or m >= 6}
        for r in gate_table(range(3, 13), range(2, 9)):
            assert r.verdict == ((r.m, r.y) in region), (r.m, r.y)
        r = wronskian_gate(4, 4)
        assert (r.lhs, r.max_rhs, r.margin) == (165, 164, 1)
        r = wronskian_gate(5, 2)
        assert (r.lhs, r.max_rhs, r.verdict) == (70, 70, False)


def test_c2_closed_forms():
    with criterion(2, "closed forms g(4,k,y), g(5,k,y) equal lhs - rhs", 1):
        count = 0
        for m, y in itertools.product((4, 5), range(1, 17)):
            for k in range(1, y // 2 + 1):
                assert closed_form_g(m, k, y) == g_binomial(m, k, y), (m, k, y)
                count += 1
        assert count == 2 * sum(y // 2 for y in range(1, 17))


def test_c3_bezoutian_gate_past_bound():
    with criterion(3, "Bezoutian gate TRUE on (B, B+20] for y in 2,3,4", 5):
        for y in (2, 3, 4):
            bound = hyperzout_variable_bound(y)
            assert bound == 10 * y * y - 2 * y + 1
            for m in range(bound + 1, bound + 21):
                assert bezoutian_gate(m, y).verdict, (m, y)


def test_c4_sos_round_trip():
    with criterion(4, "100 seeded weighted SOS round trips", 60):
        for seed in range(100):
            rng = random.Random(seed)
            m, s = rng.randint(1, 4), rng.randint(1, 3)
            exps = monomial_exponents(m, s)
            terms = []
            for _ in range(rng.randint(0, 5)):
                chosen = rng.sample(exps, min(len(exps), rng.randint(1, 4)))
                g = HomogeneousPoly(m, s, [(e, Fraction(rng.randint(-5, 5), rng.randint(1, 4))) for e in chosen])
                w = Fraction(rng.randint(0, 5), rng.randint(1, 4)) ** 2
                terms.append((w, g))
            sos = WeightedSOS.of(terms, nvars=m, half_degree=s)
            assert build_hyperwron(sos_to_hyperwron(sos)) == sos.expand(), seed


def test_c5_certificate_soundness():
    with criterion(5, "hyperwron >= 0 at 1e4 points, Bezoutian PSD at 1e3 points, 4 families x 20 pairs", 300):
        for name, pair in library_pairs().items():
            for seed in range(20):
                u, v = cone_pair(pair, seed)
                theta = build_hyperwron(HyperwronWitness.make(pair, u, v))
                ev = theta.evaluator()
                # theta has even degree, so its sign at x / den equals its sign at x
                for x, base in rational_points(pair.nvars, 10_000, seed):
                    assert ev(base) >= 0, (name, u, v, x)
                B = parameterized_bezoutian(pair, u, v)
                evs = [[e.evaluator() for e in row] for row in B]
                # B(x / den) = D B(x) D with D positive diagonal, a congruence
                for x, base in rational_points(pair.nvars, 1_000, seed + 7):
                    M = [[f(base) for f in row] for row in evs]
                    assert is_psd_exact(M), (name, u, v, x)
                assert is_psd_exact(evaluate_matrix(B, x))


def test_c6_bezoutian_structure():
    with criterion(6, "Bezoutian grading, (0,0) entry is the Wronskian, univariate identity to d=8", 30):
        for name, pair in library_pairs().items():
            d = pair.degree
            for seed in range(3):
                u, v = cone_pair(pair, seed)
                B = parameterized_bezoutian(pair, u, v)
                assert B[0][0] == wronskian(pair.p, u, v), name
                for j, l in itertools.product(range(d), repeat=2):
                    assert B[j][l].degree == 2 * (d - 1) - (j + l)
                    assert B[j][l] == B[l][j]
        rng = random.Random(6)
        for d in range(1, 9):
            for _ in range(5):
                f = UPoly([rng.randint(-9, 9) for _ in range(d)] + [rng.randint(1, 9)])
                g = UPoly([rng.randint(-9, 9) for _ in range(d)])
                B = bezout_matrix(f, g, d)
                for _ in range(4):
                    t, s = Fraction(rng.randint(-20, 20), 7), Fraction(rng.randint(-20, 20), 11)
                    if t == s:
                        continue
                    lhs = (f(t) * g(s) - f(s) * g(t)) / (t - s)
                    assert lhs == sum(B[j][l] * t**j * s**l for j in range(d) for l in range(d)), d


def test_c7_quartic_decomposition():
    with criterion(7, "quartic hyperwron = q1 q2 + r l on 20 seeded pairs per cubic", 60):
        cubics = {"x1x2x3": library_pairs()["x1x2x3"], "e3-4vars": elementary_symmetric(4, 3)}
        cases = set()
        for name, pair in cubics.items():
            for seed in range(20):
                u, v = cone_pair(pair, seed)
                if seed % 10 == 9:
                    # a coordinate vector has multiplicity >= 2 here, so D_uv p vanishes
                    u = v = tuple(int(i == seed % pair.nvars) for i in range(pair.nvars))
                dec = decompose_quartic_hyperwron(pair, u, v)
                cases.add(dec.case)
                assert dec.expand() == wronskian(pair.p, u, v), (name, u, v)
                for q in (dec.q1, dec.q2):
                    assert isinstance(q, WeightedSOS) and q.half_degree == 1
                    assert all(w >= 0 for w, _ in q.terms)
                duv = pair.p.directional_derivative(u).directional_derivative(v)
                if not duv.is_zero():
                    assert dec.l == duv, (name, u, v)
        assert "case-2" in cases and any(c.startswith("case-1") for c in cases), cases


def test_c8_quaternion_example():
    failures = []

    def check(label, ok):
        print(f"  {'ok ' if ok else 'BAD'} {label}")
        if not ok:
            failures.append(label)

    with criterion(8, "quaternion quartic example suite (modular mode)", 600):
        check("restriction h = (x1 w1 - 1)^2", restriction_h().matches)
        composed, ok = rank_one_vanishing()
        check("rank-one composition is the zero polynomial", ok and composed.is_zero())
        rng = random.Random(8)
        check("Sp(2) invariance on 50 rational unitary products",
              all(sp2_invariance_check(random_sp2(rng), random_sp2(rng), samples=4, seed=t) for t in range(50)))
        U = cubics_vanishing_on_rank_one(mode="modular", seed=0)
        check(f"dim U = 16 (got {U.dimension})", U.dimension == 16)
        check(f"two primes agree for U {U.rank.ranks_mod_p}",
              U.rank.confidence == "modular-agree" and len(U.rank.primes) == 2)
        L = extremality_dimension(mode="modular", seed=0)
        check(f"dim L = 1 (got {L.dimension})", L.dimension == 1)
        check(f"two primes agree for L {L.rank.ranks_mod_p}",
              L.rank.confidence == "modular-agree" and len(L.rank.primes) == 2)
        rank = hessian_rank(NAMED_HESSIAN_POINT)
        check(f"Hessian rank at x = z = 1, y = w = 0 is 16 (got {rank})", rank == 16)
        assert not failures, "; ".join(failures)


def test_c9_negative_controls(tmp_path, capsys):
    with criterion(9, "tampered manifests, non-hyperbolic refutation, degree restriction", 60):
        x1, x2 = (HomogeneousPoly.variable(2, i) for i in range(2))

        def bundle(sub, q, v):
            m = Manifest(type="hyperwron", p="p.poly", e=(1, 1), q="q.poly", u=(1, 1), v=v)
            return write_bundle(tmp_path / sub, m, {"p.poly": [x1 * x2], "q.poly": [q]})

        assert main(["verify", str(bundle("ok", x1**2 + x2**2, (1, 1))), "--samples", "100"]) == 0
        capsys.readouterr()
        assert main(["verify", str(bundle("id", x1**2 + x2**2 + x1 * x2, (1, 1))), "--samples", "100"]) == 1
        out = capsys.readouterr().out
        assert "identity             FAIL" in out and "cone                 PASS" in out
        outside = build_hyperwron(HyperwronWitness.make(check_hyperbolic(x1 * x2, (1, 1)), (1, 1), (-1, 2)))
        assert main(["verify", str(bundle("cone", outside, (-1, 2))), "--samples", "100"]) == 1
        out = capsys.readouterr().out
        assert "cone                 FAIL" in out and "identity             PASS" in out

        pair = check_hyperbolic(x1**2 + x2**2, (1, 0))
        assert isinstance(pair.verdict, Refuted)
        witness = pair.verdict.witness
        assert not is_real_rooted(restrict_line(pair.p, witness, pair.e))

        assert degree_restricted(3, 4) is False
