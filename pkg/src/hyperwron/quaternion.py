"""Quaternionic 2 x 2 matrices and the quartic ``f(X) = det_M(X X*)``.

The 16 real coordinates of ``X in H^{2x2}`` are ordered row-major over
the entries ``X11, X12, X21, X22`` and, inside each entry, by the
components ``(1, i, j, k)``.  Everything below (the expanded quartic,
its gradient, the linear systems) depends on that ordering.

Besides the invariance and restriction identities this module computes
two nullspace dimensions that together show f spans an extreme ray of
the cone of nonnegative quartics: the space U of cubics vanishing on
rank-one matrices (spanned by the 16 partial derivatives of f), and the
space of pairs (p, A) with ``grad p = A grad f`` (spanned by (f, I)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .algebra import HomogeneousPoly, as_fraction, compose, matrix_rank, monomial_exponents
from .algebra.linalg import (
    INT64_PRIME_LIMIT,
    RankResult,
    SparseEliminator,
    modular_consensus,
    random_primes,
    rank_mod_p,
)
from .report import FAIL, INFO, PASS, Report

NVARS = 16
ENTRY_NAMES = ("X11", "X12", "X21", "X22")
#: the Hessian point named x = z = 1, y = w = 0 with X = [[x, y], [z, w]]
NAMED_HESSIAN_POINT = (1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0)
IDENTITY_POINT = (1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0)
#: primes for the large modular systems stay below 2**31 so numpy int64 elimination is exact
MODULAR_PRIME_BITS = 31


@dataclass(frozen=True)
class Quaternion:
    """``a + b i + c j + d k``; components may be rationals or forms."""

    a: object = Fraction(0)
    b: object = Fraction(0)
    c: object = Fraction(0)
    d: object = Fraction(0)

    @classmethod
    def of(cls, a=0, b=0, c=0, d=0) -> "Quaternion":
        return cls(as_fraction(a), as_fraction(b), as_fraction(c), as_fraction(d))

    @property
    def components(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __add__(self, o: "Quaternion") -> "Quaternion":
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: "Quaternion") -> "Quaternion":
        return Quaternion(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, o):
        if not isinstance(o, Quaternion):
            return Quaternion(self.a * o, self.b * o, self.c * o, self.d * o)
        a1, b1, c1, d1 = self.components
        a2, b2, c2, d2 = o.components
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def conj(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def norm_sq(self):
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def is_real(self) -> bool:
        return all(_is_zero(x) for x in (self.b, self.c, self.d))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quaternion):
            return NotImplemented
        return all(_is_zero(x - y) for x, y in zip(self.components, other.components))

    __hash__ = None


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, HomogeneousPoly) else x == 0


ONE = Quaternion.of(1)
I_ = Quaternion.of(0, 1)
J_ = Quaternion.of(0, 0, 1)
K_ = Quaternion.of(0, 0, 0, 1)
ZERO = Quaternion.of()


@dataclass(frozen=True)
class QuatMatrix2:
    z11: Quaternion
    z12: Quaternion
    z21: Quaternion
    z22: Quaternion

    @classmethod
    def identity(cls) -> "QuatMatrix2":
        return cls(ONE, ZERO, ZERO, ONE)

    @classmethod
    def from_vector(cls, v: Sequence) -> "QuatMatrix2":
        if len(v) != NVARS:
            raise ValueError(f"need {NVARS} real coordinates, got {len(v)}")
        qs = [Quaternion(*v[4 * i: 4 * i + 4]) for i in range(4)]
        return cls(*qs)

    def to_vector(self) -> tuple:
        return tuple(x for q in self.entries for x in q.components)

    @property
    def entries(self) -> tuple[Quaternion, Quaternion, Quaternion, Quaternion]:
        return (self.z11, self.z12, self.z21, self.z22)

    def __mul__(self, o: "QuatMatrix2") -> "QuatMatrix2":
        return QuatMatrix2(
            self.z11 * o.z11 + self.z12 * o.z21,
            self.z11 * o.z12 + self.z12 * o.z22,
            self.z21 * o.z11 + self.z22 * o.z21,
            self.z21 * o.z12 + self.z22 * o.z22,
        )

    def star(self) -> "QuatMatrix2":
        """Conjugate transpose."""
        return QuatMatrix2(self.z11.conj(), self.z21.conj(), self.z12.conj(), self.z22.conj())

    def is_hermitian(self) -> bool:
        return self.z11.is_real() and self.z22.is_real() and self.z21 == self.z12.conj()

    def is_unitary(self) -> bool:
        return self * self.star() == QuatMatrix2.identity()

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuatMatrix2):
            return NotImplemented
        return all(a == b for a, b in zip(self.entries, other.entries))

    __hash__ = None


def moore_det(Z: QuatMatrix2):
    """Moore determinant ``Z11 Z22 - |Z12|^2`` of a Hermitian 2 x 2 quaternionic matrix."""
    if not Z.is_hermitian():
        raise ValueError("the Moore determinant is defined for Hermitian matrices only")
    return Z.z11.a * Z.z22.a - Z.z12.norm_sq()


def fhat_value(X: QuatMatrix2):
    return moore_det(X * X.star())


@lru_cache(maxsize=1)
def fhat_expand() -> HomogeneousPoly:
    """The quartic ``det_M(X X*)`` expanded in the 16 real coordinates."""
    var = [HomogeneousPoly.variable(NVARS, i) for i in range(NVARS)]
    X = QuatMatrix2.from_vector(var)
    Z = X * X.star()
    return Z.z11.a * Z.z22.a - Z.z12.norm_sq()


@lru_cache(maxsize=1)
def fhat_gradient() -> tuple[HomogeneousPoly, ...]:
    return tuple(fhat_expand().gradient())


@lru_cache(maxsize=1)
def fhat_hessian() -> tuple[tuple[HomogeneousPoly, ...], ...]:
    return tuple(tuple(g.partial(j) for j in range(NVARS)) for g in fhat_gradient())


def hessian_rank(point: Sequence) -> int:
    H = [[h(point) for h in row] for row in fhat_hessian()]
    return matrix_rank(H).rank


# -- rational unitaries ------------------------------------------------------------


def unit_quaternion(q: Quaternion) -> Quaternion:
    """``q / q*`` has norm one and rational components."""
    n = q.norm_sq()
    if not n:
        raise ValueError("zero quaternion")
    return (q * q).__mul__(Fraction(1) / n)


def random_unit_quaternion(rng: random.Random) -> Quaternion:
    while True:
        q = Quaternion.of(*(rng.randint(-5, 5) for _ in range(4)))
        if q.norm_sq():
            return unit_quaternion(q)


def sp2_generators(rng: random.Random) -> list[QuatMatrix2]:
    """A seeded handful of exact rational unitary 2 x 2 quaternionic matrices."""
    u, v = random_unit_quaternion(rng), random_unit_quaternion(rng)
    while True:
        a, b = rng.randint(1, 9), rng.randint(1, 9)
        if a != b:
            break
    n = a * a + b * b
    c, s = Fraction(a * a - b * b, n), Fraction(2 * a * b, n)
    return [
        QuatMatrix2(u, ZERO, ZERO, ONE),
        QuatMatrix2(ONE, ZERO, ZERO, v),
        QuatMatrix2(Quaternion.of(c), Quaternion.of(s), Quaternion.of(-s), Quaternion.of(c)),
        QuatMatrix2(ZERO, ONE, ONE, ZERO),
        QuatMatrix2(Quaternion.of(c), u * s, (u.conj() * s) * -1, Quaternion.of(c)),
    ]


def random_sp2(rng: random.Random, length: int = 4) -> QuatMatrix2:
    M = QuatMatrix2.identity()
    for _ in range(length):
        M = M * rng.choice(sp2_generators(rng))
    return M


def random_rational_matrix(rng: random.Random, bound: int = 6, den: int = 3) -> QuatMatrix2:
    return QuatMatrix2.from_vector(
        [Fraction(rng.randint(-bound, bound), rng.randint(1, den)) for _ in range(NVARS)]
    )


def sp2_invariance_check(P: QuatMatrix2, Q: QuatMatrix2, samples: int = 20, seed: int = 0,
                         symbolic: bool = False) -> bool:
    """``f(P X Q) = f(X)``; P and Q must be exactly unitary."""
    for name, M in (("P", P), ("Q", Q)):
        if not M.is_unitary():
            raise ValueError(f"{name} is not unitary")
    if symbolic:
        var = [HomogeneousPoly.variable(NVARS, i) for i in range(NVARS)]
        Xs = QuatMatrix2.from_vector(var)
        Pp = _lift(P)
        Qp = _lift(Q)
        image = (Pp * Xs * Qp).to_vector()
        return compose(fhat_expand(), list(image)) == fhat_expand()
    rng = random.Random(seed)
    f = fhat_expand()
    for _ in range(samples):
        X = random_rational_matrix(rng)
        if f((P * X * Q).to_vector()) != f(X.to_vector()):
            return False
    return True


def _lift(M: QuatMatrix2) -> QuatMatrix2:
    """Rational matrix as constant-coefficient forms (degree 0) so it multiplies forms."""
    def c(x):
        return HomogeneousPoly.constant(NVARS, x)

    return QuatMatrix2(*(Quaternion(*(c(x) for x in q.components)) for q in M.entries))


# -- rank-one structure ----------------------------------------------------------------


@lru_cache(maxsize=1)
def rank_one_map() -> tuple[HomogeneousPoly, ...]:
    """``X = [x; y][z w]`` as 16 quadratic forms in the 16 coordinates of (x, y, z, w)."""
    var = [HomogeneousPoly.variable(NVARS, i) for i in range(NVARS)]
    x, y, z, w = (Quaternion(*var[4 * i: 4 * i + 4]) for i in range(4))
    return QuatMatrix2(x * z, x * w, y * z, y * w).to_vector()


def rank_one_vanishing() -> tuple[HomogeneousPoly, bool]:
    """Compose f with the rank-one parametrization; the result must be the zero octic."""
    composed = compose(fhat_expand(), list(rank_one_map()))
    return composed, composed.is_zero() and composed.degree == 8


@dataclass(frozen=True)
class Restriction:
    homogenized: HomogeneousPoly  # in (x1, w1, s), s the homogenizing variable
    expected: HomogeneousPoly
    matches: bool

    def dehomogenized(self) -> dict[tuple[int, int], Fraction]:
        out: dict[tuple[int, int], Fraction] = {}
        for (a, b, _), c in self.homogenized.terms.items():
            out[(a, b)] = out.get((a, b), 0) + c
        return out

    def __call__(self, x1, w1) -> Fraction:
        return self.homogenized((x1, w1, 1))


def restriction_h() -> Restriction:
    """``f([[x1 i, i], [i, w1 i]])`` as a form in (x1, w1, s) with s = 1 at the end."""
    x1, w1, s = (HomogeneousPoly.variable(3, i) for i in range(3))
    z = HomogeneousPoly.zero(3, 1)
    X = QuatMatrix2(Quaternion(z, x1, z, z), Quaternion(z, s, z, z), Quaternion(z, s, z, z), Quaternion(z, w1, z, z))
    h = compose(fhat_expand(), list(X.to_vector()))
    expected = (x1 * w1 - s * s) ** 2
    return Restriction(h, expected, h == expected)


# -- modular evaluation helpers ----------------------------------------------------------------


def _qmul_mod(a, b, p):
    a1, b1, c1, d1 = a
    a2, b2, c2, d2 = b
    return (
        (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2) % p,
        (a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2) % p,
        (a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2) % p,
        (a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2) % p,
    )


def rank_one_points_mod_p(count: int, p: int, rng: random.Random) -> list[list[int]]:
    pts = []
    for _ in range(count):
        x, y, z, w = ([rng.randrange(p) for _ in range(4)] for _ in range(4))
        pts.append(list(_qmul_mod(x, z, p) + _qmul_mod(x, w, p) + _qmul_mod(y, z, p) + _qmul_mod(y, w, p)))
    return pts


def _cubic_triples() -> list[tuple[int, int, int]]:
    out = []
    for exp in monomial_exponents(NVARS, 3):
        out.append(tuple(i for i, a in enumerate(exp) for _ in range(a)))
    return out


def cubic_monomial_rows_mod_p(points: list[list[int]], p: int) -> np.ndarray:
    dtype = np.int64 if p < INT64_PRIME_LIMIT else object
    V = np.array(points, dtype=dtype) % p
    tri = np.array(_cubic_triples())
    return V[:, tri[:, 0]] * V[:, tri[:, 1]] % p * V[:, tri[:, 2]] % p


def _int_poly_plan(poly: HomogeneousPoly) -> list[tuple[int, tuple[tuple[int, int], ...]]]:
    plan = []
    for exp, c in poly.terms.items():
        if c.denominator != 1:
            raise ValueError("expected integer coefficients")
        plan.append((int(c), tuple((i, a) for i, a in enumerate(exp) if a)))
    return plan


def _eval_plan_mod(plan, point, p) -> int:
    total = 0
    for c, factors in plan:
        for i, a in factors:
            c = c * pow(point[i], a, p)
        total += c
    return total % p


# -- the two nullspace computations ---------------------------------------------------------------


@dataclass(frozen=True)
class NullspaceResult:
    dimension: int
    unknowns: int
    mode: str
    rank: RankResult
    checks: dict = field(default_factory=dict)

    @property
    def basis_check(self) -> bool:
        return all(self.checks.values())


def _spot_check_partials(samples: int, seed: int) -> bool:
    """Each partial of f vanishes at rational rank-one points (exact)."""
    rng = random.Random(seed)
    grads = fhat_gradient()
    for _ in range(samples):
        x, y, z, w = (Quaternion.of(*(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4)))
                      for _ in range(4))
        pt = QuatMatrix2(x * z, x * w, y * z, y * w).to_vector()
        if any(g(pt) != 0 for g in grads):
            return False
    return True


def _partials_vanish_symbolically() -> bool:
    phi = list(rank_one_map())
    return all(compose(g, phi).is_zero() for g in fhat_gradient())


def cubics_vanishing_on_rank_one(mode: str = "modular", seed: int = 0, points: int = 1300,
                                 primes: Sequence[int] | None = None) -> NullspaceResult:
    """Dimension of U = {cubics q : q(rank-one X) = 0} and the gradient-basis checks."""
    triples = _cubic_triples()
    unknowns = len(triples)
    rng = random.Random(seed)
    if mode == "modular":
        if primes is None:
            primes = random_primes(2, MODULAR_PRIME_BITS, rng)

        def rank_at(p: int) -> int:
            prng = random.Random(f"{seed}:{p}")
            rows = cubic_monomial_rows_mod_p(rank_one_points_mod_p(points, p, prng), p)
            return rank_mod_p(rows, p)

        rank = modular_consensus(rank_at, primes, rng, bits=MODULAR_PRIME_BITS)
    elif mode == "exact":
        phi = rank_one_map()
        rows = []
        for a, b, c in triples:
            rows.append((phi[a] * phi[b] * phi[c]).terms)
        rank = RankResult(SparseEliminator(rows).run().rank, "exact")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    checks = {
        "partials-vanish-symbolic": _partials_vanish_symbolically(),
        "partials-vanish-spot": _spot_check_partials(100, seed),
        "hessian-rank-named-point": hessian_rank(NAMED_HESSIAN_POINT) == NVARS,
        "hessian-rank-identity": hessian_rank(IDENTITY_POINT) == NVARS,
    }
    return NullspaceResult(unknowns - rank.rank, unknowns, mode, rank, checks)


def _lagrangian_rows_mod_p(points: list[list[int]], p: int) -> list[list[int]]:
    """Rows of ``H(X) A^T X - A H(X) X = 0`` in the 256 entries of A (row-major)."""
    hplan = [[_int_poly_plan(h) for h in row] for row in fhat_hessian()]
    rows = []
    for X in points:
        H = [[_eval_plan_mod(pl, X, p) for pl in row] for row in hplan]
        HX = [sum(H[r][s] * X[s] for s in range(NVARS)) % p for r in range(NVARS)]
        for r in range(NVARS):
            row = [0] * (NVARS * NVARS)
            for i in range(NVARS):
                base = i * NVARS
                xi = X[i]
                for s in range(NVARS):
                    row[base + s] = H[r][s] * xi % p
            for s in range(NVARS):
                row[r * NVARS + s] = (row[r * NVARS + s] - HX[s]) % p
            rows.append(row)
    return rows


def _identity_satisfies(rows: list[list[int]], p: int) -> bool:
    ident = [int(i == j) for i in range(NVARS) for j in range(NVARS)]
    return all(sum(a * b for a, b in zip(row, ident)) % p == 0 for row in rows)


def _exact_extremality_rows() -> tuple[list[dict], list]:
    """Coefficient equations of ``grad p - A grad f = 0`` in the 3876 + 256 unknowns."""
    grads = fhat_gradient()
    quartics = monomial_exponents(NVARS, 4)
    cubics = monomial_exponents(NVARS, 3)
    rows = []
    for i in range(NVARS):
        for M in cubics:
            N = list(M)
            N[i] += 1
            row = {("p", tuple(N)): Fraction(M[i] + 1)}
            for j, g in enumerate(grads):
                c = g.coefficient(M)
                if c:
                    row[("A", i, j)] = -c
            rows.append(row)
    columns = [("p", N) for N in quartics] + [("A", i, j) for i in range(NVARS) for j in range(NVARS)]
    return rows, columns


def fhat_kernel_vector() -> dict:
    """The known solution (p, A) = (f, I) as a sparse vector."""
    vec = {("p", N): c for N, c in fhat_expand().terms.items()}
    vec.update({("A", i, i): Fraction(1) for i in range(NVARS)})
    return vec


def extremality_dimension(mode: str = "modular", seed: int = 0, points: int = 40,
                          primes: Sequence[int] | None = None) -> NullspaceResult:
    """Dimension of the space of pairs (p, A) with ``grad p = A grad f``.

    Exact mode row-reduces the full coefficient system (3876 quartic
    coefficients plus 256 entries of A).  Modular mode first eliminates
    p with Euler's identity ``4 p = x . grad p``: (p, A) is a solution iff
    ``H(X) A^T X = A H(X) X`` for all X (H the Hessian of f), and p is then
    ``x^T A grad f / 4``.  The kernels are isomorphic, and each random
    point contributes 16 equations in the 256 entries of A.
    """
    rng = random.Random(seed)
    if mode == "modular":
        unknowns = NVARS * NVARS
        if primes is None:
            primes = random_primes(2, MODULAR_PRIME_BITS, rng)
        identity_ok = []

        def rank_at(p: int) -> int:
            prng = random.Random(f"{seed}:{p}")
            pts = [[prng.randrange(p) for _ in range(NVARS)] for _ in range(points)]
            rows = _lagrangian_rows_mod_p(pts, p)
            identity_ok.append(_identity_satisfies(rows, p))
            return rank_mod_p(rows, p)

        rank = modular_consensus(rank_at, primes, rng, bits=MODULAR_PRIME_BITS)
        checks = {"known-solution": all(identity_ok)}
    elif mode == "exact":
        rows, columns = _exact_extremality_rows()
        unknowns = len(columns)
        vec = fhat_kernel_vector()
        known = all(sum((v * vec.get(c, 0) for c, v in row.items()), Fraction(0)) == 0 for row in rows)
        rank = RankResult(SparseEliminator(rows).run().rank, "exact")
        checks = {"known-solution": known}
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return NullspaceResult(unknowns - rank.rank, unknowns, mode, rank, checks)


# -- the full example suite ---------------------------------------------------------------


def _rank_note(res: NullspaceResult) -> str:
    note = f"{res.rank.confidence}, {res.unknowns} unknowns"
    if res.rank.primes:
        note += ", primes " + " ".join(map(str, res.rank.primes))
    return note


def example_report(check: str = "all", mode: str = "modular", seed: int = 0) -> Report:
    """Run the quartic example checks and collect them in one report."""
    valid = {"invariance", "restriction", "rank-one", "nullspace-U", "extremal", "all"}
    if check not in valid:
        raise ValueError(f"unknown check {check!r}; choose from {sorted(valid)}")
    report = Report("quaternion quartic f = det_M(X X*)", meta={"seed": seed, "mode": mode, "check": check})
    run = (lambda name: check in (name, "all"))
    if run("invariance"):
        rng = random.Random(seed)
        bad = 0
        for t in range(50):
            P, Q = random_sp2(rng), random_sp2(rng)
            if not sp2_invariance_check(P, Q, samples=4, seed=seed + t):
                bad += 1
        report.add("sp2-invariance", PASS if not bad else FAIL, f"50 rational unitary products, {bad} failures")
    if run("restriction"):
        r = restriction_h()
        report.add("restriction", PASS if r.matches else FAIL, "h(x1, w1) = (x1 w1 - 1)^2")
    if run("rank-one"):
        composed, ok = rank_one_vanishing()
        report.add("rank-one-vanishing", PASS if ok else FAIL, f"f([x;y][z w]) has {len(composed)} terms")
    if run("nullspace-U"):
        res = cubics_vanishing_on_rank_one(mode=mode, seed=seed)
        report.add("dim-U", PASS if res.dimension == 16 else FAIL,
                   f"computed {res.dimension}, claimed 16 ({_rank_note(res)})")
        report.add("gradient-in-U", PASS if res.checks["partials-vanish-symbolic"] and res.checks["partials-vanish-spot"] else FAIL,
                   "16 partial derivatives vanish on rank-one matrices")
        report.add("hessian-rank-identity", PASS if res.checks["hessian-rank-identity"] else FAIL,
                   f"rank {hessian_rank(IDENTITY_POINT)} at X = I")
        report.add("hessian-rank-named", PASS if res.checks["hessian-rank-named-point"] else FAIL,
                   f"rank {hessian_rank(NAMED_HESSIAN_POINT)} at x = z = 1, y = w = 0, claimed 16")
    if run("extremal"):
        res = extremality_dimension(mode=mode, seed=seed)
        report.add("dim-L", PASS if res.dimension == 1 else FAIL,
                   f"computed {res.dimension}, claimed 1 ({_rank_note(res)})")
        report.add("known-solution", PASS if res.checks["known-solution"] else FAIL, "(p, A) = (f, I) solves the system")
        if res.dimension == 1:
            report.add("extreme-ray", INFO, "f spans an extreme ray of the nonnegative quartics")
    return report
