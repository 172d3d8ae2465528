"""Hyperbolic polynomials, eigenvalue polynomials and hyperbolicity cones.

A form p is hyperbolic with respect to e when p(e) > 0 and, for every x,
the univariate polynomial ``t -> p(t e - x)`` has only real roots (the
eigenvalues of x).  The closed cone ``Lambda_+(p, e)`` collects the x
whose eigenvalues are all nonnegative.

Hyperbolicity is certified exactly for quadratics (Lorentzian signature)
and for a handful of classical families; for everything else it is only
*sampled* on random rational directions.  A sampled verdict is evidence,
not a proof, and the type says so.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .algebra import HomogeneousPoly, UPoly, as_vector, is_real_rooted, lagrange_diagonalize, restrict_line
from .algebra.univariate import squarefree_part, sturm_count

DEFAULT_HYPERBOLICITY_SAMPLES = 200


class NotHyperbolicError(ValueError):
    """Raised when an eigenvalue polynomial turns out not to be real-rooted."""

    def __init__(self, witness, message: str = ""):
        self.witness = tuple(witness)
        super().__init__(message or f"p(t e - x) is not real-rooted at x = {fmt_vector(self.witness)}")


def fmt_vector(v: Sequence) -> str:
    return "(" + ", ".join(str(Fraction(c)) for c in v) + ")"


# -- verdicts -------------------------------------------------------------


@dataclass(frozen=True)
class Certified:
    reason: str  # "quadratic-signature" or "known-family"

    def __str__(self) -> str:
        return f"certified({self.reason})"


@dataclass(frozen=True)
class Sampled:
    n: int
    seed: int

    def __str__(self) -> str:
        return f"sampled(n={self.n}, seed={self.seed})"


@dataclass(frozen=True)
class Refuted:
    witness: tuple[Fraction, ...]
    reason: str = "not-real-rooted"  # or "nonpositive-at-e"

    def __str__(self) -> str:
        return f"refuted({self.reason}, x={fmt_vector(self.witness)})"


Verdict = Union[Certified, Sampled, Refuted]


@dataclass(frozen=True)
class HyperbolicPair:
    p: HomogeneousPoly
    e: tuple[Fraction, ...]
    verdict: Verdict
    family: str | None = None

    @property
    def degree(self) -> int:
        return self.p.degree

    @property
    def nvars(self) -> int:
        return self.p.nvars

    @property
    def refuted(self) -> bool:
        return isinstance(self.verdict, Refuted)


# -- hyperbolicity checks -----------------------------------------------------


def _positive_subspace_witness(p: HomogeneousPoly, e: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """For a quadratic with >= 2 positive squares, find x with p(t e - x) root-free."""
    diag = lagrange_diagonalize(p)
    G = p.gram_matrix()
    n = p.nvars

    def bil(a, b):
        return sum((G[i][j] * a[i] * b[j] for i in range(n) for j in range(n)), Fraction(0))

    cols = [diag.column(i) for i, d in enumerate(diag.diagonal) if d > 0]
    if len(cols) < 2:
        return None
    xa, xb = cols[0], cols[1]
    ba, bb = bil(e, xa), bil(e, xb)
    if ba == 0:
        x = xa
    elif bb == 0:
        x = xb
    else:
        # x in span(xa, xb), B-orthogonal to e; p is positive definite on that span
        x = tuple(bb * a - ba * b for a, b in zip(xa, xb))
    return _normalize_sign(x)


def _normalize_sign(x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Flip so the first nonzero entry is positive (eigenvalues just negate)."""
    first = next((c for c in x if c), Fraction(0))
    return tuple(-c for c in x) if first < 0 else tuple(x)


def _recognize_family(p: HomogeneousPoly, e: Sequence[Fraction]) -> str | None:
    n, d = p.nvars, p.degree
    if d <= 1:
        return "linear"
    if all(c > 0 for c in e) and 1 <= d <= n:
        base = elementary_symmetric_poly(n, d)
        ratio = _proportional(p, base)
        if ratio is not None and ratio > 0:
            return f"elementary-symmetric({n},{d})"
    size = _triangular_size(n)
    if size == d:
        base = det_symmetric_poly(size)
        ratio = _proportional(p, base)
        if ratio is not None and ratio > 0 and _is_positive_definite(_sym_from_vector(e, size)):
            return f"det-symmetric-pencil({size})"
    return None


def _proportional(p: HomogeneousPoly, q: HomogeneousPoly) -> Fraction | None:
    if p.nvars != q.nvars or p.degree != q.degree or q.is_zero() or len(p) != len(q):
        return None
    exp, c = next(iter(q.terms.items()))
    ratio = p.coefficient(exp) / c
    return ratio if ratio and p == q.scale(ratio) else None


def _triangular_size(n: int) -> int | None:
    size = (math.isqrt(8 * n + 1) - 1) // 2
    return size if size * (size + 1) // 2 == n else None


def _sym_from_vector(v: Sequence[Fraction], size: int) -> list[list[Fraction]]:
    S = [[Fraction(0)] * size for _ in range(size)]
    it = iter(v)
    for i in range(size):
        for j in range(i, size):
            S[i][j] = S[j][i] = next(it)
    return S


def _is_positive_definite(S: list[list[Fraction]]) -> bool:
    from .algebra.linalg import det

    return all(det([row[:k] for row in S[:k]]) > 0 for k in range(1, len(S) + 1))


def check_hyperbolic(p: HomogeneousPoly, e: Sequence, strategy: str = "auto",
                     samples: int = DEFAULT_HYPERBOLICITY_SAMPLES, seed: int = 0) -> HyperbolicPair:
    """Decide (or sample) hyperbolicity of p with respect to e.

    ``strategy`` is ``auto``, ``quadratic``, ``known-family`` or ``sampled``.
    """
    e = as_vector(e)
    if len(e) != p.nvars:
        raise ValueError(f"direction e has {len(e)} coordinates, p has {p.nvars} variables")
    if p.is_zero():
        raise ValueError("the zero form is not hyperbolic")
    if p(e) <= 0:
        return HyperbolicPair(p, e, Refuted(e, "nonpositive-at-e"))
    if strategy == "auto":
        if p.degree == 2:
            strategy = "quadratic"
        elif _recognize_family(p, e) is not None:
            strategy = "known-family"
        else:
            strategy = "sampled"
    if strategy == "quadratic":
        if p.degree != 2:
            raise ValueError(f"quadratic strategy needs a quadratic, got degree {p.degree}")
        pos, _, _ = lagrange_diagonalize(p).signature
        if pos == 1:
            return HyperbolicPair(p, e, Certified("quadratic-signature"))
        witness = _positive_subspace_witness(p, e)
        return HyperbolicPair(p, e, Refuted(witness))
    if strategy == "known-family":
        fam = _recognize_family(p, e)
        if fam is None:
            raise ValueError("p is not recognized as a member of a known hyperbolic family")
        return HyperbolicPair(p, e, Certified("known-family"), family=fam)
    if strategy == "sampled":
        witness = sample_hyperbolicity(p, e, samples, seed)
        if witness is not None:
            return HyperbolicPair(p, e, Refuted(witness))
        return HyperbolicPair(p, e, Sampled(samples, seed))
    raise ValueError(f"unknown strategy {strategy!r}")


def random_rational_vector(n: int, rng: random.Random, bound: int = 12, den: int = 4) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-bound * den, bound * den), rng.randint(1, den)) for _ in range(n))


def sample_hyperbolicity(p: HomogeneousPoly, e: Sequence[Fraction], samples: int, seed: int):
    """First sampled x whose eigenvalue polynomial is not real-rooted, or None."""
    rng = random.Random(seed)
    for _ in range(samples):
        x = random_rational_vector(p.nvars, rng)
        if not is_real_rooted(restrict_line(p, x, e)):
            return x
    return None


# -- eigenvalues and cones -------------------------------------------------------


def hyperbolic_eigen_poly(pair: HyperbolicPair, x: Sequence) -> UPoly:
    """Monic ``p(t e - x) / p(e)``; its roots are the eigenvalues of x."""
    g = restrict_line(pair.p, x, pair.e)
    return g.monic()


@dataclass(frozen=True)
class ConeMembership:
    kind: str  # "inside-strict", "boundary" or "outside"
    multiplicity: int = 0  # of the eigenvalue 0 (boundary only)
    eigen_poly: UPoly = field(default_factory=UPoly, compare=False)

    def __str__(self) -> str:
        if self.kind == "boundary":
            return f"boundary(mult={self.multiplicity})"
        return self.kind

    @property
    def in_cone(self) -> bool:
        return self.kind != "outside"


def cone_membership(pair: HyperbolicPair, x: Sequence) -> ConeMembership:
    """Exact position of x relative to the closed hyperbolicity cone."""
    if pair.refuted:
        raise NotHyperbolicError(pair.verdict.witness, "pair is refuted; its cone is undefined")
    x = as_vector(x)
    g = hyperbolic_eigen_poly(pair, x)
    if not is_real_rooted(g):
        raise NotHyperbolicError(x)
    if sturm_count(squarefree_part(g), None, 0) > 0:
        return ConeMembership("outside", 0, g)
    mult = g.vanishing_order(0)
    if mult:
        return ConeMembership("boundary", mult, g)
    return ConeMembership("inside-strict", 0, g)


def approx_eigenvalues(pair: HyperbolicPair, x: Sequence) -> np.ndarray:
    g = hyperbolic_eigen_poly(pair, x)
    return np.roots([float(c) for c in reversed(g.coeffs)]).real


def sample_cone_point(pair: HyperbolicPair, seed: int, kind: str = "interior", max_tries: int = 40) -> tuple[Fraction, ...]:
    """A seeded rational point of the cone, verified exactly.

    ``interior`` perturbs e by noise scaled to 1/8 of a crude eigenvalue
    gap estimate and halves the radius on failure.  ``boundary`` first
    zeroes coordinate subsets of e, then looks for rational largest
    eigenvalues lambda of random directions z and returns ``lambda e - z``.
    """
    rng = random.Random(seed)
    n = pair.nvars
    e = pair.e
    if kind == "interior":
        z = random_rational_vector(n, rng, bound=4)
        spread = max(1.0, float(np.max(np.abs(approx_eigenvalues(pair, z)))) if pair.degree else 1.0)
        radius = Fraction(1, 8) / Fraction(math.ceil(spread))
        for _ in range(max_tries):
            x = tuple(a + radius * b for a, b in zip(e, z))
            if cone_membership(pair, x).kind == "inside-strict":
                return x
            radius /= 2
        raise RuntimeError("could not find an interior cone point; radius shrank too far")
    if kind == "boundary":
        support = [i for i in range(n) if e[i]]
        for size in range(1, len(support)):
            subsets = list(itertools.combinations(reversed(support), size))
            for sub in subsets:
                x = tuple(Fraction(0) if i in sub else c for i, c in enumerate(e))
                if cone_membership(pair, x).kind == "boundary":
                    return x
        for _ in range(max_tries):
            z = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
            lam = _largest_rational_root(hyperbolic_eigen_poly(pair, z))
            if lam is None:
                continue
            x = tuple(lam * a - b for a, b in zip(e, z))
            if any(x) and cone_membership(pair, x).kind == "boundary":
                return x
        raise RuntimeError("boundary attempts exhausted without a verified boundary point")
    raise ValueError(f"unknown sample kind {kind!r}")


def _largest_rational_root(g: UPoly) -> Fraction | None:
    """Largest root of g if it is rational (rational root theorem, small cases)."""
    ints = g.primitive_integer()
    if not ints:
        return None
    zero_root = ints[0] == 0
    while ints[0] == 0:
        ints = ints[1:]
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 > 10**6 or an > 10**6:
        return None
    roots = [Fraction(0)] if zero_root else []
    for pdiv in _divisors(a0):
        for qdiv in _divisors(an):
            for r in (Fraction(pdiv, qdiv), Fraction(-pdiv, qdiv)):
                if g(r) == 0:
                    roots.append(r)
    if not roots:
        return None
    best = max(roots)
    approx = max(np.roots([float(c) for c in reversed(g.coeffs)]).real)
    return best if abs(float(best) - approx) < 1e-6 * max(1.0, abs(approx)) else None


def _divisors(n: int) -> list[int]:
    out = set()
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            out.update((d, n // d))
    return sorted(out)


# -- derivative cones -----------------------------------------------------


@dataclass(frozen=True)
class BoundaryDerivativeReport:
    u: tuple[Fraction, ...]
    derivative: HomogeneousPoly
    vanishes: bool
    derivative_verdict: Verdict | None
    trials: int
    counterexamples: tuple = ()

    @property
    def ok(self) -> bool:
        if self.vanishes:
            return True
        return not isinstance(self.derivative_verdict, Refuted) and not self.counterexamples


def boundary_derivative_check(pair: HyperbolicPair, u: Sequence, trials: int = 50, seed: int = 0) -> BoundaryDerivativeReport:
    """For u on the boundary: D_u p vanishes, or is hyperbolic with a larger cone."""
    u = as_vector(u)
    if cone_membership(pair, u).kind != "boundary":
        raise ValueError(f"u = {fmt_vector(u)} is not on the boundary of the hyperbolicity cone")
    dp = pair.p.directional_derivative(u)
    if dp.is_zero():
        return BoundaryDerivativeReport(u, dp, True, None, 0)
    dpair = check_hyperbolic(dp, pair.e, strategy="auto", samples=trials, seed=seed)
    bad = []
    if not dpair.refuted:
        for i in range(trials):
            kind = "interior" if i % 2 == 0 else "boundary"
            try:
                x = sample_cone_point(pair, seed * 7919 + i, kind)
            except RuntimeError:
                x = sample_cone_point(pair, seed * 7919 + i, "interior")
            if not cone_membership(dpair, x).in_cone:
                bad.append(x)
    return BoundaryDerivativeReport(u, dp, False, dpair.verdict, trials, tuple(bad))


# -- known families ------------------------------------------------------------


def elementary_symmetric_poly(n: int, k: int) -> HomogeneousPoly:
    terms = {}
    for combo in itertools.combinations(range(n), k):
        e = [0] * n
        for i in combo:
            e[i] = 1
        terms[tuple(e)] = 1
    return HomogeneousPoly(n, k, terms)


def det_symmetric_poly(n: int) -> HomogeneousPoly:
    """det of the generic symmetric n x n matrix, upper triangle row-major."""
    nv = n * (n + 1) // 2
    index = {}
    k = 0
    for i in range(n):
        for j in range(i, n):
            index[(i, j)] = index[(j, i)] = k
            k += 1
    entries = [[HomogeneousPoly.variable(nv, index[(i, j)]) for j in range(n)] for i in range(n)]
    return _laplace_det(entries, nv)


def _laplace_det(M: list[list[HomogeneousPoly]], nv: int) -> HomogeneousPoly:
    n = len(M)
    if n == 1:
        return M[0][0]
    total = HomogeneousPoly.zero(nv, n)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _laplace_det(minor, nv)
        total = total + term if j % 2 == 0 else total - term
    return total


def product_of_linears(forms: Sequence[Sequence], e: Sequence) -> HyperbolicPair:
    e = as_vector(e)
    lins = [HomogeneousPoly.linear(f) for f in forms]
    if not lins:
        raise ValueError("need at least one linear form")
    p = HomogeneousPoly.constant(len(e), 1)
    for lf in lins:
        val = lf(e)
        if val == 0:
            raise ValueError(f"linear form {lf} vanishes at e")
        if val < 0:
            raise ValueError(f"linear form {lf} is negative at e; flip its sign")
        p = p * lf
    return HyperbolicPair(p, e, Certified("known-family"), family="product-of-linears")


def lorentz(e: Sequence) -> HyperbolicPair:
    """``<e,y>^2 / |e|^2 - |y|^2 / 2``, hyperbolic with respect to e."""
    e = as_vector(e)
    norm = sum(c * c for c in e)
    if not norm:
        raise ValueError("Lorentz form needs a nonzero e")
    n = len(e)
    ey = HomogeneousPoly.linear(e)
    sq = HomogeneousPoly.zero(n, 2)
    for i in range(n):
        v = HomogeneousPoly.variable(n, i)
        sq = sq + v * v
    p = (ey * ey).scale(1 / norm) - sq.scale(Fraction(1, 2))
    return HyperbolicPair(p, e, Certified("known-family"), family="lorentz")


def elementary_symmetric(n: int, k: int) -> HyperbolicPair:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    e = tuple(Fraction(1) for _ in range(n))
    return HyperbolicPair(elementary_symmetric_poly(n, k), e, Certified("known-family"),
                          family=f"elementary-symmetric({n},{k})")


def det_symmetric_pencil(n: int) -> HyperbolicPair:
    if n < 1:
        raise ValueError("matrix size must be positive")
    e = tuple(Fraction(int(i == j)) for i in range(n) for j in range(i, n))
    return HyperbolicPair(det_symmetric_poly(n), e, Certified("known-family"), family=f"det-symmetric-pencil({n})")


def known_family(name: str, **params) -> HyperbolicPair:
    """Certified pair from a named family.

    ``product-of-linears`` (forms, e), ``lorentz`` (e),
    ``elementary-symmetric`` (n, k), ``det-symmetric-pencil`` (n).
    """
    builders = {
        "product-of-linears": product_of_linears,
        "lorentz": lorentz,
        "elementary-symmetric": elementary_symmetric,
        "det-symmetric-pencil": det_symmetric_pencil,
    }
    if name not in builders:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(builders)}")
    return builders[name](**params)
