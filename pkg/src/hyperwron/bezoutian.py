"""Bezoutians of hyperbolic polynomials and the hyperzouts built from them.

``B_d(f, g)`` is the symmetric matrix of the bilinear form
``(f(t) g(s) - f(s) g(t)) / (t - s) = sum_{j,l} c_{jl} t^j s^l``.
Applied to ``f = p(x + t u)`` and ``g = D_v p(x + t u)`` it becomes a
matrix of forms in x whose (0, 0) entry is the Wronskian; it is PSD
whenever u, v lie in the hyperbolicity cone.  Quadratic forms
``xi^T B(phi(x)) xi`` in a graded vector xi are *hyperzouts*.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import HomogeneousPoly, UPoly, as_fraction, as_vector, compose, is_psd_exact
from .algebra.poly import check_polymap
from .hyperbolic import HyperbolicPair, fmt_vector
from .report import FAIL, INFO, PASS, SAMPLED_OK, Report, integer_points
from .wronskian import (
    NotNonnegativeError,
    WeightedSOS,
    _cone_check,
    _fix_degree,
    _hyperbolicity_check,
    rational_sqrt,
    sos_split_nonneg_quadratic,
)

DEFAULT_PSD_SAMPLES = 1_000


def _coeffs(f) -> list:
    if isinstance(f, UPoly):
        return list(f.coeffs)
    return list(f)


def bezout_matrix(f, g, d: int, zero=None) -> list[list]:
    """d x d Bezoutian of f and g, given as UPoly or coefficient lists (low degree first).

    Coefficients may be any ring elements (rationals or forms).  Entries
    that never receive a contribution stay equal to ``zero``.
    """
    fc, gc = _coeffs(f), _coeffs(g)
    while fc and _is_zero(fc[-1]):
        fc.pop()
    while gc and _is_zero(gc[-1]):
        gc.pop()
    if len(fc) - 1 > d or len(gc) - 1 > d:
        raise ValueError(f"Bezoutian B_{d} needs deg f, deg g <= {d}")
    if zero is None:
        zero = Fraction(0)
    C = [[zero] * d for _ in range(d)]
    for i, fi in enumerate(fc):
        if _is_zero(fi):
            continue
        for k, gk in enumerate(gc):
            if i == k or _is_zero(gk):
                continue
            prod = fi * gk
            if i > k:
                for r in range(i - k):
                    C[k + r][i - 1 - r] = C[k + r][i - 1 - r] + prod
            else:
                for r in range(k - i):
                    C[i + r][k - 1 - r] = C[i + r][k - 1 - r] - prod
    return C


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, HomogeneousPoly) else not x


def parameterized_bezoutian(pair: HyperbolicPair, u: Sequence, v: Sequence) -> list[list[HomogeneousPoly]]:
    """``B_d(p(x + t u), D_v p(x + t u))``; entry (j, l) has degree ``2(d-1) - (j+l)``."""
    p = pair.p
    d = p.degree
    if d < 1:
        raise ValueError("the Bezoutian of a constant is empty")
    u, v = as_vector(u), as_vector(v)
    n = p.nvars
    f, g = [], []
    cur_f = p
    cur_g = p.directional_derivative(v)
    for j in range(d + 1):
        f.append(cur_f.scale(Fraction(1, math.factorial(j))))
        g.append(cur_g.scale(Fraction(1, math.factorial(j))) if j <= d - 1 else HomogeneousPoly.zero(n, 0))
        cur_f = cur_f.directional_derivative(u)
        cur_g = cur_g.directional_derivative(u)
    B = bezout_matrix(f, g[:d], d, zero=HomogeneousPoly.zero(n, 0))
    return [[_fix_degree(B[j][l], 2 * (d - 1) - (j + l)) for l in range(d)] for j in range(d)]


def evaluate_matrix(B: Sequence[Sequence[HomogeneousPoly]], point: Sequence) -> list[list[Fraction]]:
    return [[entry(point) for entry in row] for row in B]


def degree_restricted(mu: int, d: int) -> bool:
    if mu < 2 or d < 2:
        raise ValueError(f"need mu >= 2 and d >= 2, got mu={mu}, d={d}")
    if mu > d:
        raise ValueError(f"mu = {mu} exceeds d = {d}")
    return mu == 2 or d <= 2 * mu - 3


# -- graded tuples and hyperzouts -------------------------------------------------------


@dataclass(frozen=True)
class GradedTuple:
    """xi in ``{0}^{d-mu} x F_{m,0} x F_{m,k} x ... x F_{m,(mu-1)k}``.

    ``slots`` holds all d entries; the first ``d - mu`` must vanish and
    slot ``d - mu + i`` must have degree ``i * k``.
    """

    slots: tuple[HomogeneousPoly, ...]
    mu: int
    k: int

    def __post_init__(self):
        d = len(self.slots)
        if not 1 <= self.mu <= d:
            raise ValueError(f"mu = {self.mu} must lie in [1, {d}]")
        nv = {s.nvars for s in self.slots}
        if len(nv) != 1:
            raise ValueError("all slots must share the same variables")
        for j, s in enumerate(self.slots):
            if j < d - self.mu:
                if not s.is_zero():
                    raise ValueError(f"slot {j} must be zero (first d - mu slots vanish)")
            elif not s.is_zero() and s.degree != (j - d + self.mu) * self.k:
                raise ValueError(f"slot {j} has degree {s.degree}, expected {(j - d + self.mu) * self.k}")

    @classmethod
    def from_tail(cls, tail: Sequence[HomogeneousPoly], d: int, k: int) -> "GradedTuple":
        """Build from the mu nonzero-able slots, padding with d - mu zeros."""
        mu = len(tail)
        if not tail:
            raise ValueError("need at least one slot")
        nv = tail[0].nvars
        return cls(tuple([HomogeneousPoly.zero(nv, 0)] * (d - mu)) + tuple(tail), mu, k)

    @property
    def d(self) -> int:
        return len(self.slots)

    @property
    def nvars(self) -> int:
        return self.slots[0].nvars


@dataclass(frozen=True)
class HyperzoutWitness:
    pair: HyperbolicPair
    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]
    xi: GradedTuple
    phi: tuple[HomogeneousPoly, ...] | None = None

    def __post_init__(self):
        if self.xi.d != self.pair.degree:
            raise ValueError(f"xi has {self.xi.d} slots but p has degree {self.pair.degree}")
        if self.phi is not None:
            nv, k = check_polymap(self.phi)
            if len(self.phi) != self.pair.nvars:
                raise ValueError("phi must have one component per variable of p")
            if nv != self.xi.nvars or k != self.xi.k:
                raise ValueError("xi must live in the source variables of phi with grading step deg(phi)")
        elif self.xi.nvars != self.pair.nvars or self.xi.k != 1:
            raise ValueError("with phi = identity, xi lives in p's variables with grading step 1")

    @property
    def mu(self) -> int:
        return self.xi.mu


def composed_bezoutian(w: HyperzoutWitness) -> list[list[HomogeneousPoly]]:
    B = parameterized_bezoutian(w.pair, w.u, w.v)
    if w.phi is None:
        return B
    k = check_polymap(w.phi)[1]
    return [[_fix_degree(compose(e, w.phi), e.degree * k) for e in row] for row in B]


def build_hyperzout(w: HyperzoutWitness) -> HomogeneousPoly:
    """``xi^T B(phi(x)) xi``, a form of degree ``2 k (mu - 1)``."""
    B = composed_bezoutian(w)
    xi = w.xi.slots
    d = w.xi.d
    target = 2 * w.xi.k * (w.mu - 1)
    out = HomogeneousPoly.zero(w.xi.nvars, target)
    for j in range(d):
        if xi[j].is_zero():
            continue
        for l in range(d):
            if xi[l].is_zero() or B[j][l].is_zero():
                continue
            out = out + xi[j] * B[j][l] * xi[l]
    return _fix_degree(out, target)


def verify_hyperzout(w: HyperzoutWitness, q: HomogeneousPoly, psd_samples: int = DEFAULT_PSD_SAMPLES,
                     seed: int = 0) -> Report:
    report = Report("hyperzout", meta={"seed": seed, "psd-samples": psd_samples, "mode": "exact"})
    eta = build_hyperzout(w)
    if eta == q:
        report.add("identity", PASS, f"degree {eta.degree}, {len(eta)} terms")
    else:
        report.add("identity", FAIL, "xi^T B(phi) xi differs from the claimed form")
    _cone_check(report, w.pair, {"u": w.u, "v": w.v})
    _hyperbolicity_check(report, w.pair)
    d = w.pair.degree
    if degree_restricted(w.mu, d) if w.mu >= 2 else True:
        report.add("degree-restricted", PASS, f"mu={w.mu}, d={d}")
    else:
        report.add("degree-restricted", INFO, f"mu={w.mu}, d={d} is outside the degree-restricted range")
    B = parameterized_bezoutian(w.pair, w.u, w.v)
    evs = [[e.evaluator() for e in row] for row in B]
    bad = None
    for pt in integer_points(w.pair.nvars, psd_samples, seed):
        M = [[ev(pt) for ev in row] for row in evs]
        if not is_psd_exact(M):
            bad = pt
            break
    if bad is None:
        report.add("bezoutian-psd", SAMPLED_OK, f"{psd_samples} integer points, exact charpoly test")
    else:
        report.add("bezoutian-psd", FAIL, f"B is not PSD at {bad}")
    return report


# -- mu = 2: explicit sums of squares --------------------------------------------------------


@dataclass(frozen=True)
class PSDFactor2x2:
    """``[[p2, p1], [p1, p0]] = sum_j w_j c_j c_j^T`` with columns c_j = (top_j, bottom_j)."""

    columns: tuple[tuple[Fraction, HomogeneousPoly, HomogeneousPoly], ...]

    def reconstruct(self) -> tuple[HomogeneousPoly, HomogeneousPoly, HomogeneousPoly]:
        nv = self.columns[0][1].nvars if self.columns else 1
        p2 = HomogeneousPoly.zero(nv, 2)
        p1 = HomogeneousPoly.zero(nv, 1)
        p0 = HomogeneousPoly.zero(nv, 0)
        for w, a, b in self.columns:
            p2 = p2 + (a * a).scale(w)
            p1 = p1 + (a * b).scale(w)
            p0 = p0 + (b * b).scale(w)
        return _fix_degree(p2, 2), _fix_degree(p1, 1), _fix_degree(p0, 0)

    def matrix(self) -> list[list[HomogeneousPoly]]:
        """Unweighted 2 x (n+1) factor M with ``M M^T`` the matrix (needs square weights)."""
        rows: list[list[HomogeneousPoly]] = [[], []]
        for w, a, b in self.columns:
            r = rational_sqrt(w)
            if r is None:
                raise ValueError(f"weight {w} is not a rational square; use the weighted columns")
            rows[0].append(a.scale(r))
            rows[1].append(b.scale(r))
        return rows


def _as_const(p0) -> Fraction:
    if isinstance(p0, HomogeneousPoly):
        if p0.degree != 0 and not p0.is_zero():
            raise ValueError("p0 must be a constant")
        return p0.coefficient((0,) * p0.nvars)
    return as_fraction(p0)


def factor_2x2_psd(p2: HomogeneousPoly, p1: HomogeneousPoly, p0) -> PSDFactor2x2:
    """Factor a PSD matrix of forms of degrees (2, 1, 0) as weighted rank-one terms."""
    nv = p2.nvars
    c0 = _as_const(p0)
    zero_lin = HomogeneousPoly.zero(nv, 1)
    const = HomogeneousPoly.constant
    if c0 < 0:
        raise NotNonnegativeError((), c0, f"p0 = {c0} is negative")
    if c0 == 0:
        if not p1.is_zero():
            coeffs = p1.linear_coefficients()
            i = next(j for j, c in enumerate(coeffs) if c)
            x = tuple(Fraction(int(j == i)) for j in range(nv))
            raise NotNonnegativeError(x, -p1(x) ** 2,
                                      f"p0 = 0 but p1 is nonzero at {fmt_vector(x)}; det = -p1^2 < 0")
        sos = sos_split_nonneg_quadratic(p2)
        return PSDFactor2x2(tuple((w, g, HomogeneousPoly.zero(nv, 0)) for w, g in sos.terms))
    schur = _fix_degree(p2 - (p1 * p1).scale(1 / c0), 2)
    sos = sos_split_nonneg_quadratic(schur)
    cols = [(w, g, HomogeneousPoly.zero(nv, 0)) for w, g in sos.terms]
    r = rational_sqrt(c0)
    p1l = p1 if not p1.is_zero() else zero_lin
    if r is not None:
        cols.append((Fraction(1), p1l.scale(1 / r), const(nv, r)))
    else:
        cols.append((c0, p1l.scale(1 / c0), const(nv, 1)))
    return PSDFactor2x2(tuple(cols))


def mu2_hyperzout_to_sos(w: HyperzoutWitness) -> WeightedSOS:
    """Explicit weighted SOS of a hyperzout with mu = 2."""
    if w.mu != 2:
        raise ValueError(f"explicit SOS is only available for mu = 2, got mu = {w.mu}")
    d = w.pair.degree
    B = parameterized_bezoutian(w.pair, w.u, w.v)
    fac = factor_2x2_psd(B[d - 2][d - 2], B[d - 2][d - 1], B[d - 1][d - 1])
    xi0, xis = w.xi.slots[d - 2], w.xi.slots[d - 1]
    k = w.xi.k
    nv = w.xi.nvars
    terms = []
    for wt, top, bot in fac.columns:
        top_c = top if w.phi is None else _fix_degree(compose(top, w.phi), k)
        b = _as_const(bot)
        g = HomogeneousPoly.zero(nv, k)
        if not xi0.is_zero() and not top_c.is_zero():
            g = g + xi0 * top_c
        if b and not xis.is_zero():
            g = g + xis.scale(b)
        if not g.is_zero():
            terms.append((wt, g))
    return WeightedSOS(nv, k, tuple(terms))
