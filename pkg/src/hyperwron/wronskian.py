"""Hyperwrons: Wronskian-type nonnegative forms built from hyperbolic polynomials.

For p hyperbolic with respect to e and u, v in the closed cone, the
Wronskian ``D_u p * D_v p - p * D_uv p`` is nonnegative.  Composing it
with a polynomial map phi gives a *hyperwron*.  This module builds and
verifies hyperwrons exactly, turns sums of squares into hyperwrons, and
computes the explicit SOS-plus-product decompositions available in low
degree (quadratic and cubic p).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import HomogeneousPoly, as_fraction, as_vector, compose, dim_forms, identity_map, lagrange_diagonalize
from .algebra.poly import check_polymap
from .algebra.univariate import UPoly, count_with_multiplicity, isolate_real_roots, is_real_rooted, restrict_line
from .hyperbolic import (
    HyperbolicPair,
    NotHyperbolicError,
    Refuted,
    Sampled,
    cone_membership,
    fmt_vector,
    lorentz,
    random_rational_vector,
)
from .report import FAIL, PASS, SAMPLED_OK, Report, integer_points

DEFAULT_NONNEG_SAMPLES = 10_000


class NotNonnegativeError(ValueError):
    """A quadratic form (or restriction) that was required to be PSD is not."""

    def __init__(self, witness, value, message: str = ""):
        self.witness = tuple(witness)
        self.value = value
        super().__init__(message or f"form is negative at {fmt_vector(self.witness)} (value {value})")


class NonSquareWeightError(ValueError):
    def __init__(self, weights):
        self.weights = tuple(weights)
        listed = ", ".join(str(w) for w in self.weights)
        super().__init__(
            f"weights {listed} are not rational squares; pass four_square=True to split them into four squares"
        )


class InternalInconsistencyError(RuntimeError):
    """A hyperbolic quadratic did not have Lorentzian signature."""


def _zero_like(nvars: int, degree: int) -> HomogeneousPoly:
    return HomogeneousPoly.zero(nvars, degree)


def _fix_degree(p: HomogeneousPoly, degree: int) -> HomogeneousPoly:
    return p if not p.is_zero() else _zero_like(p.nvars, degree)


# -- weighted sums of squares ---------------------------------------------------


@dataclass(frozen=True)
class WeightedSOS:
    """``sum_i w_i g_i^2`` with nonnegative rational weights and forms g_i of degree s."""

    nvars: int
    half_degree: int
    terms: tuple[tuple[Fraction, HomogeneousPoly], ...] = ()

    def __post_init__(self):
        for w, g in self.terms:
            if w < 0:
                raise ValueError(f"SOS weights must be nonnegative, got {w}")
            if g.nvars != self.nvars:
                raise ValueError("all squared forms must share the variables")
            if not g.is_zero() and g.degree != self.half_degree:
                raise ValueError(f"squared form of degree {g.degree}, expected {self.half_degree}")

    @classmethod
    def of(cls, terms: Sequence[tuple], nvars: int | None = None, half_degree: int | None = None) -> "WeightedSOS":
        terms = tuple((as_fraction(w), g) for w, g in terms)
        if terms:
            nvars = terms[0][1].nvars if nvars is None else nvars
            half_degree = terms[0][1].degree if half_degree is None else half_degree
        if nvars is None or half_degree is None:
            raise ValueError("an empty SOS needs nvars and half_degree")
        return cls(nvars, half_degree, terms)

    def expand(self) -> HomogeneousPoly:
        out = _zero_like(self.nvars, 2 * self.half_degree)
        for w, g in self.terms:
            out = out + (g * g).scale(w)
        return _fix_degree(out, 2 * self.half_degree)

    def compose(self, phi: Sequence[HomogeneousPoly]) -> "WeightedSOS":
        nv, k = check_polymap(phi)
        return WeightedSOS(nv, self.half_degree * k, tuple((w, compose(g, phi)) for w, g in self.terms))

    def __len__(self) -> int:
        return len(self.terms)


def rational_sqrt(x: Fraction) -> Fraction | None:
    x = as_fraction(x)
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def four_square_split(w: Fraction) -> list[Fraction]:
    """Rationals c_1..c_4 with ``sum c_j^2 = w`` (Lagrange's four-square theorem)."""
    from sympy.solvers.diophantine.diophantine import sum_of_four_squares

    w = as_fraction(w)
    # w = a/b = (a b) / b^2
    n = w.numerator * w.denominator
    return [Fraction(c, w.denominator) for c in sum_of_four_squares(n) if c]


# -- hyperwron witnesses ----------------------------------------------------------


@dataclass(frozen=True)
class HyperwronWitness:
    pair: HyperbolicPair
    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]
    phi: tuple[HomogeneousPoly, ...] | None = None  # None means the identity map

    def __post_init__(self):
        n = self.pair.nvars
        if len(self.u) != n or len(self.v) != n:
            raise ValueError("u and v must have as many coordinates as p has variables")
        if self.phi is not None:
            if len(self.phi) != n:
                raise ValueError(f"phi has {len(self.phi)} components, p has {n} variables")
            check_polymap(self.phi)

    @classmethod
    def make(cls, pair: HyperbolicPair, u, v, phi=None) -> "HyperwronWitness":
        return cls(pair, as_vector(u), as_vector(v), None if phi is None else tuple(phi))

    @property
    def map(self) -> tuple[HomogeneousPoly, ...]:
        return self.phi if self.phi is not None else tuple(identity_map(self.pair.nvars))

    @property
    def map_degree(self) -> int:
        return check_polymap(self.map)[1]

    @property
    def target_nvars(self) -> int:
        return check_polymap(self.map)[0]


def wronskian(p: HomogeneousPoly, u: Sequence, v: Sequence) -> HomogeneousPoly:
    """``D_u p * D_v p - p * D_uv p`` in F_{n, 2(d-1)}."""
    d = p.degree
    du = p.directional_derivative(u)
    dv = p.directional_derivative(v)
    duv = du.directional_derivative(v) if d >= 1 else _zero_like(p.nvars, 0)
    out = _zero_like(p.nvars, max(2 * (d - 1), 0))
    if not du.is_zero() and not dv.is_zero():
        out = out + du * dv
    if not duv.is_zero():
        out = out - p * duv
    return _fix_degree(out, max(2 * (d - 1), 0))


def build_hyperwron(w: HyperwronWitness) -> HomogeneousPoly:
    theta = wronskian(w.pair.p, w.u, w.v)
    if w.phi is None:
        return theta
    nv, k = check_polymap(w.phi)
    return _fix_degree(compose(theta, w.phi), theta.degree * k)


def _hyperbolicity_check(report: Report, pair: HyperbolicPair) -> None:
    verdict = pair.verdict
    if isinstance(verdict, Refuted):
        report.add("hyperbolicity", FAIL, str(verdict))
    elif isinstance(verdict, Sampled):
        report.add("hyperbolicity", SAMPLED_OK, str(verdict))
    else:
        report.add("hyperbolicity", PASS, str(verdict))


def _cone_check(report: Report, pair: HyperbolicPair, points: dict) -> bool:
    if pair.refuted:
        report.add("cone", FAIL, "cone undefined for a refuted pair")
        return False
    parts, ok = [], True
    for name, x in points.items():
        try:
            m = cone_membership(pair, x)
        except NotHyperbolicError:
            parts.append(f"{name}: eigenvalue polynomial not real-rooted")
            ok = False
            continue
        parts.append(f"{name}={m}")
        ok &= m.in_cone
    report.add("cone", PASS if ok else FAIL, ", ".join(parts))
    return ok


def nonneg_spot_check(q: HomogeneousPoly, samples: int, seed: int) -> tuple[bool, tuple | None]:
    if q.is_zero():
        return True, None
    ev = q.evaluator()
    for pt in integer_points(q.nvars, samples, seed):
        if ev(pt) < 0:
            return False, pt
    return True, None


def verify_hyperwron(w: HyperwronWitness, q: HomogeneousPoly, samples: int = DEFAULT_NONNEG_SAMPLES,
                     seed: int = 0) -> Report:
    """Check a claimed hyperwron exactly (identity, cones) and by sampling (sign)."""
    report = Report("hyperwron", meta={"seed": seed, "nonneg-samples": samples, "mode": "exact"})
    theta = build_hyperwron(w)
    if theta == q:
        report.add("identity", PASS, f"degree {theta.degree}, {len(theta)} terms")
    else:
        diff = theta - q if theta.degree == q.degree or theta.is_zero() or q.is_zero() else None
        detail = "degrees differ" if diff is None else f"{len(diff)} coefficients differ"
        report.add("identity", FAIL, detail)
    _cone_check(report, w.pair, {"u": w.u, "v": w.v})
    _hyperbolicity_check(report, w.pair)
    ok, bad = nonneg_spot_check(q, samples, seed)
    if ok:
        report.add("nonnegativity", SAMPLED_OK, f"{samples} integer points")
    else:
        report.add("nonnegativity", FAIL, f"negative at {bad}")
    return report


def sos_to_hyperwron(sos: WeightedSOS, four_square: bool = False) -> HyperwronWitness:
    """Realize a weighted SOS as a hyperwron of a Lorentz quadratic.

    With ``p = <e,y>^2/|e|^2 - |y|^2/2`` and ``u = v = e = (1,1,0,...)``
    the Wronskian is ``|y|^2``, so composing with the (scaled) squares
    reproduces the sum of squares.
    """
    roots: list[HomogeneousPoly] = []
    bad = []
    for w, g in sos.terms:
        r = rational_sqrt(w)
        if r is not None:
            roots.append(g.scale(r))
        elif four_square:
            roots.extend(g.scale(c) for c in four_square_split(w))
        else:
            bad.append(w)
    if bad:
        raise NonSquareWeightError(bad)
    n = max(3, dim_forms(sos.nvars, sos.half_degree), len(roots))
    e = [1, 1] + [0] * (n - 2)
    pair = lorentz(e)
    phi = roots + [_zero_like(sos.nvars, sos.half_degree)] * (n - len(roots))
    return HyperwronWitness.make(pair, e, e, phi)


# -- quadratic forms ---------------------------------------------------------------


def _primitive_direction(x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = 1
    for c in x:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in x]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    ints = [a // g for a in ints] if g else ints
    if next((a for a in ints if a), 0) < 0:
        ints = [-a for a in ints]
    return tuple(Fraction(a) for a in ints)


def sos_split_nonneg_quadratic(q: HomogeneousPoly) -> WeightedSOS:
    """Weighted SOS of a PSD quadratic; raises with a witness if q is indefinite."""
    if q.is_zero():
        return WeightedSOS(q.nvars, 1, ())
    diag = lagrange_diagonalize(q)
    for i, d in enumerate(diag.diagonal):
        if d < 0:
            x = _primitive_direction(diag.column(i))
            raise NotNonnegativeError(x, q(x))
    forms = diag.linear_forms()
    return WeightedSOS(q.nvars, 1, tuple((d, f) for d, f in zip(diag.diagonal, forms) if d > 0))


def qform_hyperplane_split(q: HomogeneousPoly, l: HomogeneousPoly) -> tuple[WeightedSOS, HomogeneousPoly]:
    """Write ``q = s + l * alpha`` with s a weighted SOS, given q >= 0 on ``{l = 0}``.

    ``s(x) = q(P x)`` for the orthogonal projection P onto ``{l = 0}``; only
    ``|l|^2`` enters, so everything stays rational.
    """
    n = q.nvars
    lvec = l.linear_coefficients() if not l.is_zero() else [Fraction(0)] * n
    if not any(lvec):
        return sos_split_nonneg_quadratic(q), _zero_like(n, 1)
    G = q.gram_matrix()
    nrm = sum(c * c for c in lvec)
    # P = I - l l^T / |l|^2
    P = [[Fraction(int(i == j)) - lvec[i] * lvec[j] / nrm for j in range(n)] for i in range(n)]
    proj = [HomogeneousPoly.linear(row) for row in P]
    s_poly = _fix_degree(compose(q, proj), 2)
    try:
        s = sos_split_nonneg_quadratic(s_poly)
    except NotNonnegativeError as exc:
        x = tuple(sum((P[i][j] * exc.witness[j] for j in range(n)), Fraction(0)) for i in range(n))
        raise NotNonnegativeError(_primitive_direction(x), q(x), "q is negative on the hyperplane l = 0 at "
                                  f"{fmt_vector(_primitive_direction(x))}") from None
    lQ = [sum((lvec[i] * G[i][j] for i in range(n)), Fraction(0)) for j in range(n)]
    lQl = sum((lQ[j] * lvec[j] for j in range(n)), Fraction(0))
    # alpha = (2 l^T Q P x + (l^T Q l / |l|^2) l^T x) / |l|^2
    coeffs = [
        (2 * sum((lQ[i] * P[i][j] for i in range(n)), Fraction(0)) + lQl / nrm * lvec[j]) / nrm
        for j in range(n)
    ]
    alpha = HomogeneousPoly.linear(coeffs)
    if s.expand() + l * alpha != q:
        raise InternalInconsistencyError("hyperplane split failed to reproduce q")
    return s, alpha


# -- cubic and quartic decompositions ------------------------------------------------


@dataclass(frozen=True)
class LorentzForm:
    """``d1 * l1^2 - sum c_i * l_i^2`` from a diagonalization (d1, c_i > 0)."""

    d1: Fraction
    l1: HomogeneousPoly
    negatives: tuple[tuple[Fraction, HomogeneousPoly], ...]


def lorentz_normal_form(q: HomogeneousPoly) -> LorentzForm | None:
    """Split a nonzero hyperbolic quadratic into its positive square and the rest."""
    if q.is_zero():
        return None
    diag = lagrange_diagonalize(q)
    forms = diag.linear_forms()
    pos = [(d, f) for d, f in zip(diag.diagonal, forms) if d > 0]
    neg = tuple((-d, f) for d, f in zip(diag.diagonal, forms) if d < 0)
    if len(pos) != 1:
        raise InternalInconsistencyError(
            f"derivative of a hyperbolic cubic has {len(pos)} positive squares (expected exactly 1)"
        )
    return LorentzForm(pos[0][0], pos[0][1], neg)


@dataclass(frozen=True)
class CubicSplit:
    """``D_u p = -q + alpha * D_uv p`` (or ``duv_zero`` when D_uv p vanishes)."""

    q: WeightedSOS | None
    alpha: HomogeneousPoly | None
    duv: HomogeneousPoly
    duv_zero: bool


def cubic_derivative_split(pair: HyperbolicPair, u: Sequence, v: Sequence) -> CubicSplit:
    p = pair.p
    if p.degree != 3:
        raise ValueError(f"cubic_derivative_split needs a cubic, got degree {p.degree}")
    u, v = as_vector(u), as_vector(v)
    du = p.directional_derivative(u)
    duv = _fix_degree(du.directional_derivative(v), 1)
    if duv.is_zero():
        return CubicSplit(None, None, duv, True)
    nf = lorentz_normal_form(du)
    w1 = nf.l1(v)  # <a_1, v> up to the weight sqrt(d1)
    if not w1:
        raise InternalInconsistencyError("D_uv p is nonzero but the positive square vanishes at v")
    n = p.nvars
    cross = _zero_like(n, 1)
    negsq = _zero_like(n, 2)
    for c, f in nf.negatives:
        cross = cross + f.scale(c * f(v))
        negsq = negsq + (f * f).scale(c)
    denom = nf.d1 * w1 * w1
    q_poly = _fix_degree(negsq - (cross * cross).scale(1 / denom), 2)
    alpha = (nf.l1.scale(nf.d1 * w1) + cross).scale(1 / (2 * denom))
    q = sos_split_nonneg_quadratic(q_poly)
    if -q.expand() + alpha * duv != du:
        raise InternalInconsistencyError("cubic split failed to reproduce D_u p")
    return CubicSplit(q, alpha, duv, False)


@dataclass(frozen=True)
class QuarticDecomposition:
    """``Theta = q1 * q2 + r * l`` with q1, q2 weighted SOS quadratics."""

    q1: WeightedSOS
    q2: WeightedSOS
    r: HomogeneousPoly
    l: HomogeneousPoly
    case: str

    def expand(self) -> HomogeneousPoly:
        return self.q1.expand() * self.q2.expand() + self.r * self.l

    def compose(self, phi: Sequence[HomogeneousPoly]) -> "QuarticDecomposition":
        nv, k = check_polymap(phi)
        return QuarticDecomposition(
            self.q1.compose(phi), self.q2.compose(phi),
            _fix_degree(compose(self.r, phi), self.r.degree * k),
            _fix_degree(compose(self.l, phi), self.l.degree * k),
            self.case,
        )


def decompose_quartic_hyperwron(pair: HyperbolicPair, u: Sequence, v: Sequence) -> QuarticDecomposition:
    """Explicit ``Theta = q1 q2 + r l`` for a hyperbolic cubic and u, v in its cone."""
    p = pair.p
    if p.degree != 3:
        raise ValueError(f"quartic hyperwron decomposition needs a cubic, got degree {p.degree}")
    u, v = as_vector(u), as_vector(v)
    n = p.nvars
    empty = WeightedSOS(n, 1, ())
    split_u = cubic_derivative_split(pair, u, v)
    if not split_u.duv_zero:
        split_v = cubic_derivative_split(pair, v, u)
        q1, a1 = split_u.q.expand(), split_u.alpha
        q2, a2 = split_v.q.expand(), split_v.alpha
        duv = split_u.duv
        r = _fix_degree(-(q1 * a2) - q2 * a1 + a1 * a2 * duv - p, 3)
        return QuarticDecomposition(split_u.q, split_v.q, r, duv, "case-2")
    du = p.directional_derivative(u)
    dv = _fix_degree(p.directional_derivative(v), 2)
    if du.is_zero():
        return QuarticDecomposition(empty, empty, _zero_like(n, 3), _zero_like(n, 1), "case-1-zero")
    nf = lorentz_normal_form(du)
    l = nf.l1
    q1_sos = WeightedSOS(n, 1, nf.negatives)
    q1 = q1_sos.expand()
    # is q1 identically zero on the hyperplane l = 0?
    s1, alpha1 = qform_hyperplane_split(q1, l)
    if not s1.terms:
        # q1 = l * alpha1, so Theta = du * dv = l (d1 l - alpha1) dv
        r = _fix_degree((l.scale(nf.d1) - alpha1) * dv, 3)
        return QuarticDecomposition(empty, empty, r, l, "case-1a")
    q2_sos, alpha = qform_hyperplane_split(_fix_degree(-dv, 2), l)
    r = _fix_degree((l * dv).scale(nf.d1) + alpha * q1, 3)
    return QuarticDecomposition(q1_sos, q2_sos, r, l, "case-1b")


# -- interlacers ----------------------------------------------------------------------


def _interlaces(pt: UPoly, qt: UPoly) -> bool:
    """Weak interlacing of the roots of qt (degree d-1) within those of pt (degree d).

    Checked exactly by comparing root-counting functions (with
    multiplicity) just to the right of every distinct root of pt * qt.
    """
    if not is_real_rooted(qt):
        return False
    for _, b in isolate_real_roots(pt * qt):
        np_ = count_with_multiplicity(pt, None, b, closed_hi=True)
        nq_ = count_with_multiplicity(qt, None, b, closed_hi=True)
        if not (np_ - 1 <= nq_ <= np_):
            return False
    return True


def interlacer_certificate(pair: HyperbolicPair, q: HomogeneousPoly, phi: Sequence[HomogeneousPoly] | None = None,
                           samples: int = 200, seed: int = 0,
                           nonneg_samples: int = DEFAULT_NONNEG_SAMPLES) -> tuple[HomogeneousPoly, Report]:
    """``D_e p(phi) q(phi) - D_e q(phi) p(phi)`` with sampled interlacing and sign checks."""
    p = pair.p
    d = p.degree
    if q.nvars != p.nvars or (not q.is_zero() and q.degree != d - 1):
        raise ValueError(f"interlacer must be a form of degree {d - 1} in {p.nvars} variables")
    e = pair.e
    raw = _fix_degree(p.directional_derivative(e) * q - q.directional_derivative(e) * p, 2 * (d - 1))
    cert = raw if phi is None else _fix_degree(compose(raw, phi), raw.degree * check_polymap(phi)[1])
    report = Report("interlacer", meta={"seed": seed, "samples": samples, "nonneg-samples": nonneg_samples})
    _hyperbolicity_check(report, pair)
    rng = random.Random(seed)
    bad = None
    if not q.is_zero() and q(e) <= 0:
        bad = e
    else:
        for _ in range(samples):
            x = random_rational_vector(p.nvars, rng)
            pt = restrict_line(p, x, e)
            qt = restrict_line(q, x, e)
            if not is_real_rooted(pt) or not _interlaces(pt, qt):
                bad = x
                break
    if bad is None:
        report.add("interlacing", SAMPLED_OK, f"{samples} directions")
    else:
        report.add("interlacing", FAIL, f"q does not interlace p at x = {fmt_vector(bad)}")
    ok, pt = nonneg_spot_check(cert, nonneg_samples, seed)
    report.add("nonnegativity", SAMPLED_OK if ok else FAIL, f"{nonneg_samples} integer points" if ok else f"negative at {pt}")
    if d == 2:
        try:
            sos = sos_split_nonneg_quadratic(raw)
            report.add("sos-split", PASS, f"{len(sos)} weighted squares")
        except NotNonnegativeError as exc:
            report.add("sos-split", FAIL, str(exc))
    return cert, report
