"""Univariate rational polynomials and exact real-root counting.

Coefficients are stored low degree first.  Root counting goes through a
Sturm sequence of the squarefree part, so every count is of *distinct*
roots unless a function says otherwise.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import HomogeneousPoly, as_fraction, as_vector


class UPoly:
    """Dense univariate polynomial in ``t`` over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "UPoly":
        out = cls([lead])
        for r in roots:
            out = out * cls([-as_fraction(r), 1])
        return out

    @classmethod
    def t(cls) -> "UPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly([other]).coeffs
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        return f"UPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __call__(self, t) -> Fraction:
        t = as_fraction(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other):
        other = _as_upoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_upoly(other))

    def __rsub__(self, other):
        return _as_upoly(other) - self

    def __mul__(self, other):
        other = _as_upoly(other)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UPoly":
        out = UPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if not c:
                continue
            factor = c / lead
            quot[i - dq] = factor
            for j, oc in enumerate(other.coeffs):
                rem[i - dq + j] -= factor * oc
        return UPoly(quot), UPoly(rem[:dq] if dq > 0 else [])

    def __mod__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[0]

    def derivative(self) -> "UPoly":
        return UPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        return UPoly(c / self.lead for c in self.coeffs)

    def vanishing_order(self, at=0) -> int:
        """Multiplicity of ``at`` as a root (0 if it is not a root)."""
        if self.is_zero():
            raise ValueError("the zero polynomial vanishes to infinite order")
        f = self if at == 0 else self.shift(at)
        k = 0
        while not f.coeffs[k]:
            k += 1
        return k

    def shift(self, a) -> "UPoly":
        """``f(t + a)``."""
        a = as_fraction(a)
        out = UPoly()
        for c in reversed(self.coeffs):
            out = out * UPoly([a, 1]) + UPoly([c])
        return out

    def primitive_integer(self) -> list[int]:
        """Integer coefficient list proportional to self (positive lead)."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for x in ints:
            g = math.gcd(g, x)
        if g and ints[-1] < 0:
            g = -g
        return [x // g for x in ints] if g else ints


def _as_upoly(x) -> UPoly:
    if isinstance(x, UPoly):
        return x
    return UPoly([x])


def gcd(f: UPoly, g: UPoly) -> UPoly:
    """Monic gcd (the zero polynomial when both inputs vanish)."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(f: UPoly) -> UPoly:
    """``f / gcd(f, f')``, made monic."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no squarefree part")
    if f.degree <= 0:
        return UPoly([1])
    return (f // gcd(f, f.derivative())).monic()


def sturm_sequence(f: UPoly) -> list[UPoly]:
    """Sturm chain of the squarefree part of ``f``."""
    g = squarefree_part(f)
    seq = [g, g.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(-r)
    return [s for s in seq if not s.is_zero()]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _signs_at(seq: Sequence[UPoly], x) -> list[int]:
    if x == math.inf:
        return [_sign(p.lead) for p in seq]
    if x == -math.inf:
        return [_sign(p.lead) * (-1) ** p.degree for p in seq]
    return [_sign(p(x)) for p in seq]


def sturm_count(f: UPoly, lo=None, hi=None, *, closed_lo: bool = False, closed_hi: bool = False,
                seq: Sequence[UPoly] | None = None) -> int:
    """Number of distinct real roots of ``f`` in an interval.

    ``lo``/``hi`` of ``None`` mean minus/plus infinity.  Finite endpoints
    are excluded unless the matching ``closed_*`` flag is set.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    if f.degree <= 0:
        return 0
    a = -math.inf if lo is None else as_fraction(lo)
    b = math.inf if hi is None else as_fraction(hi)
    if a > b:
        raise ValueError(f"empty interval ({lo}, {hi})")
    if a == b:
        return int(closed_lo and closed_hi and f(a) == 0)
    seq = seq if seq is not None else sturm_sequence(f)
    # V(a) - V(b) counts roots in the half-open interval (a, b]
    n = _variations(_signs_at(seq, a)) - _variations(_signs_at(seq, b))
    if lo is not None and closed_lo and f(a) == 0:
        n += 1
    if hi is not None and not closed_hi and f(b) == 0:
        n -= 1
    return n


def count_real_roots(f: UPoly) -> int:
    return sturm_count(f)


def count_with_multiplicity(f: UPoly, lo=None, hi=None, *, closed_lo=False, closed_hi=False) -> int:
    """Roots counted with multiplicity, via the chain g_{j+1} = gcd(g_j, g_j')."""
    total = 0
    g = f
    while g.degree > 0:
        total += sturm_count(g, lo, hi, closed_lo=closed_lo, closed_hi=closed_hi)
        g = gcd(g, g.derivative())
    return total


def is_real_rooted(f: UPoly) -> bool:
    """All complex roots of ``f`` are real (constants count as real-rooted)."""
    if f.is_zero():
        raise ValueError("real-rootedness of the zero polynomial is undefined")
    g = squarefree_part(f)
    return sturm_count(g) == g.degree


def root_bound(f: UPoly) -> Fraction:
    """Cauchy bound: every root has absolute value below it."""
    lead = abs(f.lead)
    return 1 + max((abs(c) / lead for c in f.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(f: UPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(a, b]`` each holding exactly one distinct root, increasing."""
    if f.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if f.degree <= 0:
        return []
    seq = sturm_sequence(f)
    B = root_bound(seq[0])
    out = []
    stack = [(-B, B)]
    while stack:
        a, b = stack.pop()
        n = sturm_count(seq[0], a, b, closed_hi=True, seq=seq)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        stack.append((mid, b))
        stack.append((a, mid))
    out.sort()
    return out


def restrict_line(p: HomogeneousPoly, x: Sequence, e: Sequence, orientation: str = "eigen") -> UPoly:
    """Restrict a form to a line.

    ``orientation="eigen"`` gives ``p(t e - x)`` (the eigenvalue
    polynomial convention), ``"shift"`` gives ``p(x + t e)``.
    """
    if len(x) != p.nvars or len(e) != p.nvars:
        raise ValueError("point and direction must match the number of variables")
    x = as_vector(x)
    e = as_vector(e)
    if orientation == "eigen":
        base = [-v for v in x]
    elif orientation == "shift":
        base = list(x)
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    lines = [UPoly([b, d]) for b, d in zip(base, e)]
    cache: dict[tuple[int, int], UPoly] = {}

    def power(i: int, a: int) -> UPoly:
        if (i, a) not in cache:
            cache[(i, a)] = lines[i] if a == 1 else power(i, a - 1) * lines[i]
        return cache[(i, a)]

    acc = [Fraction(0)] * (p.degree + 1)
    for exp, c in p.terms.items():
        term = UPoly([c])
        for i, a in enumerate(exp):
            if a:
                term = term * power(i, a)
        for j, tc in enumerate(term.coeffs):
            acc[j] += tc
    return UPoly(acc)
