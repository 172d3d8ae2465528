"""Sparse homogeneous polynomials with exact rational coefficients.

A form of degree ``d`` in ``m`` variables is stored as a dict mapping
exponent tuples to nonzero :class:`~fractions.Fraction` coefficients.
The degree is kept explicitly so that the zero form still knows which
space ``F_{m,d}`` it belongs to.  Adding the zero form of another degree
is allowed (it is the additive identity of every graded piece); adding
two nonzero forms of different degrees is an error.

Variables are printed ``x1 .. xm`` and terms are listed in graded
lexicographic order, largest first.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations_with_replacement
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and rational strings like ``"3/4"``."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, Rational, str)):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def as_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


def dim_forms(m: int, d: int) -> int:
    """Dimension of the space of m-variate forms of degree d."""
    if m < 1 or d < 0:
        raise ValueError(f"dim_forms needs m >= 1 and d >= 0, got m={m}, d={d}")
    return math.comb(m + d - 1, d)


def monomial_exponents(m: int, d: int) -> list[Exponent]:
    """All exponent vectors of degree d in m variables, graded-lex descending."""
    out = []
    for combo in combinations_with_replacement(range(m), d):
        e = [0] * m
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    # combinations_with_replacement already yields lex-descending exponents
    return out


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class HomogeneousPoly:
    """A form in ``F_{nvars, degree}`` with rational coefficients."""

    __slots__ = ("nvars", "degree", "_terms")

    def __init__(self, nvars: int, degree: int, terms: Mapping | Iterable = ()):
        if nvars < 1:
            raise ValueError("a form needs at least one variable")
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        self.nvars = nvars
        self.degree = degree
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for exp, coef in items:
            exp = tuple(int(a) for a in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong arity for {nvars} variables")
            if any(a < 0 for a in exp):
                raise ValueError(f"negative exponent in {exp}")
            if sum(exp) != degree:
                raise ValueError(f"monomial {exp} is not of degree {degree}")
            c = as_fraction(coef)
            if c:
                acc[exp] = acc.get(exp, 0) + c
        self._terms = {e: c for e, c in acc.items() if c}

    # -- construction -------------------------------------------------

    @classmethod
    def _raw(cls, nvars: int, degree: int, terms: dict) -> "HomogeneousPoly":
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.degree = degree
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, nvars: int, degree: int = 0) -> "HomogeneousPoly":
        return cls._raw(nvars, degree, {})

    @classmethod
    def constant(cls, nvars: int, value) -> "HomogeneousPoly":
        c = as_fraction(value)
        return cls._raw(nvars, 0, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "HomogeneousPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range")
        e = [0] * nvars
        e[index] = 1
        return cls._raw(nvars, 1, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "HomogeneousPoly":
        """The linear form ``sum c_i x_i``."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = as_fraction(c)
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return cls._raw(n, 1, terms)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coef=1) -> "HomogeneousPoly":
        exponent = tuple(exponent)
        return cls(len(exponent), sum(exponent), {exponent: coef})

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence]) -> "HomogeneousPoly":
        """Quadratic form ``x^T G x`` of a symmetric matrix."""
        n = len(gram)
        terms: dict[Exponent, Fraction] = {}
        for i in range(n):
            for j in range(n):
                c = as_fraction(gram[i][j])
                if not c:
                    continue
                e = [0] * n
                e[i] += 1
                e[j] += 1
                e = tuple(e)
                terms[e] = terms.get(e, 0) + c
        return cls(n, 2, terms)

    # -- basic protocol -----------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        """Terms in graded-lex descending order."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, HomogeneousPoly):
            if self.nvars != other.nvars:
                return False
            if not self._terms and not other._terms:
                return True
            return self.degree == other.degree and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self._terms
            return self.degree == 0 and self._terms == {(0,) * self.nvars: other}
        return NotImplemented

    __hash__ = None  # mutable-looking value type; compare, don't hash

    def __repr__(self) -> str:
        return f"HomogeneousPoly(m={self.nvars}, deg={self.degree}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.items():
            mono = "*".join(
                f"x{i + 1}" if a == 1 else f"x{i + 1}^{a}" for i, a in enumerate(exp) if a
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- arithmetic ---------------------------------------------------

    def _check_compatible(self, other: "HomogeneousPoly") -> int:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if self.degree == other.degree or not other._terms:
            return self.degree
        if not self._terms:
            return other.degree
        raise ValueError(f"cannot add forms of degree {self.degree} and {other.degree}")

    def _coerce(self, other) -> "HomogeneousPoly":
        if isinstance(other, HomogeneousPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return HomogeneousPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        deg = self._check_compatible(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return HomogeneousPoly._raw(self.nvars, deg, out)

    __radd__ = __add__

    def __neg__(self) -> "HomogeneousPoly":
        return HomogeneousPoly._raw(self.nvars, self.degree, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "HomogeneousPoly":
        f = as_fraction(factor)
        if not f:
            return HomogeneousPoly.zero(self.nvars, self.degree)
        return HomogeneousPoly._raw(self.nvars, self.degree, {e: c * f for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return HomogeneousPoly._raw(
            self.nvars, self.degree + other.degree, {e: c for e, c in out.items() if c}
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / as_fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "HomogeneousPoly":
        if k < 0:
            raise ValueError("negative powers are not forms")
        result = HomogeneousPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- evaluation ---------------------------------------------------

    def __call__(self, point: Sequence) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, form has {self.nvars} variables")
        pt = [as_fraction(v) for v in point]
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for v, a in zip(pt, exp):
                if a:
                    term *= v**a
            total += term
        return total

    def evaluator(self) -> Callable[[Sequence[int]], Fraction]:
        """Fast evaluator for integer points.

        Coefficients are put over a common denominator once, so each call
        is pure integer arithmetic followed by a single Fraction.
        """
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        plan = [
            (int(c * den), [(i, a) for i, a in enumerate(exp) if a])
            for exp, c in self._terms.items()
        ]

        def evaluate_int(point: Sequence[int]) -> Fraction:
            total = 0
            for c, factors in plan:
                for i, a in factors:
                    c *= point[i] ** a
                total += c
            return Fraction(total, den)

        return evaluate_int

    # -- calculus -----------------------------------------------------

    def partial(self, index: int) -> "HomogeneousPoly":
        if not 0 <= index < self.nvars:
            raise IndexError(f"variable index {index} out of range")
        if self.degree == 0:
            return HomogeneousPoly.zero(self.nvars, 0)
        out = {}
        for exp, c in self._terms.items():
            a = exp[index]
            if a:
                e = list(exp)
                e[index] -= 1
                out[tuple(e)] = c * a
        return HomogeneousPoly._raw(self.nvars, self.degree - 1, out)

    def gradient(self) -> list["HomogeneousPoly"]:
        return [self.partial(i) for i in range(self.nvars)]

    def directional_derivative(self, u: Sequence, k: int = 1) -> "HomogeneousPoly":
        """``D_u^k p``; the zero form of degree 0 once k exceeds the degree."""
        if k < 0:
            raise ValueError("derivative order must be nonnegative")
        if len(u) != self.nvars:
            raise ValueError(f"direction has {len(u)} coordinates, form has {self.nvars} variables")
        if k > self.degree:
            return HomogeneousPoly.zero(self.nvars, 0)
        u = as_vector(u)
        result = self
        for _ in range(k):
            acc = HomogeneousPoly.zero(self.nvars, result.degree - 1 if result.degree else 0)
            for i, ui in enumerate(u):
                if ui:
                    acc = acc + result.partial(i).scale(ui)
            result = acc
        return result

    def hessian(self) -> list[list["HomogeneousPoly"]]:
        grad = self.gradient()
        return [[g.partial(j) for j in range(self.nvars)] for g in grad]

    # -- structure ----------------------------------------------------

    def gram_matrix(self) -> list[list[Fraction]]:
        """Symmetric G with ``q(x) = x^T G x`` (quadratic forms only)."""
        if self.degree != 2 and self._terms:
            raise ValueError(f"gram_matrix needs a quadratic form, got degree {self.degree}")
        n = self.nvars
        G = [[Fraction(0)] * n for _ in range(n)]
        for exp, c in self._terms.items():
            idx = [i for i, a in enumerate(exp) for _ in range(a)]
            i, j = idx
            if i == j:
                G[i][i] += c
            else:
                G[i][j] += c / 2
                G[j][i] += c / 2
        return G

    def linear_coefficients(self) -> list[Fraction]:
        if self.degree != 1 and self._terms:
            raise ValueError(f"expected a linear form, got degree {self.degree}")
        out = [Fraction(0)] * self.nvars
        for exp, c in self._terms.items():
            out[exp.index(1)] = c
        return out

    def embed(self, nvars: int) -> "HomogeneousPoly":
        """Same form, viewed in more variables (new ones appended)."""
        if nvars < self.nvars:
            raise ValueError("can only embed into at least as many variables")
        pad = (0,) * (nvars - self.nvars)
        return HomogeneousPoly._raw(nvars, self.degree, {e + pad: c for e, c in self._terms.items()})

    def compose(self, phi: Sequence["HomogeneousPoly"]) -> "HomogeneousPoly":
        return compose(self, phi)


def directional_derivative(p: HomogeneousPoly, u: Sequence, k: int = 1) -> HomogeneousPoly:
    return p.directional_derivative(u, k)


def check_polymap(phi: Sequence[HomogeneousPoly]) -> tuple[int, int]:
    """Return (nvars, degree) of a polynomial map, checking it is consistent."""
    if not phi:
        raise ValueError("a polynomial map needs at least one component")
    nvars = phi[0].nvars
    degs = {c.degree for c in phi if not c.is_zero()}
    if any(c.nvars != nvars for c in phi):
        raise ValueError("components of a polynomial map must share their variables")
    if len(degs) > 1:
        raise ValueError(f"components of a polynomial map have mixed degrees {sorted(degs)}")
    degree = degs.pop() if degs else max(c.degree for c in phi)
    return nvars, degree


def compose(p: HomogeneousPoly, phi: Sequence[HomogeneousPoly]) -> HomogeneousPoly:
    """``p(phi(x))`` for a map phi of forms of a common degree k.

    The result lies in ``F_{m', deg p * k}`` even when it vanishes.
    """
    if len(phi) != p.nvars:
        raise ValueError(f"map has {len(phi)} components but p has {p.nvars} variables")
    nvars, k = check_polymap(phi)
    powers: dict[tuple[int, int], HomogeneousPoly] = {}

    def power(i: int, a: int) -> HomogeneousPoly:
        key = (i, a)
        if key not in powers:
            powers[key] = phi[i] if a == 1 else power(i, a - 1) * phi[i]
        return powers[key]

    out: dict[Exponent, Fraction] = {}
    for exp, c in p._terms.items():
        term = HomogeneousPoly.constant(nvars, c)
        for i, a in enumerate(exp):
            if a:
                term = term * power(i, a)
                if term.is_zero():
                    break
        for e, tc in term._terms.items():
            out[e] = out.get(e, 0) + tc
    return HomogeneousPoly._raw(nvars, p.degree * k, {e: c for e, c in out.items() if c})


def identity_map(n: int) -> list[HomogeneousPoly]:
    return [HomogeneousPoly.variable(n, i) for i in range(n)]


def linear_map(matrix: Sequence[Sequence]) -> list[HomogeneousPoly]:
    """Components ``(M x)_i`` of a linear substitution."""
    return [HomogeneousPoly.linear(row) for row in matrix]
