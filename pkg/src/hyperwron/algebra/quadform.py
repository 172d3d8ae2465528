"""Congruence diagonalization of rational quadratic forms (Lagrange's method)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import HomogeneousPoly, as_fraction


@dataclass(frozen=True)
class QuadraticFormDiag:
    """``q(x) = sum_i diagonal[i] * forms[i](x)**2``.

    ``forms`` holds the coefficient rows L of the linear forms, and
    ``transform`` is ``P = L^{-1}``, so ``P^T G P = diag(diagonal)``
    where G is the Gram matrix of q.
    """

    transform: tuple[tuple[Fraction, ...], ...]
    diagonal: tuple[Fraction, ...]
    forms: tuple[tuple[Fraction, ...], ...]

    @property
    def signature(self) -> tuple[int, int, int]:
        pos = sum(1 for d in self.diagonal if d > 0)
        neg = sum(1 for d in self.diagonal if d < 0)
        return pos, neg, len(self.diagonal) - pos - neg

    def linear_forms(self) -> list[HomogeneousPoly]:
        return [HomogeneousPoly.linear(row) for row in self.forms]

    def column(self, i: int) -> tuple[Fraction, ...]:
        """The point ``P e_i``, where q takes the value ``diagonal[i]``."""
        return tuple(row[i] for row in self.transform)

    def reconstruct(self) -> HomogeneousPoly:
        n = len(self.diagonal)
        out = HomogeneousPoly.zero(n, 2)
        for d, form in zip(self.diagonal, self.linear_forms()):
            if d:
                out = out + (form * form).scale(d)
        return out


def _identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def diagonalize_gram(G: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Return (P, D) with ``P^T G P = diag(D)`` by symmetric elimination."""
    n = len(G)
    A = [[as_fraction(v) for v in row] for row in G]
    for i in range(n):
        if len(A[i]) != n:
            raise ValueError("Gram matrix must be square")
        for j in range(i):
            if A[i][j] != A[j][i]:
                raise ValueError("Gram matrix must be symmetric")
    P = _identity(n)

    def col_op(target: int, source: int, factor: Fraction) -> None:
        # column_target += factor * column_source, and the matching row op
        for r in range(n):
            A[r][target] += factor * A[r][source]
        for c in range(n):
            A[target][c] += factor * A[source][c]
        for r in range(n):
            P[r][target] += factor * P[r][source]

    def swap(i: int, j: int) -> None:
        for row in A:
            row[i], row[j] = row[j], row[i]
        A[i], A[j] = A[j], A[i]
        for row in P:
            row[i], row[j] = row[j], row[i]

    for k in range(n):
        pivot = next((i for i in range(k, n) if A[i][i]), None)
        if pivot is None:
            # all remaining diagonal entries vanish; make one nonzero via x_i += x_j
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if A[i][j]), None)
            if pair is None:
                break
            i, j = pair
            col_op(i, j, Fraction(1))
            pivot = i
        if pivot != k:
            swap(k, pivot)
        d = A[k][k]
        for j in range(k + 1, n):
            if A[k][j]:
                col_op(j, k, -A[k][j] / d)
    return P, [A[i][i] for i in range(n)]


def invert(M: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[as_fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [v * inv for v in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A]


def lagrange_diagonalize(q: HomogeneousPoly) -> QuadraticFormDiag:
    """Write a quadratic form as a weighted sum of squares of independent linear forms."""
    if q.degree != 2 and not q.is_zero():
        raise ValueError(f"lagrange_diagonalize needs a quadratic form, got degree {q.degree}")
    P, D = diagonalize_gram(q.gram_matrix())
    L = invert(P)
    return QuadraticFormDiag(
        transform=tuple(tuple(r) for r in P),
        diagonal=tuple(D),
        forms=tuple(tuple(r) for r in L),
    )


def signature(q: HomogeneousPoly) -> tuple[int, int, int]:
    return lagrange_diagonalize(q).signature
