"""Exact and modular rank / nullspace computations.

Exact mode is sparse Gaussian elimination over the rationals with a
Markowitz-style pivot choice (sparsest column, then sparsest row), which
keeps fill-in low on the very structured systems used elsewhere in the
package.  Modular mode reduces the matrix modulo a few random primes and
eliminates densely with numpy; rank can only drop modulo p, so two
agreeing primes give the rank with overwhelming probability.
"""

from __future__ import annotations

import heapq
import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .poly import as_fraction
from .univariate import UPoly, sturm_count

SparseRow = dict  # column key -> nonzero value

#: numpy int64 elimination is exact for primes below 2**31 (products fit in 62 bits)
INT64_PRIME_LIMIT = 2**31


class ModularEscalationError(RuntimeError):
    """Modular ranks kept disagreeing; the caller should switch to exact mode."""

    def __init__(self, ranks: Mapping[int, int]):
        self.ranks = dict(ranks)
        super().__init__(f"modular ranks disagree across primes: {self.ranks}; rerun in exact mode")


@dataclass(frozen=True)
class Modular:
    """Modular rank mode.  ``primes=None`` draws random primes of ``bits`` bits."""

    primes: tuple[int, ...] | None = None
    count: int = 2
    bits: int = 61
    seed: int = 0


@dataclass(frozen=True)
class RankResult:
    rank: int
    confidence: str  # "exact", "modular-agree" or "modular-escalated"
    primes: tuple[int, ...] = ()
    ranks_mod_p: dict = field(default_factory=dict)


def thread_count() -> int:
    """Worker threads for independent computations (``HYPERWRON_THREADS``)."""
    raw = os.environ.get("HYPERWRON_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# -- primes -------------------------------------------------------------


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:  # deterministic for n < 3.3e24
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_primes(count: int, bits: int, rng: random.Random) -> list[int]:
    out: list[int] = []
    while len(out) < count:
        cand = rng.randrange(2 ** (bits - 1), 2**bits) | 1
        if is_probable_prime(cand) and cand not in out:
            out.append(cand)
    return out


# -- exact sparse elimination -------------------------------------------


class SparseEliminator:
    """Row-reduce sparse rows, keeping pivot rows for back substitution.

    ``pivot_columns`` restricts which columns may be pivots (others are
    carried along, e.g. to track row combinations).
    """

    def __init__(self, rows: Iterable[Mapping], pivot_columns=None):
        self.rows: dict[int, dict] = {}
        for i, row in enumerate(rows):
            r = {c: as_fraction(v) for c, v in row.items() if v}
            if r:
                self.rows[i] = r
        self.allowed = None if pivot_columns is None else set(pivot_columns)
        self.pivots: list[tuple[Hashable, dict]] = []
        self.leftover: list[dict] = []  # rows with no pivotable entries left

    def run(self) -> "SparseEliminator":
        colrows: dict = {}
        for i, r in self.rows.items():
            for c in r:
                if self.allowed is None or c in self.allowed:
                    colrows.setdefault(c, set()).add(i)
        heap = [(len(s), repr(c), c) for c, s in colrows.items()]
        heapq.heapify(heap)
        active = self.rows
        while heap:
            n, _, c = heapq.heappop(heap)
            rows_c = colrows.get(c)
            if not rows_c:
                continue
            if n != len(rows_c):
                heapq.heappush(heap, (len(rows_c), repr(c), c))
                continue
            piv = min(rows_c, key=lambda i: (len(active[i]), i))
            prow = active.pop(piv)
            for cc in prow:
                s = colrows.get(cc)
                if s is not None:
                    s.discard(piv)
            pval = prow[c]
            for i in list(rows_c):
                row = active[i]
                f = row[c] / pval
                for cc, v in prow.items():
                    nv = row.get(cc, 0) - f * v
                    tracked = self.allowed is None or cc in self.allowed
                    if nv:
                        if cc not in row and tracked:
                            colrows.setdefault(cc, set()).add(i)
                            heapq.heappush(heap, (len(colrows[cc]), repr(cc), cc))
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
                        if tracked:
                            colrows[cc].discard(i)
            del colrows[c]
            self.pivots.append((c, prow))
        self.leftover = [r for r in active.values() if r]
        return self

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def nullspace(self, columns: Sequence) -> list[dict]:
        """Basis of the kernel, one vector per non-pivot column (as dicts)."""
        pivot_cols = {c for c, _ in self.pivots}
        basis = []
        for free in columns:
            if free in pivot_cols:
                continue
            x = {free: Fraction(1)}
            for c, row in reversed(self.pivots):
                s = sum((v * x.get(cc, 0) for cc, v in row.items() if cc != c), Fraction(0))
                if s:
                    x[c] = -s / row[c]
            basis.append({k: v for k, v in x.items() if v})
        return basis


def _dense_to_sparse(M: Sequence[Sequence]) -> list[dict]:
    return [{j: v for j, v in enumerate(row) if v} for row in M]


def rank_exact(M: Sequence[Sequence]) -> int:
    return SparseEliminator(_dense_to_sparse(M)).run().rank


def nullspace_basis(M: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Exact rational basis of ``{x : M x = 0}`` (empty list for trivial kernel)."""
    if ncols is None:
        if not M:
            raise ValueError("ncols is required for a matrix with no rows")
        ncols = len(M[0])
    if any(len(row) != ncols for row in M):
        raise ValueError("ragged matrix")
    elim = SparseEliminator(_dense_to_sparse(M)).run()
    vecs = elim.nullspace(range(ncols))
    return [tuple(v.get(j, Fraction(0)) for j in range(ncols)) for v in vecs]


# -- modular elimination -----------------------------------------------


def _to_mod_p(M: Sequence[Sequence], p: int) -> list[list[int]]:
    out = []
    for row in M:
        r = []
        for v in row:
            v = as_fraction(v)
            if v.denominator % p == 0:
                raise ZeroDivisionError(f"prime {p} divides a denominator")
            r.append(v.numerator * pow(v.denominator, -1, p) % p)
        out.append(r)
    return out


def rank_mod_p(M, p: int) -> int:
    """Rank of an integer matrix (already reduced or not) modulo a prime.

    Uses int64 arithmetic when ``p < 2**31`` and Python integers otherwise.
    """
    dtype = np.int64 if p < INT64_PRIME_LIMIT else object
    A = np.array(M, dtype=dtype)
    if A.size == 0:
        return 0
    A %= p
    nrows, ncols = A.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = A[r, c:] * inv % p
        below = r + 1 + np.flatnonzero(A[r + 1:, c])
        if below.size:
            factors = A[below, c].reshape(-1, 1)
            A[below, c:] = (A[below, c:] - factors * A[r, c:]) % p
        r += 1
    return r


def matrix_rank(M: Sequence[Sequence], mode="exact") -> RankResult:
    """Rank of a rational matrix, exactly or modulo random primes.

    ``mode`` is ``"exact"``, ``"modular"`` or a :class:`Modular` instance.
    """
    if mode == "exact":
        return RankResult(rank_exact(M), "exact")
    if mode == "modular":
        mode = Modular()
    if not isinstance(mode, Modular):
        raise ValueError(f"unknown rank mode {mode!r}")
    rng = random.Random(mode.seed)
    primes = list(mode.primes) if mode.primes else random_primes(mode.count, mode.bits, rng)

    def one(p: int) -> int:
        return rank_mod_p(_to_mod_p(M, p), p)

    return modular_consensus(one, primes, rng, bits=mode.bits)


def modular_consensus(rank_fn, primes: Sequence[int], rng: random.Random, bits: int = 61) -> RankResult:
    """Evaluate ``rank_fn`` at several primes and insist on agreement.

    A disagreement triggers one extra prime; if the maximum rank is then
    confirmed it is reported as ``modular-escalated``, else
    :class:`ModularEscalationError` is raised.
    """
    primes = list(primes)
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        ranks = dict(zip(primes, pool.map(rank_fn, primes)))
    if len(set(ranks.values())) == 1:
        return RankResult(next(iter(ranks.values())), "modular-agree", tuple(primes), ranks)
    extra = random_primes(1, bits, rng)[0]
    while extra in ranks:
        extra = random_primes(1, bits, rng)[0]
    ranks[extra] = rank_fn(extra)
    best = max(ranks.values())
    if sum(1 for r in ranks.values() if r == best) >= 2:
        return RankResult(best, "modular-escalated", tuple(ranks), ranks)
    raise ModularEscalationError(ranks)


# -- small dense helpers -------------------------------------------------


def charpoly(M: Sequence[Sequence]) -> UPoly:
    """Characteristic polynomial ``det(t I - M)`` (Faddeev-LeVerrier)."""
    n = len(M)
    A = [[as_fraction(v) for v in row] for row in M]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum((A[i][l] * Mk[l][j] for l in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += c
        Mk = prod
        AM = [[sum((A[i][l] * Mk[l][j] for l in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]
        c = -sum((AM[i][i] for i in range(n)), Fraction(0)) / k
        coeffs[n - k] = c
    return UPoly(coeffs)


def is_psd_exact(M: Sequence[Sequence]) -> bool:
    """Symmetric rational M is PSD iff its characteristic polynomial has no negative root."""
    n = len(M)
    for i in range(n):
        for j in range(i):
            if as_fraction(M[i][j]) != as_fraction(M[j][i]):
                raise ValueError("PSD test needs a symmetric matrix")
    if n == 0:
        return True
    return sturm_count(charpoly(M), None, 0) == 0


def det(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    A = [[as_fraction(v) for v in row] for row in M]
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            out = -out
        out *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return out


def lcm_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for v in values:
        out = out * v.denominator // math.gcd(out, v.denominator)
    return out
