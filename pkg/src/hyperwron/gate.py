"""Dimension-counting gates.

Hyperwrons of a given degree profile are images of a space whose
dimension is a sum of binomial coefficients.  When ``dim F_{m,2y}``
beats every such count, the images of all profiles are proper subsets
(with the sum-of-squares case handled separately), so *not every*
nonnegative form of degree 2y in m variables is a hyperwron (resp.
hyperzout).  These functions evaluate the counts exactly with integer
binomials, plus the closed-form polynomial differences for m = 4, 5.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb


def omega_W(y: int) -> list[tuple[int, int]]:
    """Profiles (d, k) with ``(d - 1) k = y``, d >= 2."""
    if y < 1:
        raise ValueError("y must be positive")
    return sorted(((y // k + 1, k) for k in range(1, y + 1) if y % k == 0))


def omega_W_tilde(y: int) -> list[tuple[int, int]]:
    """omega_W without the d = 2 (sum of squares) profile."""
    return [(d, k) for d, k in omega_W(y) if d != 2]


def omega_B_tilde(y: int) -> list[tuple[int, int, int]]:
    """Profiles (d, k, mu) with mu >= 3, ``(mu - 1) k = y`` and ``mu <= d <= 2 mu - 3``."""
    if y < 1:
        raise ValueError("y must be positive")
    out = []
    for k in range(1, y + 1):
        if y % k:
            continue
        mu = y // k + 1
        if mu < 3:
            continue
        out.extend((d, k, mu) for d in range(mu, 2 * mu - 2))
    return sorted(out)


@dataclass(frozen=True)
class OmegaB:
    profiles: list[tuple[int, int, int]]
    truncated: bool  # the mu = 2 branch is infinite in d and was cut at d_max


def omega_B(y: int, d_max: int | None = None) -> OmegaB:
    """All hyperzout profiles; the mu = 2 branch is unbounded and needs ``d_max``."""
    if d_max is None:
        raise ValueError("omega_B has an infinite mu = 2 branch; pass d_max")
    mu2 = [(d, y, 2) for d in range(2, d_max + 1)]
    return OmegaB(sorted(mu2 + omega_B_tilde(y)), truncated=True)


def wronskian_rhs(m: int, d: int, k: int) -> int:
    """Dimension count for the hyperwron profile (d, k)."""
    return (
        2 * comb(m + (d - 1) * k - 1, (d - 1) * k)
        + comb(m + d * k - 1, d * k)
        + comb(m + (d - 2) * k - 1, (d - 2) * k)
    )


def bezoutian_rhs(m: int, d: int, k: int, mu: int) -> int:
    """Dimension count for the hyperzout profile (d, k, mu)."""

    def layered(top: int) -> int:
        return sum(comb(m + i * k - 1, m - 1) for i in range(top + 1))

    return layered(mu - 1) + layered(d) + layered(d - 1)


def gate_applicable(m: int, y: int) -> bool:
    return m > 2 and y > 1 and (m, 2 * y) != (3, 4)


@dataclass(frozen=True)
class GateReport:
    m: int
    y: int
    lhs: int
    rows: tuple[tuple[tuple[int, ...], int], ...]  # (profile, rhs)
    applicable: bool
    vacuous: bool = False

    @property
    def max_rhs(self) -> int:
        return max((r for _, r in self.rows), default=0)

    @property
    def inequality_holds(self) -> bool:
        """Raw count comparison ``lhs > max rhs`` (reported even when inapplicable)."""
        return self.lhs > self.max_rhs

    @property
    def verdict(self) -> bool:
        """True only when the gate applies and the strict inequality holds."""
        return self.applicable and self.inequality_holds

    @property
    def margin(self) -> int:
        return self.lhs - self.max_rhs

    @property
    def argmax(self) -> tuple[int, ...] | None:
        if not self.rows:
            return None
        return max(self.rows, key=lambda r: r[1])[0]


def wronskian_gate(m: int, y: int) -> GateReport:
    if m < 1 or y < 1:
        raise ValueError("m and y must be positive")
    lhs = comb(2 * y + m - 1, 2 * y)
    rows = tuple(((d, k), wronskian_rhs(m, d, k)) for d, k in omega_W_tilde(y))
    return GateReport(m, y, lhs, rows, gate_applicable(m, y), vacuous=not rows)


def bezoutian_gate(m: int, y: int) -> GateReport:
    if m < 1 or y < 1:
        raise ValueError("m and y must be positive")
    lhs = comb(2 * y + m - 1, 2 * y)
    rows = tuple(((d, k, mu), bezoutian_rhs(m, d, k, mu)) for d, k, mu in omega_B_tilde(y))
    return GateReport(m, y, lhs, rows, gate_applicable(m, y), vacuous=not rows)


def wronskian_rhs_yk(m: int, y: int, k: int) -> int:
    """The profile count rewritten in (y, k) via ``dk = y + k`` and ``(d-2) k = y - k``."""
    return 2 * comb(y + m - 1, m - 1) + comb(y + k + m - 1, m - 1) + comb(y - k + m - 1, m - 1)


def g_binomial(m: int, k: int, y: int) -> int:
    """``dim F_{m,2y}`` minus the profile count, as binomials."""
    return comb(2 * y + m - 1, m - 1) - wronskian_rhs_yk(m, y, k)


def closed_form_g(m: int, k, y) -> Fraction:
    """Polynomial closed form of :func:`g_binomial` for m = 4 and m = 5 (k may be rational, e.g. y/2)."""
    k = Fraction(k)
    y = Fraction(y)
    if m == 4:
        return 2 * y**3 / 3 - k**2 * y - 11 * y / 3 - 2 * k**2 - 3
    if m == 5:
        return (
            y**4 / 2 + 5 * y**3 / 3 - k**2 * y**2 / 2 - 5 * k**2 * y / 2 - 25 * y / 6
            - k**4 / 12 - 35 * k**2 / 12 - 3
        )
    raise ValueError(f"closed forms exist only for m in {{4, 5}}, got m = {m}")


def binom_ratio_lemma_check(l_small: int, l_big: int, alpha: int, beta: int) -> tuple[bool, bool]:
    """Both ratio inequalities for ``F(l, a) = C(l + a, l)``; needs 1 <= l' < l and 0 <= a < b."""
    if not (1 <= l_small < l_big) or not (0 <= alpha < beta):
        raise ValueError("need 1 <= l' < l and 0 <= alpha < beta")

    def F(l: int, a: int) -> int:
        return comb(l + a, l)

    first = Fraction(F(l_small, alpha), F(l_small, beta)) < 1
    second = Fraction(F(l_small, alpha), F(l_big, alpha)) > Fraction(F(l_small, beta), F(l_big, beta))
    return first, second


def known_wronskian_region(m: int, y: int) -> bool:
    """Where the hyperwron gate is known to succeed."""
    return (m == 4 and y >= 4) or (m == 5 and y >= 3) or (m >= 6 and y >= 2)


def hyperzout_variable_bound(y: int) -> int:
    """Variable count beyond which the hyperzout gate succeeds for a given y."""
    return 10 * y * y - 2 * y + 1


def gate_table(m_range: range, y_range: range, bezoutian: bool = False) -> list[GateReport]:
    fn = bezoutian_gate if bezoutian else wronskian_gate
    return [fn(m, y) for m in m_range for y in y_range]


def format_gate_table(reports: list[GateReport], tsv: bool = False) -> str:
    header = ["m", "2y", "lhs", "argmax", "max_rhs", "margin", "applicable", "verdict"]
    sep = "\t" if tsv else "  "
    rows = [header]
    for r in reports:
        rows.append([
            str(r.m), str(2 * r.y), str(r.lhs),
            "-" if r.argmax is None else "(" + ",".join(map(str, r.argmax)) + ")",
            str(r.max_rhs), str(r.margin), "yes" if r.applicable else "no",
            "TRUE" if r.verdict else "FALSE",
        ])
    if tsv:
        return "\n".join(sep.join(row) for row in rows)
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    return "\n".join(sep.join(c.rjust(w) for c, w in zip(row, widths)) for row in rows)
