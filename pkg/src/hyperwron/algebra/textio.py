"""Plain-text polynomial format.

::

    # anything after '#' is a comment
    poly m=2 deg=2
    1/1 [2,0]
    -3/2 [1,1]

One term per line, ``<num>/<den> [e1,...,em]``.  Output is in graded-lex
order; reading accepts any order and merges repeated monomials.
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .poly import HomogeneousPoly

_HEADER = re.compile(r"^poly\s+m=(\d+)\s+deg=(\d+)$")
_TERM = re.compile(r"^([+-]?\d+(?:/\d+)?)\s*\[([\d,\s]*)\]$")


class PolyFormatError(ValueError):
    pass


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def format_poly(p: HomogeneousPoly) -> str:
    lines = [f"poly m={p.nvars} deg={p.degree}"]
    for exp, c in p.items():
        lines.append(f"{c.numerator}/{c.denominator} [{','.join(map(str, exp))}]")
    return "\n".join(lines) + "\n"


def parse_polys(text: str) -> list[HomogeneousPoly]:
    """Parse one or more ``poly`` blocks."""
    blocks: list[tuple[int, int, list]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        head = _HEADER.match(line)
        if head:
            blocks.append((int(head.group(1)), int(head.group(2)), []))
            continue
        term = _TERM.match(line)
        if not term:
            raise PolyFormatError(f"line {lineno}: cannot parse {raw.strip()!r}")
        if not blocks:
            raise PolyFormatError(f"line {lineno}: term before any 'poly m=.. deg=..' header")
        m, d, terms = blocks[-1]
        try:
            exp = tuple(int(a) for a in term.group(2).split(",") if a.strip())
            coef = Fraction(term.group(1))
        except (ValueError, ZeroDivisionError) as exc:
            raise PolyFormatError(f"line {lineno}: {exc}") from exc
        if len(exp) != m:
            raise PolyFormatError(f"line {lineno}: exponent has {len(exp)} entries, header says m={m}")
        if sum(exp) != d:
            raise PolyFormatError(f"line {lineno}: monomial of degree {sum(exp)} in a deg={d} form")
        terms.append((exp, coef))
    if not blocks:
        raise PolyFormatError("no 'poly m=.. deg=..' header found")
    try:
        return [HomogeneousPoly(m, d, terms) for m, d, terms in blocks]
    except ValueError as exc:
        raise PolyFormatError(str(exc)) from exc


def parse_poly(text: str) -> HomogeneousPoly:
    polys = parse_polys(text)
    if len(polys) != 1:
        raise PolyFormatError(f"expected one polynomial, found {len(polys)}")
    return polys[0]


def read_poly(path) -> HomogeneousPoly:
    return parse_poly(Path(path).read_text())


def write_poly(path, p: HomogeneousPoly) -> None:
    Path(path).write_text(format_poly(p))
