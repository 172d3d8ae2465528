"""Verification reports: named checks plus a single RESULT trailer."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

PASS = "PASS"
FAIL = "FAIL"
SAMPLED_OK = "SAMPLED-OK"
INFO = "INFO"


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""

    def line(self) -> str:
        out = f"{self.name:<20} {self.status}"
        return out + (f"  {self.detail}" if self.detail else "")


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, name: str, status: str, detail: str = "") -> Check:
        chk = Check(name, status, detail)
        self.checks.append(chk)
        return chk

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def failed_checks(self) -> list[str]:
        return [c.name for c in self.checks if c.status == FAIL]

    def status_of(self, name: str) -> str | None:
        return next((c.status for c in self.checks if c.name == name), None)

    def render(self) -> str:
        lines = [f"== {self.title} =="]
        lines += [f"{k}: {v}" for k, v in self.meta.items()]
        lines += [c.line() for c in self.checks]
        lines.append(f"RESULT: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.render()


def integer_points(n: int, count: int, seed: int, bound: int = 20) -> Iterator[tuple[int, ...]]:
    """Seeded integer sample points, never the origin.

    For sign checks of forms integer points lose nothing: a rational
    point is a positive multiple of an integer one.
    """
    rng = random.Random(seed)
    made = 0
    while made < count:
        pt = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(pt):
            made += 1
            yield pt
