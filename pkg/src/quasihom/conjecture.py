"""Conjectural dimension of a linear system and the speciality scan.

The dimension is obtained by reducing the class to standard form with
quadratic transformations. Whenever some multiplicity goes negative the
corresponding exceptional curve lies in the base locus and is removed by
clamping that multiplicity to zero. A standard class (degree at least the
sum of the three largest multiplicities) is predicted non-special.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .divisors import (
    DimensionReport,
    DivisorClass,
    QuasiHomSystem,
    cremona_step,
    expected_dim,
    virtual_dim,
)


@dataclass(frozen=True)
class ReductionStep:
    input: DivisorClass
    clamped: tuple[int, ...]
    c: int


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    terminal: str  # "standard" or "empty-negative-degree"
    standard: DivisorClass | None
    conjectured: int

    def as_dict(self) -> dict:
        return {
            "steps": [
                {"input": [s.input.degree, list(s.input.mults)], "clamped": list(s.clamped), "c": s.c}
                for s in self.steps
            ],
            "terminal": self.terminal,
            "standard": None if self.standard is None else [self.standard.degree, list(self.standard.mults)],
            "conjectured": self.conjectured,
        }


STANDARD = "standard"
EMPTY_NEGATIVE_DEGREE = "empty-negative-degree"


def conjectured_dim(cls: DivisorClass) -> ReductionTrace:
    if any(m < 0 for m in cls.mults):
        raise ValueError(f"negative multiplicity in input {cls}")
    steps: list[ReductionStep] = []
    cur = cls
    while True:
        clamped = tuple(i for i, m in enumerate(cur.mults) if m < 0)
        work = cur.clamped().sorted_desc().padded(3)
        if work.degree < 0:
            return ReductionTrace(tuple(steps), EMPTY_NEGATIVE_DEGREE, None, -1)
        c = work.degree - sum(work.mults[:3])
        if c >= 0:
            std = cur.clamped().sorted_desc()
            return ReductionTrace(tuple(steps), STANDARD, std, max(virtual_dim(std), -1))
        steps.append(ReductionStep(cur, clamped, c))
        cur, _ = cremona_step(work)


def conjectured_value(degree: int, groups: Mapping[int, int]) -> int:
    """Same reduction as ``conjectured_dim`` on a multiset ``{mult: count}``.

    Only the conjectured dimension is returned; this is the path used by
    sweeps, where classes carry hundreds of equal multiplicities.
    """
    d = degree
    g = Counter({m: n for m, n in groups.items() if m > 0 and n > 0})
    while True:
        if d < 0:
            return -1
        top: list[int] = []
        for m in sorted(g, reverse=True):
            top.extend([m] * min(g[m], 3 - len(top)))
            if len(top) == 3:
                break
        c = d - sum(top)
        if c >= 0:
            v = d * (d + 3) // 2 - sum(n * m * (m + 1) // 2 for m, n in g.items())
            return max(v, -1)
        for m in top:
            g[m] -= 1
            if not g[m]:
                del g[m]
        for m in top:
            if m + c > 0:
                g[m + c] += 1
        d += c


def class_conjectured(cls: DivisorClass) -> int:
    return conjectured_value(cls.degree, Counter(cls.mults))


@lru_cache(maxsize=1 << 18)
def _qh_reduce(d: int, m0: int, m: int, r: int) -> int:
    groups = Counter({m: r})
    groups[m0] += 1
    return conjectured_value(d, groups)


def qh_conjectured(d: int, m0: int, m: int, r: int) -> int:
    """Conjectured dimension of L(d, m0, m^r).

    Classes already in standard form are answered directly; the rest go
    through a memoised reduction.
    """
    if d < 0:
        return -1
    top = sorted((m0,) + (m,) * min(r, 3), reverse=True)[:3]
    if d >= sum(top):
        v = d * (d + 3) // 2 - m0 * (m0 + 1) // 2 - r * m * (m + 1) // 2
        return max(v, -1)
    return _qh_reduce(d, m0, m, r)


def is_special(cls: DivisorClass) -> bool:
    return conjectured_dim(cls).conjectured > expected_dim(cls)


def dimension_report(cls: DivisorClass, oracle: int | None = None) -> DimensionReport:
    v = virtual_dim(cls)
    return DimensionReport(v, max(v, -1), conjectured_dim(cls).conjectured, oracle)


@dataclass(frozen=True)
class SpecialSystemRecord:
    system: QuasiHomSystem
    virtual: int
    conjectured: int
    family: str = "unmatched"

    def as_dict(self) -> dict:
        return {
            **self.system.as_dict(),
            "virtual": self.virtual,
            "conjectured": self.conjectured,
            "family": self.family,
        }


def iter_qh(m: int, d_max: int, r_max: int, d_min: int = 0) -> Iterable[QuasiHomSystem]:
    for d in range(d_min, d_max + 1):
        for m0 in range(d + 1):
            for r in range(r_max + 1):
                yield QuasiHomSystem(d, m0, m, r)


def scan_special(m: int, d_max: int, r_max: int, label: bool = True) -> list[SpecialSystemRecord]:
    """All special L(d, m0, m^r) with 0 <= m0 <= d <= d_max and r <= r_max."""
    if m not in (2, 3, 4, 5):
        raise ValueError("multiplicity must be one of 2, 3, 4, 5")
    if d_max < 0 or r_max < 0:
        raise ValueError("bounds must be non-negative")
    labels: dict = {}
    if label and m != 4:
        from .tables import table_families

        labels = {f.system: f.label for f in table_families(m, d_max, r_max) if f.special}
    out = []
    for s in iter_qh(m, d_max, r_max):
        cls = s.to_class()
        l = conjectured_dim(cls).conjectured
        v = virtual_dim(cls)
        if l > max(v, -1):
            out.append(SpecialSystemRecord(s, v, l, labels.get(s, "unmatched")))
    out.sort(key=lambda rec: rec.system.key())
    return out
