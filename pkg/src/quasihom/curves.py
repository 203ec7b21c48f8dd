"""(-1)-curves that can meet a quasi-homogeneous system negatively.

A (-1)-class satisfies E^2 = E.K = -1. For E = L(d, m0, m^r) those two
equations reduce, with x = 2d - 3m and y = 2m0 - m, to
x^2 - y^2 = 4(2m^2 - m - 1), which has finitely many solutions for m >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .divisors import DivisorClass, QuasiHomSystem, intersect, k_pairing
from .tables import Affine, load_table


def is_minus_one(cls: DivisorClass) -> bool:
    return intersect(cls, cls) == -1 and k_pairing(cls) == -1


@dataclass(frozen=True)
class MinusOneCurve:
    cls: DivisorClass

    def __post_init__(self):
        if not is_minus_one(self.cls):
            raise ValueError(f"{self.cls} is not a (-1)-class")


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [k for k in range(1, int(n**0.5) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def enumerate_qh_curves(m: int) -> list[QuasiHomSystem]:
    """All quasi-homogeneous (-1)-classes L(d, m0, m^r) with d >= 1, m0 >= 0."""
    if m <= 1:
        raise ValueError("m <= 1 gives infinite families; use table1_catalog()")
    n = 4 * (2 * m * m - m - 1)
    found = set()
    for s in _divisors(n):
        for sign in (1, -1):
            lo, hi = sign * s, sign * (n // s)  # lo = x - y, hi = x + y
            if (lo + hi) % 2:
                continue
            x, y = (lo + hi) // 2, (hi - lo) // 2
            if (x + 3 * m) % 2 or (y + m) % 2:
                continue
            d, m0 = (x + 3 * m) // 2, (y + m) // 2
            if d < 1 or m0 < 0 or (3 * d - m0 - 1) % m:
                continue
            r = (3 * d - m0 - 1) // m
            if r < 0:
                continue
            qh = QuasiHomSystem(d, m0, m, r)
            if is_minus_one(qh.to_class()):
                found.add(qh)
    return sorted(found, key=lambda q: (q.d, q.m0))


@dataclass(frozen=True)
class CurveFamily:
    """A catalog row; ``params`` is empty for a single curve, ``("e",)`` otherwise."""

    label: str
    params: tuple[str, ...]
    template: tuple[tuple[str, Affine], ...]  # d, m0, m, r

    @property
    def kind(self) -> str:
        return "parametrized-by-e" if self.params else "fixed"

    def instantiate(self, e: int | None = None) -> QuasiHomSystem:
        if self.params and (e is None or e < 1):
            raise ValueError(f"{self.label} needs an integer e >= 1")
        env = {"e": e} if self.params else {}
        t = dict(self.template)
        return QuasiHomSystem(t["d"](env), t["m0"](env), t["m"](env), t["r"](env))


@dataclass(frozen=True)
class CompoundCurve:
    base: MinusOneCurve
    copies: int
    total: DivisorClass


@dataclass(frozen=True)
class CompoundFamily:
    """E_tot for a base L(d, m0, m+shift, m^(r-1)) summed over its r placements."""

    label: str
    params: tuple[str, ...]
    copies: Affine
    base_d: int
    base_m0: int
    base_m: int
    shift: int
    total: tuple[tuple[str, Affine], ...]

    def instantiate(self, e: int | None = None) -> CompoundCurve:
        env = {"e": e} if self.params else {}
        r = self.copies(env)
        base = DivisorClass(self.base_d, (self.base_m0, self.base_m + self.shift) + (self.base_m,) * (r - 1))
        t = dict(self.total)
        total = QuasiHomSystem(t["d"](env), t["m0"](env), t["m"](env), t["r"](env)).to_class()
        return CompoundCurve(MinusOneCurve(base), r, total)


def _template(spec: dict) -> tuple[tuple[str, Affine], ...]:
    return tuple((key, Affine.parse(spec[key])) for key in ("d", "m0", "m", "r"))


def table1_catalog() -> list[tuple[CurveFamily, CompoundFamily | None]]:
    rows = []
    for row in load_table(1)["rows"]:
        family = CurveFamily(row["label"], tuple(row["params"]), _template(row["curve"]))
        compound = None
        if row["compound"]:
            c = row["compound"]
            b = c["base"]
            compound = CompoundFamily(
                c["label"],
                tuple(c["params"]),
                Affine.parse(c["copies"]),
                int(b["d"]),
                int(b["m0"]),
                int(b["m"]),
                int(b["shift"]),
                _template(c["total"]),
            )
        rows.append((family, compound))
    return rows


def placements_sum(base: DivisorClass) -> DivisorClass:
    """Sum of all distinct permutations of the base's non-m0 multiplicities."""
    head, rest = base.mults[:1], base.mults[1:]
    total = DivisorClass(0, (0,) * len(base.mults))
    for perm in sorted(set(permutations(rest))):
        total = total + DivisorClass(base.degree, head + perm)
    return total


def orthogonality_violations(
    curves: list[MinusOneCurve], system: DivisorClass
) -> list[tuple[MinusOneCurve, MinusOneCurve]]:
    """Pairs of distinct curves in the base locus of ``system`` that meet."""
    if len(set(curves)) != len(curves):
        raise ValueError("curves must be distinct")
    for c in curves:
        if intersect(system, c.cls) >= 0:
            raise ValueError(f"{c.cls} does not meet {system} negatively")
    return [(a, b) for a, b in combinations(curves, 2) if intersect(a.cls, b.cls) != 0]
