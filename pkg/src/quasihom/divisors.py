"""Divisor classes on the blowup of the plane at general points.

A class is a degree together with a list of multiplicities. Pairings are
taken in the lattice with basis H, E_1, ..., E_r where H^2 = 1, E_i^2 = -1
and K = -3H + sum E_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterable, Sequence


@dataclass(frozen=True)
class DivisorClass:
    degree: int
    mults: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))

    def __str__(self):
        return f"L({self.degree}; {', '.join(map(str, self.mults))})"

    @property
    def num_points(self) -> int:
        return len(self.mults)

    def padded(self, n: int) -> DivisorClass:
        if len(self.mults) >= n:
            return self
        return DivisorClass(self.degree, self.mults + (0,) * (n - len(self.mults)))

    def clamped(self) -> DivisorClass:
        """Replace negative multiplicities by zero."""
        return DivisorClass(self.degree, tuple(max(m, 0) for m in self.mults))

    def sorted_desc(self) -> DivisorClass:
        return DivisorClass(self.degree, tuple(sorted(self.mults, reverse=True)))

    def canonical(self) -> DivisorClass:
        """Sorted descending with zero multiplicities dropped."""
        return DivisorClass(self.degree, tuple(sorted((m for m in self.mults if m), reverse=True)))

    def __add__(self, other: DivisorClass) -> DivisorClass:
        return DivisorClass(
            self.degree + other.degree,
            tuple(a + b for a, b in zip_longest(self.mults, other.mults, fillvalue=0)),
        )

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        return self + (-1) * other

    def __rmul__(self, t: int) -> DivisorClass:
        return DivisorClass(t * self.degree, tuple(t * m for m in self.mults))


def L(degree: int, *mults: int) -> DivisorClass:
    """Shorthand constructor: ``L(8, 0, 5, 5)`` is L(8; 0, 5, 5)."""
    return DivisorClass(degree, mults)


def from_groups(degree: int, groups: Iterable[tuple[int, int]]) -> DivisorClass:
    """Build a class from ``(multiplicity, count)`` pairs, e.g. ``[(0, 1), (5, 3)]``."""
    mults: list[int] = []
    for m, count in groups:
        mults.extend([m] * count)
    return DivisorClass(degree, tuple(mults))


@dataclass(frozen=True)
class QuasiHomSystem:
    """L(d, m0, m^r): one point of multiplicity m0 and r points of multiplicity m."""

    d: int
    m0: int
    m: int
    r: int

    def __post_init__(self):
        if min(self.d, self.m0, self.m, self.r) < 0:
            raise ValueError(f"negative entry in {self!r}")

    def to_class(self) -> DivisorClass:
        return DivisorClass(self.d, (self.m0,) + (self.m,) * self.r)

    def key(self) -> tuple[int, int, int, int]:
        return (self.d, self.m0, self.m, self.r)

    def __str__(self):
        return f"L({self.d},{self.m0},{self.m}^{self.r})"

    def as_dict(self) -> dict:
        return {"d": self.d, "m0": self.m0, "m": self.m, "r": self.r}


@dataclass(frozen=True)
class DimensionReport:
    virtual: int
    expected: int
    conjectured: int
    oracle: int | None = None

    @property
    def special(self) -> bool:
        return self.conjectured > self.expected

    def as_dict(self) -> dict:
        out = {
            "virtual": self.virtual,
            "expected": self.expected,
            "conjectured": self.conjectured,
            "special": self.special,
        }
        if self.oracle is not None:
            out["oracle"] = self.oracle
        return out


def _conditions(m: int) -> int:
    return m * (m + 1) // 2 if m > 0 else 0


def virtual_dim(cls: DivisorClass) -> int:
    """d(d+3)/2 minus m(m+1)/2 per point; negative multiplicities impose nothing."""
    d = cls.degree
    return d * (d + 3) // 2 - sum(_conditions(m) for m in cls.mults)


def expected_dim(cls: DivisorClass) -> int:
    return max(virtual_dim(cls), -1)


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    return a.degree * b.degree - sum(
        x * y for x, y in zip_longest(a.mults, b.mults, fillvalue=0)
    )


def k_pairing(cls: DivisorClass) -> int:
    """L.K with K = -3H + sum E_i."""
    return -3 * cls.degree + sum(cls.mults)


def rr_dim(cls: DivisorClass) -> int:
    """(L^2 - L.K)/2 with no clamping.

    Agrees with ``virtual_dim`` whenever every multiplicity is >= -1, and is
    the quantity the Cremona map preserves exactly.
    """
    return (intersect(cls, cls) - k_pairing(cls)) // 2


def residual(cls: DivisorClass, curve: DivisorClass, t: int) -> DivisorClass:
    return cls - t * curve


def cremona_step(cls: DivisorClass) -> tuple[DivisorClass, int]:
    """Quadratic transformation based at the three largest multiplicities.

    The multiplicities are sorted descending (stable) first; the three leading
    entries and the degree all shift by c = d - m1 - m2 - m3.
    """
    s = cls.padded(3)
    mults = sorted(s.mults, reverse=True)
    c = s.degree - mults[0] - mults[1] - mults[2]
    new = [mults[0] + c, mults[1] + c, mults[2] + c] + mults[3:]
    return DivisorClass(s.degree + c, tuple(new)), c


def is_quasi_homogeneous(cls: DivisorClass) -> bool:
    return len(set(cls.mults[1:])) <= 1


def as_quasi_homogeneous(cls: DivisorClass) -> QuasiHomSystem:
    if not cls.mults:
        return QuasiHomSystem(cls.degree, 0, 0, 0)
    if not is_quasi_homogeneous(cls):
        raise ValueError(f"{cls} is not quasi-homogeneous")
    rest = cls.mults[1:]
    return QuasiHomSystem(cls.degree, cls.mults[0], rest[0] if rest else 0, len(rest))


def parse_mults(text: str) -> tuple[int, ...]:
    """Parse a comma separated multiplicity list; ``5^3`` expands to three 5s."""
    out: list[int] = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        if "^" in tok:
            m, count = tok.split("^")
            out.extend([int(m)] * int(count))
        else:
            out.append(int(tok))
    return tuple(out)


def aligned(classes: Sequence[DivisorClass]) -> list[DivisorClass]:
    n = max((c.num_points for c in classes), default=0)
    return [c.padded(n) for c in classes]
