"""Dimensions of linear systems by exact rank computation over a prime field.

A degree-d form vanishes to order m at a point iff all its Taylor
coefficients of order < m there vanish. Each coefficient is a linear
condition on the (d+1)(d+2)/2 monomial coefficients; the projective
dimension of the system is (#monomials - 1 - rank).

Rank at special points never exceeds the generic rank, so the value at
random points is an upper bound for the true dimension, sharp with high
probability for a large prime. Hence ``oracle_dim == expected_dim`` proves
non-speciality, while a larger value is strong evidence of speciality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .divisors import DivisorClass, expected_dim

DEFAULT_PRIME = 2147483647
RANDOM = "random"
COORDINATE = "coordinate"

_TRIANGLE = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        from sympy import isprime

        if not isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        # products of two residues must fit in int64
        if self.p >= 2**31:
            raise ValueError("modulus must be below 2^31")


@dataclass(frozen=True)
class PointConfig:
    """Points in homogeneous coordinates, one per multiplicity."""

    points: tuple[tuple[int, int, int], ...]
    mults: tuple[int, ...]
    seed: int
    mode: str = RANDOM


def _random_affine(rng: np.random.Generator, p: int, taken: set) -> tuple[int, int, int]:
    while True:
        u, v = (int(x) for x in rng.integers(1, p, size=2))
        if (u, v) not in taken:
            taken.add((u, v))
            return (1, u, v)


def make_points(mults: tuple[int, ...], field: PrimeField, seed: int, trial: int = 0, mode: str = RANDOM) -> PointConfig:
    """Distinct points; in coordinate mode the first three sit at the triangle vertices.

    The random stream depends only on (seed, trial), so trials can run in
    any order or in parallel without changing the outcome.
    """
    if seed < 0:
        raise ValueError("seed must be non-negative")
    if mode not in (RANDOM, COORDINATE):
        raise ValueError(f"unknown point mode {mode!r}")
    if len(mults) > (field.p - 1) ** 2:
        raise ValueError(f"field of size {field.p} has too few points")
    rng = np.random.default_rng([seed, trial])
    taken: set = set()
    pts = []
    for i in range(len(mults)):
        if mode == COORDINATE and i < 3:
            pts.append(_TRIANGLE[i])
        else:
            pts.append(_random_affine(rng, field.p, taken))
    return PointConfig(tuple(pts), tuple(mults), seed, mode)


def monomials(d: int) -> list[tuple[int, int, int]]:
    return [(d - a1 - a2, a1, a2) for a1 in range(d + 1) for a2 in range(d + 1 - a1)]


def _binomials(n: int, p: int) -> np.ndarray:
    table = np.zeros((n + 1, n + 1), dtype=np.int64)
    for a in range(n + 1):
        for k in range(a + 1):
            table[a, k] = comb(a, k) % p
    return table


def _powers(x: int, n: int, p: int) -> np.ndarray:
    out = np.empty(n + 1, dtype=np.int64)
    acc = 1
    for i in range(n + 1):
        out[i] = acc
        acc = acc * x % p
    return out


def condition_matrix(cls: DivisorClass, config: PointConfig, field: PrimeField) -> np.ndarray:
    """Rows: Taylor conditions (point, alpha, beta), alpha + beta < m. Columns: monomials(d)."""
    p = field.p
    d = cls.degree
    mons = np.array(monomials(d), dtype=np.int64).reshape(-1, 3)
    binom = _binomials(d, p)
    rows = []
    for pt, m in zip(config.points, config.mults):
        if m <= 0:
            continue
        j = next(i for i in range(3) if pt[i] % p)
        s, t = [i for i in range(3) if i != j]
        inv = pow(pt[j], p - 2, p)
        u, v = pt[s] * inv % p, pt[t] * inv % p
        A, B = mons[:, s], mons[:, t]
        upow, vpow = _powers(u, d, p), _powers(v, d, p)
        for alpha in range(m):
            for beta in range(m - alpha):
                ok = (A >= alpha) & (B >= beta)
                ea, eb = np.where(ok, A - alpha, 0), np.where(ok, B - beta, 0)
                # masked entries may index a wrong binomial; they are zeroed below
                row = binom[A, min(alpha, d)] * binom[B, min(beta, d)] % p
                row = row * upow[ea] % p * vpow[eb] % p
                rows.append(np.where(ok, row, 0))
    if not rows:
        return np.zeros((0, len(mons)), dtype=np.int64)
    return np.vstack(rows)


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    M = np.array(matrix, dtype=np.int64) % p
    if M.shape[0] > M.shape[1]:
        M = M.T.copy()
    n_rows, n_cols = M.shape
    rank = 0
    for c in range(n_cols):
        if rank == n_rows:
            break
        nz = np.flatnonzero(M[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, c]), p - 2, p)
        M[rank] = M[rank] * inv % p
        below = rank + 1 + np.flatnonzero(M[rank + 1:, c])
        if below.size:
            M[below] = (M[below] - np.outer(M[below, c], M[rank]) % p) % p
        rank += 1
    return rank


@dataclass(frozen=True)
class OracleResult:
    system: DivisorClass
    prime: int
    trials: int
    seed: int
    rank: int
    dim: int
    trials_run: int

    def as_dict(self) -> dict:
        return {
            "system": {"degree": self.system.degree, "mults": list(self.system.mults)},
            "prime": self.prime,
            "trials": self.trials,
            "seed": self.seed,
            "rank": self.rank,
            "dim": self.dim,
        }


def oracle(
    cls: DivisorClass,
    p: int = DEFAULT_PRIME,
    trials: int = 3,
    seed: int = 0,
    mode: str = RANDOM,
) -> OracleResult:
    """Best (largest) rank over ``trials`` point configurations.

    Every trial's dimension is >= expected_dim, so the loop stops as soon as
    a trial attains it; the minimum cannot go lower.
    """
    if any(m < 0 for m in cls.mults):
        raise ValueError(f"negative multiplicity in {cls}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    field = PrimeField(p)
    n_cols = (cls.degree + 1) * (cls.degree + 2) // 2 if cls.degree >= 0 else 0
    floor = expected_dim(cls)
    best_rank, run = -1, 0
    for trial in range(trials):
        run += 1
        config = make_points(cls.mults, field, seed, trial, mode)
        rank = rank_mod_p(condition_matrix(cls, config, field), p) if n_cols else 0
        best_rank = max(best_rank, rank)
        if n_cols - 1 - best_rank <= floor:
            break
    return OracleResult(cls, p, trials, seed, best_rank, n_cols - 1 - best_rank, run)


def oracle_dim(cls: DivisorClass, p: int = DEFAULT_PRIME, trials: int = 3, seed: int = 0, mode: str = RANDOM) -> int:
    return oracle(cls, p, trials, seed, mode).dim


def certify_nonspecial(cls: DivisorClass, p: int = DEFAULT_PRIME, trials: int = 3, seed: int = 0) -> bool:
    """True only when the computation proves the system non-special."""
    return oracle_dim(cls, p, trials, seed) == expected_dim(cls)


def monomial_count_dim(cls: DivisorClass) -> int:
    """Exact dimension for at most three points placed at the coordinate triangle.

    At (1:0:0) the monomial x0^a0 x1^a1 x2^a2 vanishes to order d - a0, and
    similarly at the other two vertices, so the system is spanned by the
    monomials passing every test.
    """
    if len(cls.mults) > 3:
        raise ValueError("at most three coordinate points")
    if cls.degree < 0:
        return -1
    mults = tuple(cls.mults) + (0,) * (3 - len(cls.mults))
    d = cls.degree
    count = sum(1 for mon in monomials(d) if all(d - a >= m for a, m in zip(mon, mults)))
    return count - 1
