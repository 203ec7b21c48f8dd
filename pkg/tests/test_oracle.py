import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasihom.divisors import DivisorClass, L, expected_dim, virtual_dim
from quasihom.oracle import (
    COORDINATE,
    PrimeField,
    certify_nonspecial,
    condition_matrix,
    make_points,
    monomial_count_dim,
    monomials,
    oracle,
    oracle_dim,
    rank_mod_p,
)

from strategies import classes


@pytest.mark.parametrize(
    "cls, dim",
    [
        (L(4, 0, 2, 2, 2, 2, 2), 0),
        (L(8, 0, 5, 5), 15),
        (L(2, 1, 1), 3),
        (L(11, 2, 5, 5, 5, 5, 5), 2),
        (L(3, 4), -1),
        (L(5), 20),
        (L(-2, 1), -1),
    ],
)
def test_oracle_examples(cls, dim):
    assert oracle_dim(cls) == dim


def test_certify_examples():
    assert certify_nonspecial(L(9, 3, 3, 3))
    assert oracle_dim(L(9, 3, 3, 3)) == 9 * 12 // 2 - 18
    assert not certify_nonspecial(L(4, 0, 2, 2, 2, 2, 2))
    assert certify_nonspecial(L(1, 1, 1))


def test_matrix_shape():
    cls = L(6, 2, 3, 0)
    field = PrimeField()
    m = condition_matrix(cls, make_points(cls.mults, field, 0), field)
    assert m.shape == (3 + 6, 28)
    assert m.dtype == np.int64


def test_matrix_entries_small_prime():
    # one double point at (1:2:3) over F_101, columns (a0, a1, a2); chart x0 = 1
    field = PrimeField(101)
    cls = L(2, 2)
    config = make_points((2,), field, 0)
    u, v = config.points[0][1:]
    rows = condition_matrix(cls, config, field)
    cols = monomials(2)
    value = [u**a1 * v**a2 % 101 for _, a1, a2 in cols]
    d_u = [(a1 * u ** (a1 - 1) * v**a2) % 101 if a1 else 0 for _, a1, a2 in cols]
    d_v = [(a2 * u**a1 * v ** (a2 - 1)) % 101 if a2 else 0 for _, a1, a2 in cols]
    assert rows.tolist() == [value, d_v, d_u]


def test_rank_mod_p():
    p = 7
    assert rank_mod_p(np.array([[1, 2], [2, 4]]), p) == 1
    assert rank_mod_p(np.array([[1, 2], [3, 4]]), p) == 2
    assert rank_mod_p(np.array([[7, 14]]), p) == 0
    assert rank_mod_p(np.zeros((0, 4), dtype=np.int64), p) == 0


def test_rank_matches_float_rank_on_small_ints():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = rng.integers(0, 3, size=(6, 9))
        assert rank_mod_p(a, 2147483647) == np.linalg.matrix_rank(a)


def test_prime_field_validation():
    with pytest.raises(ValueError):
        PrimeField(12)
    with pytest.raises(ValueError):
        PrimeField(2**61 - 1)


def test_points_distinct_and_deterministic():
    field = PrimeField(5)
    a = make_points((1,) * 16, field, 4)
    assert len(set(a.points)) == 16
    assert a == make_points((1,) * 16, field, 4)
    with pytest.raises(ValueError):
        make_points((1,) * 17, field, 4)


def test_coordinate_mode():
    config = make_points((2, 2, 2, 1), PrimeField(), 0, mode=COORDINATE)
    assert config.points[:3] == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    with pytest.raises(ValueError):
        make_points((1,), PrimeField(), 0, mode="projective")


def test_argument_checks():
    with pytest.raises(ValueError):
        oracle(L(3, -1))
    with pytest.raises(ValueError):
        oracle(L(3, 1), trials=0)
    with pytest.raises(ValueError):
        oracle(L(3, 1), seed=-1)


def test_report_fields():
    res = oracle(L(8, 0, 5, 5), trials=3, seed=7)
    doc = res.as_dict()
    assert sorted(doc) == ["dim", "prime", "rank", "seed", "system", "trials"]
    assert doc["rank"] == 45 - 1 - 15
    assert res.trials_run == 3  # special: no early stop


def test_monomial_count_examples():
    for d in range(0, 8):
        for m in range(0, d + 1):
            assert monomial_count_dim(L(d, m)) == (d + 1) * (d + 2) // 2 - m * (m + 1) // 2 - 1
    assert monomial_count_dim(L(2, 1, 1, 1)) == 2
    with pytest.raises(ValueError):
        monomial_count_dim(L(4, 1, 1, 1, 1))


@settings(max_examples=200)
@given(classes(max_degree=9, max_mult=5, max_points=6), st.integers(0, 2**32))
def test_upper_bound(cls, seed):
    assert oracle_dim(cls, trials=1, seed=seed) >= expected_dim(cls)


@settings(max_examples=100)
@given(classes(max_degree=8, max_mult=4, max_points=7), st.integers(0, 1000))
def test_trials_never_increase(cls, seed):
    values = [oracle_dim(cls, p=31, trials=t, seed=seed) for t in (1, 2, 4)]
    assert values == sorted(values, reverse=True)


@settings(max_examples=100)
@given(classes(max_degree=8, max_mult=4, max_points=7), st.integers(0, 1000))
def test_determinism(cls, seed):
    assert oracle(cls, seed=seed) == oracle(cls, seed=seed)


@settings(max_examples=100)
@given(classes(max_degree=8, max_mult=5, max_points=3))
def test_coordinate_matches_count(cls):
    assert oracle_dim(cls, trials=1, mode=COORDINATE) == monomial_count_dim(cls)
