import pytest
from hypothesis import given
from hypothesis import strategies as st

from quasihom.divisors import (
    DimensionReport,
    DivisorClass,
    L,
    QuasiHomSystem,
    as_quasi_homogeneous,
    cremona_step,
    expected_dim,
    from_groups,
    intersect,
    k_pairing,
    parse_mults,
    residual,
    rr_dim,
    virtual_dim,
)
from quasihom.curves import is_minus_one

from strategies import classes


@pytest.mark.parametrize(
    "cls, v",
    [(L(8, 0, 5, 5), 14), (L(5), 20), (L(4, 0, 2, 2, 2, 2, 2), -1), (L(0), 0)],
)
def test_virtual_dim_examples(cls, v):
    assert virtual_dim(cls) == v


def test_virtual_dim_ignores_negative_mults():
    assert virtual_dim(L(6, 3, 3, -2)) == virtual_dim(L(6, 3, 3))


@pytest.mark.parametrize(
    "cls, e",
    [(L(4, 0, 2, 2, 2, 2, 2), -1), (L(0), 0), (L(10, 2, 5, 5, 5, 5), 2), (L(3, 4), -1)],
)
def test_expected_dim(cls, e):
    assert expected_dim(cls) == e


def test_intersect_examples():
    assert intersect(L(7, 7, 5), L(1, 1, 1)) == -5
    assert intersect(L(1, 1, 1), L(1, 1, 1)) == -1
    assert intersect(L(8, 0, 5, 5, 5), L(1, 0, 1, 1)) == -2


def test_k_pairing_examples():
    assert k_pairing(L(1, 1, 1)) == -1
    assert k_pairing(from_groups(6, [(3, 1), (2, 7)])) == -1
    assert k_pairing(L(0)) == 0


def test_residual_examples():
    assert residual(L(7, 7, 5, 5), L(1, 1, 1, 0), 5) == L(2, 2, 0, 5)


def test_residual_over_three_lines():
    system = L(8, 0, 5, 5, 5)
    lines = [L(1, 0, 1, 1, 0), L(1, 0, 1, 0, 1), L(1, 0, 0, 1, 1)]
    for line in lines:
        t = -intersect(system, line)
        assert t == 2
        system = residual(system, line, t)
    assert system == L(2, 0, 1, 1, 1)


def test_cremona_examples():
    assert cremona_step(L(8, 5, 5, 0)) == (L(6, 3, 3, -2), -2)
    assert cremona_step(L(10, 5, 5, 5, 5, 2)) == (L(5, 0, 0, 0, 5, 2), -5)


def test_cremona_pads_short_lists():
    assert cremona_step(L(2, 1)) == (L(3, 2, 1, 1), 1)


def _reduce_d_minus_7(d, r, k):
    # quadratic transformations at (m0, 5, 5), turning the 5s into 2s
    mults = [d - 7] + [5] * r
    deg = d
    for _ in range(k):
        io = [0] + [i for i, m in enumerate(mults) if m == 5][:2]
        c = deg - sum(mults[i] for i in io)
        deg += c
        for i in io:
            mults[i] += c
    return deg, mults


@pytest.mark.parametrize("k", [1, 2])
def test_pattern_d_minus_7(k):
    d, r = 30, 9
    deg, mults = _reduce_d_minus_7(d, r, k)
    assert deg == d - 3 * k
    assert mults[0] == d - 3 * k - 7
    assert sorted(mults[1:], reverse=True) == [5] * (r - 2 * k) + [2] * (2 * k)
    # each step is an honest cremona_step on the sorted class
    before = L(d, d - 7, *[5] * r)
    for _ in range(k):
        before, c = cremona_step(before)
        assert c == -3
    assert before.canonical() == L(d - 3 * k, d - 3 * k - 7, *[5] * (r - 2 * k), *[2] * (2 * k)).canonical()


def test_quasi_homogeneous_roundtrip():
    q = QuasiHomSystem(10, 2, 5, 4)
    assert q.to_class() == L(10, 2, 5, 5, 5, 5)
    assert as_quasi_homogeneous(q.to_class()) == q
    assert str(q) == "L(10,2,5^4)"
    with pytest.raises(ValueError):
        QuasiHomSystem(3, -1, 2, 1)
    with pytest.raises(ValueError):
        as_quasi_homogeneous(L(5, 0, 2, 3))


def test_parse_mults():
    assert parse_mults("0,5^2") == (0, 5, 5)
    assert parse_mults("") == ()
    assert parse_mults(" 3, 1 ^ 2 ") == (3, 1, 1)


def test_dimension_report_special_flag():
    r = DimensionReport(14, 14, 15)
    assert r.special
    assert "oracle" not in r.as_dict()
    assert DimensionReport(0, 0, 0, oracle=0).as_dict()["oracle"] == 0


def test_large_degree_exact():
    d = 10**6
    assert virtual_dim(L(d)) == d * (d + 3) // 2
    assert intersect(L(d, d), L(d, d)) == 0


@given(classes(allow_negative=True), classes(allow_negative=True))
def test_intersection_symmetry(a, b):
    assert intersect(a, b) == intersect(b, a)


@given(classes(allow_negative=True))
def test_cremona_invariance(cls):
    new, _ = cremona_step(cls)
    assert rr_dim(new) == rr_dim(cls)
    assert intersect(new, new) == intersect(cls, cls)
    assert k_pairing(new) == k_pairing(cls)


@given(classes(max_degree=25, max_mult=10).filter(lambda c: len(c.mults) <= 8))
def test_cremona_preserves_virtual_before_clamping(cls):
    # virtual_dim and rr_dim agree while every multiplicity is >= -1
    new, _ = cremona_step(cls)
    if min(new.mults, default=0) >= -1:
        assert virtual_dim(new) == virtual_dim(cls)


@given(classes())
def test_riemann_roch(cls):
    assert virtual_dim(cls) == (intersect(cls, cls) - k_pairing(cls)) // 2
    assert (intersect(cls, cls) - k_pairing(cls)) % 2 == 0


_MINUS_ONE = [
    L(1, 1, 1),
    L(1, 0, 1, 1),
    L(2, 0, 1, 1, 1, 1, 1),
    L(3, 2, 1, 1, 1, 1, 1, 1),
    from_groups(6, [(3, 1), (2, 7)]),
    L(0, -1),
    L(0, 0, -1),
]


@given(classes(max_degree=25, max_mult=8, max_points=8), st.sampled_from(_MINUS_ONE), st.permutations(range(8)))
def test_residual_identity(cls, curve, perm):
    curve = DivisorClass(curve.degree, tuple(curve.padded(8).mults[i] for i in perm))
    assert is_minus_one(curve)
    t = -intersect(cls, curve)
    if t < 1:
        return
    m = residual(cls, curve, t)
    # unclamped: the identity lives in the lattice
    assert rr_dim(cls) == rr_dim(m) + (t - t * t) // 2
    if min(m.mults, default=0) >= -1:
        assert virtual_dim(cls) == virtual_dim(m) + (t - t * t) // 2


@given(classes())
def test_expected_is_clamped_virtual(cls):
    assert expected_dim(cls) == max(virtual_dim(cls), -1)
