import pytest

from quasihom.divisors import QuasiHomSystem, virtual_dim
from quasihom.tables import Affine, table4_systems, table_families, virtual_mismatches


def test_affine_parse():
    assert Affine.parse("8e-2")({"e": 3}) == 22
    assert Affine.parse("3d-15r-1")({"d": 4, "r": 1}) == -4
    assert Affine.parse("-e")({"e": 2}) == -2
    assert Affine.parse(7)({}) == 7
    with pytest.raises(ValueError):
        Affine.parse("2*e")


def _lookup(m, d_max, r_max, system):
    return [f for f in table_families(m, d_max, r_max) if f.system == system]


def test_row_8e():
    (f,) = _lookup(5, 8, 2, QuasiHomSystem(8, 6, 5, 2))
    assert (f.virtual, f.effective) == (-7, 0)


def test_row_with_upper_bound():
    (f,) = [f for f in _lookup(5, 32, 14, QuasiHomSystem(32, 26, 5, 14)) if f.label.startswith("L(4e+4")]
    assert (f.virtual, f.effective) == (-1, 0)
    assert not _lookup(5, 36, 16, QuasiHomSystem(36, 30, 5, 16))


def test_table3_row():
    (f,) = _lookup(2, 4, 4, QuasiHomSystem(4, 2, 2, 4))
    assert (f.virtual, f.effective) == (-1, 0)


@pytest.mark.parametrize("m", [2, 3, 5])
def test_printed_virtual_matches_formula(m):
    assert virtual_mismatches(m, 40, 16) == []


def test_d_minus_15r_column():
    for f in table_families(5, 30, 10):
        if f.label == "L(d,d,5^r)":
            assert f.virtual == f.system.d - 15 * f.system.r == virtual_dim(f.system.to_class())


def test_unsupported_multiplicity():
    with pytest.raises(ValueError):
        table_families(4, 10, 10)


def test_errata_row_is_optional():
    printed = {f.system for f in table_families(5, 40, 16, errata=False)}
    full = {f.system for f in table_families(5, 40, 16)}
    assert full - printed == {QuasiHomSystem(10, 0, 5, 5)}


def test_table4_fixture():
    systems = table4_systems()
    assert len(systems) == 35
    assert len({s for s, _ in systems}) == 35
    assert max(s.d for s, _ in systems) == 33
    assert (QuasiHomSystem(33, 25, 5, 18), "L(33,25,5^18)") in systems
