"""Linear systems of plane curves with general fat base points.

Virtual, expected and conjectured dimensions, (-1)-curves, degenerations
and a modular rank oracle, with emphasis on quasi-homogeneous systems
L(d, m0, m^r).
"""

from .conjecture import conjectured_dim, dimension_report, is_special, scan_special
from .curves import enumerate_qh_curves, is_minus_one, table1_catalog
from .degeneration import certify, l0_of, split, sweep, test_system
from .divisors import (
    DimensionReport,
    DivisorClass,
    L,
    QuasiHomSystem,
    cremona_step,
    expected_dim,
    intersect,
    k_pairing,
    residual,
    virtual_dim,
)
from .oracle import certify_nonspecial, monomial_count_dim, oracle_dim

__version__ = "0.1.0"

__all__ = [
    "DimensionReport",
    "DivisorClass",
    "L",
    "QuasiHomSystem",
    "certify",
    "certify_nonspecial",
    "conjectured_dim",
    "cremona_step",
    "dimension_report",
    "enumerate_qh_curves",
    "expected_dim",
    "intersect",
    "is_minus_one",
    "is_special",
    "k_pairing",
    "l0_of",
    "monomial_count_dim",
    "oracle_dim",
    "residual",
    "scan_special",
    "split",
    "sweep",
    "table1_catalog",
    "test_system",
    "virtual_dim",
]
