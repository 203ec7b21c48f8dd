"""Rebuild the special-system tables from the reduction and compare with the fixtures."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from quasihom.conjecture import scan_special
from quasihom.curves import enumerate_qh_curves, table1_catalog
from quasihom.tables import table_families


@dataclass(frozen=True)
class TablesConfig:
    d_max_5: int = 40
    r_max_5: int = 16
    d_max_small: int = 20
    r_max_small: int = 10


def compare(m: int, d_max: int, r_max: int) -> None:
    scanned = {r.system: (r.virtual, r.conjectured, r.family) for r in scan_special(m, d_max, r_max)}
    listed = {f.system for f in table_families(m, d_max, r_max) if f.special}
    print(f"m={m} d<={d_max} r<={r_max}: {len(scanned)} special, {len(listed)} from families")
    for s in sorted(set(scanned) ^ listed, key=lambda s: s.key()):
        side = "scan only" if s in scanned else "families only"
        print(f"  {side}: {s}")
    unmatched = [s for s, (_, _, fam) in scanned.items() if fam == "unmatched"]
    print(f"  unlabelled: {len(unmatched)}")


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--dmax5", type=int, default=TablesConfig.d_max_5)
    p.add_argument("--rmax5", type=int, default=TablesConfig.r_max_5)
    args = p.parse_args()
    cfg = TablesConfig(d_max_5=args.dmax5, r_max_5=args.rmax5)

    print("(-1)-curves of the form L(d,m0,m^r):")
    for m in (2, 3, 4, 5):
        print(f"  m={m}: {', '.join(map(str, enumerate_qh_curves(m)))}")
    print("small multiplicity catalog:")
    for family, compound in table1_catalog():
        print(f"  {family.label:18s} {family.kind:18s} {compound.label if compound else ''}")

    compare(5, cfg.d_max_5, cfg.r_max_5)
    for m in (2, 3):
        compare(m, cfg.d_max_small, cfg.r_max_small)


if __name__ == "__main__":
    main()
