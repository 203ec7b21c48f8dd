"""How the exceptional set depends on the range of k searched.

For each window, sweep degrees 8..33 and report the symmetric difference
with the tabulated exceptional cases.
"""

from __future__ import annotations

import argparse

from quasihom.degeneration import compare_exceptional, sweep

WINDOWS = [None, (1, 4), (4, 4), (4, 5), (4, 6), (4, 8), (3, 6), (1, 6)]


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--dmax", type=int, default=33)
    args = p.parse_args()
    for window in WINDOWS:
        rep = sweep(8, args.dmax, k_window=window)
        cmp = compare_exceptional(rep)
        name = "1..d-m0" if window is None else f"{window[0]}..{window[1]}"
        print(f"k in {name:8s} exceptional={len(rep.exceptional):3d} matched={len(cmp.matched):3d} "
              f"missing={len(cmp.missing):3d} extra={len(cmp.extra):3d}")
        if len(cmp.mismatches) <= 6:
            for s in cmp.missing:
                print(f"    missing {s}")
            for s in cmp.extra:
                print(f"    extra   {s}")


if __name__ == "__main__":
    main()
