"""Degeneration sweep of L(d, m0, 5^r) with oracle checks; writes a JSON report."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from quasihom.cli import RunConfig, verify_document
from quasihom.degeneration import K_WINDOW


@dataclass(frozen=True)
class SweepConfig:
    d_min: int = 8
    d_max: int = 150
    k_lo: int = K_WINDOW[0]
    k_hi: int = K_WINDOW[1]
    workers: int = 1
    trials: int = 3
    seed: int = 0
    out: str = "sweep_report.json"


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(SweepConfig()).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    cfg = SweepConfig(**vars(p.parse_args()))

    run = RunConfig(
        command="verify",
        d_min=cfg.d_min,
        d_max=cfg.d_max,
        k_window=(cfg.k_lo, cfg.k_hi),
        threads=cfg.workers,
        trials=cfg.trials,
        seed=cfg.seed,
        oracle_exceptional=True,
    )
    start = time.perf_counter()
    doc, code = verify_document(run)
    elapsed = time.perf_counter() - start
    with open(cfg.out, "w") as fh:
        json.dump(doc, fh, sort_keys=True, indent=2)
    print(f"{doc['verified']} verified, {len(doc['exceptional'])} exceptional, "
          f"{len(doc['violations'])} violations in {elapsed:.1f}s -> {cfg.out}")
    t = doc["table"]
    print(f"table: {t['matched']} matched, missing {t['missing']}, extra {t['extra']}")
    raise SystemExit(code)


if __name__ == "__main__":
    main()
