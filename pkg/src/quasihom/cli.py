"""Command line front end.

    quasihom dim --degree 8 --m0 0 --mult 5 --count 2 --oracle
    quasihom scan --mult 5 --dmax 11 --rmax 5 --format csv
    quasihom curves --mult 2
    quasihom degenerate --degree 12 --m0 0 --count 6 --k 4 --b 3
    quasihom oracle --degree 11 --mults 2,5^5
    quasihom verify --dmin 8 --dmax 33 --oracle-exceptional

JSON output is key-sorted and byte-stable. Exit codes: 0 ok, 1 a
conjecture violation or an unconfirmed table mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .conjecture import conjectured_dim, dimension_report, scan_special
from .curves import enumerate_qh_curves, table1_catalog
from .degeneration import K_WINDOW, certify, compare_exceptional, confirm, split, sweep
from .divisors import DivisorClass, QuasiHomSystem, as_quasi_homogeneous, parse_mults
from .oracle import COORDINATE, DEFAULT_PRIME, RANDOM, PrimeField, oracle

FORMATS = ("table", "json", "csv")

# frozen column orders for csv/table output
SCAN_COLUMNS = ("d", "m0", "m", "r", "virtual", "conjectured", "family")
CURVE_COLUMNS = ("kind", "label", "d", "m0", "m", "r", "compound")
EXCEPTIONAL_COLUMNS = ("d", "m0", "m", "r", "virtual", "conjectured", "oracle", "in_table")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    fmt: str = "table"
    out: str | None = None
    degree: int | None = None
    m0: int | None = None
    mult: int | None = None
    count: int | None = None
    mults: str | None = None
    k: int | None = None
    b: int | None = None
    d_min: int = 8
    d_max: int | None = None
    r_max: int | None = None
    prime: int = DEFAULT_PRIME
    trials: int = 3
    seed: int = 0
    mode: str = RANDOM
    with_oracle: bool = False
    oracle_exceptional: bool = False
    k_window: tuple[int, int] | None = K_WINDOW
    threads: int = 1
    extra: dict = field(default_factory=dict)

    def system_class(self) -> DivisorClass:
        if self.degree is None:
            raise UsageError("--degree is required")
        if self.mults is not None:
            if any(x is not None for x in (self.m0, self.count)):
                raise UsageError("--mults excludes --m0/--count")
            try:
                mults = parse_mults(self.mults)
            except ValueError as exc:
                raise UsageError(f"bad --mults: {exc}") from None
            cls = DivisorClass(self.degree, mults)
        else:
            m0 = self.m0 or 0
            m = 5 if self.mult is None else self.mult
            r = self.count or 0
            cls = DivisorClass(self.degree, ((m0,) if m0 or r else ()) + (m,) * r)
        if any(m < 0 for m in cls.mults):
            raise UsageError("multiplicities must be non-negative")
        return cls

    def qh_system(self) -> QuasiHomSystem:
        cls = self.system_class()
        try:
            return as_quasi_homogeneous(cls)
        except ValueError as exc:
            raise UsageError(str(exc)) from None


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="table")
    common.add_argument("--out", help="write the report to this path instead of stdout")

    system = argparse.ArgumentParser(add_help=False)
    system.add_argument("--degree", type=int)
    system.add_argument("--m0", type=int)
    system.add_argument("--mult", type=int, help="multiplicity m of the r equal points (default 5)")
    system.add_argument("--count", type=int, help="number r of points of multiplicity m")
    system.add_argument("--mults", help="explicit list, e.g. '0,5^2'")

    orc = argparse.ArgumentParser(add_help=False)
    orc.add_argument("--prime", type=int, default=None)
    orc.add_argument("--trials", type=int, default=3)
    orc.add_argument("--seed", type=int, default=None)

    p = argparse.ArgumentParser(prog="quasihom", description="Dimensions of planar linear systems.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dim", parents=[common, system, orc], help="virtual/expected/conjectured dimension")
    s.add_argument("--oracle", dest="with_oracle", action="store_true")
    s.add_argument("--trace", action="store_true", help="include the reduction trace (json)")

    s = sub.add_parser("scan", parents=[common], help="special quasi-homogeneous systems")
    s.add_argument("--mult", type=int, required=True)
    s.add_argument("--dmax", dest="d_max", type=int, required=True)
    s.add_argument("--rmax", dest="r_max", type=int, required=True)

    s = sub.add_parser("curves", parents=[common], help="(-1)-curves")
    s.add_argument("--mult", type=int, help="enumerate L(d,m0,m^r) for m >= 2; omit for the m <= 2 catalog")

    s = sub.add_parser("degenerate", parents=[common, system], help="one (k,b)-degeneration")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--b", type=int, required=True)

    s = sub.add_parser("oracle", parents=[common, system, orc], help="rank computation over F_p")
    s.add_argument("--mode", choices=(RANDOM, COORDINATE), default=RANDOM)

    s = sub.add_parser("verify", parents=[common, orc], help="degeneration sweep of L(d,m0,5^r)")
    s.add_argument("--dmin", dest="d_min", type=int, default=8)
    s.add_argument("--dmax", dest="d_max", type=int, required=True)
    s.add_argument("--threads", type=int, default=1, help="worker processes")
    s.add_argument("--oracle-exceptional", action="store_true", help="rank-check every exceptional system")
    s.add_argument("--kmin", type=int, default=K_WINDOW[0])
    s.add_argument("--kmax", type=int, default=K_WINDOW[1])
    s.add_argument("--all-k", action="store_true", help="search k over 1..d-m0")
    return p


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer") from None


def build_config(argv: Sequence[str] | None = None) -> RunConfig:
    ns = _parser().parse_args(argv)
    args = dict(vars(ns))
    prime, seed = args.get("prime"), args.get("seed")
    cfg = RunConfig(command=args.pop("command"))
    for key in list(args):
        if hasattr(cfg, key):
            setattr(cfg, key, args.pop(key))
    cfg.extra = args
    if ns.command in ("dim", "oracle", "verify"):
        cfg.prime = prime if prime is not None else (_env_int("QUASIHOM_PRIME") or DEFAULT_PRIME)
        env_seed = _env_int("QUASIHOM_SEED")
        cfg.seed = seed if seed is not None else (env_seed if env_seed is not None else 0)
        if cfg.trials < 1:
            raise UsageError("--trials must be >= 1")
        if cfg.seed < 0:
            raise UsageError("--seed must be non-negative")
        try:
            PrimeField(cfg.prime)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if ns.command == "verify":
        if args.pop("all_k"):
            cfg.k_window = None
        else:
            cfg.k_window = (args.pop("kmin"), args.pop("kmax"))
            if not 1 <= cfg.k_window[0] <= cfg.k_window[1]:
                raise UsageError("need 1 <= --kmin <= --kmax")
        if not 8 <= cfg.d_min <= cfg.d_max:
            raise UsageError("need 8 <= --dmin <= --dmax")
        if cfg.threads < 1:
            raise UsageError("--threads must be >= 1")
    return cfg


def _json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _rows_text(rows: list[dict], columns: Sequence[str], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    cells = [list(columns)] + [[str(row.get(c, "")) for c in columns] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


def _render(doc, rows: list[dict], columns: Sequence[str], fmt: str) -> str:
    return _json(doc) if fmt == "json" else _rows_text(rows, columns, fmt)


def cmd_dim(cfg: RunConfig) -> tuple[str, int]:
    cls = cfg.system_class()
    value = None
    if cfg.with_oracle:
        value = oracle(cls, cfg.prime, cfg.trials, cfg.seed).dim
    report = dimension_report(cls, value)
    doc = {"system": {"degree": cls.degree, "mults": list(cls.mults)}, **report.as_dict()}
    if cfg.extra.get("trace"):
        doc["trace"] = conjectured_dim(cls).as_dict()
    row = {"system": str(cls), **report.as_dict()}
    cols = ["system", "virtual", "expected", "conjectured"] + (["oracle"] if value is not None else []) + ["special"]
    return _render(doc, [row], cols, cfg.fmt), 0


def cmd_scan(cfg: RunConfig) -> tuple[str, int]:
    if cfg.mult not in (2, 3, 4, 5):
        raise UsageError("--mult must be one of 2, 3, 4, 5")
    if cfg.d_max < 0 or cfg.r_max < 0:
        raise UsageError("bounds must be non-negative")
    rows = [rec.as_dict() for rec in scan_special(cfg.mult, cfg.d_max, cfg.r_max)]
    doc = {"m": cfg.mult, "d_max": cfg.d_max, "r_max": cfg.r_max, "special": rows}
    return _render(doc, rows, SCAN_COLUMNS, cfg.fmt), 0


def cmd_curves(cfg: RunConfig) -> tuple[str, int]:
    rows = []
    if cfg.mult is not None:
        if cfg.mult < 2:
            raise UsageError("--mult must be >= 2; omit it for the small-multiplicity catalog")
        for q in enumerate_qh_curves(cfg.mult):
            rows.append({"kind": "fixed", "label": str(q), **q.as_dict(), "compound": ""})
        doc = {"m": cfg.mult, "curves": [q.as_dict() for q in enumerate_qh_curves(cfg.mult)]}
        return _render(doc, rows, CURVE_COLUMNS, cfg.fmt), 0
    entries = []
    for family, compound in table1_catalog():
        probe = family.instantiate(1 if family.params else None)
        row = {"kind": family.kind, "label": family.label, "compound": compound.label if compound else ""}
        if not family.params:
            row.update(probe.as_dict())
        rows.append(row)
        entries.append({
            "kind": family.kind,
            "label": family.label,
            "compound": compound.label if compound else None,
        })
    return _render({"catalog": entries}, rows, CURVE_COLUMNS, cfg.fmt), 0


def cmd_degenerate(cfg: RunConfig) -> tuple[str, int]:
    system = cfg.qh_system()
    try:
        s = split(system, cfg.k, cfg.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cert = certify(s)
    doc = {**s.as_dict(), "certificate": cert.as_dict()}
    if cfg.fmt == "json":
        return _json(doc), 0
    rows = []
    for name, cls, l, v in (
        ("L_P", s.LP, s.dims.l_P, s.dims.v_P),
        ("L_F", s.LF, s.dims.l_F, s.dims.v_F),
        ("L^_P", s.LPhat, s.dims.lh_P, s.dims.vh_P),
        ("L^_F", s.LFhat, s.dims.lh_F, s.dims.vh_F),
    ):
        rows.append({"part": name, "system": str(as_quasi_homogeneous(cls)), "virtual": v, "conjectured": l})
    rows.append({"part": "l0", "system": str(system), "virtual": "", "conjectured": s.l0})
    rows.append({"part": "certificate", "system": cert.kind, "virtual": "", "conjectured": ""})
    return _rows_text(rows, ("part", "system", "virtual", "conjectured"), cfg.fmt), 0


def cmd_oracle(cfg: RunConfig) -> tuple[str, int]:
    cls = cfg.system_class()
    try:
        res = oracle(cls, cfg.prime, cfg.trials, cfg.seed, cfg.extra.get("mode", RANDOM))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = res.as_dict()
    row = {"system": str(cls), **{k: v for k, v in doc.items() if k != "system"}}
    return _render(doc, [row], ("system", "prime", "trials", "seed", "rank", "dim"), cfg.fmt), 0


def verify_document(cfg: RunConfig) -> tuple[dict, int]:
    report = sweep(cfg.d_min, cfg.d_max, cfg.threads, cfg.k_window)
    table = compare_exceptional(report)
    mismatches = set(table.mismatches)
    to_check = [o.system for o in report.exceptional] if cfg.oracle_exceptional else []
    to_check += [s for s in table.mismatches if s not in to_check]
    to_check.sort(key=QuasiHomSystem.key)
    checks = {s: confirm(s, cfg.prime, cfg.trials, cfg.seed) for s in to_check}
    violations = [c.as_dict() for c in checks.values() if not c.ok]
    doc = report.as_dict()
    for entry, outcome in zip(doc["exceptional"], report.exceptional):
        entry["in_table"] = outcome.system not in mismatches
        if outcome.system in checks:
            entry["oracle"] = checks[outcome.system].oracle
    doc["table"] = table.as_dict()
    doc["table"]["confirmed"] = [checks[s].as_dict() for s in table.mismatches]
    doc["oracle"] = {"prime": cfg.prime, "trials": cfg.trials, "seed": cfg.seed}
    doc["violations"] = violations
    return doc, (1 if violations else 0)


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    doc, code = verify_document(cfg)
    rows = []
    for entry in doc["exceptional"]:
        rows.append({**entry["system"], "virtual": entry["virtual"], "conjectured": entry["conjectured"],
                     "oracle": entry.get("oracle", ""), "in_table": entry["in_table"]})
    return _render(doc, rows, EXCEPTIONAL_COLUMNS, cfg.fmt), code


COMMANDS = {
    "dim": cmd_dim,
    "scan": cmd_scan,
    "curves": cmd_curves,
    "degenerate": cmd_degenerate,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = build_config(argv)
        text, code = COMMANDS[cfg.command](cfg)
    except SystemExit as exc:  # argparse usage errors
        return 2 if exc.code else 0
    except UsageError as exc:
        print(f"quasihom: error: {exc}", file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
