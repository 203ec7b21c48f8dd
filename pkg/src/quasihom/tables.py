"""Embedded golden tables and their instantiation over parameter ranges.

Fixtures live in ``quasihom/data/table{1,2,3,4}.json``. Families are stored
with affine expressions such as ``"8e-2"`` or ``"3d-15r-1"``.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import product
from typing import Mapping

from .divisors import QuasiHomSystem, virtual_dim

log = logging.getLogger(__name__)

_TERM = re.compile(r"([+-]?)(\d*)([a-z]?)")


@dataclass(frozen=True)
class Affine:
    """An integer affine expression: constant plus integer multiples of variables."""

    const: int
    coeffs: tuple[tuple[str, int], ...]

    @classmethod
    def parse(cls, text: str | int) -> Affine:
        text = str(text).replace(" ", "")
        const = 0
        coeffs: dict[str, int] = {}
        pos = 0
        while pos < len(text):
            match = _TERM.match(text, pos)
            if not match or match.end() == pos:
                raise ValueError(f"cannot parse affine expression {text!r}")
            sign, digits, var = match.groups()
            if not digits and not var:
                raise ValueError(f"cannot parse affine expression {text!r}")
            value = int(digits) if digits else 1
            if sign == "-":
                value = -value
            if var:
                coeffs[var] = coeffs.get(var, 0) + value
            else:
                const += value
            pos = match.end()
        return cls(const, tuple(sorted(coeffs.items())))

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.coeffs)

    def __call__(self, env: Mapping[str, int]) -> int:
        return self.const + sum(c * env[v] for v, c in self.coeffs)


def _load(name: str) -> dict:
    return json.loads(resources.files("quasihom.data").joinpath(name).read_text())


@lru_cache(maxsize=None)
def load_table(number: int) -> dict:
    return _load(f"table{number}.json")


@dataclass(frozen=True)
class FamilyInstance:
    label: str
    params: tuple[tuple[str, int], ...]
    system: QuasiHomSystem
    virtual: int
    effective: int

    @property
    def special(self) -> bool:
        return self.effective >= 0 and self.effective > max(self.virtual, -1)

    def as_dict(self) -> dict:
        return {
            **self.system.as_dict(),
            "family": self.label,
            "params": dict(self.params),
            "virtual": self.virtual,
            "effective": self.effective,
        }


def _excluded(row: dict, env: Mapping[str, int], e_max: int) -> bool:
    for pattern in row.get("exclude", ()):
        exprs = {k: Affine.parse(v) for k, v in pattern.items()}
        for e in range(1, e_max + 1):
            if all(exprs[k]({"e": e}) == env[k] for k in exprs):
                return True
    return False


def _instantiate_row(row: dict, m: int, d_max: int, r_max: int) -> list[FamilyInstance]:
    system = {k: Affine.parse(v) for k, v in row["system"].items()}
    v_expr = Affine.parse(row["virtual"])
    l_expr = Affine.parse(row["effective"])
    requires = [Affine.parse(x) for x in row.get("requires", ())]
    params = row["params"]
    bound = max(d_max, r_max) + 1
    ranges = []
    for p in params:
        lo, hi = row.get("range", {}).get(p, (1 if p == "e" else 0, bound))
        ranges.append(range(lo, min(hi, bound) + 1))
    found = []
    for values in product(*ranges):
        env = dict(zip(params, values))
        if any(req(env) < 0 for req in requires):
            continue
        if _excluded(row, env, bound):
            continue
        d, m0, r = system["d"](env), system["m0"](env), system["r"](env)
        if not (0 <= m0 <= d <= d_max and 0 <= r <= r_max):
            continue
        qh = QuasiHomSystem(d, m0, m, r)
        v = v_expr(env)
        actual = virtual_dim(qh.to_class())
        if v != actual:
            log.warning("table row %s at %s: printed virtual %d, formula gives %d", row["label"], env, v, actual)
        found.append(FamilyInstance(row["label"], tuple(sorted(env.items())), qh, v, l_expr(env)))
    return found


def table_families(m: int, d_max: int, r_max: int, errata: bool = True) -> list[FamilyInstance]:
    """Instantiate the tabulated families for m = 5 or m in {2, 3} inside the bounds.

    Every row's printed virtual dimension is rechecked against the formula;
    disagreements are logged, never corrected. ``errata`` adds the rows kept
    under the fixture's ``"errata"`` key (systems missing from the printed
    table, each with a note saying why).
    """
    if m == 5:
        table = load_table(2)
        rows = table["rows"] + (table.get("errata", []) if errata else [])
    elif m in (2, 3):
        rows = [row for row in load_table(3)["rows"] if row["mult"] == m]
    else:
        raise ValueError("families are tabulated for m in {2, 3, 5} only")
    out: list[FamilyInstance] = []
    for row in rows:
        out.extend(_instantiate_row(row, m, d_max, r_max))
    out.sort(key=lambda f: (f.system.key(), f.label))
    return out


def virtual_mismatches(m: int, d_max: int, r_max: int) -> list[FamilyInstance]:
    return [f for f in table_families(m, d_max, r_max) if f.virtual != virtual_dim(f.system.to_class())]


def table4_systems() -> list[tuple[QuasiHomSystem, str]]:
    out = []
    for group in load_table(4)["groups"]:
        for m0 in group["m0"]:
            out.append((QuasiHomSystem(group["degree"], m0, 5, group["r"]), group["label"]))
    out.sort(key=lambda item: item[0].key())
    return out
