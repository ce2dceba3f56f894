"""Check records and machine-readable reports."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .scalars import Cyclo, LaurentPoly, RootOfUnity

ORACLE = "oracle"


def encode(value):
    """JSON-safe form of scalars and containers; floats keep 15 significant digits."""
    if value is None or isinstance(value, (bool, str, int)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return float(f"{value:.15g}")
    if isinstance(value, complex):
        if value.imag == 0:
            return encode(value.real)
        return [encode(value.real), encode(value.imag)]
    if isinstance(value, RootOfUnity):
        return str(value)
    if isinstance(value, Cyclo):
        return encode(value.rational()) if value.is_rational() else repr(value)
    if isinstance(value, LaurentPoly):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if hasattr(value, "to_json"):
        return encode(value.to_json())
    return repr(value)


@dataclass
class Record:
    """One check: ``passed`` is None for informational records that do not gate the run."""

    id: str
    anchor: str
    params: dict
    expected: object
    got: object
    residual: float | None
    passed: bool | None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "anchor": self.anchor,
            "params": encode(self.params),
            "expected": encode(self.expected),
            "got": encode(self.got),
            "residual": encode(self.residual),
            "pass": self.passed,
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    suite: str
    records: list[Record] = field(default_factory=list)
    version: str = __version__

    def add(self, *records: Record) -> None:
        self.records.extend(records)

    def extend(self, records) -> None:
        self.records.extend(records)

    @property
    def failures(self) -> list[Record]:
        return [r for r in self.records if r.passed is False]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "checks": sum(r.passed is not None for r in self.records),
            "passed": sum(r.passed is True for r in self.records),
            "failed": sum(r.passed is False for r in self.records),
            "info": sum(r.passed is None for r in self.records),
        }

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "version": self.version,
            "summary": self.summary(),
            "records": [r.to_json() for r in self.records],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def to_table(self) -> str:
        rows = [("status", "id", "residual", "got")]
        for r in self.records:
            status = {True: "PASS", False: "FAIL", None: "info"}[r.passed]
            res = "" if r.residual is None else f"{r.residual:.3g}"
            got = json.dumps(encode(r.got))
            rows.append((status, r.id, res, got if len(got) <= 48 else got[:45] + "..."))
        widths = [max(len(row[i]) for row in rows) for i in range(4)]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
        s = self.summary()
        lines.append(f"{s['passed']}/{s['checks']} checks passed, {s['failed']} failed, {s['info']} informational")
        return "\n".join(lines) + "\n"


def check(id: str, anchor: str, params: dict, expected, got, residual=None, passed: bool | None = None,
          note: str = "") -> Record:
    """Build a record; when ``passed`` is omitted it is expected == got."""
    if passed is None:
        passed = expected == got
    return Record(id, anchor, params, expected, got, residual, bool(passed), note)


def info(id: str, anchor: str, params: dict, got, note: str = "", expected=None, residual=None) -> Record:
    return Record(id, anchor, params, expected, got, residual, None, note)
