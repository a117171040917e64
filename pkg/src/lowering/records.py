"""Result records and their JSON / CSV encodings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable

from .criteria import Classification, GoodSet

CSV_COLUMNS = ("p", "lambda", "mu", "i", "j", "A", "class", "nu", "witness_d", "witness_eps", "checks")


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.split(",") if t.strip())


def _join(values) -> str:
    return ",".join(str(v) for v in values)


@dataclass(frozen=True)
class ResultRecord:
    p: int
    lam: tuple[int, ...]
    mu: tuple[int, ...]
    i: int
    j: int
    A: tuple[int, ...]
    kind: str
    nu: tuple[int, ...] | None = None
    witness_d: str | None = None
    witness_eps: str | None = None
    checks: dict[str, bool] = field(default_factory=dict)

    @classmethod
    def from_classification(cls, pair, i, j, A, found: Classification,
                            good: GoodSet | None = None, checks=None) -> "ResultRecord":
        return cls(
            pair.p, pair.lam, pair.mu, i, j, tuple(A), found.kind.value, found.nu,
            None if found.d is None else str(found.d),
            None if good is None or good.eps is None else str(good.eps),
            dict(checks or {}),
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "lambda": list(self.lam),
            "mu": list(self.mu),
            "i": self.i,
            "j": self.j,
            "A": list(self.A),
            "class": self.kind,
            "nu": None if self.nu is None else list(self.nu),
            "witness_d": self.witness_d,
            "witness_eps": self.witness_eps,
            "checks": dict(self.checks),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ResultRecord":
        return cls(
            int(data["p"]), tuple(data["lambda"]), tuple(data["mu"]), int(data["i"]),
            int(data["j"]), tuple(data["A"]), data["class"],
            None if data.get("nu") is None else tuple(data["nu"]),
            data.get("witness_d"), data.get("witness_eps"),
            {k: bool(v) for k, v in (data.get("checks") or {}).items()},
        )

    def to_row(self) -> dict[str, str]:
        return {
            "p": str(self.p),
            "lambda": _join(self.lam),
            "mu": _join(self.mu),
            "i": str(self.i),
            "j": str(self.j),
            "A": _join(self.A),
            "class": self.kind,
            "nu": "" if self.nu is None else _join(self.nu),
            "witness_d": self.witness_d or "",
            "witness_eps": self.witness_eps or "",
            "checks": ";".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in self.checks.items()),
        }

    @classmethod
    def from_row(cls, row: dict[str, str]) -> "ResultRecord":
        checks = {}
        for item in filter(None, row["checks"].split(";")):
            name, _, status = item.partition("=")
            checks[name] = status == "ok"
        return cls(
            int(row["p"]), _ints(row["lambda"]), _ints(row["mu"]), int(row["i"]), int(row["j"]),
            _ints(row["A"]), row["class"], _ints(row["nu"]) if row["nu"] else None,
            row["witness_d"] or None, row["witness_eps"] or None, checks,
        )


def dumps_json(records: Iterable[ResultRecord], extra: dict | None = None) -> str:
    doc = {"records": [r.to_json() for r in records]}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads_json(text: str) -> list[ResultRecord]:
    return [ResultRecord.from_json(r) for r in json.loads(text)["records"]]


def dumps_csv(records: Iterable[ResultRecord]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow(r.to_row())
    return buf.getvalue()


def loads_csv(text: str) -> list[ResultRecord]:
    return [ResultRecord.from_row(row) for row in csv.DictReader(io.StringIO(text))]
