"""Check records and reports shared by validators and the CLI.

Every numeric verification in the library is reported as a CheckRecord:
a stable id, the identity being tested (written out as a formula so a
reader can audit coverage), the worst violation observed, and the
tolerance it was held to. Reports aggregate records and serialize to
JSON with canonical ordering so that identical runs produce identical
bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckRecord:
    check_id: str
    anchor: str  # the identity verified, e.g. "b(eta^Phi) = 0 for symmetric Phi"
    max_violation: float
    tolerance: float
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        d = {
            "id": self.check_id,
            "anchor": self.anchor,
            "max_violation": float(self.max_violation),
            "tolerance": float(self.tolerance),
            "passed": bool(self.passed),
        }
        if self.note:
            d["note"] = self.note
        return d


def make_record(check_id: str, anchor: str, violation: float, tol: float,
                note: str = "") -> CheckRecord:
    v = float(violation)
    return CheckRecord(check_id, anchor, v, float(tol), v <= tol, note)


@dataclass
class CheckReport:
    """A named bundle of check records."""

    name: str
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def add(self, record: CheckRecord) -> None:
        self.records.append(record)

    def check(self, check_id: str, anchor: str, violation: float, tol: float,
              note: str = "") -> CheckRecord:
        rec = make_record(check_id, anchor, violation, tol, note)
        self.records.append(rec)
        return rec

    def record(self, check_id: str) -> CheckRecord:
        for r in self.records:
            if r.check_id == check_id:
                return r
        raise KeyError(check_id)

    def worst(self) -> CheckRecord:
        return max(self.records, key=lambda r: r.max_violation)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def merged(self, other: "CheckReport", name: str | None = None) -> "CheckReport":
        return CheckReport(name or self.name, self.records + other.records)

    def summary_lines(self) -> list[str]:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for r in sorted(self.records, key=lambda r: r.check_id):
            status = "ok " if r.passed else "FAIL"
            lines.append(
                f"  [{status}] {r.check_id}: max violation {r.max_violation:.3e}"
                f" (tol {r.tolerance:.1e})"
            )
        return lines


@dataclass
class CheckSuiteResult:
    """A complete CLI run: command, parameters, records, timing.

    Wall time is kept out of the serialized report so that repeated runs
    with identical flags and seeds are byte-identical; it is surfaced on
    the human-readable summary instead.
    """

    command: str
    target: str
    params: dict
    records: list[CheckRecord]
    wall_time_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "command": self.command,
            "target": self.target,
            "params": self.params,
            "checks": [r.to_dict() for r in sorted(self.records, key=lambda r: r.check_id)],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary_lines(self) -> list[str]:
        n_fail = sum(1 for r in self.records if not r.passed)
        head = (f"{self.command} {self.target}: "
                f"{len(self.records)} checks, {n_fail} failed, "
                f"{self.wall_time_s:.2f}s")
        lines = [head]
        for r in sorted(self.records, key=lambda r: r.check_id):
            mark = "ok " if r.passed else "FAIL"
            lines.append(f"  [{mark}] {r.check_id}  {r.max_violation:.3e} <= {r.tolerance:.1e}")
        return lines
