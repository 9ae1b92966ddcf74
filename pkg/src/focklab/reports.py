"""Deterministic suite reports: JSON for tooling, text for humans.

A check record carries an id, the verified mathematical statement, a
pass/fail/skipped status and, on failure, a minimal exact witness (never a
float).  The JSON serialization is byte-stable across runs with the same
parameters and seed: records are sorted by id, keys are sorted, and timing
lives only in the text rendering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


SCHEMA = "fock-lab/1"


@dataclass
class CheckRecord:
    id: str
    statement: str
    status: str  # pass | fail | skipped
    witness: str | None = None
    detail: dict | None = None  # always serialized, e.g. certification records

    def to_json(self) -> dict:
        out = {"id": self.id, "statement": self.statement, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checks: list = field(default_factory=list)
    wall_time: float = 0.0  # text rendering only; excluded from JSON

    def add(self, id: str, statement: str, ok, witness=None, detail=None):
        status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        self.checks.append(
            CheckRecord(
                id, statement, status, None if status == "pass" else witness, detail
            )
        )

    def merge(self, other: "SuiteReport"):
        self.checks.extend(other.checks)

    @property
    def failed(self):
        return [c for c in self.checks if c.status == "fail"]

    @property
    def skipped(self):
        return [c for c in self.checks if c.status == "skipped"]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "params": {k: str(v) for k, v in sorted(self.params.items())},
            "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.id)],
        }

    def to_json_bytes(self) -> bytes:
        return json.dumps(self.to_json(), sort_keys=True, indent=2).encode() + b"\n"

    def render_text(self) -> str:
        lines = [f"suite {self.suite}  ({_fmt_params(self.params)})"]
        for c in sorted(self.checks, key=lambda c: c.id):
            mark = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[c.status]
            lines.append(f"  [{mark}] {c.id}: {c.statement}")
            if c.witness:
                lines.append(f"         witness: {c.witness}")
        npass = sum(1 for c in self.checks if c.status == "pass")
        lines.append(
            f"  {npass} passed, {len(self.failed)} failed, "
            f"{len(self.skipped)} skipped in {self.wall_time:.2f}s"
        )
        return "\n".join(lines)


def _fmt_params(params: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in sorted(params.items()))
