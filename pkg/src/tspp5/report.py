"""Structured verification results."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

MAX_WITNESSES = 20


@dataclass
class VerificationReport:
    name: str
    params: Dict[str, Any] = field(default_factory=dict)
    witnesses: List[Tuple[Any, Any]] = field(default_factory=list)
    elapsed_ms: int = 0
    details: Dict[str, Any] = field(default_factory=dict)
    checked: int = 0

    @property
    def status(self) -> str:
        return "fail" if self.witnesses else "pass"

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def fail(self, index, value) -> None:
        """Record a failing witness; keeps only the first few."""
        if len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append((index, value))
        else:
            self.details["truncated_witnesses"] = self.details.get("truncated_witnesses", 0) + 1

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "status": self.status,
            "checked": self.checked,
            "witnesses": [[_jsonable(i), _jsonable(v)] for i, v in self.witnesses],
            "details": {k: _jsonable(v) for k, v in self.details.items()},
            "elapsedMillis": self.elapsed_ms,
        }

    def to_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (float, str)):
        return v
    if isinstance(v, int):
        # big integers travel as decimal strings
        return v if abs(v) < 2**53 else str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return str(v)


@contextmanager
def timed(report: VerificationReport):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms = int((time.perf_counter() - start) * 1000)


def summary_table(reports) -> str:
    """Human-readable rendering of a list of reports."""
    rows = [("check", "status", "checked", "ms")]
    for r in reports:
        rows.append((r.name, r.status.upper(), str(r.checked), str(r.elapsed_ms)))
    widths = [max(len(row[k]) for row in rows) for k in range(4)]
    lines = []
    for n, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)
