"""Check reports shared by the CLI and the acceptance suite."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, FINDING = "pass", "fail", "finding"
STATUSES = (PASS, FAIL, FINDING)


@dataclass
class Check:
    name: str
    status: str
    detail: Any = ""
    elapsed: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail,
                "elapsed": round(self.elapsed, 3)}


@dataclass
class Report:
    command: str
    config: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)

    @property
    def overall(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    @property
    def exit_code(self) -> int:
        return 0 if self.overall == PASS else 1

    def add(self, name: str, status: str, detail: Any = "", elapsed: float = 0.0) -> Check:
        check = Check(name, status, detail, elapsed)
        self.checks.append(check)
        return check

    def expect(self, name: str, ok: bool, detail: Any = "", elapsed: float = 0.0, *, on_false: str = FAIL) -> Check:
        return self.add(name, PASS if ok else on_false, detail, elapsed)

    @contextmanager
    def timed(self):
        """Yields a one-element list; its entry receives the elapsed seconds on exit."""
        box = [0.0]
        start = time.perf_counter()
        try:
            yield box
        finally:
            box[0] = time.perf_counter() - start

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.detail, c.elapsed))

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "overall": self.overall,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [f"== {self.command} {' '.join(f'{k}={v}' for k, v in sorted(self.config.items()))}"]
        for c in self.checks:
            lines.append(f"[{c.status.upper():7}] {c.name} ({c.elapsed:.2f}s)")
            if c.detail not in ("", None, {}, []):
                detail = c.detail if isinstance(c.detail, str) else json.dumps(c.detail, sort_keys=True)
                for line in detail.splitlines():
                    lines.append(f"          {line}")
        counts = {s: sum(c.status == s for c in self.checks) for s in STATUSES}
        lines.append(f"overall: {self.overall} ({counts[PASS]} pass, {counts[FAIL]} fail, {counts[FINDING]} finding)")
        return "\n".join(lines)


def roundtrip(text: str) -> str:
    """Parse an emitted JSON report and serialize it again."""
    return json.dumps(json.loads(text), sort_keys=True, indent=2)
