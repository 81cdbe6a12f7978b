from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of an exhaustive check: a pass/fail verdict plus replayable witnesses."""

    name: str
    checked: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def tick(self, n: int = 1) -> None:
        self.checked += n

    def fail(self, kind: str, **witness: Any) -> None:
        self.failures.append({"kind": kind, **witness})

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.failures.extend({"from": other.name, **f} for f in other.failures)
        self.notes.extend(other.notes)
        return self

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        tail = "" if self.ok else f" first={self.failures[0]}"
        return f"{verdict} {self.name} checked={self.checked} failures={len(self.failures)}{tail}"

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "failures": self.failures,
            "notes": self.notes,
            "data": self.data,
        }
