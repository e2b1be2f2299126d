"""Verification reports: pass/fail, witnesses, and known-discrepancy warnings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    name: str
    counterexamples: list = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples and not self.failures

    def counterexample(self, item) -> None:
        self.counterexamples.append(item)

    def fail(self, why: str) -> None:
        self.failures.append(why)

    def warn(self, why: str) -> None:
        self.warnings.append(why)

    def merge(self, other: Report) -> Report:
        self.counterexamples += other.counterexamples
        self.failures += [f"{other.name}: {f}" for f in other.failures]
        self.warnings += [f"{other.name}: {w}" for w in other.warnings]
        self.details[other.name] = "pass" if other.passed else "fail"
        return self

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "result": "pass" if self.passed else "fail",
            "counterexamples": self.counterexamples,
            "failures": self.failures,
            "warnings": self.warnings,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({len(self.warnings)} warnings)" if self.warnings else ""
        return f"{status} {self.name}{extra}"

    def __bool__(self) -> bool:
        return self.passed
