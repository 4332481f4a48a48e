"""Structured verification reports with text and JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Optional

__all__ = ["Check", "Report", "load_schema"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class Report:
    """Named checks plus the inputs that produced them.

    ``hypotheses`` are cited facts the conclusion rests on but which are not
    checked computationally; they never affect the verdict. ``certificates``
    carry enough data to re-run a check from the report alone.
    """

    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    result: Any = None
    hypotheses: list[str] = field(default_factory=list)
    certificates: list[dict] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))
        for h in other.hypotheses:
            if h not in self.hypotheses:
                self.hypotheses.append(h)
        self.certificates.extend(other.certificates)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def failed(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        doc = {
            "command": self.command,
            "inputs": self.inputs,
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in self.checks],
            "verdict": self.verdict,
        }
        if self.result is not None:
            doc["result"] = self.result
        if self.hypotheses:
            doc["hypotheses"] = list(self.hypotheses)
        if self.certificates:
            doc["certificates"] = list(self.certificates)
        return doc

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, doc: dict) -> "Report":
        checks = [Check(c["name"], c["status"] == "pass", c.get("detail", "")) for c in doc["checks"]]
        report = cls(
            command=doc["command"],
            inputs=dict(doc.get("inputs", {})),
            checks=checks,
            result=doc.get("result"),
            hypotheses=list(doc.get("hypotheses", [])),
            certificates=list(doc.get("certificates", [])),
        )
        if doc.get("verdict", report.verdict) != report.verdict:
            raise ValueError("stored verdict disagrees with the check list")
        return report

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = []
        if self.result is not None:
            lines.append(self.result if isinstance(self.result, str) else json.dumps(self.result))
        if self.checks:
            width = max(len(c.name) for c in self.checks)
            for c in self.checks:
                line = f"{c.status.upper():4}  {c.name:<{width}}"
                if c.detail:
                    line += f"  {c.detail}"
                lines.append(line.rstrip())
            for h in self.hypotheses:
                lines.append(f"CITE  {h}")
            lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def load_schema() -> dict:
    return json.loads(resources.files("fgq").joinpath("report.schema.json").read_text())
