"""Structured verification reports: exact values, citations, pass/fail."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional


@dataclass
class ReportItem:
    label: str
    value: str
    citation: str = ""
    expected: Optional[str] = None

    @property
    def ok(self) -> Optional[bool]:
        if self.expected is None:
            return None
        return self.value == self.expected


@dataclass
class VerificationReport:
    command: str
    items: list[ReportItem] = field(default_factory=list)
    error: Optional[str] = None

    def add(self, label: str, value, citation: str = "", expected=None) -> None:
        self.items.append(
            ReportItem(
                label=label,
                value=str(value),
                citation=citation,
                expected=None if expected is None else str(expected),
            )
        )

    @property
    def status(self) -> str:
        if self.error is not None:
            return "ERROR"
        if all(item.ok in (None, True) for item in self.items):
            return "PASS"
        return "FAIL"

    def to_text(self) -> str:
        lines = [f"# {self.command}"]
        width = max((len(i.label) for i in self.items), default=0)
        for i in self.items:
            mark = {True: "ok  ", False: "FAIL", None: "    "}[i.ok]
            cite = f"  [{i.citation}]" if i.citation else ""
            expect = "" if i.expected is None or i.ok else f"  (expected {i.expected})"
            lines.append(f"{mark} {i.label:<{width}}  = {i.value}{expect}{cite}")
        if self.error:
            lines.append(f"error: {self.error}")
        lines.append(self.status)
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "status": self.status,
                "error": self.error,
                "items": [
                    {
                        "label": i.label,
                        "value": i.value,
                        "citation": i.citation,
                        "expected": i.expected,
                        "ok": i.ok,
                    }
                    for i in self.items
                ],
            },
            indent=2,
            sort_keys=True,
        )
