"""Claims and reports shared by the structural checks and the scenario driver."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

PROVENANCE = ("PAPER", "TRIVIAL", "DERIVED")
REPORT_SCHEMA_VERSION = 1


def _plain(v: Any) -> Any:
    """JSON-friendly copy of a claim value."""
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, set, frozenset)):
        items = [_plain(x) for x in v]
        return sorted(items, key=repr) if isinstance(v, (set, frozenset)) else items
    return str(v)


@dataclass
class Claim:
    name: str
    expected: Any
    actual: Any
    provenance: str = "DERIVED"
    comparator: Callable[[Any, Any], bool] | None = field(default=None, repr=False)
    reason: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @property
    def passed(self) -> bool:
        if self.reason and self.actual is None:
            return False
        cmp = self.comparator or (lambda e, a: e == a)
        return bool(cmp(self.expected, self.actual))

    def to_dict(self) -> dict:
        d = {"name": self.name, "expected": _plain(self.expected), "actual": _plain(self.actual),
             "provenance": self.provenance, "pass": self.passed}
        if self.reason:
            d["reason"] = self.reason
        return d


@dataclass
class Report:
    title: str
    claims: list[Claim] = field(default_factory=list)

    def add(self, name, expected, actual, provenance="DERIVED", comparator=None, reason="") -> Claim:
        c = Claim(name, expected, actual, provenance, comparator, reason)
        self.claims.append(c)
        return c

    def note(self, name, value) -> Claim:
        """A recorded value with nothing to compare against."""
        return self.add(name, None, value, "DERIVED", comparator=lambda e, a: True)

    def fail(self, name, expected, reason, provenance="DERIVED") -> Claim:
        return self.add(name, expected, None, provenance, reason=reason)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.claims:
            self.claims.append(Claim(prefix + c.name, c.expected, c.actual, c.provenance,
                                     c.comparator, c.reason))

    @property
    def passed(self) -> bool:
        return bool(self.claims) and all(c.passed for c in self.claims)

    def failures(self) -> list[Claim]:
        return [c for c in self.claims if not c.passed]

    def __getitem__(self, name: str) -> Claim:
        for c in self.claims:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"title": self.title, "pass": self.passed,
                "claims": [c.to_dict() for c in self.claims]}

    def to_text(self) -> str:
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.claims:
            mark = "ok  " if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}: expected {_plain(c.expected)!r}, got {_plain(c.actual)!r} ({c.provenance})"
            if c.reason:
                line += f" - {c.reason}"
            lines.append(line)
        return "\n".join(lines)
