"""Data models for verification reports."""

from dataclasses import asdict, dataclass, field
from typing import Literal, Optional

SCHEMA = "klr-report/1"

Status = Literal["pass", "fail", "error"]


@dataclass
class CaseResult:
    """One verified case of a suite."""

    key: str
    suite: str
    status: Status
    expected: Optional[str] = None
    computed: Optional[str] = None
    seconds: float = 0.0
    error: Optional[str] = None
    error_type: Optional[str] = None
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "CaseResult":
        """Create CaseResult from dictionary."""
        return cls(
            key=data["key"],
            suite=data["suite"],
            status=data["status"],
            expected=data.get("expected"),
            computed=data.get("computed"),
            seconds=data.get("seconds", 0.0),
            error=data.get("error"),
            error_type=data.get("error_type"),
            detail=data.get("detail", {}),
        )


@dataclass
class Report:
    """A suite run: the configuration echo and its cases, ordered by key."""

    suite: str
    cartan: str
    config: dict = field(default_factory=dict)
    cases: list[CaseResult] = field(default_factory=list)
    schema: str = SCHEMA

    def add(self, case: CaseResult) -> None:
        self.cases.append(case)
        self.cases.sort(key=lambda c: (c.suite, c.key))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "error": 0}
        for c in self.cases:
            out[c.status] += 1
        return out

    def errors_of(self, error_type: str) -> list[CaseResult]:
        return [c for c in self.cases if c.error_type == error_type]

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "schema": self.schema,
            "suite": self.suite,
            "cartan": self.cartan,
            "config": self.config,
            "pass": self.passed,
            "counts": self.counts(),
            "cases": [c.to_dict() for c in sorted(self.cases, key=lambda c: (c.suite, c.key))],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        """
        Create Report from dictionary.

        Raises:
            ValueError: for an unknown schema version
        """
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        report = cls(suite=data["suite"], cartan=data["cartan"], config=data.get("config", {}))
        for c in data.get("cases", []):
            report.add(CaseResult.from_dict(c))
        return report

    def rows(self) -> list[dict]:
        """Flat rows for tabular export."""
        return [
            {"suite": c.suite, "case": c.key, "status": c.status, "expected": c.expected,
             "computed": c.computed, "seconds": round(c.seconds, 3), "error": c.error}
            for c in sorted(self.cases, key=lambda c: (c.suite, c.key))
        ]
