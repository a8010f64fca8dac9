"""Structured pass/fail reporting for runtime algebraic checks."""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["CheckEntry", "VerificationReport", "VerificationError"]


@dataclass(frozen=True)
class CheckEntry:
    """One named check, optionally tied to a degree."""

    name: str
    passed: bool
    degree: int | None = None

    def label(self) -> str:
        return self.name if self.degree is None else f"{self.name}[{self.degree}]"


class VerificationReport:
    """An ordered list of named checks with an overall verdict."""

    def __init__(self) -> None:
        self.entries: list[CheckEntry] = []

    def add(self, name: str, passed: bool, degree: int | None = None) -> None:
        self.entries.append(CheckEntry(name, bool(passed), degree))

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed]

    def __str__(self) -> str:
        if self.ok:
            return f"all {len(self.entries)} checks passed"
        failed = ", ".join(e.label() for e in self.failures())
        return f"{len(self.failures())} of {len(self.entries)} checks failed: {failed}"


class VerificationError(Exception):
    """Raised when a computation's mandatory self-verification fails."""

    def __init__(self, report: VerificationReport, context: str):
        super().__init__(f"{context}: {report}")
        self.report = report
