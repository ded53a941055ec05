"""Validation reports: a flat list of findings, empty means valid."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Finding:
    code: str
    message: str

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message}


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)
    warnings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Warnings do not make a report fail."""
        return not self.findings

    def add(self, code: str, message: str) -> None:
        self.findings.append(Finding(code, message))

    def warn(self, code: str, message: str) -> None:
        self.warnings.append(Finding(code, message))

    def extend(self, other: "ValidationReport") -> None:
        self.findings.extend(other.findings)
        self.warnings.extend(other.warnings)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "findings": [f.to_json() for f in self.findings + self.warnings],
        }

    def __str__(self) -> str:
        lines = [f"{f.code}: {f.message}" for f in self.findings]
        lines += [f"warning {f.code}: {f.message}" for f in self.warnings]
        return "\n".join(lines) if lines else "ok"
