"""
Verification Reports
====================
Structured pass/fail output shared by every checker.

A checker never raises for a failed identity.  It records one CheckResult
per identity (optionally per ħ-order) and returns a VerificationReport.
Details stay JSON-able so reports serialize deterministically.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional


@dataclass
class CheckResult:
    """One identity evaluated by a checker."""
    name: str
    passed: bool
    order: Optional[int] = None        # ħ-order, when the check is per order
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.order is not None:
            out["order"] = self.order
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    """Outcome of a checker: every identity it evaluated plus derived constants."""
    name: str
    checks: List[CheckResult] = field(default_factory=list)
    constants: Dict[str, str] = field(default_factory=dict)

    def add(self, name: str, passed: bool, order: Optional[int] = None, detail: str = "") -> bool:
        self.checks.append(CheckResult(name, bool(passed), order, detail))
        return bool(passed)

    def extend(self, other: "VerificationReport", prefix: Optional[str] = None) -> None:
        """Merge another report's checks (names prefixed) and constants."""
        tag = prefix if prefix is not None else other.name
        for c in other.checks:
            self.checks.append(CheckResult(f"{tag}/{c.name}" if tag else c.name,
                                           c.passed, c.order, c.detail))
        for k, v in other.constants.items():
            self.constants[f"{tag}.{k}" if tag else k] = v

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    @property
    def first_failure(self) -> Optional[CheckResult]:
        """Failing check with the lowest order (unordered checks count as order 0)."""
        failed = self.failures
        if not failed:
            return None
        return min(failed, key=lambda c: c.order or 0)

    def first_failing_order(self) -> Optional[int]:
        ordered = [c.order for c in self.failures if c.order is not None]
        return min(ordered) if ordered else None

    def failed_names(self) -> List[str]:
        return [c.name for c in self.failures]

    def to_dict(self) -> Dict[str, Any]:
        first = self.first_failure
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "constants": dict(self.constants),
            "first_failure": first.to_dict() if first else None,
        }

    def summary(self) -> str:
        total = len(self.checks)
        ok = total - len(self.failures)
        mark = "✅" if self.passed else "❌"
        return f"{mark} {self.name}: {ok}/{total} checks passed"


def combine(name: str, reports: Iterable[VerificationReport]) -> VerificationReport:
    out = VerificationReport(name)
    for r in reports:
        out.extend(r)
    return out
