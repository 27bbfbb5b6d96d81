"""Verification reports shared by the identity checkers.

A report records the identity name, the parameters it ran with, how many
coefficient comparisons were made, and — on failure — the first failing
location with both sides rendered verbatim, which is what makes a broken
identity debuggable.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    identity: str
    params: dict
    ok: bool = True
    checked: int = 0
    first_failure: dict | None = None

    def compare(self, where: object, lhs: object, rhs: object) -> bool:
        """Record one comparison; keep only the first failure."""
        self.checked += 1
        if lhs != rhs:
            if self.ok:
                self.first_failure = {
                    "where": str(where),
                    "lhs": str(lhs),
                    "rhs": str(rhs),
                }
            self.ok = False
            return False
        return True

    def require(self, where: object, condition: bool, detail: str = "") -> bool:
        """Record one boolean check (for support/divisibility style assertions)."""
        self.checked += 1
        if not condition:
            if self.ok:
                self.first_failure = {"where": str(where), "lhs": detail, "rhs": ""}
            self.ok = False
            return False
        return True

    def absorb(self, sub: "CheckReport") -> None:
        """Fold a sub-report into this one."""
        self.checked += sub.checked
        if not sub.ok and self.ok:
            self.ok = False
            self.first_failure = sub.first_failure

    def as_dict(self) -> dict:
        return {
            "identity": self.identity,
            "params": self.params,
            "ok": self.ok,
            "checked": self.checked,
            "first_failure": self.first_failure,
        }


@dataclass
class ReportSet:
    reports: list[CheckReport] = field(default_factory=list)

    def add(self, report: CheckReport) -> CheckReport:
        self.reports.append(report)
        return report

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def as_dict(self) -> dict:
        return {"ok": self.ok, "reports": [r.as_dict() for r in self.reports]}
