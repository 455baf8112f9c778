"""Uniform pass/fail reporting for the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    first_fail_exponent48: int | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ""
        if not self.passed:
            if self.first_fail_exponent48 is not None:
                extra = f" (first failing exponent {self.first_fail_exponent48}/48)"
            if self.detail:
                extra += f" [{self.detail}]"
        return f"{status}  {self.name}{extra}"


@dataclass
class SuiteReport:
    suite: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, detail="", first_fail_exponent48=None):
        self.checks.append(CheckResult(name, passed, detail, first_fail_exponent48))

    def extend(self, other: "SuiteReport"):
        self.checks.extend(other.checks)

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}"]
        lines += [c.line() for c in self.checks]
        lines.append(f"result: {'ok' if self.ok else 'FAILED'} "
                     f"({sum(c.passed for c in self.checks)}/{len(self.checks)} passed)")
        return "\n".join(lines)

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed,
                 **({"detail": c.detail} if c.detail else {}),
                 **({"first_fail_exponent48": c.first_fail_exponent48}
                    if c.first_fail_exponent48 is not None else {})}
                for c in self.checks
            ],
        }
