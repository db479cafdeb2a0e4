from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of a property sweep: any violation is a bug."""

    name: str
    violations: list[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    max_violations_kept: int = 20

    @property
    def passed(self) -> bool:
        return not self.violations and not self.stats.get("violation_count")

    def fail(self, message: str):
        self.stats["violation_count"] = self.stats.get("violation_count", 0) + 1
        if len(self.violations) < self.max_violations_kept:
            self.violations.append(message)

    def count(self, key: str, by: int = 1):
        self.stats[key] = self.stats.get(key, 0) + by

    def absorb(self, other: "CheckReport", prefix: str = ""):
        for v in other.violations:
            self.fail(f"{prefix}{v}")
        extra = other.stats.get("violation_count", 0) - len(other.violations)
        if extra > 0:
            self.stats["violation_count"] = self.stats.get("violation_count", 0) + extra
        for key, value in other.stats.items():
            if key != "violation_count" and isinstance(value, int):
                self.count(key, value)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "violations": list(self.violations),
            "stats": dict(self.stats),
        }
