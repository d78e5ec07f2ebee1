from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True, order=True)
class Violation:
    """One failed check: what kind of rule, where, and a readable message."""

    kind: str
    location: tuple = ()
    message: str = ""

    def to_json(self) -> dict:
        return {"kind": self.kind, "location": list(_plain(self.location)), "message": self.message}


def _plain(value):
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    return value


@dataclass(frozen=True)
class Check:
    """Boolean verdict with an optional counterexample.

    Truthiness follows ``ok`` so ``if check_x(...):`` reads naturally.
    """

    ok: bool
    counterexample: Any = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class RunReport:
    command: str
    status: str = "pass"
    violations: list = field(default_factory=list)
    artifacts_written: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    error: str | None = None

    SCHEMA_VERSION = "1"

    def finalize(self) -> "RunReport":
        if self.error is not None:
            self.status = "error"
        elif self.violations:
            self.status = "fail"
        else:
            self.status = "pass"
        return self

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 1, "error": 2}[self.status]

    def to_json(self, timestamp: str | None = None) -> dict:
        doc = {
            "schema_version": self.SCHEMA_VERSION,
            "command": self.command,
            "status": self.status,
            "violations": [v.to_json() if isinstance(v, Violation) else v for v in self.violations],
            "artifacts_written": list(self.artifacts_written),
            "details": self.details,
        }
        if self.error is not None:
            doc["error"] = self.error
        if timestamp is not None:
            doc["timestamp"] = timestamp
        return doc
