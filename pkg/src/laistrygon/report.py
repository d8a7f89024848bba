from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import CheckFailure


@dataclass
class Check:
    label: str
    passed: bool
    detail: Any = None

    def to_dict(self) -> dict:
        out = {"label": self.label, "passed": self.passed}
        if self.detail is not None:
            out["detail"] = _jsonable(self.detail)
        return out


@dataclass
class Report:
    """Outcome of a verification routine: one :class:`Check` per item."""

    name: str
    checks: list[Check] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, label: str, passed: bool, detail: Any = None) -> Check:
        check = Check(label, bool(passed), detail)
        self.checks.append(check)
        return check

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def labels(self) -> list[str]:
        return [c.label for c in self.checks]

    def raise_if_failed(self, exc: type[CheckFailure] = CheckFailure) -> "Report":
        bad = self.failures()
        if bad:
            first = bad[0]
            msg = f"{self.name}: {first.label} failed"
            if first.detail is not None:
                msg += f" ({_jsonable(first.detail)})"
            raise exc(msg, report=self)
        return self

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.info:
            out["info"] = _jsonable(self.info)
        return out

    def __bool__(self) -> bool:
        return self.passed


def _jsonable(obj):
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return str(obj)
