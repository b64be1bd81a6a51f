"""
Report models returned by every check in the toolkit.

* ``ValidationReport`` — list of violated identities plus the number of checks
  skipped because they would leave a window (empty violations iff valid).
* ``Verdict``          — boolean answer with the canonical (lexicographically
  first) witness of failure.

Both are plain pydantic models so the CLI can serialize them directly.
"""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict


class Violation(BaseModel):
    """One failed identity, with the basis/degree data witnessing it."""

    model_config = ConfigDict(frozen=True)

    rule: str
    witness: tuple[Any, ...]
    detail: str = ""


class ValidationReport(BaseModel):
    """
    Outcome of an exhaustive on-window validation.

    ``skipped`` counts checks whose partial or full products left the window;
    those checks certify nothing and are not violations.
    """

    model_config = ConfigDict(frozen=True)

    subject: str
    violations: list[Violation] = []
    checked: int = 0
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


class Verdict(BaseModel):
    """
    A yes/no answer plus the first failure found in canonical order.

    Truthy iff ``ok``; ``witness`` and ``rule`` are empty on success.
    """

    model_config = ConfigDict(frozen=True)

    check: str
    ok: bool
    rule: str = ""
    witness: tuple[Any, ...] = ()
    detail: str = ""
    checked: int = 0
    skipped: int = 0

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, check: str, checked: int = 0, skipped: int = 0) -> "Verdict":
        return cls(check=check, ok=True, checked=checked, skipped=skipped)

    @classmethod
    def failed(cls, check: str, rule: str, witness: tuple[Any, ...], detail: str = "",
               checked: int = 0, skipped: int = 0) -> "Verdict":
        return cls(check=check, ok=False, rule=rule, witness=witness, detail=detail,
                   checked=checked, skipped=skipped)

