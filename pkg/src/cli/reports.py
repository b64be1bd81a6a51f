"""
Command reports in two renderings.

``text``    — human-readable, rendered from the jinja2 templates in
              ``src/cli/templates``.
``machine`` — ``key=value`` lines in a fixed key order::

                  command=obstruct
                  subject=H
                  status=fail
                  checks=1
                  check.1.name=principal-dimension
                  check.1.ok=false
                  check.1.witness=((-3,-2),(-2,-1))
                  ...
                  fact.<name>=<value>

Values never contain newlines; tuples are written without spaces.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

from jinja2 import Environment, FileSystemLoader, StrictUndefined
from pydantic import BaseModel, ConfigDict

from src.foundations.reports import ValidationReport, Verdict

TEMPLATE_DIR = Path(__file__).resolve().parent / "templates"

_env = Environment(
    loader=FileSystemLoader(str(TEMPLATE_DIR)),
    undefined=StrictUndefined,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


class CheckLine(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    ok: bool
    rule: str = ""
    witness: str = ""
    detail: str = ""
    checked: int = 0
    skipped: int = 0


class CommandReport(BaseModel):
    """
    Everything a command has to say: checks with witnesses, named facts and
    free-form table rows (dims tables, obstruction lists).
    """

    model_config = ConfigDict(frozen=True)

    command: str
    subject: str
    checks: list[CheckLine] = []
    facts: list[tuple[str, str]] = []
    rows: list[str] = []

    @property
    def ok(self) -> bool:
        return all(check.ok for check in self.checks)


def compact(value: Any) -> str:
    """Tuples and lists without spaces, everything else through ``str``."""
    if isinstance(value, (tuple, list)):
        return "(" + ",".join(compact(v) for v in value) + ")"
    return str(value)


def check_from_verdict(verdict: Verdict, name: str | None = None) -> CheckLine:
    return CheckLine(
        name=name or verdict.check,
        ok=verdict.ok,
        rule=verdict.rule,
        witness=compact(verdict.witness) if verdict.witness else "",
        detail=verdict.detail,
        checked=verdict.checked,
        skipped=verdict.skipped,
    )


def check_from_validation(report: ValidationReport, name: str) -> CheckLine:
    first = report.violations[0] if report.violations else None
    return CheckLine(
        name=name,
        ok=report.ok,
        rule=first.rule if first else "",
        witness=compact(first.witness) if first else "",
        detail=(f"{len(report.violations)} violation(s); first: {first.detail}" if first else ""),
        checked=report.checked,
        skipped=report.skipped,
    )


def _one_line(text: str) -> str:
    return " ".join(text.split())


def render_machine(report: CommandReport) -> str:
    lines = [
        f"command={report.command}",
        f"subject={report.subject}",
        f"status={'ok' if report.ok else 'fail'}",
        f"checks={len(report.checks)}",
    ]
    for n, check in enumerate(report.checks, start=1):
        prefix = f"check.{n}."
        lines += [
            f"{prefix}name={check.name}",
            f"{prefix}ok={'true' if check.ok else 'false'}",
            f"{prefix}rule={check.rule}",
            f"{prefix}witness={check.witness}",
            f"{prefix}checked={check.checked}",
            f"{prefix}skipped={check.skipped}",
            f"{prefix}detail={_one_line(check.detail)}",
        ]
    lines += [f"fact.{key}={_one_line(value)}" for key, value in report.facts]
    lines += [f"row.{n}={_one_line(row)}" for n, row in enumerate(report.rows, start=1)]
    return "\n".join(lines) + "\n"


def render_text(report: CommandReport) -> str:
    return _env.get_template("report.txt.j2").render(report=report)


def render(report: CommandReport, fmt: str) -> str:
    if fmt == "machine":
        return render_machine(report)
    return render_text(report)


def render_fixture_list(entries: list[tuple[str, str, str]], fmt: str) -> str:
    if fmt == "machine":
        lines = [f"fixtures={len(entries)}"]
        for n, (name, window, text) in enumerate(entries, start=1):
            lines += [f"fixture.{n}.name={name}", f"fixture.{n}.window={window}",
                      f"fixture.{n}.description={text}"]
        return "\n".join(lines) + "\n"
    return _env.get_template("fixtures.txt.j2").render(entries=entries)
