"""
Rendering of check reports and command outcomes.

Text output is a prose summary followed by a key-value block; structured
output is JSON with sorted keys. Both are deterministic for a given input.
"""

import json
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

from app.errors import ToolkitError
from app.simplicial.kan_verify import CheckReport, Verdict
from app.utilities.util import short_digest

OutputFormat = Literal["text", "structured"]
Verbosity = Literal["quiet", "normal", "verbose"]

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_USAGE = 2


class Outcome(BaseModel):
    """What a command produced: a report, a document, or a domain error."""

    command: str
    verdict: Verdict
    summary: dict[str, Any] = Field(default_factory=dict)
    report: Optional[CheckReport] = None
    document: Optional[str] = None
    error: Optional[dict[str, Any]] = None

    @property
    def exit_code(self) -> int:
        return EXIT_FAILS if self.verdict == "fails" else EXIT_HOLDS


def outcome_from_report(command: str, report: CheckReport, **summary: Any) -> Outcome:
    return Outcome(command=command, verdict=report.verdict, summary=summary, report=report)


def outcome_from_error(command: str, error: ToolkitError) -> Outcome:
    return Outcome(command=command, verdict="fails", error=error.as_record())


def report_record(report: CheckReport, verbosity: Verbosity = "normal") -> dict[str, Any]:
    record: dict[str, Any] = {
        "subject": report.subject,
        "condition": report.condition,
        "verdict": report.verdict,
        "depth": report.depth,
    }
    if verbosity == "quiet":
        return record
    record["witnesses"] = report.witnesses
    record["notes"] = report.notes
    if verbosity == "verbose":
        record["details"] = [report_record(r, verbosity) for r in report.details]
    return record


def outcome_record(outcome: Outcome, verbosity: Verbosity = "normal") -> dict[str, Any]:
    record: dict[str, Any] = {"command": outcome.command, "verdict": outcome.verdict}
    if outcome.summary:
        record["summary"] = outcome.summary
    if outcome.report is not None:
        record["report"] = report_record(outcome.report, verbosity)
    if outcome.error is not None:
        record["error"] = outcome.error
    if outcome.document is not None:
        record["digest"] = short_digest(outcome.document)
        if verbosity != "quiet":
            record["document"] = outcome.document
    return record


def _value(value: Any) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, ensure_ascii=False, default=str)


def _prose(outcome: Outcome) -> str:
    if outcome.error is not None:
        return f"{outcome.command}: {outcome.error['error']}: {outcome.error['message']}"
    if outcome.report is not None:
        r = outcome.report
        return f"{outcome.command}: {r.condition} on {r.subject} {r.verdict}"
    return f"{outcome.command}: {outcome.verdict}"


def _key_values(record: dict[str, Any], indent: str = "") -> list[str]:
    lines = []
    for key in sorted(record):
        value = record[key]
        if key == "document":
            continue
        if isinstance(value, dict) and key in ("summary", "report", "error"):
            lines.append(f"{indent}{key}:")
            lines.extend(_key_values(value, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {_value(value)}")
    return lines


def render(outcome: Outcome, fmt: OutputFormat = "text", verbosity: Verbosity = "normal") -> str:
    record = outcome_record(outcome, verbosity)
    if fmt == "structured":
        return json.dumps(record, sort_keys=True, indent=2, ensure_ascii=False)
    lines = [_prose(outcome)]
    if verbosity != "quiet":
        if outcome.report is not None:
            lines.extend(f"  note: {note}" for note in outcome.report.notes)
        lines.append("---")
        lines.extend(_key_values(record))
        if outcome.document is not None:
            lines.append("---")
            lines.append(outcome.document.rstrip("\n"))
    return "\n".join(lines)
