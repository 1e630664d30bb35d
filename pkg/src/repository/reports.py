"""
Report documents: building them from results, rendering them as JSON or as a flat CSV table,
and writing them to disk.
"""
import enum
import json
import logging
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable

import pandas as pd
from pydantic import ValidationError

from src.conf import messages
from src.entity.exceptions import PartySelectionError
from src.entity.models import Outcome, RuleResult, SeatAllocation, Violation
from src.repository.profiles import format_weight, write_profile
from src.schemas.axiom import SearchReport, TableRow
from src.schemas.experiment import ExperimentReport, StrategicReport, SweepKind
from src.schemas.report import Quantity, ReportDocument

logger = logging.getLogger(__name__)


class ReportFormat(str, enum.Enum):
    STRUCTURED = "structured"
    FLAT = "flat"


def quantity(value: Fraction) -> Quantity:
    """
    >>> quantity(Fraction(1, 3)).exact
    '1/3'
    """
    return Quantity(exact=format_weight(Fraction(value)), approx=float(value))


def _exact(value: Fraction | None) -> str | None:
    return None if value is None else format_weight(value)


def _ordered(outcome: Iterable[str], parties: tuple[str, ...]) -> list[str]:
    outcome = set(outcome)
    return [party for party in parties if party in outcome]


def violation_entry(violation: Violation) -> dict[str, Any]:
    """Flatten a violation into plain values; profiles are written as profile documents."""
    witness = violation.witness
    parties = witness.profile.parties
    entry: dict[str, Any] = {
        "axiom": violation.axiom.value,
        "rule": violation.rule,
        "narrative": violation.narrative,
        "profile": write_profile(witness.profile),
        "tau": _exact(witness.tau),
        "outcome": _ordered(witness.outcome, parties),
    }
    if witness.profile_prime is not None:
        entry["profile_prime"] = write_profile(witness.profile_prime)
    if witness.tau_prime is not None:
        entry["tau_prime"] = _exact(witness.tau_prime)
    if witness.outcome_prime is not None:
        entry["outcome_prime"] = _ordered(witness.outcome_prime, parties)
    for key in ("voter", "party", "coalition", "report", "pair"):
        value = getattr(witness, key)
        if value is not None:
            entry[key] = list(value) if isinstance(value, tuple) else value
    if witness.restriction is not None:
        entry["restriction"] = witness.restriction.value
    for key in ("before", "after"):
        value = getattr(witness, key)
        if value is not None:
            entry[key] = quantity(value).model_dump()
    return entry


def result_report(result: RuleResult, parties: tuple[str, ...], meta: dict[str, Any] | None = None,
                  seats: SeatAllocation | None = None, universes: list[Outcome] | None = None) -> ReportDocument:
    """
    The result_report function turns a rule result into a report document.

    :param result: RuleResult: The result to report
    :param parties: tuple[str, ...]: Roster in priority order, used to order parties
    :param meta: dict[str, Any] | None: Run metadata
    :param seats: SeatAllocation | None: Seats apportioned to the selected parties
    :param universes: list[Outcome] | None: Every outcome reachable under tie-breaking
    :return: The report
    """
    assignment = result.assignment
    trace = [{"step": event.step, "party": event.party, "action": event.action.value,
              "score": quantity(event.score).model_dump()} for event in result.trace]
    trace += [{"added": step.added, "weight": quantity(step.weight).model_dump(), "removed": list(step.removed),
               "outcome": _ordered(step.outcome, parties)} for step in result.augment_trace]
    meta = {"rule": result.rule, "tau": quantity(result.tau).model_dump(),
            "unrepresented": quantity(assignment.unrepresented).model_dump(), **(meta or {})}
    if result.objective is not None:
        meta["objective"] = [quantity(value).model_dump() for value in result.objective]
    return ReportDocument(command="compute", meta=meta, outcome=_ordered(result.outcome, parties),
                          scores={party: quantity(score) for party, score in assignment.scores.items()},
                          shares={party: quantity(share) for party, share in assignment.shares.items()},
                          seats=seats.seats if seats else {},
                          universes=[_ordered(outcome, parties) for outcome in universes or []],
                          trace=trace)


def check_report(violation: Violation | None, meta: dict[str, Any] | None = None) -> ReportDocument:
    return ReportDocument(command="axioms check", meta=meta or {},
                          violations=[violation_entry(violation)] if violation else [])


def search_report(report: SearchReport, meta: dict[str, Any] | None = None) -> ReportDocument:
    meta = {"axiom": report.axiom.value if report.axiom else None, "rule": report.rule, "seed": report.seed,
            "trials": report.trials, "checked": report.checked, "skipped": report.skipped, "trial": report.trial,
            **(meta or {})}
    return ReportDocument(command="axioms search", meta=meta,
                          violations=[violation_entry(report.violation)] if report.violation else [])


def table_report(rows: list[TableRow], meta: dict[str, Any] | None = None) -> ReportDocument:
    table = [{"rule": row.cell.rule.value, "axiom": row.cell.axiom.value, "expected": row.cell.expected.value,
              "observed": row.observed.value, "agrees": row.agrees, "checked": row.checked,
              "fixture": row.cell.fixture} for row in rows]
    violations = [violation_entry(row.violation) for row in rows if row.violation is not None]
    return ReportDocument(command="axioms table", meta=meta or {}, table=table, violations=violations)


def experiment_report(report: ExperimentReport, meta: dict[str, Any] | None = None) -> ReportDocument:
    """
    Report a sweep. Each series entry is keyed by ``tau`` or, for truncation sweeps, ``k``.
    """
    key = "k" if report.kind is SweepKind.TRUNCATION else "tau"
    series = []
    for point in report.points:
        entry = {key: quantity(point.x).model_dump(), "outcome": list(point.outcome),
                 "parties_selected": point.parties_selected,
                 "unrepresented_share": quantity(point.unrepresented_share).model_dump(),
                 "histogram": {str(rank): quantity(share).model_dump() for rank, share in point.histogram.items()}}
        if key == "k":
            entry["tau"] = quantity(point.tau).model_dump()
        if point.median is not None:
            entry.update(p20=point.p20, median=point.median, p80=point.p80, samples=list(point.samples))
        series.append(entry)
    meta = {"kind": report.kind.value, "rule": report.rule, "seed": report.seed, "sigma": report.sigma,
            "samples": report.samples, **(meta or {})}
    return ReportDocument(command=f"experiment {report.kind.value}", meta=meta, series=series)


def strategic_report(report: StrategicReport, meta: dict[str, Any] | None = None) -> ReportDocument:
    table = [{"category": name, "share": quantity(getattr(report, name)).model_dump()}
             for name in ("inconsistent", "sincere", "strategic_down")]
    table += [{"category": f"strategic_down.{name}", "share": quantity(share).model_dump()}
              for name, share in report.down.items()]
    table.append({"category": "strategic_up", "share": quantity(report.strategic_up).model_dump()})
    table += [{"category": f"strategic_up.{name}", "share": quantity(share).model_dump()}
              for name, share in report.up.items()]
    meta = {"source": report.source.value, "classified": report.classified, "excluded": report.excluded,
            "total_weight": quantity(report.total_weight).model_dump(), **(meta or {})}
    return ReportDocument(command="experiment strategic", meta=meta, table=table)


def _flatten(entry: dict[str, Any]) -> dict[str, Any]:
    flat = {}
    for key, value in entry.items():
        if isinstance(value, dict) and set(value) == {"exact", "approx"}:
            flat[key] = value["exact"]
        elif isinstance(value, (list, dict)):
            continue
        else:
            flat[key] = value
    return flat


def flat_rows(report: ReportDocument) -> list[dict[str, Any]]:
    """
    Rows of the flat table: the series if there is one, else the verification table, else one row
    per selected party.
    """
    if report.series:
        return [_flatten(entry) for entry in report.series]
    if report.table:
        return [_flatten(entry) for entry in report.table]
    if report.violations:
        return [_flatten(entry) for entry in report.violations]
    return [{"party": party, "score": report.scores[party].exact, "share": report.shares[party].exact,
             "seats": report.seats.get(party)} for party in report.outcome or []]


def emit_report(report: ReportDocument, format: ReportFormat = ReportFormat.STRUCTURED) -> str:
    """
    The emit_report function renders a report as JSON with sorted keys, or as a CSV table.

    :param report: ReportDocument: The report
    :param format: ReportFormat: ``structured`` for JSON, ``flat`` for CSV
    :return: The text
    """
    if ReportFormat(format) is ReportFormat.STRUCTURED:
        return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return pd.DataFrame(flat_rows(report)).to_csv(index=False, lineterminator="\n")


def parse_report(text: str) -> ReportDocument:
    try:
        return ReportDocument.model_validate_json(text)
    except ValidationError as err:
        raise PartySelectionError(messages.MALFORMED_REPORT, str(err.errors()[0]["msg"]))


def write_atomic(path: str | Path, text: str) -> None:
    """Write ``text`` next to ``path`` in a temporary file, then move it in place."""
    path = Path(path)
    descriptor, temporary = tempfile.mkstemp(dir=path.parent or Path("."), prefix=f".{path.name}.")
    try:
        with os.fdopen(descriptor, "w", encoding="utf-8") as file:
            file.write(text)
        os.replace(temporary, path)
    except BaseException:
        os.unlink(temporary)
        raise
    logger.debug("wrote %s", path)
