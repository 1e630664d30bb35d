"""
Survey and official results files.

A survey file is a CSV with the columns ``respondent_id, intention, two_vote, full_ranking`` and
optionally ``completed_at`` (ISO date). Rankings hold party ids separated by ``;``; a blank
intention means the respondent gave none. Row numbers in errors count data rows from 1.
"""
import datetime
import io
import logging
from fractions import Fraction
from typing import Sequence

import pandas as pd
from pydantic import ValidationError

from src.conf import messages
from src.entity.exceptions import SurveyFormatError
from src.entity.models import to_fraction
from src.schemas.experiment import ColumnMapping, SurveyRow

logger = logging.getLogger(__name__)

SEPARATOR = ";"
COLUMNS = ("respondent_id", "intention", "two_vote", "full_ranking")
OPTIONAL_COLUMNS = ("completed_at",)


def _read(text: str) -> pd.DataFrame:
    try:
        return pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.ParserError as err:
        raise SurveyFormatError(messages.MALFORMED_LINE, str(err))
    except pd.errors.EmptyDataError:
        return pd.DataFrame(columns=list(COLUMNS))


def _ranking(cell: str, roster: set[str], row: int) -> tuple[str, ...]:
    ranking = tuple(party.strip() for party in cell.split(SEPARATOR) if party.strip())
    for party in ranking:
        if party not in roster:
            raise SurveyFormatError(messages.UNKNOWN_PARTY, party, row)
    if len(set(ranking)) != len(ranking):
        raise SurveyFormatError(messages.SURVEY_DUPLICATE_RANK, cell, row)
    return ranking


def parse_survey(csv_text: str, roster: Sequence[str]) -> list[SurveyRow]:
    """
    The parse_survey function reads survey answers and checks every party against the roster.

    :param csv_text: str: The survey file
    :param roster: Sequence[str]: Known party ids
    :return: One row per respondent, in file order
    """
    frame = _read(csv_text)
    missing = [column for column in COLUMNS if column not in frame.columns]
    if missing:
        raise SurveyFormatError(messages.SURVEY_MISSING_COLUMN, ", ".join(missing))
    known = set(roster)
    rows = []
    for number, record in enumerate(frame.to_dict("records"), start=1):
        intention = record["intention"].strip() or None
        if intention is not None and intention not in known:
            raise SurveyFormatError(messages.UNKNOWN_PARTY, intention, number)
        two_vote = _ranking(record["two_vote"], known, number)
        if len(two_vote) > 2:
            raise SurveyFormatError(messages.SURVEY_TWO_VOTE_LENGTH, record["two_vote"], number)
        completed_at = None
        if record.get("completed_at", "").strip():
            try:
                completed_at = datetime.date.fromisoformat(record["completed_at"].strip())
            except ValueError:
                raise SurveyFormatError(messages.SURVEY_BAD_DATE, record["completed_at"], number)
        try:
            rows.append(SurveyRow(respondent_id=record["respondent_id"].strip(), intention=intention,
                                  two_vote=two_vote, full_ranking=_ranking(record["full_ranking"], known, number),
                                  completed_at=completed_at))
        except ValidationError as err:
            raise SurveyFormatError(messages.MALFORMED_LINE, str(err.errors()[0]["msg"]), number)
    logger.info("read %d survey rows", len(rows))
    return rows


def completed_before(rows: Sequence[SurveyRow], day: datetime.date) -> list[SurveyRow]:
    """Rows completed strictly before ``day``; rows without a date are kept."""
    return [row for row in rows if row.completed_at is None or row.completed_at < day]


def write_survey(rows: Sequence[SurveyRow]) -> str:
    """
    Render rows in the survey format read by :func:`parse_survey`.

    >>> write_survey([SurveyRow(respondent_id="17", intention="PS", two_vote=("PS", "EELV"))])
    'respondent_id,intention,two_vote,full_ranking,completed_at\\n17,PS,PS;EELV,,\\n'
    """
    frame = pd.DataFrame([{"respondent_id": row.respondent_id, "intention": row.intention or "",
                           "two_vote": SEPARATOR.join(row.two_vote),
                           "full_ranking": SEPARATOR.join(row.full_ranking),
                           "completed_at": row.completed_at.isoformat() if row.completed_at else ""}
                          for row in rows], columns=[*COLUMNS, *OPTIONAL_COLUMNS])
    return frame.to_csv(index=False, lineterminator="\n")


def parse_official_results(csv_text: str) -> dict[str, Fraction]:
    """
    The parse_official_results function reads official results with a ``party`` column and either
    a ``votes`` or a ``share`` column.

    Vote counts become shares of their total; shares are taken as given, between 0 and 1.

    :param csv_text: str: The results file
    :return: The share of every party, in file order
    """
    frame = _read(csv_text)
    value = "votes" if "votes" in frame.columns else "share" if "share" in frame.columns else None
    if "party" not in frame.columns or value is None:
        raise SurveyFormatError(messages.RESULTS_MALFORMED, ", ".join(frame.columns))
    values = {}
    for number, record in enumerate(frame.to_dict("records"), start=1):
        try:
            amount = to_fraction(record[value])
        except (ValueError, ZeroDivisionError):
            raise SurveyFormatError(messages.RESULTS_MALFORMED, repr(record[value]), number)
        if amount < 0 or (value == "share" and amount > 1):
            raise SurveyFormatError(messages.RESULTS_MALFORMED, repr(record[value]), number)
        values[record["party"].strip()] = amount
    if value == "share":
        return values
    total = sum(values.values(), Fraction(0))
    if total == 0:
        raise SurveyFormatError(messages.RESULTS_MALFORMED, "no votes")
    return {party: votes / total for party, votes in values.items()}


def _mapped_ranking(record: dict, columns: str | list[str], mapping: ColumnMapping) -> str:
    if isinstance(columns, str):
        labels = record[columns].split(mapping.separator)
    else:
        labels = [record[column] for column in columns]
    parties = [mapping.parties.get(label.strip(), label.strip()) for label in labels if label.strip()]
    return SEPARATOR.join(parties)


def convert_export(csv_text: str, mapping: ColumnMapping) -> str:
    """
    The convert_export function rewrites a survey export with its own column names into the survey format.

    :param csv_text: str: The exported file
    :param mapping: ColumnMapping: Where each field lives and how party labels translate
    :return: The survey file text
    """
    frame = _read(csv_text)
    needed = [mapping.respondent_id, mapping.intention]
    for columns in (mapping.two_vote, mapping.full_ranking):
        needed.extend([columns] if isinstance(columns, str) else columns)
    if mapping.completed_at:
        needed.append(mapping.completed_at)
    missing = [column for column in needed if column not in frame.columns]
    if missing:
        raise SurveyFormatError(messages.SURVEY_MISSING_COLUMN, ", ".join(missing))
    converted = pd.DataFrame({
        "respondent_id": frame[mapping.respondent_id].str.strip(),
        "intention": frame[mapping.intention].str.strip().map(lambda label: mapping.parties.get(label, label)),
        "two_vote": [_mapped_ranking(record, mapping.two_vote, mapping) for record in frame.to_dict("records")],
        "full_ranking": [_mapped_ranking(record, mapping.full_ranking, mapping)
                         for record in frame.to_dict("records")],
        "completed_at": frame[mapping.completed_at].str.strip().str[:10] if mapping.completed_at else "",
    }, columns=[*COLUMNS, *OPTIONAL_COLUMNS])
    logger.info("converted %d exported rows", len(converted))
    return converted.to_csv(index=False, lineterminator="\n")
