import datetime
import enum
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.conf import messages
from src.entity.models import PartyStatus, to_fraction


class RankingSource(str, enum.Enum):
    TWO_VOTE = "two_vote"
    FULL = "full"


class SweepKind(str, enum.Enum):
    THRESHOLD = "threshold"
    TRUNCATION = "truncation"
    NOISE = "noise"


class SurveyRow(BaseModel):
    """
    One survey answer: the party the respondent voted (or intended to vote) for and the two
    rankings they gave. ``weight`` is filled in by the weighting step.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    respondent_id: str
    intention: str | None = None
    two_vote: tuple[str, ...] = ()
    full_ranking: tuple[str, ...] = ()
    completed_at: datetime.date | None = None
    weight: Fraction = Fraction(1)

    @field_validator("two_vote")
    @classmethod
    def validate_two_vote(cls, value: tuple[str, ...]):
        if len(value) > 2:
            raise ValueError(messages.SURVEY_TWO_VOTE_LENGTH)
        if len(set(value)) != len(value):
            raise ValueError(messages.SURVEY_DUPLICATE_RANK)
        return value

    @field_validator("full_ranking")
    @classmethod
    def validate_full_ranking(cls, value: tuple[str, ...]):
        if len(set(value)) != len(value):
            raise ValueError(messages.SURVEY_DUPLICATE_RANK)
        return value

    @field_validator("weight", mode="before")
    @classmethod
    def validate_weight(cls, value: Any):
        return to_fraction(value)

    def ranking(self, source: RankingSource) -> tuple[str, ...]:
        return self.two_vote if RankingSource(source) is RankingSource.TWO_VOTE else self.full_ranking


class PartyBuckets(BaseModel):
    """Official vote shares and the safe/risky/out bucket each party falls in."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    shares: dict[str, Fraction]
    buckets: dict[str, PartyStatus]
    flagged: tuple[str, ...] = ()

    @model_validator(mode="after")
    def validate_partition(self):
        if set(self.shares) != set(self.buckets):
            raise ValueError("Every party needs both a share and a bucket")
        return self


class StrategicReport(BaseModel):
    """
    Weighted fractions of respondents per category. ``down`` and ``up`` break the two strategic
    categories down by ``<bucket of first choice>_to_<bucket of voted party>``.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    source: RankingSource
    inconsistent: Fraction = Fraction(0)
    sincere: Fraction = Fraction(0)
    strategic_down: Fraction = Fraction(0)
    strategic_up: Fraction = Fraction(0)
    down: dict[str, Fraction] = {}
    up: dict[str, Fraction] = {}
    classified: int = 0
    excluded: int = 0
    total_weight: Fraction = Fraction(0)


class ExperimentPoint(BaseModel):
    """
    One grid point of a sweep: ``x`` is the threshold for threshold and noise sweeps and the
    truncation length for truncation sweeps.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: Fraction
    tau: Fraction
    outcome: tuple[str, ...]
    parties_selected: int
    unrepresented_share: Fraction
    histogram: dict[int, Fraction] = {}
    p20: float | None = None
    median: float | None = None
    p80: float | None = None
    samples: tuple[float, ...] = ()


class ExperimentReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: SweepKind
    rule: str
    points: tuple[ExperimentPoint, ...] = ()
    seed: int | None = None
    sigma: float | None = None
    samples: int | None = Field(default=None, ge=1)


class ColumnMapping(BaseModel):
    """
    Where the survey fields live in a foreign CSV export. Rankings are either one column holding
    ``separator``-joined party labels or a list of columns, one per rank. ``parties`` renames
    party labels to roster ids; unlisted labels pass through.
    """
    respondent_id: str
    intention: str
    two_vote: str | list[str]
    full_ranking: str | list[str]
    completed_at: str | None = None
    separator: str = ";"
    parties: dict[str, str] = {}
