import enum
from fractions import Fraction
from typing import Any, Iterable

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.conf import messages

Outcome = frozenset[str]


def to_fraction(value: Any) -> Fraction:
    """
    Convert ``value`` to an exact rational.

    Floats are converted by their exact binary value, strings may be decimals or ``p/q``.

    >>> to_fraction("2.5")
    Fraction(5, 2)
    >>> to_fraction(0.5)
    Fraction(1, 2)
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


class RuleId(str, enum.Enum):
    DO = "do"
    STV = "stv"
    GP = "gp"
    UNINOMINAL = "uninominal"
    MAXP = "maxp"
    MAXR = "maxr"
    DO_PLUS = "do+"
    STV_PLUS = "stv+"
    GP_PLUS = "gp+"


class AxiomId(str, enum.Enum):
    SET_MAXIMALITY = "set_maximality"
    WEAK_EFFICIENCY = "weak_efficiency"
    DIRECT_WINNERS = "direct_winners"
    SOLID_COALITIONS = "solid_coalitions"
    LOCAL_STABILITY = "local_stability"
    UNREPRESENTED = "unrepresented"
    THRESHOLD_MONOTONICITY = "threshold_monotonicity"
    IDLP = "idlp"
    CLONE_INDEPENDENCE = "clone_independence"
    REINFORCEMENT = "reinforcement"
    MONOTONICITY = "monotonicity"
    REP_SP_ONE_RISKY = "rep_sp_one_risky"
    SHARE_SP_SAFE_TOP2 = "share_sp_safe_top2"
    SHARE_SP_PROMOTE = "share_sp_promote"
    COALITION_INSURANCE = "coalition_insurance"


class PartyStatus(str, enum.Enum):
    SAFE = "safe"
    RISKY = "risky"
    OUT = "out"


class Restriction(str, enum.Enum):
    NONE = "none"
    SAFE_TOP2 = "safe_top2"
    PROMOTE_REPRESENTATIVE = "promote_representative"


class Action(str, enum.Enum):
    SELECTED = "selected"
    ELIMINATED = "eliminated"
    SKIPPED = "skipped"


class Party(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str = Field(min_length=1)
    priority: int = Field(ge=0)


class Ballot(BaseModel):
    """
    A weighted truncated ranking. ``group`` names the stratum the ballot's weight was derived from,
    used by the noise model; it defaults to the first-ranked party.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    ranking: tuple[str, ...] = ()
    weight: Fraction = Fraction(1)
    group: str | None = None

    @field_validator("weight", mode="before")
    @classmethod
    def validate_weight(cls, value: Any):
        value = to_fraction(value)
        if value < 0:
            raise ValueError(messages.NEGATIVE_WEIGHT)
        return value

    @field_validator("ranking")
    @classmethod
    def validate_ranking(cls, value: tuple[str, ...]):
        if len(set(value)) != len(value):
            raise ValueError(messages.DUPLICATE_PARTY)
        return value

    @property
    def stratum(self) -> str | None:
        if self.group is not None:
            return self.group
        return self.ranking[0] if self.ranking else None


class Profile(BaseModel):
    model_config = ConfigDict(frozen=True)

    roster: tuple[Party, ...] = ()
    ballots: tuple[Ballot, ...] = ()

    @model_validator(mode="after")
    def validate_roster(self):
        ids = [party.id for party in self.roster]
        if len(set(ids)) != len(ids):
            raise ValueError(messages.DUPLICATE_ROSTER)
        if sorted(party.priority for party in self.roster) != list(range(len(ids))):
            raise ValueError(messages.INVALID_PRIORITY)
        known = set(ids)
        for ballot in self.ballots:
            for party in ballot.ranking:
                if party not in known:
                    raise ValueError(f"{messages.UNKNOWN_PARTY}: {party}")
        return self

    @classmethod
    def build(cls, parties: Iterable[str], ballots: Iterable[tuple[Any, Iterable[str]]] = ()) -> "Profile":
        """
        Build a profile from party ids in priority order and ``(weight, ranking)`` pairs.

        >>> Profile.build("ab", [(2, "a"), (1, "ba")]).total_weight
        Fraction(3, 1)
        """
        roster = tuple(Party(id=party, priority=index) for index, party in enumerate(parties))
        return cls(roster=roster, ballots=tuple(Ballot(ranking=tuple(ranking), weight=weight)
                                                for weight, ranking in ballots))

    @property
    def parties(self) -> tuple[str, ...]:
        """Party ids in priority order, highest priority first."""
        return tuple(party.id for party in sorted(self.roster, key=lambda party: party.priority))

    @property
    def total_weight(self) -> Fraction:
        return sum((ballot.weight for ballot in self.ballots), Fraction(0))

    def priority_of(self) -> dict[str, int]:
        return {party.id: party.priority for party in self.roster}

    def with_ballots(self, ballots: Iterable[Ballot]) -> "Profile":
        """Same roster, new ballots. Ballots are trusted to be valid for the roster."""
        return Profile.model_construct(roster=self.roster, ballots=tuple(ballots))


class Threshold(BaseModel):
    """A threshold as given by a user: an absolute weight or a percentage of the total weight."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Fraction
    relative: bool = False

    @field_validator("value", mode="before")
    @classmethod
    def validate_value(cls, value: Any):
        value = to_fraction(value)
        if value < 0:
            raise ValueError(messages.INVALID_THRESHOLD)
        return value

    @classmethod
    def parse(cls, text: str) -> "Threshold":
        """
        >>> Threshold.parse("5%").resolve(Fraction(200))
        Fraction(10, 1)
        >>> Threshold.parse("5/2").resolve(Fraction(10))
        Fraction(5, 2)
        """
        text = text.strip()
        if text.endswith("%"):
            return cls(value=text[:-1], relative=True)
        return cls(value=text)

    def resolve(self, total: Fraction) -> Fraction:
        if self.relative:
            return self.value * total / 100
        return self.value

    def __str__(self) -> str:
        return f"{self.value}%" if self.relative else str(self.value)


class Assignment(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    representative: tuple[str | None, ...] = ()
    scores: dict[str, Fraction] = {}
    shares: dict[str, Fraction] = {}
    unrepresented: Fraction = Fraction(0)


class TraceEvent(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    party: str
    action: Action
    step: int
    score: Fraction


class AugmentStep(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    added: str
    weight: Fraction
    removed: tuple[str, ...] = ()
    outcome: Outcome


class RuleResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    rule: str
    tau: Fraction
    outcome: Outcome
    assignment: Assignment
    trace: tuple[TraceEvent, ...] = ()
    augment_trace: tuple[AugmentStep, ...] = ()
    objective: tuple[Fraction, ...] | None = None


class SeatAllocation(BaseModel):
    seats: dict[str, int]
    house_size: int = Field(ge=1)


class Witness(BaseModel):
    """Everything needed to re-run a checker and observe the same failure."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    profile: Profile
    tau: Fraction
    outcome: Outcome
    profile_prime: Profile | None = None
    tau_prime: Fraction | None = None
    outcome_prime: Outcome | None = None
    voter: int | None = None
    party: str | None = None
    pair: tuple[str, str] | None = None
    report: tuple[str, ...] | None = None
    restriction: Restriction | None = None
    coalition: tuple[str, ...] | None = None
    before: Fraction | None = None
    after: Fraction | None = None


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    axiom: AxiomId
    rule: str
    witness: Witness
    narrative: str
