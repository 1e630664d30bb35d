import enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.entity.models import AxiomId, Restriction, RuleId, Violation


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    REPORTED = "reported"


class SearchBounds(BaseModel):
    """
    Shape of randomly drawn profiles. ``tau_range`` bounds the threshold as a share of the number
    of voters; thresholds are whole numbers of voters.
    """
    max_parties: int = Field(default=5, ge=1)
    max_voters: int = Field(default=10, ge=1)
    tau_range: tuple[float, float] = (0.0, 1.0)
    generic: bool = False

    @model_validator(mode="after")
    def validate_tau_range(self):
        low, high = self.tau_range
        if not 0 <= low <= high <= 1:
            raise ValueError("tau_range must satisfy 0 <= low <= high <= 1")
        return self


class SearchReport(BaseModel):
    axiom: AxiomId | None = None
    rule: str
    seed: int
    trials: int
    checked: int = 0
    skipped: int = 0
    violation: Violation | None = None
    trial: int | None = None

    @property
    def passed(self) -> bool:
        return self.violation is None


class TableCell(BaseModel):
    rule: RuleId
    axiom: AxiomId
    expected: Verdict
    bounds: SearchBounds = SearchBounds()
    max_trials: int | None = None
    fixture: str | None = None
    model_config = ConfigDict(frozen=True)  # noqa


class TableRow(BaseModel):
    cell: TableCell
    observed: Verdict
    agrees: bool
    violation: Violation | None = None
    checked: int = 0


class AxiomCheckSchema(BaseModel):
    profile: str = Field(min_length=1)
    tau: str | None = None
    tau_prime: str | None = None
    rule: RuleId
    axiom: AxiomId
    voter: int | None = Field(default=None, ge=0)
    party: str | None = None
    restriction: Restriction | None = None


class AxiomCheckResponse(BaseModel):
    violated: bool
    violation: Violation | None = None


class FixtureResponse(BaseModel):
    name: str
    rule: RuleId
    axiom: AxiomId
    reproduces: bool
    narrative: str | None = None


class StoredCounterexample(BaseModel):
    """A profile document on which ``rule`` is known to break ``axiom``, with the check arguments."""
    name: str
    rule: RuleId
    axiom: AxiomId
    document: str
    voter: int | None = None
    party: str | None = None
    tau_prime: str | None = None
    pair: tuple[str, str] | None = None
    second: str | None = None
    restriction: Restriction | None = None
    model_config = ConfigDict(frozen=True)  # noqa
