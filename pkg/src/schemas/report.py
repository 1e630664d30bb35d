from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from src.conf.config import config
from src.entity.models import RuleId


class Quantity(BaseModel):
    """An exact rational next to its decimal approximation."""
    exact: str
    approx: float


class ReportDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")  # noqa

    schema_version: str = Field(default_factory=lambda: config.REPORT_SCHEMA_VERSION)
    command: str
    meta: dict[str, Any] = {}
    outcome: list[str] | None = None
    scores: dict[str, Quantity] = {}
    shares: dict[str, Quantity] = {}
    seats: dict[str, int] = {}
    universes: list[list[str]] = []
    trace: list[dict[str, Any]] = []
    series: list[dict[str, Any]] = []
    violations: list[dict[str, Any]] = []
    table: list[dict[str, Any]] = []


class ComputeSchema(BaseModel):
    profile: str = Field(min_length=1)
    tau: str | None = None
    rule: RuleId = RuleId.STV
    parallel_universe: bool = False
    seats: int | None = Field(default=None, ge=1)
