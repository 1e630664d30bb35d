from typing import Any

from pydantic import ConfigDict, field_validator, model_validator
from pydantic_settings import BaseSettings


LOG_LEVELS = ("CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG")


class Settings(BaseSettings):
    LOG_LEVEL: str = "INFO"

    GENERIC_MAX_PARTIES: int = 20
    PARALLEL_UNIVERSE_MAX_PARTIES: int = 12
    SOLVER_MAX_PARTIES: int = 16
    ENUMERATION_MAX_PARTIES: int = 12
    MISREPORT_MAX_PARTIES: int = 6

    SEARCH_TRIALS: int = 10000
    SEARCH_MAX_PARTIES: int = 5
    SEARCH_MAX_VOTERS: int = 10
    SEED: int = 42
    WORKERS: int = 1

    NOISE_SAMPLES: int = 100
    NOISE_SIGMA: float = 0.1

    BUCKET_SAFE: float = 7.0
    BUCKET_RISKY_LOW: float = 5.0
    BUCKET_RISKY_HIGH: float = 6.0
    BUCKET_OUT: float = 3.0

    CORS_ORIGINS: list[str] = ["http://localhost:8000"]
    REPORT_SCHEMA_VERSION: str = "1.0"

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, value: Any):
        value = str(value).upper()
        if value not in LOG_LEVELS:
            raise ValueError("Invalid log level specified")
        return value

    @model_validator(mode="after")
    def validate_buckets(self):
        if not self.BUCKET_OUT <= self.BUCKET_RISKY_LOW <= self.BUCKET_RISKY_HIGH <= self.BUCKET_SAFE:
            raise ValueError("Bucket cuts must satisfy out <= risky low <= risky high <= safe")
        return self

    model_config = ConfigDict(extra='ignore', env_file=".env", env_file_encoding="utf-8")  # noqa


config = Settings()
