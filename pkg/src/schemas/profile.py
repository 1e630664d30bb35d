from pydantic import BaseModel, ConfigDict

from src.entity.models import Profile, Threshold


class ProfileDocument(BaseModel):
    profile: Profile
    tau: Threshold | None = None
    model_config = ConfigDict(frozen=True)  # noqa
