from typing import Literal, Optional

from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    workbench configuration loaded from environment variables
    every field can be set as DISTORT_LAB_<FIELD>, e.g. DISTORT_LAB_THREADS=4
    """

    # app metadata
    app_name: str = "distort-lab"
    app_version: str = "1.0.0"

    # logging
    log_level: str = "INFO"
    log_format: Literal["json", "plain"] = "json"

    # construction limits
    size_cap: int = Field(5000, gt=0)
    width: int = Field(3, gt=0)
    cap: int = Field(64, gt=0)

    # solver
    budget: int = Field(200000, gt=0)
    threads: int = Field(1, gt=0)
    subproblem: Literal["cycles", "simplex"] = "cycles"
    solver_time_limit: Optional[float] = Field(None, gt=0)

    # property sampling
    seed: int = 20240607
    ordinal_samples: int = Field(10000, gt=0)

    model_config = SettingsConfigDict(env_file=".env", env_prefix="DISTORT_LAB_", case_sensitive=False)


class RunConfig(BaseModel):
    """per-invocation snapshot: settings overridden by command-line flags"""

    run_id: str
    command: str
    size_cap: int = Field(gt=0)
    width: int = Field(gt=0)
    budget: int = Field(gt=0)
    threads: int = Field(gt=0)
    seed: int
    subproblem: str
    output: Optional[str] = None

    @classmethod
    def from_settings(cls, base: Settings, run_id: str, command: str, **overrides) -> "RunConfig":
        values = {
            "size_cap": base.size_cap,
            "width": base.width,
            "budget": base.budget,
            "threads": base.threads,
            "seed": base.seed,
            "subproblem": base.subproblem,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(run_id=run_id, command=command, **values)


# global settings instance
settings = Settings()
