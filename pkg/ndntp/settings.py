import os
from typing import Optional

from pydantic import BaseModel


def parse_bool(value: str | None, default: bool = False) -> bool:
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "on"}


def parse_optional_int(value: str | None) -> Optional[int]:
    if value is None or not value.strip():
        return None
    return int(value)


class Settings(BaseModel):
    DATABASE_URL: str = os.getenv("NDNTP_DATABASE_URL", "sqlite:///ndntp_runs.db")

    SIM_SEED: Optional[int] = parse_optional_int(os.getenv("NDNTP_SIM_SEED"))
    OUT_DIR: str = os.getenv("NDNTP_OUT_DIR", "out")
    LOG_LEVEL: str = os.getenv("NDNTP_LOG_LEVEL", "INFO")
    SWEEP_WORKERS: int = int(os.getenv("NDNTP_SWEEP_WORKERS", "1"))
    PERSIST_RUNS: bool = parse_bool(os.getenv("NDNTP_PERSIST_RUNS"), False)


settings = Settings()
