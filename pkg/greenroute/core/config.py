from functools import lru_cache
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    ENV: str = "dev"
    LOG_LEVEL: Optional[str] = None

    # Search limits
    MAX_PATHS: int = 10_000  # per demand
    DEFAULT_BUDGET: int = 1_000_000  # B&B nodes
    ORACLE_LIMIT: int = 1_000_000  # product of per-demand path counts
    THREADS: int = 1

    # Verify flow conservation of routings handed to derive_support
    DEBUG_CHECKS: bool = False

    model_config = SettingsConfigDict(env_prefix="GREENROUTE_", env_file=".env")


@lru_cache()
def get_settings() -> Settings:
    return Settings()
