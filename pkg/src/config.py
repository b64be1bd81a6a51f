"""
Application settings.

Every value can be set through the environment (prefix ``ZALG_``) or a
``.env`` file in the working directory; command-line flags always win.

    ZALG_FIELD=fp:5
    ZALG_WINDOW=-2..2
    ZALG_LOG_LEVEL=INFO
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.foundations.fields import FieldSpec
from src.foundations.groups import Window

ROOT = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="ZALG_", env_file=".env", extra="ignore")

    field: str = "q"
    window: str | None = None
    index_window: str | None = None
    format: str = "text"
    log_level: str = "WARNING"
    log_config: Path = ROOT / "logging.ini"
    corpus_dir: Path = ROOT / "build" / "corpus"

    @field_validator("field")
    @classmethod
    def _check_field(cls, value: str) -> str:
        FieldSpec.parse(value)
        return value

    @field_validator("window", "index_window")
    @classmethod
    def _check_window(cls, value: str | None) -> str | None:
        if value is not None:
            Window.parse(value)
        return value

    @field_validator("format")
    @classmethod
    def _check_format(cls, value: str) -> str:
        if value not in ("text", "machine"):
            raise ValueError("format must be 'text' or 'machine'")
        return value

    @field_validator("log_level")
    @classmethod
    def _check_level(cls, value: str) -> str:
        value = value.upper()
        if value not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level {value!r}")
        return value

    def field_spec(self) -> FieldSpec:
        return FieldSpec.parse(self.field)


@lru_cache
def get_settings() -> Settings:
    return Settings()
