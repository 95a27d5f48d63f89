"""Unified application settings."""

from typing import Literal

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings


class ComputeSettings(BaseSettings):
    """Defaults for constructions and searches."""

    # A 2-groupoid is determined by levels 0..4
    default_truncation: int = Field(default=4, ge=1)

    # Cap on counterexamples attached to a failing report
    max_witnesses: int = Field(default=5, ge=1)

    # Seed for random instance generation (property tests, CLI samplers)
    default_seed: int = 20240601

    class Config:
        env_prefix = "HGK_"


class ReportSettings(BaseSettings):
    """Configuration for CLI report rendering."""

    # quiet: verdict line only; normal: prose + key-value block;
    # verbose: also nested sub-reports
    verbosity: Literal["quiet", "normal", "verbose"] = "normal"

    # Default output format when --format is not given
    default_format: Literal["text", "structured"] = "text"

    class Config:
        env_prefix = "HGK_REPORT_"


class AppSettings(BaseSettings):
    """Main application settings that contains all sub-settings."""

    # Sub-settings - using Field(default_factory=...) to ensure fresh instances
    compute: ComputeSettings = Field(default_factory=ComputeSettings)
    reports: ReportSettings = Field(default_factory=ReportSettings)

    class Config:
        env_prefix = ""


load_dotenv()

# Global settings instance
settings = AppSettings()

# Convenience exports
compute_settings = settings.compute
report_settings = settings.reports
