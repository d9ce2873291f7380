"""
Suite Configuration
===================
Run settings for the verification suites, validated by pydantic and seeded
from the environment (.env supported through python-dotenv).

Usage:
    config = SuiteConfig.from_env(suite="udf", order=2)
    config.report_path()

Design decisions:
    - The ħ-order is bounded to [0, 4], the order the shipped Jordanian
      fixture is tabulated to.
    - Environment variables only provide defaults; explicit CLI values win.
"""

import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()

DEFAULT_REPORT_DIR = "data/results"
DEFAULT_ORDER = 3
DEFAULT_SEED = 20240101
DEFAULT_SAMPLES = 50
MAX_ORDER = 4


class SuiteConfig(BaseModel):
    """One verification run."""
    suite: str = "all"
    order: int = Field(DEFAULT_ORDER, ge=0, le=MAX_ORDER)
    seed: int = DEFAULT_SEED
    samples: int = Field(DEFAULT_SAMPLES, gt=0)
    exp_samples: int = Field(20, gt=0)
    twist: str = "jordanian"
    report_dir: str = DEFAULT_REPORT_DIR
    report: Optional[str] = None

    @classmethod
    def from_env(cls, **overrides) -> "SuiteConfig":
        values = {
            "report_dir": os.getenv("TWISTLAB_REPORT_DIR", DEFAULT_REPORT_DIR),
            "order": os.getenv("TWISTLAB_ORDER", DEFAULT_ORDER),
            "seed": os.getenv("TWISTLAB_SEED", DEFAULT_SEED),
            "samples": os.getenv("TWISTLAB_SAMPLES", DEFAULT_SAMPLES),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def report_path(self) -> str:
        if self.report:
            return self.report
        return os.path.join(self.report_dir, f"twistlab_{self.suite}_seed{self.seed}.json")
