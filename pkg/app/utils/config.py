"""
Configuration settings for unitgroup-lab
"""
from pydantic_settings import BaseSettings
from pydantic import field_validator
from pathlib import Path
from typing import List, Optional, Union
import json

class Settings(BaseSettings):
    """Application settings"""

    # Application
    APP_NAME: str = "unitgroup-lab"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False

    # API
    API_PREFIX: str = "/api"
    ALLOWED_ORIGINS: Union[List[str], str] = [
        "http://localhost:5173",
        "http://localhost:3000",
    ]

    @field_validator('ALLOWED_ORIGINS', mode='before')
    @classmethod
    def parse_allowed_origins(cls, v):
        """Parse ALLOWED_ORIGINS from various formats"""
        if isinstance(v, str):
            # Try to parse as JSON first
            try:
                return json.loads(v)
            except json.JSONDecodeError:
                # Fall back to comma-separated values
                return [origin.strip() for origin in v.split(',') if origin.strip()]
        return v

    # Fixture data (claims registry, Hurwitz table, order-12 spectra)
    DATA_PATH: Path = Path(__file__).resolve().parents[2] / "data"

    # Permutation groups
    MAX_ENUM_DEGREE: int = 9        # full S_n / A_n enumeration
    MAX_PERM_DEGREE: int = 12       # largest degree any PermSet may carry
    CLASS_COUNT_BOUND: int = 24     # subset-of-classes simplicity scan

    # Indexed groups and group algebras
    TABLE_BOUND: int = 5040         # materialized Cayley tables
    GROUP_ALGEBRA_BOUND: int = 5040 # left-regular matrices and ideal closure
    ASSOCIATIVITY_SAMPLES: int = 1_000_000

    # Quotients and rings
    QUOTIENT_DIM_BOUND: int = 24
    AUTOMORPHISM_BOUND: int = 1000
    UNIT_SCAN_CHUNK: int = 8192     # rows per batched elimination

    # Verification runs
    DEFAULT_MAX_N: int = 9
    CLOSURE_CROSSCHECK_MAX_N: int = 7
    THREADS: int = 1
    JSON_OUTPUT: Optional[Path] = None
    RANDOM_SEED: int = 2024

    @field_validator('THREADS')
    @classmethod
    def check_threads(cls, v):
        """At least one worker"""
        if v < 1:
            raise ValueError("THREADS must be >= 1")
        return v

    model_config = {
        "env_file": ".env",
        "case_sensitive": True,
        "extra": "ignore"
    }

settings = Settings()
