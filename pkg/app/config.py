"""
Application configuration from environment variables.
"""

import os


class Config:
    """Application configuration from environment variables."""

    # Reproducibility
    DEFAULT_SEED: int = int(os.getenv('DEFAULT_SEED', '1981'))
    THREADS: int = int(os.getenv('THREADS', '1'))

    # Corpus
    PARSE_POLICY: str = os.getenv('PARSE_POLICY', 'strict')

    # Metrics
    CRAND_SAMPLES: int = int(os.getenv('CRAND_SAMPLES', '50'))
    FIT_LOG_BASE: float = float(os.getenv('FIT_LOG_BASE', '2.0'))

    # Invasion model
    ENSEMBLE_RUNS: int = int(os.getenv('ENSEMBLE_RUNS', '50'))
    CALIBRATION_TOL: float = float(os.getenv('CALIBRATION_TOL', '0.1'))
    ALPHA_MIN: float = float(os.getenv('ALPHA_MIN', '0.0'))
    ALPHA_MAX: float = float(os.getenv('ALPHA_MAX', '2.0'))

    # Logging
    LOG_LEVEL: str = os.getenv('LOG_LEVEL', 'INFO')
    LOG_FILE: str = os.getenv('LOG_FILE', '')

    @classmethod
    def validate(cls) -> None:
        """
        Validate configuration on startup.

        Raises:
            ValueError: If any setting is out of range
        """
        problems = []

        if cls.THREADS < 1:
            problems.append('THREADS must be >= 1')
        if cls.PARSE_POLICY not in ('strict', 'skip'):
            problems.append("PARSE_POLICY must be 'strict' or 'skip'")
        if cls.CRAND_SAMPLES < 1:
            problems.append('CRAND_SAMPLES must be >= 1')
        if cls.ENSEMBLE_RUNS < 1:
            problems.append('ENSEMBLE_RUNS must be >= 1')
        if cls.FIT_LOG_BASE <= 1.0:
            problems.append('FIT_LOG_BASE must be > 1')
        if cls.CALIBRATION_TOL <= 0.0:
            problems.append('CALIBRATION_TOL must be > 0')
        if not cls.ALPHA_MIN < cls.ALPHA_MAX:
            problems.append('ALPHA_MIN must be < ALPHA_MAX')
        if cls.LOG_LEVEL.upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            problems.append(f'Unknown LOG_LEVEL: {cls.LOG_LEVEL}')

        if problems:
            raise ValueError(
                f"Invalid configuration: {'; '.join(problems)}"
            )
