"""
Configuration settings for the Rumin complex calculator
"""
import os
from typing import Any, Dict, Optional
from dotenv import load_dotenv

load_dotenv()


class Config:
    """Configuration class for the calculator"""

    # Logging Configuration
    LOG_FILE: Optional[str] = os.getenv('RUMIN_LOG_FILE', '') or None
    LOG_LEVEL: str = os.getenv('RUMIN_LOG_LEVEL', 'INFO')
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    # Symbolic calculus
    MAX_HOMOGENEITY: int = int(os.getenv('RUMIN_MAX_HOMOGENEITY', '4'))

    # Numeric harness
    SAMPLES: int = int(os.getenv('RUMIN_SAMPLES', '100000'))
    SEED: int = int(os.getenv('RUMIN_SEED', '0'))
    BLOCK_SIZE: int = int(os.getenv('RUMIN_BLOCK_SIZE', '65536'))
    WORKERS: int = int(os.getenv('RUMIN_WORKERS', '1'))
    INNER_RATIO: float = float(os.getenv('RUMIN_INNER_RATIO', '1e-3'))
    MIN_SAMPLES = 1000

    # Structured reports
    SCHEMA_VERSION = 1

    @classmethod
    def validate_config(cls) -> bool:
        """Validate that the configured values are usable"""
        if cls.MAX_HOMOGENEITY < 2:
            return False
        if cls.SAMPLES < cls.MIN_SAMPLES or cls.BLOCK_SIZE < 1 or cls.WORKERS < 1:
            return False
        if not 0 < cls.INNER_RATIO < 1:
            return False
        return True

    @classmethod
    def as_dict(cls) -> Dict[str, Any]:
        """Resolved configuration, echoed into every report"""
        return {
            'max_homogeneity': cls.MAX_HOMOGENEITY,
            'samples': cls.SAMPLES,
            'seed': cls.SEED,
            'block_size': cls.BLOCK_SIZE,
            'workers': cls.WORKERS,
            'inner_ratio': cls.INNER_RATIO,
        }
