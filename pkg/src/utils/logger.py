"""
Logging utilities for the calculator
"""
import logging
from typing import Any, Dict, Optional

from src.config import Config


class CalcLogger:
    """Structured logger shared by every module"""

    def __init__(self, log_file: Optional[str] = None, log_level: Optional[str] = None):
        self.log_file = log_file or Config.LOG_FILE
        self.logger = logging.getLogger('RuminCalc')
        self.logger.setLevel(getattr(logging, (log_level or Config.LOG_LEVEL).upper()))

        # Handlers are process-wide; attach them once
        if not self.logger.handlers:
            formatter = logging.Formatter(Config.LOG_FORMAT)

            console_handler = logging.StreamHandler()
            console_handler.setFormatter(formatter)
            self.logger.addHandler(console_handler)

            if self.log_file:
                file_handler = logging.FileHandler(self.log_file)
                file_handler.setFormatter(formatter)
                self.logger.addHandler(file_handler)

    def log_operation(self, operation: str, **data: Any):
        """Log the start of a symbolic operation"""
        operation_data = {'operation': operation, **data}
        self.logger.info(f"OPERATION: {operation_data}")

    def log_result(self, operation: str, **data: Any):
        """Log the outcome of a symbolic operation"""
        result_data = {'operation': operation, **data}
        self.logger.info(f"RESULT: {result_data}")

    def log_experiment(self, name: str, seed: int, samples: int, **data: Any):
        """Log a numeric experiment"""
        experiment_data = {
            'experiment': name,
            'seed': seed,
            'samples': samples,
            **data
        }
        self.logger.info(f"EXPERIMENT: {experiment_data}")

    def log_error(self, error: Exception, context: Dict[str, Any] = None):
        """Log errors with context"""
        error_data = {
            'error': str(error),
            'type': type(error).__name__,
            'context': context or {},
        }
        self.logger.error(f"ERROR: {error_data}")

    def info(self, message: str):
        """Log info message"""
        self.logger.info(message)

    def warning(self, message: str):
        """Log warning message"""
        self.logger.warning(message)

    def error(self, message: str):
        """Log error message"""
        self.logger.error(message)
