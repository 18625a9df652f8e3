"""
Input validation utilities for the calculator
"""
import os
import re
from decimal import Decimal, InvalidOperation
from typing import List, Sequence, Union

from src.config import Config


class InputValidator:
    """Validates user-supplied parameters"""

    # Builtin group references: family[:param]
    GROUP_REF_PATTERN = re.compile(r'^(?P<family>abelian|heisenberg|engel)(?::(?P<param>\d+))?$')
    NUMBER_LIST_PATTERN = re.compile(r'^\s*[^,\s]+(\s*,\s*[^,\s]+)*\s*$')

    @staticmethod
    def validate_group_ref(ref: str) -> bool:
        """Validate a builtin reference or an existing structure-constant file"""
        if not isinstance(ref, str) or not ref:
            return False
        match = InputValidator.GROUP_REF_PATTERN.match(ref.lower())
        if match:
            family, param = match.group('family'), match.group('param')
            if family == 'engel':
                return param is None
            return param is not None and int(param) >= 1
        return os.path.isfile(ref)

    @staticmethod
    def validate_positive(value: Union[str, float, int]) -> bool:
        """Validate a strictly positive number"""
        try:
            return Decimal(str(value)) > 0
        except (InvalidOperation, ValueError):
            return False

    @staticmethod
    def validate_ratio(value: Union[str, float, int]) -> bool:
        """Validate a dilation ratio lambda > 1"""
        try:
            return Decimal(str(value)) > 1
        except (InvalidOperation, ValueError):
            return False

    @staticmethod
    def validate_samples(samples: int) -> bool:
        """Validate a Monte Carlo sample count"""
        return isinstance(samples, int) and samples >= Config.MIN_SAMPLES

    @staticmethod
    def validate_seed(seed: int) -> bool:
        """Validate an RNG seed"""
        return isinstance(seed, int) and seed >= 0

    @staticmethod
    def parse_number_list(text: str) -> List[float]:
        """Parse 'a,b,c' into floats; raises ValueError on malformed input"""
        if not InputValidator.NUMBER_LIST_PATTERN.match(text or ''):
            raise ValueError(f"Malformed number list: {text!r}")
        try:
            return [float(Decimal(part.strip())) for part in text.split(',')]
        except InvalidOperation:
            raise ValueError(f"Malformed number list: {text!r}")

    @classmethod
    def validate_radii(cls, radii: Sequence[float]) -> List[str]:
        """Validate a ladder of radii and return list of errors"""
        errors = []
        if len(radii) < 2:
            errors.append("At least two radii are required for a fit")
        for radius in radii:
            if not cls.validate_positive(radius):
                errors.append(f"Invalid radius: {radius}. Must be positive number")
        if len(set(radii)) != len(radii):
            errors.append("Radii must be distinct")
        return errors

    @classmethod
    def validate_ratios(cls, ratios: Sequence[float]) -> List[str]:
        """Validate a list of cut-off ratios"""
        errors = []
        if len(ratios) < 2:
            errors.append("At least two lambda values are required for a fit")
        for ratio in ratios:
            if not cls.validate_ratio(ratio):
                errors.append(f"Invalid lambda: {ratio}. Must be greater than 1")
        if len(set(ratios)) != len(ratios):
            errors.append("Lambda values must be distinct")
        return errors

    @classmethod
    def validate_sampling(cls, samples: int, seed: int) -> List[str]:
        """Validate sample count and seed"""
        errors = []
        if not cls.validate_samples(samples):
            errors.append(f"Invalid sample count: {samples}. Must be at least {Config.MIN_SAMPLES}")
        if not cls.validate_seed(seed):
            errors.append(f"Invalid seed: {seed}. Must be a non-negative integer")
        return errors

    @classmethod
    def validate_cutoff_experiment(cls, order: int, ratios: Sequence[float], radius: float,
                                   samples: int, seed: int) -> List[str]:
        """Validate the parameters of a cut-off norm experiment"""
        errors = cls.validate_ratios(ratios)
        if not isinstance(order, int) or order < 1:
            errors.append(f"Invalid derivative order: {order}. Must be a positive integer")
        if not cls.validate_positive(radius):
            errors.append(f"Invalid radius: {radius}. Must be positive number")
        errors.extend(cls.validate_sampling(samples, seed))
        return errors
