"""
Output formatting utilities for tables and reports
"""
from typing import Any, List, Sequence

import sympy as sp


class OutputFormatter:
    """Formats calculator output for terminals"""

    @staticmethod
    def format_rational(value: Any) -> str:
        """Format an exact rational as 'p/q' (or 'p')"""
        value = sp.Rational(value)
        if value.q == 1:
            return str(value.p)
        return f"{value.p}/{value.q}"

    @staticmethod
    def format_float(value: float, digits: int = 6) -> str:
        """Format a float estimate"""
        return f"{value:.{digits}g}"

    @staticmethod
    def format_set(values: Sequence[int]) -> str:
        """Format an integer set as {a, b}"""
        return '{' + ', '.join(str(v) for v in sorted(values)) + '}'

    @staticmethod
    def format_table(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
        """Render rows as an aligned table"""
        cells: List[List[str]] = [[str(c) for c in columns]] + [[str(c) for c in row] for row in rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
        lines = []
        for index, row in enumerate(cells):
            lines.append('  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
            if index == 0:
                lines.append('  '.join('-' * width for width in widths))
        return '\n'.join(lines)

    @staticmethod
    def print_error(error_msg: str):
        """Print error message"""
        print(f"\n❌ ERROR: {error_msg}")
        print("-" * 30)
