"""
rumin-calc command line: form parsing, verbs and reports
"""
from src.cli.commands import build_parser, run
from src.cli.form_parser import parse_form, parse_invariant_form
from src.cli.report import emit_report

__all__ = ['build_parser', 'run', 'parse_form', 'parse_invariant_form', 'emit_report']
