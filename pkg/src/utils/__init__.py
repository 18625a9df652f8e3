"""
Utilities package: logging, validation and output formatting
"""
