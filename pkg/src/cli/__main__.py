"""
Entry point: python -m src.cli <verb> --group <ref> [options]
"""
import sys

from src.cli.commands import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
