"""
Main entry point for the deformed quantum mechanics toolkit.
"""

import sys

from src.cli.app import main

if __name__ == "__main__":
    sys.exit(main())
