#!/usr/bin/env python3
"""
SHG Hyperpolarizability Toolkit
Main entry point for the command-line interface.
"""

import sys
from pathlib import Path

# Add hyperpol package to path
sys.path.insert(0, str(Path(__file__).parent))

from hyperpol.cli import run

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
