#!/usr/bin/env python3
"""
Startup script for the Lie-algebra QRT laboratory CLI.

Usage:
    python run_lab.py verify --seed 7
    python run_lab.py fig3 --rep so2n --modes 8 --trials 150 --seed 3 --out fig3.csv
"""

import os
import sys

# Add the src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from lie_qrt.main import main

if __name__ == "__main__":
    sys.exit(main())
