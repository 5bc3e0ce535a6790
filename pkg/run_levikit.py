#!/usr/bin/env python3
"""
Launch Script - run the levikit command line from a source checkout
"""

import os
import sys

current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(current_dir, 'src'))

from levikit.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
