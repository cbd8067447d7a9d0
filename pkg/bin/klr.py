#!/usr/bin/env python3
"""Run the klr command line from a source checkout."""

import sys

from dotenv import load_dotenv

from quiver_hecke.cli import main

# Load environment variables from .env file
load_dotenv()

if __name__ == "__main__":
    sys.exit(main())
