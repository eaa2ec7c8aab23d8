"""Run the RCAD-LMC harness from a source checkout."""

import asyncio
import sys

from rcad_lmc.harness.cli import main

if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
