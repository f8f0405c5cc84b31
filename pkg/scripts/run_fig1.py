#!/usr/bin/env python3
"""Outage versus transmit power at 0 dB and 5 dB element gain.

Writes fig1_omega0dB.csv / fig1_omega5dB.csv plus PDF renderings and prints
whether the amplified-vs-passive ordering flips anywhere on the grid.
"""

import sys

from fasaris.cli import main

if __name__ == "__main__":
    outdir = sys.argv[1] if len(sys.argv) > 1 else "results/fig1"
    sys.exit(main(["preset", "fig1", "--outdir", outdir, "--plot"] + sys.argv[2:]))
