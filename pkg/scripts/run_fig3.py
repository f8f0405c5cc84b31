#!/usr/bin/env python3
"""Outage versus transmit power across receiver/surface scenarios.

Writes fig3_scenarios.csv (one Monte Carlo series per scenario) plus a PDF
rendering.
"""

import sys

from fasaris.cli import main

if __name__ == "__main__":
    outdir = sys.argv[1] if len(sys.argv) > 1 else "results/fig3"
    sys.exit(main(["preset", "fig3", "--outdir", outdir, "--plot"] + sys.argv[2:]))
