#!/usr/bin/env python3
"""Outage versus surface element count at 5 and 20 receiver ports.

Writes fig2_N5.csv / fig2_N20.csv plus PDF renderings.
"""

import sys

from fasaris.cli import main

if __name__ == "__main__":
    outdir = sys.argv[1] if len(sys.argv) > 1 else "results/fig2"
    sys.exit(main(["preset", "fig2", "--outdir", outdir, "--plot"] + sys.argv[2:]))
