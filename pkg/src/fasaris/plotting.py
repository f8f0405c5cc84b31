"""Render a results CSV as a log-scale outage curve figure.

Pure presentation: every point comes straight from the CSV, nothing is
recomputed.  One series per distinct method/scenario label.
"""

from __future__ import annotations

from collections import defaultdict

from .errors import CsvFormatError
from .sweep import read_csv

# Probabilities at or below this are clipped on the log axis; an empirical
# zero from a finite trial count has no meaningful log-scale position.
_FLOOR = 1e-12


def emit_plot(csv_path, out_path) -> None:
    """Plot op versus swept value for each series in the CSV."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = read_csv(csv_path)
    variables = {row.variable for row in rows}
    if len(variables) != 1:
        raise CsvFormatError(
            f"expected a single swept variable, found {sorted(variables)}"
        )
    variable = variables.pop()

    series = defaultdict(list)
    for row in rows:
        series[row.method].append((row.value, row.op, row.ci_half_width))

    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    for method in sorted(series):
        points = sorted(series[method])
        x = [p[0] for p in points]
        y = [max(p[1], _FLOOR) for p in points]
        ax.semilogy(x, y, marker="o", markersize=3.5, linewidth=1.2, label=method)
    ax.set_xlabel(variable)
    ax.set_ylabel("outage probability")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
