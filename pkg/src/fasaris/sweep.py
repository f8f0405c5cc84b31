"""Parameter sweeps and the results CSV schema.

A sweep varies one configuration field over a list of values and evaluates a
subset of methods at each value.  Rows are written in deterministic order
(value, then method) regardless of how they were computed; the worker count
for concurrent evaluation comes from the ``FASARIS_WORKERS`` environment
variable.
"""

from __future__ import annotations

import csv
import dataclasses
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .analytic import (
    ANALYTIC_METHODS,
    METHOD_MC,
    QuadratureSpec,
    outage_probability,
)
from .errors import ConfigurationError, CsvFormatError
from .params import SystemConfig
from .simulate import SCENARIOS, MonteCarloSpec, simulate_baselines, simulate_op

CSV_HEADER = "variable,value,method,op,ci_half_width,diag_residual,trials,runtime_ms"

SWEEP_VARIABLES = ("P_dBm", "omega_dB", "M", "N", "W", "R")
_INT_VARIABLES = {"M", "N"}
ALL_METHODS = ANALYTIC_METHODS + (METHOD_MC,)


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: the variable, its values, and the methods to evaluate."""

    variable: str
    values: tuple
    methods: tuple = ALL_METHODS
    mc: MonteCarloSpec = MonteCarloSpec()
    quad: QuadratureSpec = QuadratureSpec()
    mu: float = 0.97
    lambda_th: float = 0.1

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigurationError(
                f"sweep variable must be one of {SWEEP_VARIABLES}, got {self.variable!r}"
            )
        if len(self.values) == 0:
            raise ConfigurationError("sweep needs at least one value")
        if len(self.methods) == 0:
            raise ConfigurationError("sweep needs at least one method")
        for m in self.methods:
            if m not in ALL_METHODS:
                raise ConfigurationError(
                    f"unknown method {m!r}; expected subset of {ALL_METHODS}"
                )


@dataclass(frozen=True)
class SweepRow:
    """One CSV row; optional fields are empty for methods they do not apply to."""

    variable: str
    value: float
    method: str
    op: float
    ci_half_width: float | None = None
    diag_residual: float | None = None
    trials: int | None = None
    runtime_ms: float | None = None


def apply_value(cfg: SystemConfig, variable: str, value) -> SystemConfig:
    """Copy of the configuration with one swept field replaced."""
    if variable in _INT_VARIABLES:
        value = int(value)
    return dataclasses.replace(cfg, **{variable: value})


def _evaluate_point(args) -> list[SweepRow]:
    cfg, spec, value = args
    point_cfg = apply_value(cfg, spec.variable, value)
    rows = []
    for method in spec.methods:
        start = time.perf_counter()
        if method == METHOD_MC:
            est = simulate_op(point_cfg, spec.mc)
            rows.append(
                SweepRow(
                    variable=spec.variable,
                    value=value,
                    method=method,
                    op=est.op_hat,
                    ci_half_width=est.ci_half_width,
                    trials=est.trials,
                    runtime_ms=(time.perf_counter() - start) * 1e3,
                )
            )
        else:
            result = outage_probability(
                point_cfg,
                method=method,
                quad=spec.quad,
                mu=spec.mu,
                lambda_th=spec.lambda_th,
            )
            rows.append(
                SweepRow(
                    variable=spec.variable,
                    value=value,
                    method=method,
                    op=result.op,
                    diag_residual=result.diag_residual,
                    runtime_ms=(time.perf_counter() - start) * 1e3,
                )
            )
    return rows


def worker_count() -> int:
    """Worker override from the environment; defaults to sequential."""
    raw = os.environ.get("FASARIS_WORKERS", "1")
    try:
        workers = int(raw)
    except ValueError as exc:
        raise ConfigurationError(f"FASARIS_WORKERS must be an integer, got {raw!r}") from exc
    return max(1, workers)


def run_sweep(cfg: SystemConfig, spec: SweepSpec) -> list[SweepRow]:
    """Evaluate the sweep; rows come back ordered by value then method."""
    jobs = [(cfg, spec, value) for value in spec.values]
    workers = worker_count()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_point = list(pool.map(_evaluate_point, jobs))
    else:
        per_point = [_evaluate_point(job) for job in jobs]
    return [row for rows in per_point for row in rows]


def run_scenario_sweep(
    cfg: SystemConfig,
    values,
    mc: MonteCarloSpec,
    scenarios=SCENARIOS,
    variable: str = "P_dBm",
) -> list[SweepRow]:
    """Monte Carlo sweep across comparison scenarios.

    The method column carries the scenario label so one CSV holds every curve.
    """
    rows = []
    for value in values:
        point_cfg = apply_value(cfg, variable, value)
        for scenario in scenarios:
            start = time.perf_counter()
            if scenario == "fas_aris":
                est = simulate_op(point_cfg, mc)
            else:
                est = simulate_baselines(point_cfg, mc, scenario)
            rows.append(
                SweepRow(
                    variable=variable,
                    value=value,
                    method=scenario,
                    op=est.op_hat,
                    ci_half_width=est.ci_half_width,
                    trials=est.trials,
                    runtime_ms=(time.perf_counter() - start) * 1e3,
                )
            )
    return rows


def _format(value, *, as_int: bool = False) -> str:
    if value is None:
        return ""
    if as_int:
        return str(int(value))
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return format(float(value), ".17e")


def write_csv(rows, path, include_runtime: bool = True) -> None:
    """Write rows in the documented schema.

    ``include_runtime=False`` blanks the runtime column so repeated runs with
    the same seed produce byte-identical files.
    """
    with open(path, "w", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        for row in rows:
            writer.writerow(
                [
                    row.variable,
                    _format(row.value),
                    row.method,
                    _format(row.op),
                    _format(row.ci_half_width),
                    _format(row.diag_residual),
                    _format(row.trials, as_int=True) if row.trials is not None else "",
                    _format(row.runtime_ms) if include_runtime else "",
                ]
            )


def read_csv(path) -> list[SweepRow]:
    """Parse a results CSV, validating the schema; raises CsvFormatError."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvFormatError("empty file", line=1) from None
        if ",".join(header) != CSV_HEADER:
            raise CsvFormatError(
                f"header {','.join(header)!r} does not match {CSV_HEADER!r}", line=1
            )
        for lineno, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != 8:
                raise CsvFormatError(
                    f"expected 8 fields, found {len(record)}", line=lineno
                )
            try:
                rows.append(
                    SweepRow(
                        variable=record[0],
                        value=float(record[1]),
                        method=record[2],
                        op=float(record[3]),
                        ci_half_width=float(record[4]) if record[4] else None,
                        diag_residual=float(record[5]) if record[5] else None,
                        trials=int(record[6]) if record[6] else None,
                        runtime_ms=float(record[7]) if record[7] else None,
                    )
                )
            except ValueError as exc:
                raise CsvFormatError(str(exc), line=lineno) from exc
    if not rows:
        raise CsvFormatError("no data rows", line=2)
    return rows
