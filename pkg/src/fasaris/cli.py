"""Command-line front end.

Subcommands: ``op`` (single point), ``sweep`` (one variable), ``preset``
(bundled fig1/fig2/fig3 experiment sweeps), ``fit-blocks`` (block partition
report), ``validate`` (reduced-scale self checks) and ``plot`` (render a
results CSV).  Flags override config-file keys.

Exit codes: 0 success, 1 failed validation checks, 2 configuration error,
3 numerical error, 4 unwritable output, 5 malformed CSV.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time
from pathlib import Path

import numpy as np

from .analytic import (
    METHOD_MC,
    QuadratureSpec,
    outage_probability,
)
from .config_io import load_config_file, split_config
from .correlation import correlation_matrix, fit_block_partition
from .diagnostics import run_checks
from .errors import ConfigurationError, CsvFormatError, NumericalError
from .params import SystemConfig
from .simulate import MonteCarloSpec, simulate_op
from .sweep import (
    ALL_METHODS,
    SweepSpec,
    run_scenario_sweep,
    run_sweep,
    write_csv,
)

_EXIT_VALIDATE = 1
_EXIT_CONFIG = 2
_EXIT_NUMERIC = 3
_EXIT_OUTPUT = 4
_EXIT_CSV = 5


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key-value config file")
    parser.add_argument("--u", type=int, help="quadrature nodes per axis")
    parser.add_argument("--h-gauss", type=float, dest="h_gauss")
    parser.add_argument("--h-chi", type=float, dest="h_chi")
    parser.add_argument("--trials", type=int, help="Monte Carlo trials")
    parser.add_argument("--seed", type=int, help="Monte Carlo seed")
    parser.add_argument("--shards", type=int, help="independent RNG substreams")
    parser.add_argument("--mu", type=float, default=0.97, help="intra-block correlation")
    parser.add_argument(
        "--lambda-th", type=float, default=0.1, dest="lambda_th",
        help="eigenvalue threshold for the block count",
    )


def _setup(args) -> tuple[SystemConfig, QuadratureSpec, MonteCarloSpec]:
    if args.config:
        cfg, quad, mc = split_config(load_config_file(args.config))
    else:
        cfg, quad, mc = SystemConfig(), QuadratureSpec(), MonteCarloSpec()
    quad_over = {
        k: getattr(args, k) for k in ("u", "h_gauss", "h_chi") if getattr(args, k) is not None
    }
    if quad_over:
        quad = dataclasses.replace(quad, **quad_over)
    mc_over = {
        k: getattr(args, k) for k in ("trials", "seed", "shards") if getattr(args, k) is not None
    }
    if mc_over:
        mc = dataclasses.replace(mc, **mc_over)
    return cfg, quad, mc


def _parse_methods(raw: str) -> tuple:
    methods = tuple(m.strip() for m in raw.split(",") if m.strip())
    for m in methods:
        if m not in ALL_METHODS:
            raise ConfigurationError(f"unknown method {m!r}; expected subset of {ALL_METHODS}")
    return methods


def _parse_values(raw: str, variable: str):
    if ":" in raw:
        parts = raw.split(":")
        if len(parts) != 3:
            raise ConfigurationError(f"range values must be start:stop:step, got {raw!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ConfigurationError("range step must be positive")
        values = list(np.arange(start, stop + step / 2.0, step))
    else:
        values = [float(p) for p in raw.split(",") if p.strip()]
    if variable in ("M", "N"):
        values = [int(v) for v in values]
    if not values:
        raise ConfigurationError(f"no sweep values in {raw!r}")
    return tuple(values)


def _cmd_op(args) -> int:
    cfg, quad, mc = _setup(args)
    methods = _parse_methods(args.methods)
    print(f"{'method':<14} {'op':<24} {'diagnostic':<26} {'trials':<9} runtime_ms")
    for method in methods:
        start = time.perf_counter()
        if method == METHOD_MC:
            est = simulate_op(cfg, mc)
            runtime = (time.perf_counter() - start) * 1e3
            diag = f"ci_half_width={est.ci_half_width:.3e}"
            print(f"{method:<14} {est.op_hat:<24.17e} {diag:<26} {est.trials:<9d} {runtime:.1f}")
        else:
            result = outage_probability(
                cfg, method=method, quad=quad, mu=args.mu, lambda_th=args.lambda_th
            )
            diag = f"residual={result.diag_residual:.3e}"
            print(f"{method:<14} {result.op:<24.17e} {diag:<26} {'':<9} {result.runtime_ms:.1f}")
    return 0


def _cmd_sweep(args) -> int:
    cfg, quad, mc = _setup(args)
    spec = SweepSpec(
        variable=args.variable,
        values=_parse_values(args.values, args.variable),
        methods=_parse_methods(args.methods),
        mc=mc,
        quad=quad,
        mu=args.mu,
        lambda_th=args.lambda_th,
    )
    rows = run_sweep(cfg, spec)
    write_csv(rows, args.out, include_runtime=not args.no_runtime)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _maybe_plot(csv_paths, enabled: bool) -> None:
    if not enabled:
        return
    from .plotting import emit_plot

    for path in csv_paths:
        out = Path(path).with_suffix(".pdf")
        emit_plot(path, out)
        print(f"plotted {out}")


def _crossovers(rows_a, rows_b) -> list[float]:
    """Values where the (a - b) Monte Carlo difference changes sign."""
    a = {r.value: r.op for r in rows_a if r.method == METHOD_MC}
    b = {r.value: r.op for r in rows_b if r.method == METHOD_MC}
    values = sorted(set(a) & set(b))
    diffs = [(v, a[v] - b[v]) for v in values]
    points = []
    for (v0, d0), (v1, d1) in zip(diffs, diffs[1:]):
        if d0 == 0.0 or d1 == 0.0:
            continue
        if (d0 > 0) != (d1 > 0):
            points.append(0.5 * (v0 + v1))
    return points


def _cmd_preset(args) -> int:
    cfg, quad, mc = _setup(args)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []

    if args.name == "fig1":
        per_omega = {}
        for omega in (0.0, 5.0):
            variant = dataclasses.replace(cfg, omega_dB=omega)
            spec = SweepSpec(
                variable="P_dBm",
                values=tuple(np.arange(0.0, 30.0 + 1e-9, 2.0)),
                methods=ALL_METHODS,
                mc=mc,
                quad=quad,
                mu=args.mu,
                lambda_th=args.lambda_th,
            )
            rows = run_sweep(variant, spec)
            path = outdir / f"fig1_omega{int(omega)}dB.csv"
            write_csv(rows, path, include_runtime=not args.no_runtime)
            written.append(path)
            per_omega[omega] = rows
        crossings = _crossovers(per_omega[5.0], per_omega[0.0])
        if crossings:
            print("amplified-vs-passive ordering flips near P_dBm = "
                  + ", ".join(f"{p:.1f}" for p in crossings))
        else:
            print("amplified-vs-passive ordering does not flip on this grid")
    elif args.name == "fig2":
        for n_ports in (5, 20):
            variant = dataclasses.replace(cfg, P_dBm=10.0, omega_dB=5.0, N=n_ports)
            spec = SweepSpec(
                variable="M",
                values=(8, 16, 32, 64, 128),
                methods=ALL_METHODS,
                mc=mc,
                quad=quad,
                mu=args.mu,
                lambda_th=args.lambda_th,
            )
            rows = run_sweep(variant, spec)
            path = outdir / f"fig2_N{n_ports}.csv"
            write_csv(rows, path, include_runtime=not args.no_runtime)
            written.append(path)
    else:
        rows = run_scenario_sweep(
            cfg, tuple(np.arange(0.0, 30.0 + 1e-9, 2.0)), mc
        )
        path = outdir / "fig3_scenarios.csv"
        write_csv(rows, path, include_runtime=not args.no_runtime)
        written.append(path)

    for path in written:
        print(f"wrote {path}")
    _maybe_plot(written, args.plot)
    return 0


def _cmd_fit_blocks(args) -> int:
    cfg, _, _ = _setup(args)
    sigma = correlation_matrix(cfg.N, cfg.W)
    part = fit_block_partition(sigma, lambda_th=args.lambda_th, mu=args.mu)
    lam = sigma.eigenvalues()
    print(f"ports            : {cfg.N}")
    print(f"aperture (wl)    : {cfg.W}")
    print(f"eigenvalues >= {args.lambda_th:g} : {part.n_blocks}")
    print(f"top eigenvalues  : {np.array2string(lam[: part.n_blocks], precision=4)}")
    print(f"block sizes      : {part.block_sizes}")
    print(f"mu               : {part.mu}")
    print(f"fit distance     : {part.fit_distance:.6e}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("block,size\n")
            for idx, size in enumerate(part.block_sizes, start=1):
                fh.write(f"{idx},{size}\n")
        print(f"wrote {args.csv}")
    return 0


def _cmd_validate(args) -> int:
    cfg, quad, _ = _setup(args)
    checks = run_checks(cfg, quad=quad, mu=args.mu, lambda_th=args.lambda_th)
    failures = 0
    for check in checks:
        verdict = "PASS" if check.passed else "FAIL"
        print(f"[{verdict}] {check.name}: {check.detail}")
        failures += 0 if check.passed else 1
    if failures:
        print(f"{failures} of {len(checks)} checks failed")
        return _EXIT_VALIDATE
    print(f"all {len(checks)} checks passed")
    return 0


def _cmd_plot(args) -> int:
    from .plotting import emit_plot

    emit_plot(args.csv, args.out)
    print(f"plotted {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fasaris",
        description="Outage probability of a fluid-antenna receiver with an "
        "active reconfigurable surface and a direct link.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_op = sub.add_parser("op", help="evaluate one configuration")
    _add_common(p_op)
    p_op.add_argument("--methods", default=",".join(ALL_METHODS))
    p_op.set_defaults(func=_cmd_op)

    p_sweep = sub.add_parser("sweep", help="sweep one variable to CSV")
    _add_common(p_sweep)
    p_sweep.add_argument("--variable", required=True)
    p_sweep.add_argument("--values", required=True,
                         help="comma list or start:stop:step (inclusive)")
    p_sweep.add_argument("--methods", default=",".join(ALL_METHODS))
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--no-runtime", action="store_true",
                         help="blank the runtime column for byte-stable output")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_preset = sub.add_parser("preset", help="run a bundled experiment sweep")
    _add_common(p_preset)
    p_preset.add_argument("name", choices=("fig1", "fig2", "fig3"))
    p_preset.add_argument("--outdir", default=".")
    p_preset.add_argument("--plot", action="store_true")
    p_preset.add_argument("--no-runtime", action="store_true")
    p_preset.set_defaults(func=_cmd_preset)

    p_fit = sub.add_parser("fit-blocks", help="report the fitted block partition")
    _add_common(p_fit)
    p_fit.add_argument("--csv", help="also write block,size rows to this path")
    p_fit.set_defaults(func=_cmd_fit_blocks)

    p_val = sub.add_parser("validate", help="run reduced-scale self checks")
    _add_common(p_val)
    p_val.set_defaults(func=_cmd_validate)

    p_plot = sub.add_parser("plot", help="render a results CSV")
    p_plot.add_argument("--csv", required=True)
    p_plot.add_argument("--out", required=True)
    p_plot.set_defaults(func=_cmd_plot)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return _EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return _EXIT_NUMERIC
    except CsvFormatError as exc:
        print(f"csv error: {exc}", file=sys.stderr)
        return _EXIT_CSV
    except OSError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return _EXIT_OUTPUT


if __name__ == "__main__":
    sys.exit(main())
