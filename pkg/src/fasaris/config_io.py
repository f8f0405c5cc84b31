"""Flat key-value configuration files.

One ``key = value`` pair per line, ``#`` starts a comment.  Keys match the
field names of SystemConfig, QuadratureSpec and MonteCarloSpec; coordinate
pairs are written as two comma-separated numbers.  Example::

    P_dBm = 10          # transmit power, dBm
    omega_dB = 5        # element amplitude gain, dB
    M = 64
    N = 20
    W = 5               # aperture, wavelengths
    R = 10              # target rate, bit/s/Hz
    alpha = 3.9
    eps1 = 1
    eps2 = 1
    eps3 = 0.5
    sigma_k2_dBm = -40
    sigma_r2_dBm = -40
    d0 = 10             # reference distance, meters
    bs_pos = 0, 0       # meters
    ris_pos = 40, 40
    rx_pos = 100, 0
"""

from __future__ import annotations

from .analytic import QuadratureSpec
from .errors import ConfigurationError
from .params import SystemConfig
from .simulate import MonteCarloSpec

_SYSTEM_UNITS = {
    "P_dBm": ("float", "dBm"),
    "omega_dB": ("float", "dB amplitude gain"),
    "M": ("int", "element count"),
    "N": ("int", "port count"),
    "W": ("float", "wavelengths"),
    "R": ("float", "bit/s/Hz"),
    "alpha": ("float", "path-loss exponent"),
    "eps1": ("float", "channel power variance"),
    "eps2": ("float", "channel power variance"),
    "eps3": ("float", "channel power variance"),
    "sigma_k2_dBm": ("float", "dBm"),
    "sigma_r2_dBm": ("float", "dBm"),
    "d0": ("float", "meters"),
    "bs_pos": ("pos", "meters, 'x, y'"),
    "ris_pos": ("pos", "meters, 'x, y'"),
    "rx_pos": ("pos", "meters, 'x, y'"),
}
_QUAD_UNITS = {
    "u": ("int", "nodes per axis"),
    "h_gauss": ("float", "standard deviations"),
    "h_chi": ("float", "sqrt(eps3) multiples"),
}
_MC_UNITS = {
    "trials": ("int", "count"),
    "seed": ("int", "64-bit integer"),
    "shards": ("int", "count"),
}


def _parse_value(key: str, raw: str, kind: str, unit: str):
    try:
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
        parts = [p for p in raw.replace(",", " ").split() if p]
        if len(parts) != 2:
            raise ValueError("need two coordinates")
        return (float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise ConfigurationError(
            f"invalid value for {key!r} (expected {kind}, {unit}): {raw!r}"
        ) from exc


def parse_config_text(text: str) -> dict:
    """Parse config text into {key: typed value}; unknown keys are errors."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigurationError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in body.split("=", 1))
        for table in (_SYSTEM_UNITS, _QUAD_UNITS, _MC_UNITS):
            if key in table:
                kind, unit = table[key]
                values[key] = _parse_value(key, raw, kind, unit)
                break
        else:
            raise ConfigurationError(f"line {lineno}: unknown configuration key {key!r}")
    return values


def load_config_file(path) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text)


def split_config(
    values: dict,
) -> tuple[SystemConfig, QuadratureSpec, MonteCarloSpec]:
    """Build the three spec objects from parsed keys, using defaults elsewhere."""
    system = {k: v for k, v in values.items() if k in _SYSTEM_UNITS}
    quad = {k: v for k, v in values.items() if k in _QUAD_UNITS}
    mc = {k: v for k, v in values.items() if k in _MC_UNITS}
    return SystemConfig(**system), QuadratureSpec(**quad), MonteCarloSpec(**mc)
