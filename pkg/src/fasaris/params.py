"""Physical system parameters and derived link-budget quantities.

Units follow the conventions used throughout the package:

- powers in dBm (``P_dBm``, ``sigma_k2_dBm``, ``sigma_r2_dBm``), converted to
  watts as ``10**((x - 30) / 10)``;
- the per-element surface gain ``omega_dB`` is an *amplitude* gain,
  ``10**(omega_dB / 20)``, so 0 dB means a passive (unit-amplitude) element;
- node positions in meters on a 2-D Cartesian plane;
- the receiver aperture ``W`` in carrier wavelengths;
- channel variances ``eps1``, ``eps2``, ``eps3`` follow the convention
  E[|coefficient|^2] = eps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigurationError


def dbm_to_watt(x_dbm: float) -> float:
    """Convert a power in dBm to watts."""
    return 10.0 ** ((x_dbm - 30.0) / 10.0)


def db_to_amplitude(x_db: float) -> float:
    """Convert a gain in dB to an amplitude (voltage) ratio."""
    return 10.0 ** (x_db / 20.0)


@dataclass(frozen=True)
class SystemConfig:
    """All physical parameters of one link configuration.

    Field names double as the keys of the flat text config file accepted by
    the CLI, so they are part of the external interface and must not change.
    """

    P_dBm: float = 10.0
    omega_dB: float = 5.0
    M: int = 64
    N: int = 20
    W: float = 5.0
    R: float = 10.0
    alpha: float = 3.9
    eps1: float = 1.0
    eps2: float = 1.0
    eps3: float = 0.5
    sigma_k2_dBm: float = -40.0
    sigma_r2_dBm: float = -40.0
    d0: float = 10.0
    bs_pos: tuple[float, float] = (0.0, 0.0)
    ris_pos: tuple[float, float] = (40.0, 40.0)
    rx_pos: tuple[float, float] = (100.0, 0.0)

    def __post_init__(self):
        if int(self.M) != self.M or self.M < 1:
            raise ConfigurationError(f"M must be a positive integer, got {self.M}")
        if int(self.N) != self.N or self.N < 1:
            raise ConfigurationError(f"N must be a positive integer, got {self.N}")
        object.__setattr__(self, "M", int(self.M))
        object.__setattr__(self, "N", int(self.N))
        for name in ("W", "R", "alpha", "eps1", "eps2", "eps3", "d0"):
            value = getattr(self, name)
            if not value > 0:
                raise ConfigurationError(f"{name} must be positive, got {value}")
        for name in ("bs_pos", "ris_pos", "rx_pos"):
            pos = tuple(float(c) for c in getattr(self, name))
            if len(pos) != 2:
                raise ConfigurationError(f"{name} must be a 2-D coordinate pair")
            object.__setattr__(self, name, pos)
        d_sr, d_rd, d_sd = derive_distances(self)
        if min(d_sr, d_rd, d_sd) <= 0:
            raise ConfigurationError(
                "bs_pos, ris_pos and rx_pos must be pairwise distinct"
            )


@dataclass(frozen=True)
class LinkBudget:
    """Derived amplitude scales, effective noise, and the outage threshold.

    ``omega1`` scales the reflected-path gain, ``omega2`` the direct path;
    ``sigma2_W`` is the effective noise power in watts and ``beta = 2**R - 1``
    the SNR threshold below which the target rate cannot be met.
    """

    omega1: float
    omega2: float
    sigma2_W: float
    beta: float
    d_sr: float
    d_rd: float
    d_sd: float

    def __post_init__(self):
        for name in ("omega1", "omega2", "sigma2_W", "beta"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ConfigurationError(
                    f"derived quantity {name} must be positive and finite, got {value}"
                )


def derive_distances(cfg: SystemConfig) -> tuple[float, float, float]:
    """Euclidean BS-RIS, RIS-RX and BS-RX distances in meters."""
    d_sr = math.dist(cfg.bs_pos, cfg.ris_pos)
    d_rd = math.dist(cfg.ris_pos, cfg.rx_pos)
    d_sd = math.dist(cfg.bs_pos, cfg.rx_pos)
    return d_sr, d_rd, d_sd


def link_budget(cfg: SystemConfig) -> LinkBudget:
    """Derive the link budget from a configuration.

    The cascade path is attenuated by ``(d_sr * d_rd / d0) ** (-alpha / 2)``
    and boosted by the element amplitude gain; the same gain amplifies the
    surface's own noise, giving ``sigma2 = omega**2 * sigma_k2 + sigma_r2``.
    """
    d_sr, d_rd, d_sd = derive_distances(cfg)
    P = dbm_to_watt(cfg.P_dBm)
    omega = db_to_amplitude(cfg.omega_dB)
    sigma2 = omega**2 * dbm_to_watt(cfg.sigma_k2_dBm) + dbm_to_watt(cfg.sigma_r2_dBm)
    scale = math.sqrt(P / sigma2)
    omega1 = omega * scale * (d_sr * d_rd / cfg.d0) ** (-cfg.alpha / 2.0)
    omega2 = scale * (d_sd / cfg.d0) ** (-cfg.alpha / 2.0)
    beta = 2.0**cfg.R - 1.0
    return LinkBudget(
        omega1=omega1,
        omega2=omega2,
        sigma2_W=sigma2,
        beta=beta,
        d_sr=d_sr,
        d_rd=d_rd,
        d_sd=d_sd,
    )


def reference_config(**overrides) -> SystemConfig:
    """The bundled reference scenario used by the CLI presets.

    BS at the origin, the surface at (40 m, 40 m), the receiver at
    (100 m, 0 m), unit channel variances on the cascade, eps3 = 1/2 on the
    direct link, 10 bit/s/Hz target rate and -40 dBm noise powers.
    """
    return SystemConfig(**overrides)
