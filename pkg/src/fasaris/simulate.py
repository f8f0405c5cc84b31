"""Monte Carlo ground truth for the full channel model.

Per trial: draw the BS-to-surface envelopes once, draw the surface-to-port
coefficient vectors with the configured port correlation, form each port's
cascade gain, select the best port, add the direct-link envelope and count an
outage when the resulting SNR falls below the threshold.

Reproducibility contract: the stream of shard ``s`` is
``numpy.random.default_rng(SeedSequence(entropy=seed, spawn_key=(s,)))`` and
draws happen per batch in the fixed order (port envelopes, coefficient real
parts, coefficient imaginary parts, direct envelopes).  Shard counts are
merged in shard order, so identical (seed, shards) always reproduce the same
estimate; changing the shard count changes the draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlation import correlation_matrix, correlation_root
from .errors import ConfigurationError
from .params import SystemConfig, db_to_amplitude, dbm_to_watt, derive_distances

SCENARIOS = ("fas_aris", "fas_ris", "no_ris", "no_fas", "no_fas_no_ris")

# Coefficient arrays per batch hold at most this many elements.
_BATCH_ELEMENTS = 4_000_000


@dataclass(frozen=True)
class MonteCarloSpec:
    """Trial count, seed and number of independent substreams."""

    trials: int = 100_000
    seed: int = 2024
    shards: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigurationError(f"trials must be >= 1, got {self.trials}")
        if self.shards < 1:
            raise ConfigurationError(f"shards must be >= 1, got {self.shards}")

    def shard_trials(self) -> list[int]:
        """Trials per shard; the last shard absorbs the remainder."""
        base = self.trials // self.shards
        counts = [base] * self.shards
        counts[-1] += self.trials - base * self.shards
        return counts


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Empirical outage probability with a 95% normal-approximation interval."""

    op_hat: float
    ci_half_width: float
    trials: int


def _shard_rng(seed: int, shard: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(shard,)))


def sample_port_gains(
    cfg: SystemConfig,
    sigma_root: np.ndarray,
    rng: np.random.Generator,
    size: int | None = None,
):
    """Draw cascade port gains gamma_k = sum_m |h_m| |v_{m,k}|.

    ``sigma_root`` must satisfy root @ root.T = Sigma; it is applied to
    independent real and imaginary Gaussian parts so the coefficient vectors
    are circularly symmetric with covariance eps2 * Sigma.  Returns shape
    (N,) for ``size=None`` and (size, N) otherwise.
    """
    batch = 1 if size is None else size
    n = sigma_root.shape[0]
    habs = rng.rayleigh(scale=math.sqrt(cfg.eps1 / 2.0), size=(batch, cfg.M))
    scaled_root = sigma_root.T * math.sqrt(cfg.eps2 / 2.0)
    vre = rng.standard_normal((batch, cfg.M, n)) @ scaled_root
    vim = rng.standard_normal((batch, cfg.M, n)) @ scaled_root
    # |v| built in place; vre ends up holding the magnitudes.
    np.multiply(vre, vre, out=vre)
    np.multiply(vim, vim, out=vim)
    vre += vim
    np.sqrt(vre, out=vre)
    gains = np.einsum("bm,bmn->bn", habs, vre)
    return gains[0] if size is None else gains


def _count_outages(
    cfg: SystemConfig,
    omega1: float | None,
    omega2: float,
    n_ports: int,
    sqrt_beta: float,
    trials: int,
    rng: np.random.Generator,
) -> int:
    """Outage count over ``trials`` draws from one RNG stream."""
    outages = 0
    remaining = trials
    if omega1 is not None:
        root = correlation_root(correlation_matrix(n_ports, cfg.W))
        batch_size = max(1, _BATCH_ELEMENTS // (cfg.M * n_ports))
    else:
        batch_size = 1_000_000
    while remaining > 0:
        b = min(batch_size, remaining)
        if omega1 is not None:
            gains = sample_port_gains(cfg, root, rng, size=b)
            best = gains.max(axis=1)
            chi = rng.rayleigh(scale=math.sqrt(cfg.eps3 / 2.0), size=b)
            amplitude = omega1 * best + omega2 * chi
        else:
            chi = rng.rayleigh(scale=math.sqrt(cfg.eps3 / 2.0), size=b)
            amplitude = omega2 * chi
        outages += int(np.count_nonzero(amplitude < sqrt_beta))
        remaining -= b
    return outages


def scenario_terms(
    cfg: SystemConfig, scenario: str
) -> tuple[float | None, float, int]:
    """Reflected scale (None when the surface is absent), direct scale, ports.

    The passive-surface baseline keeps both links at unit element amplitude
    but injects no amplified port noise, so its effective noise is the
    receiver noise alone; scenarios without any surface likewise use only the
    receiver noise.
    """
    d_sr, d_rd, d_sd = derive_distances(cfg)
    c1 = (d_sr * d_rd / cfg.d0) ** (-cfg.alpha / 2.0)
    c2 = (d_sd / cfg.d0) ** (-cfg.alpha / 2.0)
    P = dbm_to_watt(cfg.P_dBm)
    sk2 = dbm_to_watt(cfg.sigma_k2_dBm)
    sr2 = dbm_to_watt(cfg.sigma_r2_dBm)
    omega = db_to_amplitude(cfg.omega_dB)

    if scenario == "fas_aris":
        scale = math.sqrt(P / (omega**2 * sk2 + sr2))
        return omega * scale * c1, scale * c2, cfg.N
    if scenario == "fas_ris":
        scale = math.sqrt(P / sr2)
        return scale * c1, scale * c2, cfg.N
    if scenario == "no_ris":
        return None, math.sqrt(P / sr2) * c2, 1
    if scenario == "no_fas":
        scale = math.sqrt(P / (omega**2 * sk2 + sr2))
        return omega * scale * c1, scale * c2, 1
    if scenario == "no_fas_no_ris":
        return None, math.sqrt(P / sr2) * c2, 1
    raise ConfigurationError(f"unknown scenario {scenario!r}; expected one of {SCENARIOS}")


def _simulate(
    cfg: SystemConfig,
    mc: MonteCarloSpec,
    omega1: float | None,
    omega2: float,
    n_ports: int,
) -> MonteCarloEstimate:
    sqrt_beta = math.sqrt(2.0**cfg.R - 1.0)
    outages = 0
    for shard, shard_trials in enumerate(mc.shard_trials()):
        rng = _shard_rng(mc.seed, shard)
        outages += _count_outages(
            cfg, omega1, omega2, n_ports, sqrt_beta, shard_trials, rng
        )
    op = outages / mc.trials
    ci = 1.96 * math.sqrt(op * (1.0 - op) / mc.trials)
    return MonteCarloEstimate(op_hat=op, ci_half_width=ci, trials=mc.trials)


def simulate_op(cfg: SystemConfig, mc: MonteCarloSpec) -> MonteCarloEstimate:
    """Empirical outage probability of the full configuration."""
    omega1, omega2, n_ports = scenario_terms(cfg, "fas_aris")
    return _simulate(cfg, mc, omega1, omega2, n_ports)


def simulate_baselines(
    cfg: SystemConfig, mc: MonteCarloSpec, scenario: str
) -> MonteCarloEstimate:
    """Empirical outage probability of a comparison scenario.

    ``fas_ris`` pins the element amplitude at 0 dB and removes the amplified
    port noise; ``no_ris`` drops the reflected term entirely; ``no_fas``
    collapses the receiver to a single port; ``no_fas_no_ris`` does both.
    """
    omega1, omega2, n_ports = scenario_terms(cfg, scenario)
    return _simulate(cfg, mc, omega1, omega2, n_ports)


def sample_surrogate_max_bc(
    s, part, rng: np.random.Generator, size: int
) -> np.ndarray:
    """Draw best-port gains from the three-level Gaussian decomposition.

    One shared component, one component per block, one per port, weighted by
    sqrt(rho_inter), sqrt(rho_intra - rho_inter) and sqrt(1 - rho_intra).
    """
    std = math.sqrt(s.var_gain)
    sizes = np.asarray(part.block_sizes)
    n = int(sizes.sum())
    block_of_port = np.repeat(np.arange(len(sizes)), sizes)
    z0 = rng.normal(0.0, std, size=(size, 1))
    z1 = rng.normal(0.0, std, size=(size, len(sizes)))
    z2 = rng.normal(0.0, std, size=(size, n))
    gains = (
        s.mean_gain
        + math.sqrt(s.rho_inter) * z0
        + math.sqrt(max(s.rho_intra - s.rho_inter, 0.0)) * z1[:, block_of_port]
        + math.sqrt(max(1.0 - s.rho_intra, 0.0)) * z2
    )
    return gains.max(axis=1)


def sample_surrogate_max_iid(
    s, b_count: int, rng: np.random.Generator, size: int
) -> np.ndarray:
    """Draw best-block gains from the two-level (independent blocks) decomposition."""
    std = math.sqrt(s.var_gain)
    d0 = rng.normal(0.0, std, size=(size, 1))
    dk = rng.normal(0.0, std, size=(size, b_count))
    gains = (
        s.mean_gain
        + math.sqrt(s.rho_inter) * d0
        + math.sqrt(1.0 - s.rho_inter) * dk
    )
    return gains.max(axis=1)
