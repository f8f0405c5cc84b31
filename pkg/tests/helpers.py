"""Independent oracles and shared Monte Carlo machinery for the tests.

The decomposition samplers and the hypergeometric series here deliberately
restate the math from first principles instead of importing the package's
equivalents, so each comparison keeps two genuinely distinct routes.
"""

import itertools
import math

import mpmath as mp
import numpy as np

import fasaris as fa


def hyp_cross_moment(mu: float, eps: float = 1.0) -> float:
    """E[xy] of the bivariate Rayleigh pair via the Gauss hypergeometric series."""
    return float(eps * mp.pi / 4 * mp.hyp2f1(mp.mpf(-1) / 2, mp.mpf(-1) / 2, 1, mu))


def surrogate_spectrum(sizes, mu, n):
    top = [1.0 + (size - 1) * mu for size in sizes]
    return np.sort(np.array(top + [1.0 - mu] * (n - len(sizes))))[::-1]


def spectral_distance(lam_desc, sizes, mu):
    diff = lam_desc - surrogate_spectrum(list(sizes), mu, len(lam_desc))
    return float(diff @ diff)


def exhaustive_fit_distance(sigma, lambda_th: float, mu: float) -> float:
    """Minimum spectral distance over all ordered partitions of N into B parts."""
    lam = sigma.eigenvalues()
    n = sigma.n
    b_count = int(np.sum(lam >= lambda_th))
    if b_count == n:
        return spectral_distance(lam, [1] * n, mu)
    best = math.inf
    for cuts in itertools.combinations(range(1, n), b_count - 1):
        bounds = (0,) + cuts + (n,)
        sizes = [hi - lo for lo, hi in zip(bounds, bounds[1:])]
        best = min(best, spectral_distance(lam, sizes, mu))
    return best


def draw_max_bc(mean, var, rho_intra, rho_inter, block_sizes, rng, size):
    """Best-port draws from the three-level decomposition, written from scratch."""
    std = math.sqrt(var)
    sizes = list(block_sizes)
    ports_block = np.repeat(np.arange(len(sizes)), sizes)
    shared = rng.normal(0.0, std, size=(size, 1))
    per_block = rng.normal(0.0, std, size=(size, len(sizes)))
    per_port = rng.normal(0.0, std, size=(size, sum(sizes)))
    gains = (
        mean
        + math.sqrt(rho_inter) * shared
        + math.sqrt(rho_intra - rho_inter) * per_block[:, ports_block]
        + math.sqrt(1.0 - rho_intra) * per_port
    )
    return gains.max(axis=1)


def draw_max_iid(mean, var, rho_inter, b_count, rng, size):
    std = math.sqrt(var)
    shared = rng.normal(0.0, std, size=(size, 1))
    per_block = rng.normal(0.0, std, size=(size, b_count))
    gains = mean + math.sqrt(rho_inter) * shared + math.sqrt(1.0 - rho_inter) * per_block
    return gains.max(axis=1)


def empirical_cdf(draws, grid):
    sorted_draws = np.sort(draws)
    return np.searchsorted(sorted_draws, grid, side="right") / len(sorted_draws)


def binomial_se(p_emp, p_ref, n):
    """Standard error of an empirical probability, floored by the reference value.

    Near-degenerate grid points (empirical 0 or 1) take their fluctuation
    scale from whichever of the two probabilities is more informative.
    """
    p = np.clip(np.maximum(np.asarray(p_emp), np.asarray(p_ref)), 1.0 / n, 1 - 1.0 / n)
    return np.sqrt(p * (1.0 - p) / n)


def fisher_se(n):
    return 1.0 / math.sqrt(n - 3)


class ChannelDraws:
    """One batch-sampled set of best-port gains and direct envelopes.

    The channel distribution does not depend on transmit power or element
    gain, so a single draw set prices every (P, omega) point of a sweep; each
    evaluation is still an honest ``trials``-sample Monte Carlo estimate.
    """

    def __init__(self, cfg, trials, seed, with_ports=True):
        self.cfg = cfg
        self.trials = trials
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0,)))
        chunks = []
        chis = []
        if with_ports:
            root = fa.correlation_root(fa.correlation_matrix(cfg.N, cfg.W))
            batch = max(1, 4_000_000 // (cfg.M * cfg.N))
        else:
            batch = 1_000_000
        done = 0
        while done < trials:
            b = min(batch, trials - done)
            if with_ports:
                gains = fa.sample_port_gains(cfg, root, rng, size=b)
                chunks.append(gains.max(axis=1))
            chis.append(rng.rayleigh(scale=math.sqrt(cfg.eps3 / 2.0), size=b))
            done += b
        self.best_gain = np.concatenate(chunks) if with_ports else None
        self.chi = np.concatenate(chis)

    def outage(self, omega1, omega2, sqrt_beta):
        if omega1 is None:
            amplitude = omega2 * self.chi
        else:
            amplitude = omega1 * self.best_gain + omega2 * self.chi
        return float(np.mean(amplitude < sqrt_beta))

    def outage_for(self, cfg, scenario="fas_aris"):
        omega1, omega2, _ = fa.scenario_terms(cfg, scenario)
        return self.outage(omega1, omega2, math.sqrt(2.0**cfg.R - 1.0))


def mc_ci(op, trials):
    return 1.96 * math.sqrt(max(op * (1.0 - op), 0.0) / trials)
