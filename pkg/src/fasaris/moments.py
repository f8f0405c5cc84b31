"""Gaussian surrogate statistics of the per-port cascade gains.

Each port gain is a sum of M products of independent Rayleigh envelopes, so
for large M it is well approximated by a Gaussian whose mean and variance
follow from the product moments.  Correlation between two ports' gains is
driven by the envelope cross-moment of the surface-to-port coefficients,
evaluated by 2-D quadrature of the bivariate Rayleigh density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate
from scipy.special import i0e

from .correlation import BlockPartition
from .errors import NumericalError
from .params import SystemConfig

# Integration square is [0, _TRUNC * sqrt(eps)]^2; the Rayleigh tail beyond
# six sigma-equivalents is ~1e-16 and cannot affect the 1e-8 tolerance.
_TRUNC = 6.0
_REL_TOL = 1e-8


@dataclass(frozen=True)
class GaussianSurrogate:
    """Mean/variance of one port gain and its intra/inter-block correlations."""

    mean_gain: float
    var_gain: float
    rho_intra: float
    rho_inter: float

    def __post_init__(self):
        if not (self.mean_gain > 0 and self.var_gain > 0):
            raise NumericalError("surrogate moments must be positive")
        if not 0 < self.rho_inter <= self.rho_intra <= 1 + 1e-12:
            raise NumericalError(
                f"correlations out of order: rho_inter={self.rho_inter}, "
                f"rho_intra={self.rho_intra}"
            )


def cascade_moments(M: int, eps1: float, eps2: float) -> tuple[float, float]:
    """Mean and variance of a sum of M independent Rayleigh-product terms.

    A Rayleigh envelope with E[x^2] = eps has mean sqrt(pi*eps)/2, so each
    product term has mean pi*sqrt(eps1*eps2)/4 and variance
    eps1*eps2*(1 - pi^2/16).
    """
    mean = M * math.pi * math.sqrt(eps1 * eps2) / 4.0
    var = M * eps1 * eps2 * (1.0 - math.pi**2 / 16.0)
    return mean, var


def rayleigh_pair_density(x, y, mu: float, eps: float):
    """Joint density of two Rayleigh envelopes with power correlation mu.

    Both marginals satisfy E[x^2] = eps.  Written with the exponentially
    scaled Bessel function so the integrand stays finite for mu close to 1:

        f(x, y) = 4xy / (eps^2 (1-mu)) * I0(2 sqrt(mu) x y / (eps (1-mu)))
                  * exp(-(x^2 + y^2) / (eps (1-mu)))
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    one_minus = 1.0 - mu
    z = 2.0 * math.sqrt(mu) * x * y / (eps * one_minus)
    # exp(-(x^2+y^2)/(eps(1-mu)) + z) = exp(-(x-y)^2/(eps(1-mu)) - 2xy/(eps(1+sqrt(mu))))
    log_kernel = -((x - y) ** 2) / (eps * one_minus) - 2.0 * x * y / (
        eps * (1.0 + math.sqrt(mu))
    )
    return 4.0 * x * y / (eps**2 * one_minus) * i0e(z) * np.exp(log_kernel)


@lru_cache(maxsize=None)
def envelope_cross_moment(mu: float, eps: float = 1.0) -> float:
    """E[x*y] for the bivariate Rayleigh pair with power correlation mu.

    Independent envelopes give (sqrt(pi*eps)/2)^2 = pi*eps/4; identical ones
    give E[x^2] = eps.  Between the limits the moment is obtained by
    adaptive 2-D quadrature of the joint density.
    """
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"power correlation must lie in [0, 1], got {mu}")
    if mu == 0.0:
        return math.pi * eps / 4.0
    if mu == 1.0:
        return eps
    hi = _TRUNC * math.sqrt(eps)
    value, err = integrate.dblquad(
        lambda y, x: x * y * rayleigh_pair_density(x, y, mu, eps),
        0.0,
        hi,
        0.0,
        hi,
        epsabs=1e-12,
        epsrel=_REL_TOL,
    )
    if not math.isfinite(value) or err > 1e-4 * max(abs(value), 1.0):
        raise NumericalError(
            f"cross-moment quadrature did not converge (mu={mu}): residual {err:.3e}"
        )
    return value


def gain_correlation(mu: float, eps1: float = 1.0, eps2: float = 1.0) -> float:
    """Pearson correlation between two port gains at power correlation mu.

    The shared BS-to-surface envelopes keep the gains correlated even when
    the surface-to-port coefficients are independent (mu = 0), where the
    value is pi/(4 + pi).
    """
    cross = envelope_cross_moment(mu, eps2)
    num = eps1 * cross - math.pi**2 * eps1 * eps2 / 16.0
    den = eps1 * eps2 * (1.0 - math.pi**2 / 16.0)
    return num / den


def build_surrogate(cfg: SystemConfig, partition: BlockPartition) -> GaussianSurrogate:
    """Assemble the Gaussian surrogate for a configuration and fitted partition."""
    mean, var = cascade_moments(cfg.M, cfg.eps1, cfg.eps2)
    rho_intra = gain_correlation(partition.mu, cfg.eps1, cfg.eps2)
    rho_inter = gain_correlation(0.0, cfg.eps1, cfg.eps2)
    return GaussianSurrogate(
        mean_gain=mean, var_gain=var, rho_intra=rho_intra, rho_inter=rho_inter
    )
