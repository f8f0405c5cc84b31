"""Port-correlation matrix of the fluid antenna and its block approximation.

Ports are spread over an aperture of ``W`` wavelengths, so under isotropic
scattering (Clarke's model) the correlation between two ports is a sinc of
their spacing.  The resulting Toeplitz matrix is compressed into a
block-diagonal surrogate with constant intra-block correlation ``mu``; block
sizes are fitted so that the surrogate's eigenvalue spectrum is as close as
possible to the true one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

from .errors import ConfigurationError, NumericalError

# Relative slack allowed on the positive-semidefiniteness of the kernel.
_PSD_TOL = 1e-9


@dataclass(frozen=True)
class CorrelationMatrix:
    """Symmetric Toeplitz port-correlation matrix with unit diagonal."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues sorted in descending order."""
        return np.sort(np.linalg.eigvalsh(self.entries))[::-1]


@dataclass(frozen=True)
class BlockPartition:
    """Fitted block structure: sizes, intra-block correlation and fit quality."""

    mu: float
    block_sizes: tuple[int, ...]
    lambda_th: float
    fit_distance: float

    @property
    def n_blocks(self) -> int:
        return len(self.block_sizes)

    @property
    def n_ports(self) -> int:
        return int(sum(self.block_sizes))


def clarke_coefficient(port_i: int, port_j: int, W: float, N: int) -> float:
    """Correlation between two ports under isotropic scattering.

    sinc(2*pi*(i - j)*W/(N - 1)) with sinc(x) = sin(x)/x and sinc(0) = 1.
    A single-port aperture is perfectly correlated with itself.
    """
    if N == 1:
        return 1.0
    x = 2.0 * np.pi * (port_i - port_j) * W / (N - 1)
    # np.sinc is the normalized sinc sin(pi z)/(pi z); undo the pi.
    return float(np.sinc(x / np.pi))


def correlation_matrix(N: int, W: float) -> CorrelationMatrix:
    """Build the N x N Toeplitz correlation matrix for an aperture of W wavelengths."""
    if N < 1:
        raise ConfigurationError(f"N must be >= 1, got {N}")
    if not W > 0:
        raise ConfigurationError(f"W must be positive, got {W}")
    first_row = np.array([clarke_coefficient(1, 1 + k, W, N) for k in range(N)])
    entries = toeplitz(first_row)
    min_eig = float(np.linalg.eigvalsh(entries)[0])
    if min_eig < -_PSD_TOL * N:
        raise NumericalError(
            f"correlation matrix is not positive semidefinite: min eigenvalue {min_eig:.3e}"
        )
    return CorrelationMatrix(n=N, entries=entries)


def _surrogate_spectrum(sizes: np.ndarray, mu: float, n: int) -> np.ndarray:
    """Descending eigenvalues of the block surrogate with the given block sizes.

    Each size-L block contributes one eigenvalue 1 + (L-1)*mu and L-1 copies
    of 1 - mu.
    """
    top = 1.0 + (sizes - 1) * mu
    tail = np.full(n - len(sizes), 1.0 - mu)
    return np.sort(np.concatenate([top, tail]))[::-1]


def _spectral_distance(lam_desc: np.ndarray, sizes: np.ndarray, mu: float) -> float:
    """Sum of squared differences between descending-sorted spectra."""
    diff = lam_desc - _surrogate_spectrum(sizes, mu, len(lam_desc))
    return float(diff @ diff)


def fit_block_partition(
    sigma: CorrelationMatrix, lambda_th: float = 0.1, mu: float = 0.97
) -> BlockPartition:
    """Fit block sizes so the surrogate spectrum matches the true spectrum.

    The number of blocks equals the count of eigenvalues at or above
    ``lambda_th``.  Sizes are seeded by inverting the dominant-eigenvalue
    relation L = 1 + (lambda - (1 - mu))/mu, repaired to sum to N by the
    single increment/decrement that least degrades the spectral distance, and
    then polished by one-unit transfers between blocks until no transfer
    improves the fit.
    """
    if not 0 < mu <= 1:
        raise ConfigurationError(f"mu must be in (0, 1], got {mu}")
    if not lambda_th > 0:
        raise ConfigurationError(f"lambda_th must be positive, got {lambda_th}")
    n = sigma.n
    lam = sigma.eigenvalues()
    B = int(np.sum(lam >= lambda_th))
    if B == 0:
        raise ConfigurationError(
            f"lambda_th={lambda_th} exceeds the largest eigenvalue "
            f"({lam[0]:.6g}); choose a smaller threshold"
        )

    sizes = np.rint((lam[:B] - (1.0 - mu)) / mu).astype(int)
    sizes = np.maximum(sizes, 1)

    def repaired(step: int) -> np.ndarray:
        best = None
        best_d = np.inf
        for b in range(B):
            if step < 0 and sizes[b] <= 1:
                continue
            trial = sizes.copy()
            trial[b] += step
            d = _spectral_distance(lam, trial, mu)
            if d < best_d:
                best_d = d
                best = trial
        return best

    while int(sizes.sum()) > n:
        sizes = repaired(-1)
    while int(sizes.sum()) < n:
        sizes = repaired(+1)

    # One-unit transfers preserve the total; stop at a local minimum.
    improved = True
    current = _spectral_distance(lam, sizes, mu)
    while improved:
        improved = False
        for src in range(B):
            if sizes[src] <= 1:
                continue
            for dst in range(B):
                if dst == src:
                    continue
                trial = sizes.copy()
                trial[src] -= 1
                trial[dst] += 1
                d = _spectral_distance(lam, trial, mu)
                if d < current - 1e-15:
                    sizes, current = trial, d
                    improved = True
    sizes = np.sort(sizes)[::-1]
    return BlockPartition(
        mu=mu,
        block_sizes=tuple(int(s) for s in sizes),
        lambda_th=lambda_th,
        fit_distance=current,
    )


def correlation_root(sigma: CorrelationMatrix) -> np.ndarray:
    """Matrix square root R with sigma = R @ R.T, via the symmetric eigensolver.

    Small negative eigenvalues from roundoff are clipped at zero, so the root
    also covers rank-deficient cases such as a fully correlated aperture.
    """
    lam, vec = np.linalg.eigh(sigma.entries)
    if lam[0] < -_PSD_TOL * sigma.n:
        raise NumericalError(
            f"cannot factor correlation matrix: min eigenvalue {lam[0]:.3e}"
        )
    root = vec * np.sqrt(np.clip(lam, 0.0, None))
    return root
