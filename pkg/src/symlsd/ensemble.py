"""Band matrices, random data matrices, and symmetrized lag-tau spectra.

The distance-tau half-band matrix drives everything: its closed-form
spectrum comes from a residue-class block decomposition (it is permutation
similar to a direct sum of tau tridiagonal half-band blocks), and sandwiching
it between a random data matrix and its adjoint yields the symmetrized
auto-cross covariance matrix whose eigenvalues we sample.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConstructionMismatchError,
    InvalidInputError,
    NonHermitianError,
    ResourceLimitError,
)

DEFAULT_MAX_DIM = 4096

_MASK64 = (1 << 64) - 1

DIST_TAGS = ("complex-gaussian", "real-gaussian", "rademacher", "pareto-symmetric")


@dataclass(frozen=True)
class EntryDistribution:
    """Mean-zero unit-variance entry law for the data matrix."""

    tag: str
    alpha: float | None = None

    def __post_init__(self):
        if self.tag not in DIST_TAGS:
            raise InvalidInputError(f"unknown distribution tag {self.tag!r}")
        if self.tag == "pareto-symmetric":
            if self.alpha is None or not self.alpha > 2.0:
                raise InvalidInputError(
                    "pareto-symmetric needs alpha > 2 for a finite variance"
                )
        elif self.alpha is not None:
            raise InvalidInputError(f"{self.tag} takes no alpha parameter")

    @classmethod
    def parse(cls, text: str) -> "EntryDistribution":
        text = text.strip()
        if text.endswith(")") and "(" in text:
            tag, arg = text[:-1].split("(", 1)
            return cls(tag.strip(), float(arg))
        return cls(text)

    def __str__(self) -> str:
        if self.alpha is not None:
            return f"{self.tag}({self.alpha:g})"
        return self.tag


COMPLEX_GAUSSIAN = EntryDistribution("complex-gaussian")
REAL_GAUSSIAN = EntryDistribution("real-gaussian")
RADEMACHER = EntryDistribution("rademacher")


def build_c(n: int, tau: int) -> np.ndarray:
    """Distance-tau half-band matrix; identity at tau = 0, zero when tau >= n."""
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if tau < 0:
        raise InvalidInputError(f"tau must be >= 0, got {tau}")
    if tau == 0:
        return np.eye(n)
    C = np.zeros((n, n))
    if tau < n:
        idx = np.arange(n - tau)
        C[idx, idx + tau] = 0.5
        C[idx + tau, idx] = 0.5
    return C


def c_spectrum_closed(n: int, tau: int) -> np.ndarray:
    """Exact spectrum of the half-band matrix for tau >= 1, ascending.

    Indices in the same residue class mod tau form an independent tridiagonal
    half-band block of size m_r = floor((n-r)/tau) + 1 with eigenvalues
    cos(k*pi/(m_r+1)).
    """
    if n < 1 or tau < 1:
        raise InvalidInputError("need n >= 1 and tau >= 1")
    parts = []
    for r in range(1, tau + 1):
        if r > n:
            continue
        m_r = (n - r) // tau + 1
        k = np.arange(1, m_r + 1)
        parts.append(np.cos(k * math.pi / (m_r + 1)))
    return np.sort(np.concatenate(parts))


def mix64(seed: int, r: int) -> int:
    """splitmix64-style mixing of a master seed and replicate index."""
    x = (int(seed) + (r + 1) * 0x9E3779B97F4A7C15) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


def sample_data(N: int, T: int, tau: int,
                dist: EntryDistribution = COMPLEX_GAUSSIAN,
                seed: int = 0) -> np.ndarray:
    """N x (T + tau) matrix of i.i.d. mean-0 variance-1 entries, deterministic in seed."""
    if N < 1 or T < 1 or tau < 0:
        raise InvalidInputError(f"bad dimensions N={N}, T={T}, tau={tau}")
    rng = np.random.default_rng(seed)
    shape = (N, T + tau)
    if dist.tag == "complex-gaussian":
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)
    if dist.tag == "real-gaussian":
        return rng.standard_normal(shape)
    if dist.tag == "rademacher":
        return rng.integers(0, 2, shape) * 2.0 - 1.0
    # pareto-symmetric: centered Pareto tail with a random sign, standardized.
    a = dist.alpha
    p = rng.pareto(a, shape) + 1.0
    signs = rng.integers(0, 2, shape) * 2.0 - 1.0
    mean = a / (a - 1.0)
    var = a / ((a - 1.0) ** 2 * (a - 2.0))
    return signs * (p - mean) / math.sqrt(var)


def build_m(X: np.ndarray, tau: int) -> np.ndarray:
    """Symmetrized lag-tau covariance matrix of the columns of X.

    Computes both the outer-product sum and the band-matrix sandwich and
    checks that they agree entrywise to 1e-10 before returning.
    """
    X = np.asarray(X)
    if X.ndim != 2:
        raise InvalidInputError("X must be a 2-d array")
    if tau < 0:
        raise InvalidInputError(f"tau must be >= 0, got {tau}")
    T = X.shape[1] - tau
    if T < 1:
        raise InvalidInputError(f"need T >= 1 lag pairs, got {X.shape[1]} columns for tau={tau}")
    lead = X[:, :T]
    lag = X[:, tau:tau + T]
    outer = (lead @ lag.conj().T + lag @ lead.conj().T) / (2.0 * T)
    C = build_c(X.shape[1], tau)
    sandwich = (X @ C) @ X.conj().T / T
    diff = np.max(np.abs(outer - sandwich))
    if diff > 1e-10:
        raise ConstructionMismatchError(
            f"outer-product and band-sandwich paths differ by {diff:.3e}"
        )
    return outer


def hermitian_eigs(M: np.ndarray) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending."""
    M = np.asarray(M)
    dev = np.max(np.abs(M - M.conj().T))
    if dev > 1e-10:
        raise NonHermitianError(f"input deviates from Hermitian by {dev:.3e}")
    return np.sort(np.linalg.eigvalsh(M))


def simulate_esd(N: int, T: int, tau: int,
                 dist: EntryDistribution = COMPLEX_GAUSSIAN,
                 seed: int = 0,
                 replicates: int = 1,
                 threads: int = 1,
                 max_dim: int = DEFAULT_MAX_DIM) -> np.ndarray:
    """Pooled, sorted eigenvalues of independent symmetrized matrix draws.

    Replicate seeds derive from the master seed via mix64, so the result is
    independent of execution order and of the thread count.
    """
    if replicates < 1:
        raise InvalidInputError(f"replicates must be >= 1, got {replicates}")
    if N > max_dim:
        raise ResourceLimitError(
            f"N={N} exceeds the dense-matrix cap {max_dim}; raise max_dim to override"
        )
    seeds = [mix64(seed, r) for r in range(replicates)]

    def one(s: int) -> np.ndarray:
        return hermitian_eigs(build_m(sample_data(N, T, tau, dist, s), tau))

    if threads > 1 and replicates > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, seeds))
    else:
        results = [one(s) for s in seeds]
    return np.sort(np.concatenate(results))
