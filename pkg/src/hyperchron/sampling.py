"""Seeded random samplers shared by the verification suites and the CLI."""

from __future__ import annotations

import numpy as np


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def complex_gaussian(rng, shape) -> np.ndarray:
    """Standard complex Gaussian entries, ``E|z|^2 = 1``."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_spinor(r: int, rng) -> np.ndarray:
    return complex_gaussian(rng, r)


def random_hermitian(r: int, rng) -> np.ndarray:
    g = complex_gaussian(rng, (r, r))
    return 0.5 * (g + g.conj().T)


def random_psd(r: int, rng, rank: int | None = None) -> np.ndarray:
    """``G G^H`` normalised to unit Frobenius norm; full rank unless ``rank`` given."""
    g = complex_gaussian(rng, (r, rank or r))
    m = g @ g.conj().T
    return m / np.linalg.norm(m)


def random_future_timelike(r: int, rng) -> np.ndarray:
    """Positive definite interval (signature (r, 0)) with O(1) entries."""
    g = complex_gaussian(rng, (r, r))
    return g @ g.conj().T + 0.1 * np.eye(r)


def random_unit_trace_hermitian(n: int, rng) -> np.ndarray:
    h = random_hermitian(n, rng)
    return h + (1.0 - np.trace(h).real) / n * np.eye(n)


def random_density_matrix(n: int, rng) -> np.ndarray:
    g = complex_gaussian(rng, (n, n))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_non_psd_candidate(n: int, rng) -> np.ndarray:
    """Hermitian, unit trace, with at least one clearly negative eigenvalue."""
    if n < 2:
        raise ValueError("a unit-trace 1x1 Hermitian matrix is always [1]")
    while True:
        c = random_unit_trace_hermitian(n, rng)
        if np.linalg.eigvalsh(c)[0] < -1e-3:
            return c
