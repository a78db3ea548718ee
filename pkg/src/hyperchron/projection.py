"""Density-matrix maps from the broken quantum space-time to Minkowski space.

A state ``rho`` on the internal space sends a broken event with blocks
``B^{AA'}`` to the Minkowski event ``Y[A, A'] = tr(rho @ B^{AA'})``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import chronometry as chrono
from .breaking import blocks, internal_dim, lift_poincare
from .chronometry import CausalClass, Label
from .errors import DimensionMismatch, InvalidDensityMatrix
from .sampling import random_psd, random_spinor, rng_from
from .symmetry import PoincareElement, apply_poincare

STATE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CandidateMap:
    """Hermitian unit-trace matrix on the internal space; positivity not required."""

    rho: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise InvalidDensityMatrix(f"expected a square matrix, got {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > STATE_TOL:
            raise InvalidDensityMatrix("matrix is not Hermitian")
        if abs(np.trace(rho) - 1.0) > STATE_TOL:
            raise InvalidDensityMatrix(f"trace is {np.trace(rho).real:.12g}, expected 1")
        object.__setattr__(self, "rho", rho)

    @property
    def n(self) -> int:
        return self.rho.shape[0]

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.rho)[0])


class DensityMatrix(CandidateMap):
    """Positive semi-definite, Hermitian, unit trace."""

    def __post_init__(self):
        super().__post_init__()
        if self.min_eigenvalue() < -STATE_TOL:
            raise InvalidDensityMatrix(
                f"matrix has negative eigenvalue {self.min_eigenvalue():.3e}"
            )


def _rho_array(rho) -> np.ndarray:
    if isinstance(rho, CandidateMap):
        return rho.rho
    return np.asarray(rho, dtype=complex)


def project(rho, X) -> np.ndarray:
    rho = _rho_array(rho)
    n = internal_dim(X)
    if rho.shape != (n, n):
        raise DimensionMismatch(f"state is {rho.shape}, event has internal dimension {n}")
    # tr(rho B) = sum_ij rho[i, j] B[j, i]
    return np.einsum("ij,abji->ab", rho, blocks(X))


def check_equivariance(rho, g2, X, tol: float = 1e-9) -> bool:
    """Does projecting commute with the lifted Poincare action of ``g2``?"""
    if not isinstance(g2, PoincareElement):
        g2 = PoincareElement(*g2)
    n = internal_dim(X)
    lifted = lift_poincare(g2.lam, g2.beta, n)
    lhs = project(rho, apply_poincare(lifted, X))
    rhs = apply_poincare(g2, project(rho, X))
    scale = max(1.0, float(np.max(np.abs(rhs))))
    return bool(np.max(np.abs(lhs - rhs)) <= tol * scale)


@dataclass(frozen=True)
class CausalityReport:
    n: int
    trials: int
    seed: int | None
    min_image_eigenvalue: float
    violations: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "min_image_eigenvalue": self.min_image_eigenvalue,
            "violations": self.violations,
            "tol": self.tol,
            "pass": self.passed,
        }


def sample_future_causal(n: int, rng) -> np.ndarray:
    """Rank-one ``alpha alpha^H`` or a normalised ``G G^H``, with equal odds."""
    if rng.integers(2) == 0:
        a = random_spinor(2 * n, rng)
        a = a / np.linalg.norm(a)
        return np.outer(a, a.conj())
    return random_psd(2 * n, rng)


def check_causality_preservation(rho, trials: int = 1000, seed=None,
                                 tol: float = 1e-12) -> CausalityReport:
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(_rho_array(rho))
    rng = rng_from(seed)
    lowest = np.inf
    violations = 0
    for _ in range(trials):
        X = sample_future_causal(rho.n, rng)
        w = np.linalg.eigvalsh(project(rho, X))
        lowest = min(lowest, float(w[0]))
        # image must be PSD and nonzero
        if w[0] < -tol or w[-1] <= tol:
            violations += 1
    return CausalityReport(rho.n, trials, seed if isinstance(seed, int) else None,
                           lowest, violations, tol)


@dataclass(frozen=True, eq=False)
class Counterexample:
    X: np.ndarray
    image: np.ndarray
    input_class: CausalClass
    image_class: CausalClass

    @property
    def verified(self) -> bool:
        return (self.input_class.label is Label.FutureNull
                and self.image_class.label in (Label.PastNull, Label.DegeneratePastTimelike,
                                               Label.PastTimelike))


def falsify_non_psd(cand, alpha=(1.0, 0.0), tol: float = 1e-12) -> Counterexample | None:
    """Build a future-null event whose image under a non-PSD map is past-pointing.

    With ``v`` an eigenvector for a negative eigenvalue, ``X = (a a^H) (x) (v v^H)``
    projects to ``(v^H rho v) a a^H``.
    """
    if not isinstance(cand, CandidateMap):
        cand = CandidateMap(cand)
    w, V = np.linalg.eigh(cand.rho)
    if w[0] >= -tol:
        return None
    v = V[:, 0]
    alpha = np.asarray(alpha, dtype=complex)
    X = np.kron(np.outer(alpha, alpha.conj()), np.outer(v, v.conj()))
    image = project(cand, X)
    return Counterexample(X, image, chrono.causal_classify(X), chrono.causal_classify(image))
