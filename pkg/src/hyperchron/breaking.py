"""Symmetry breaking r = 2n: embedded Minkowski space, strong Hermiticity, hypertwistors.

A broken event is a 2n x 2n weakly Hermitian matrix with the clumped row
index ``a = A*n + i`` (spinor index major), so the block
``X[A*n:(A+1)*n, A'*n:(A'+1)*n]`` holds ``x^{AA' i}_j`` and an embedded
Minkowski point is ``np.kron(x, I_n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import chronometry as chrono
from .chronometry import DEFAULT_TOL, Tolerance
from .errors import (
    DimensionMismatch,
    NotUnimodular,
    SingularCorrelation,
    WrongDimension,
    ZeroInput,
)
from .symmetry import LorentzElement, PoincareElement

ScalarField = Callable[[np.ndarray], complex]


def internal_dim(X) -> int:
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] % 2:
        raise WrongDimension(f"broken events are 2n x 2n, got {X.shape}")
    return X.shape[0] // 2


def blocks(X) -> np.ndarray:
    """View ``X`` as ``B[A, A', i, j] = x^{AA' i}_j``."""
    X = np.asarray(X, dtype=complex)
    n = internal_dim(X)
    return X.reshape(2, n, 2, n).transpose(0, 2, 1, 3)


def from_blocks(B) -> np.ndarray:
    B = np.asarray(B, dtype=complex)
    n = B.shape[2]
    return B.transpose(0, 2, 1, 3).reshape(2 * n, 2 * n)


def _minkowski_event(x, tol) -> np.ndarray:
    x = chrono.as_interval(x, tol)
    if x.shape != (2, 2):
        raise WrongDimension(f"expected a 2x2 Minkowski event, got {x.shape}")
    return x


def embed_minkowski(x, n: int, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    if n < 1:
        raise WrongDimension("internal dimension must be >= 1")
    return np.kron(_minkowski_event(x, tol), np.eye(n))


def is_embedded(X, tol: float = 1e-9) -> np.ndarray | None:
    """Return the Minkowski point ``x`` if ``X`` is within ``tol`` of ``x (x) I_n``."""
    X = np.asarray(X, dtype=complex)
    n = internal_dim(X)
    x = np.trace(blocks(X), axis1=2, axis2=3) / n
    if np.max(np.abs(X - np.kron(x, np.eye(n)))) <= tol:
        return x
    return None


def lift_poincare(lam2, beta2, n: int, tol: float = 1e-10) -> PoincareElement:
    lam2 = np.asarray(getattr(lam2, "matrix", lam2), dtype=complex)
    if lam2.shape != (2, 2):
        raise WrongDimension(f"lambda must be 2x2, got {lam2.shape}")
    if abs(np.linalg.det(lam2) - 1.0) > tol:
        raise NotUnimodular(f"det(lambda) = {np.linalg.det(lam2)}")
    beta2 = _minkowski_event(beta2, DEFAULT_TOL)
    eye = np.eye(n)
    return PoincareElement(LorentzElement(np.kron(lam2, eye)), np.kron(beta2, eye))


@dataclass(frozen=True, eq=False)
class HermitianCorrelation:
    """Preferred element ``t_{AA'}`` identifying primed conjugates with duals."""

    t: np.ndarray

    def __post_init__(self):
        t = chrono.as_interval(self.t)
        if np.linalg.cond(t) > 1e12:
            raise SingularCorrelation("correlation matrix is not invertible")
        object.__setattr__(self, "t", t)


def strong_hermitian_conjugate(mu, t: HermitianCorrelation | None = None) -> np.ndarray:
    """``t^-1 mu^H t``; the ordinary adjoint when ``t`` is the identity."""
    mu = np.asarray(mu, dtype=complex)
    if t is None:
        return mu.conj().T
    tm = t.t if isinstance(t, HermitianCorrelation) else HermitianCorrelation(t).t
    if tm.shape != mu.shape:
        raise DimensionMismatch(f"mu is {mu.shape}, t is {tm.shape}")
    return np.linalg.solve(tm, mu.conj().T @ tm)


def is_strong_hermitian(mu, t: HermitianCorrelation | None = None,
                        tol: Tolerance = DEFAULT_TOL) -> bool:
    mu = np.asarray(mu, dtype=complex)
    diff = np.max(np.abs(mu - strong_hermitian_conjugate(mu, t)))
    return bool(diff <= tol.threshold(float(np.max(np.abs(mu)))))


@dataclass(frozen=True, eq=False)
class Hypertwistor:
    omega: np.ndarray
    pi: np.ndarray

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=complex).ravel()
        pi = np.asarray(self.pi, dtype=complex).ravel()
        if omega.shape != pi.shape:
            raise DimensionMismatch(f"omega has {omega.size} components, pi has {pi.size}")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "pi", pi)

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.omega, self.pi])


def twistor_pseudo_norm(Z: Hypertwistor) -> float:
    return float(2.0 * np.vdot(Z.pi, Z.omega).real)


def twistor_form(r: int) -> np.ndarray:
    """Hermitian form ``G`` on C^{2r} with ``Z^H G Z`` equal to the pseudo-norm."""
    eye = np.eye(r)
    zero = np.zeros((r, r))
    return np.block([[zero, eye], [eye, zero]]).astype(complex)


def segre_factor(Z, tol: float = 1e-6) -> tuple[np.ndarray, np.ndarray] | None:
    """Split ``Z[alpha, i] = Z^alpha psi^i`` when ``Z`` has numerical rank one.

    The twistor factor has unit norm and its first non-negligible component
    real and positive.
    """
    Z = np.asarray(Z, dtype=complex)
    if Z.ndim != 2:
        raise WrongDimension(f"expected a matrix, got shape {Z.shape}")
    U, s, Vh = np.linalg.svd(Z)
    if s[0] == 0.0:
        raise ZeroInput("Segre factorisation of the zero matrix")
    if s.size > 1 and s[1] > tol * s[0]:
        return None
    left = U[:, 0]
    right = s[0] * Vh[0]
    k = int(np.argmax(np.abs(left) > tol))
    phase = left[k] / abs(left[k])
    return left / phase, right * phase


def _default_step(x) -> float:
    return 1e-5 * (1.0 + float(np.linalg.norm(x)))


def field_expand(phi: ScalarField, x, n: int, h: float | None = None):
    """Zeroth and first order terms of ``phi`` around ``x (x) I_n``.

    Returns ``(phi0, phi1)`` with ``phi1[A, A', i, j]`` the derivative paired
    as ``d phi = sum phi1[A, A', i, j] * dX^{AA' j}_i``.
    """
    X0 = embed_minkowski(x, n)
    h = _default_step(x) if h is None else h
    phi0 = complex(phi(X0))
    values = []
    for e in chrono.hermitian_basis(2 * n):
        values.append((complex(phi(X0 + h * e)) - complex(phi(X0 - h * e))) / (2.0 * h))
    grad = chrono.covector_from_hermitian_samples(2 * n, values)
    # grad pairs with dX[a, b]; phi1 carries the internal indices the other way round
    phi1 = blocks(grad).transpose(0, 1, 3, 2)
    return phi0, phi1
