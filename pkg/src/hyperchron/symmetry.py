"""Hyper-Poincare group actions, geodesics, proper-time functional and Killing data."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import chronometry as chrono
from .chronometry import DEFAULT_TOL, Label, Tolerance
from .errors import (
    DimensionMismatch,
    NotTimelike,
    NotTimelikeTangent,
    NotUnimodular,
    SingularSample,
    TracefulGenerator,
    WrongDimension,
)
from .sampling import complex_gaussian, rng_from

log = logging.getLogger(__name__)

UNIMODULAR_TOL = 1e-10
MAX_CONDITION = 1e6


@dataclass(frozen=True, eq=False)
class LorentzElement:
    """Element ``lambda`` of SL(r, C); acts on events by ``x -> lambda x lambda^H``."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise WrongDimension(f"expected square matrix, got {m.shape}")
        if abs(np.linalg.det(m) - 1.0) > UNIMODULAR_TOL * max(1.0, np.linalg.norm(m) ** m.shape[0]):
            raise NotUnimodular(f"det(lambda) = {np.linalg.det(m)} is not 1")
        object.__setattr__(self, "matrix", m)

    @property
    def r(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class PoincareElement:
    """Pair ``(lambda, beta)`` acting as ``x -> lambda x lambda^H + beta``."""

    lam: LorentzElement
    beta: np.ndarray

    def __post_init__(self):
        lam = self.lam if isinstance(self.lam, LorentzElement) else LorentzElement(self.lam)
        beta = chrono.as_interval(self.beta)
        if beta.shape != lam.matrix.shape:
            raise DimensionMismatch(f"lambda is {lam.matrix.shape} but beta is {beta.shape}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "beta", beta)

    @property
    def r(self) -> int:
        return self.lam.r

    @classmethod
    def identity(cls, r: int) -> "PoincareElement":
        return cls(LorentzElement(np.eye(r, dtype=complex)), np.zeros((r, r), dtype=complex))

    def compose(self, other: "PoincareElement") -> "PoincareElement":
        """``self o other``: apply ``other`` first."""
        l1, l2 = self.lam.matrix, other.lam.matrix
        return PoincareElement(LorentzElement(l1 @ l2), l1 @ other.beta @ l1.conj().T + self.beta)


def apply_poincare(g: PoincareElement, x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (g.r, g.r):
        raise DimensionMismatch(f"element acts on {g.r}x{g.r} events, got {x.shape}")
    lam = g.lam.matrix
    return lam @ x @ lam.conj().T + g.beta


def apply_lorentz(lam, x) -> np.ndarray:
    lam = lam.matrix if isinstance(lam, LorentzElement) else np.asarray(lam, dtype=complex)
    return lam @ np.asarray(x, dtype=complex) @ lam.conj().T


def random_sl(r: int, seed=None, max_attempts: int = 100) -> LorentzElement:
    """Ginibre matrix rescaled by the principal root ``det^(-1/r)``.

    Samples with condition number above 1e6 are redrawn.
    """
    if r < 2:
        raise WrongDimension("random_sl needs r >= 2")
    rng = rng_from(seed)
    for _ in range(max_attempts):
        g = complex_gaussian(rng, (r, r))
        det = np.linalg.det(g)
        if abs(det) < 1e-300:
            continue
        cond = np.linalg.cond(g)
        log.debug("random_sl: r=%d condition number %.3e", r, cond)
        if cond > MAX_CONDITION:
            continue
        lam = g * det ** (-1.0 / r)
        return LorentzElement(lam)
    raise SingularSample(f"no well-conditioned SL({r}, C) sample after {max_attempts} attempts")


def random_poincare(r: int, seed=None) -> PoincareElement:
    rng = rng_from(seed)
    lam = random_sl(r, rng)
    g = complex_gaussian(rng, (r, r))
    return PoincareElement(lam, 0.5 * (g + g.conj().T))


@dataclass(frozen=True)
class Curve:
    """Parametrised curve ``lambda -> x(lambda)`` on ``[a, b]``.

    Derivatives are central differences; the evaluator is called slightly
    outside ``[a, b]`` at the endpoints, so it must be defined there.
    """

    evaluator: Callable[[float], np.ndarray]
    a: float
    b: float

    def __call__(self, lam: float) -> np.ndarray:
        return np.asarray(self.evaluator(lam), dtype=complex)

    def default_step(self) -> float:
        return 1e-5 * (self.b - self.a)

    def _stencil(self, lam, h):
        h = self.default_step() if h is None else h
        hi, lo = lam + h, lam - h
        # divide by the offsets actually realised in floating point
        return hi, lo, hi - lam, lam - lo

    def tangent(self, lam: float, h: float | None = None) -> np.ndarray:
        hi, lo, hp, hm = self._stencil(lam, h)
        return (self(hi) - self(lo)) / (hp + hm)

    def acceleration(self, lam: float, h: float | None = None) -> np.ndarray:
        hi, lo, hp, hm = self._stencil(lam, h)
        x0 = self(lam)
        return 2.0 * ((self(hi) - x0) / hp - (x0 - self(lo)) / hm) / (hp + hm)


def geodesic_between(y, z, tol: Tolerance = DEFAULT_TOL) -> Curve:
    """Affinely parametrised geodesic from ``z`` (s = 0) to ``y`` (s = tau).

    ``tau = Delta(y - z)^(1/r)`` is the curve's upper bound ``b``.
    """
    y = chrono.as_interval(y, tol)
    z = chrono.as_interval(z, tol)
    if y.shape != z.shape:
        raise DimensionMismatch(f"{y.shape} vs {z.shape}")
    d = y - z
    cls = chrono.causal_classify(d, tol)
    if cls.label is not Label.FutureTimelike:
        raise NotTimelike(f"y - z is {cls.label.value}; geodesic_between needs FutureTimelike")
    tau = chrono.chronometric_form(d, tol) ** (1.0 / d.shape[0])
    velocity = d / tau

    def x(s):
        return z + velocity * s

    return Curve(x, 0.0, tau)


def proper_time_functional(c: Curve, steps: int = 1000, h: float | None = None,
                           tol: Tolerance = DEFAULT_TOL) -> float:
    """Composite Simpson estimate of the integral of ``Delta(v)^(1/r)``."""
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if steps % 2:
        steps += 1
    nodes = np.linspace(c.a, c.b, steps + 1)
    values = np.empty(steps + 1)
    for k, lam in enumerate(nodes):
        v = c.tangent(lam, h)
        cls = chrono.causal_classify(v, tol)
        if cls.label is not Label.FutureTimelike:
            raise NotTimelikeTangent(lam, cls.label.value)
        r = v.shape[0]
        values[k] = chrono.chronometric_form(v, tol) ** (1.0 / r)
    weights = np.ones(steps + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    return float((c.b - c.a) / (3.0 * steps) * np.dot(weights, values))


def geodesic_residual(c: Curve, lam0: float, h: float = 1e-4) -> float:
    """Max-norm of the covector ``g(., dv/dlambda, v, ..., v)``; zero on geodesics."""
    v = c.tangent(lam0, h)
    vdot = c.acceleration(lam0, h)
    r = v.shape[0]
    slots = [_hermitian_part(vdot)] + [_hermitian_part(v)] * (r - 2)
    return float(np.max(np.abs(chrono.polarized_covector(slots))))


def _hermitian_part(m):
    return 0.5 * (m + m.conj().T)


@dataclass(frozen=True, eq=False)
class PoincareGenerator:
    """Infinitesimal hyper-Poincare transformation ``(m, b)`` with ``tr m = 0``."""

    m: np.ndarray
    b: np.ndarray
    name: str = ""

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex)
        b = chrono.as_interval(self.b)
        if m.shape != b.shape:
            raise DimensionMismatch(f"m is {m.shape} but b is {b.shape}")
        if abs(np.trace(m)) > 1e-12 * max(1.0, float(np.max(np.abs(m)))):
            raise TracefulGenerator(f"tr(m) = {np.trace(m)} must vanish")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "b", b)

    @property
    def r(self) -> int:
        return self.m.shape[0]


def generator_field(gen: PoincareGenerator, x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != gen.m.shape:
        raise DimensionMismatch(f"generator acts on {gen.m.shape}, got {x.shape}")
    return gen.m @ x + x @ gen.m.conj().T + gen.b


def killing_conserved_quantity(gen: PoincareGenerator, c: Curve, lam: float,
                               h: float | None = None) -> float:
    """``K(v, ..., v)`` with ``K = g(xi, ...)``, evaluated at ``c(lam)``."""
    x = c(lam)
    v = _hermitian_part(c.tangent(lam, h))
    xi = _hermitian_part(generator_field(gen, x))
    r = x.shape[0]
    return chrono.mixed_chronometric([xi] + [v] * (r - 1))


def traceless_hermitian_basis(r: int) -> list[np.ndarray]:
    """Generalised Gell-Mann matrices: r^2 - 1 traceless Hermitian matrices."""
    basis = []
    for k in range(r):
        for l in range(k + 1, r):
            s = np.zeros((r, r), dtype=complex)
            s[k, l] = s[l, k] = 1.0
            a = np.zeros((r, r), dtype=complex)
            a[k, l] = 1j
            a[l, k] = -1j
            basis.extend([s, a])
    for k in range(1, r):
        d = np.zeros((r, r), dtype=complex)
        d[:k, :k] = np.eye(k)
        d[k, k] = -k
        basis.append(d * math.sqrt(2.0 / (k * (k + 1))))
    return basis


def poincare_generator_basis(r: int) -> list[PoincareGenerator]:
    """The 3r^2 - 2 real generators of the hyper-Poincare algebra.

    Order: boosts ``m = H_k`` for the traceless Hermitian basis, then
    rotations ``m = i H_k`` in the same order, then translations along
    :func:`chronometry.hermitian_basis`.
    """
    if r < 2:
        raise WrongDimension("poincare_generator_basis needs r >= 2")
    zero = np.zeros((r, r), dtype=complex)
    hs = traceless_hermitian_basis(r)
    gens = [PoincareGenerator(h, zero, f"boost[{k}]") for k, h in enumerate(hs)]
    gens += [PoincareGenerator(1j * h, zero, f"rotation[{k}]") for k, h in enumerate(hs)]
    gens += [PoincareGenerator(zero, e, f"translation[{k}]")
             for k, e in enumerate(chrono.hermitian_basis(r))]
    return gens


def _real_coords(h: np.ndarray) -> np.ndarray:
    return np.concatenate([h.real.ravel(), h.imag.ravel()])


def generator_field_rank(gens, points, rtol: float = 1e-9) -> int:
    """Numerical rank over the reals of the fields sampled at ``points``."""
    rows = [np.concatenate([_real_coords(generator_field(g, x)) for x in points]) for g in gens]
    s = np.linalg.svd(np.array(rows), compute_uv=False)
    return int(np.sum(s > rtol * s[0]))
