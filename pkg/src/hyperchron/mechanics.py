"""Elementary systems: momentum, mass, angular momentum and intrinsic spin.

Index conventions (all arrays are plain complex matrices):

* momentum ``P[A, A'] = P_{AA'}``, weakly Hermitian;
* angular momentum ``l[B, A] = l^B_A`` (row carries the upper index);
* ``P_{AC'} beta^{BC'}`` is ``beta @ P.T``, which equals ``beta @ conj(P)``;
* spin ``S = (i/m) (l.T @ P - P @ conj(l))``.

Under ``lambda`` in SL(r, C) vectors go to ``lambda x lambda^H``, ``l`` to
``lambda l lambda^-1`` and the covector ``P`` to ``lambda^-T P conj(lambda)^-1``,
which keeps the pairing ``sum(P * x)`` fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import chronometry as chrono
from .chronometry import DEFAULT_TOL, Tolerance
from .errors import DimensionMismatch, MasslessSystem, TachyonicMomentum, TracefulGenerator

TRACE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ElementarySystem:
    p: np.ndarray
    l: np.ndarray

    def __post_init__(self):
        p = chrono.as_interval(self.p)
        l = np.asarray(self.l, dtype=complex)
        if l.shape != p.shape:
            raise DimensionMismatch(f"P is {p.shape} but l is {l.shape}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "l", l)

    @classmethod
    def create(cls, p, l) -> "ElementarySystem":
        """Construct with the trace-free check on ``l``; shifted systems skip it."""
        l = np.asarray(l, dtype=complex)
        if abs(np.trace(l)) > TRACE_TOL * max(1.0, float(np.max(np.abs(l)))):
            raise TracefulGenerator(f"angular momentum must be trace-free, tr(l) = {np.trace(l)}")
        return cls(p, l)

    @property
    def r(self) -> int:
        return self.p.shape[0]

    @property
    def positive_energy(self) -> bool:
        return chrono.is_future_causal(self.p)


def mass(p, tol: Tolerance = DEFAULT_TOL) -> float:
    p = chrono.as_interval(p, tol)
    r = p.shape[0]
    delta = chrono.chronometric_form(p, tol)
    scale = math.factorial(r) * float(np.max(np.abs(p))) ** r
    if delta < -tol.threshold(scale):
        raise TachyonicMomentum(f"chronometric form of P is negative ({delta:.6g})")
    return max(delta, 0.0) ** (1.0 / r)


def shift_origin(sys: ElementarySystem, beta) -> ElementarySystem:
    beta = chrono.as_interval(beta)
    if beta.shape != sys.p.shape:
        raise DimensionMismatch(f"shift is {beta.shape}, system is {sys.p.shape}")
    return ElementarySystem(sys.p, sys.l + beta @ sys.p.conj())


def spin_covector(sys: ElementarySystem) -> np.ndarray:
    m = mass(sys.p)
    if m <= 0.0:
        raise MasslessSystem("spin is undefined for a massless system")
    return (1j / m) * (sys.l.T @ sys.p - sys.p @ sys.l.conj())


def spin_magnitude(sys: ElementarySystem) -> float:
    s = spin_covector(sys)
    r = s.shape[0]
    s = 0.5 * (s + s.conj().T)
    return abs(math.factorial(r) * float(np.linalg.det(s).real)) ** (1.0 / r)


def lorentz_transform_system(sys: ElementarySystem, lam) -> ElementarySystem:
    lam = np.asarray(getattr(lam, "matrix", lam), dtype=complex)
    inv = np.linalg.inv(lam)
    return ElementarySystem(inv.T @ sys.p @ inv.conj(), lam @ sys.l @ inv)


def system_totals(systems: Sequence[ElementarySystem]) -> ElementarySystem:
    systems = list(systems)
    if not systems:
        raise ValueError("need at least one system")
    shape = systems[0].p.shape
    if any(s.p.shape != shape for s in systems):
        raise DimensionMismatch("systems have different r")
    return ElementarySystem(sum(s.p for s in systems), sum(s.l for s in systems))
