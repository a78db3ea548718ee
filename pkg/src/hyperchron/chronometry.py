"""Hyperspin events, the chronometric form and causal classification.

An event (or interval) of the r^2-dimensional quantum space-time is stored as a
plain ``numpy`` complex r x r array ``M`` with ``M[A, A'] = x^{AA'}``.  Real
points are the weakly Hermitian ones, ``M == M^H``.  The chronometric form of an
interval is ``r! det(M)``, and the causal relation between two events is fixed
by the signature (p, q) of their difference.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NonHermitianInput, NotTimelike, WrongArity, WrongDimension

SQRT_HALF = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative tolerance pair used for Hermiticity and rank tests.

    Thresholds are ``abs_eps + rel_eps * scale`` where ``scale`` is the
    largest absolute entry or eigenvalue of the matrix under test.
    """

    abs_eps: float = 1e-12
    rel_eps: float = 1e-9

    def __post_init__(self):
        if not (self.abs_eps > 0 and self.rel_eps > 0):
            raise ValueError("tolerances must be positive")

    def threshold(self, scale: float) -> float:
        return self.abs_eps + self.rel_eps * float(scale)


DEFAULT_TOL = Tolerance()


class Label(str, enum.Enum):
    Zero = "Zero"
    FutureNull = "FutureNull"
    PastNull = "PastNull"
    DegenerateFutureTimelike = "DegenerateFutureTimelike"
    DegeneratePastTimelike = "DegeneratePastTimelike"
    DegenerateSpacelike = "DegenerateSpacelike"
    DegenerateFutureSemiSpacelike = "DegenerateFutureSemiSpacelike"
    DegeneratePastSemiSpacelike = "DegeneratePastSemiSpacelike"
    FutureTimelike = "FutureTimelike"
    PastTimelike = "PastTimelike"
    Spacelike = "Spacelike"
    FutureSemiSpacelike = "FutureSemiSpacelike"
    PastSemiSpacelike = "PastSemiSpacelike"

    def __str__(self):
        return self.value


def label_for(r: int, p: int, q: int) -> Label:
    """Map a signature (p, q) of an r x r interval to its causal label."""
    rank = p + q
    if p < 0 or q < 0 or rank > r:
        raise ValueError(f"invalid signature ({p}, {q}) for r={r}")
    if rank == 0:
        return Label.Zero
    if rank == 1:
        return Label.FutureNull if p == 1 else Label.PastNull
    full = rank == r
    if q == 0:
        return Label.FutureTimelike if full else Label.DegenerateFutureTimelike
    if p == 0:
        return Label.PastTimelike if full else Label.DegeneratePastTimelike
    if p == q:
        return Label.Spacelike if full else Label.DegenerateSpacelike
    if p > q:
        return Label.FutureSemiSpacelike if full else Label.DegenerateFutureSemiSpacelike
    return Label.PastSemiSpacelike if full else Label.DegeneratePastSemiSpacelike


_TIME_REVERSED = {
    Label.FutureNull: Label.PastNull,
    Label.DegenerateFutureTimelike: Label.DegeneratePastTimelike,
    Label.DegenerateFutureSemiSpacelike: Label.DegeneratePastSemiSpacelike,
    Label.FutureTimelike: Label.PastTimelike,
    Label.FutureSemiSpacelike: Label.PastSemiSpacelike,
}
_TIME_REVERSED.update({v: k for k, v in list(_TIME_REVERSED.items())})


def time_reversed(label: Label) -> Label:
    """Label of ``-v`` given the label of ``v``."""
    return _TIME_REVERSED.get(label, label)


@dataclass(frozen=True)
class CausalClass:
    rank: int
    plus: int
    minus: int
    label: Label

    def to_dict(self) -> dict:
        return {"rank": self.rank, "p": self.plus, "q": self.minus, "label": self.label.value}


@dataclass(frozen=True)
class CanonicalDecomposition:
    """Signed rank-one terms ``sign * alpha alpha^H`` summing to an interval."""

    terms: tuple

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def signature(self) -> tuple[int, int]:
        p = sum(1 for s, _ in self.terms if s > 0)
        return p, len(self.terms) - p

    def reconstruct(self, r: int) -> np.ndarray:
        out = np.zeros((r, r), dtype=complex)
        for sign, alpha in self.terms:
            out += sign * np.outer(alpha, alpha.conj())
        return out


def _square(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise WrongDimension(f"expected a non-empty square matrix, got shape {M.shape}")
    return M


def hermitian_defect(M) -> float:
    """Largest entrywise ``|M - M^H|``."""
    M = _square(M)
    return float(np.max(np.abs(M - M.conj().T)))


def is_weakly_hermitian(M, tol: Tolerance = DEFAULT_TOL) -> bool:
    M = _square(M)
    scale = float(np.max(np.abs(M)))
    return hermitian_defect(M) <= tol.threshold(scale)


def as_interval(M, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Validate ``M`` as a weakly Hermitian matrix and return it as a complex array."""
    M = _square(M)
    defect = hermitian_defect(M)
    if defect > tol.threshold(float(np.max(np.abs(M)))):
        raise NonHermitianInput(defect)
    return M


def chronometric_form(v, tol: Tolerance = DEFAULT_TOL) -> float:
    """``Delta(v) = r! det(v)``, real for weakly Hermitian ``v``."""
    v = as_interval(v, tol)
    r = v.shape[0]
    return math.factorial(r) * float(np.linalg.det(v).real)


def _polarized(vs: Sequence[np.ndarray]) -> complex:
    # inclusion-exclusion over non-empty subsets of slots
    r = len(vs)
    total = 0.0 + 0.0j
    for k in range(1, r + 1):
        sign = -1.0 if (r - k) % 2 else 1.0
        for subset in itertools.combinations(vs, k):
            total += sign * np.linalg.det(sum(subset))
    return total


def mixed_chronometric(vs: Sequence, tol: Tolerance = DEFAULT_TOL) -> float:
    """Chronometric tensor evaluated on r (possibly different) intervals.

    Computed as ``sum_{S nonempty} (-1)^{r-|S|} det(sum_{i in S} v_i)``, which
    is ``r!`` times the mixed discriminant of the slots.
    """
    vs = [as_interval(v, tol) for v in vs]
    if not vs:
        raise WrongArity("need at least one slot")
    r = vs[0].shape[0]
    if len(vs) != r or any(v.shape != (r, r) for v in vs):
        raise WrongArity(f"mixed_chronometric needs exactly {r} slots of shape {r}x{r}, got {len(vs)}")
    return float(_polarized(vs).real)


def hermitian_basis(r: int) -> list[np.ndarray]:
    """Real basis of the r x r Hermitian matrices (r^2 elements).

    Order: ``E_kk`` for each k, then for each k < l the pair
    ``E_kl + E_lk`` and ``i (E_kl - E_lk)``.
    """
    basis = []
    for k in range(r):
        e = np.zeros((r, r), dtype=complex)
        e[k, k] = 1.0
        basis.append(e)
    for k in range(r):
        for l in range(k + 1, r):
            s = np.zeros((r, r), dtype=complex)
            s[k, l] = s[l, k] = 1.0
            a = np.zeros((r, r), dtype=complex)
            a[k, l] = 1j
            a[l, k] = -1j
            basis.extend([s, a])
    return basis


def covector_from_hermitian_samples(r: int, values: Sequence[complex]) -> np.ndarray:
    """Recover ``N`` with ``sum(N * H_k) = values[k]`` on :func:`hermitian_basis`."""
    values = list(values)
    N = np.zeros((r, r), dtype=complex)
    for k in range(r):
        N[k, k] = values[k]
    idx = r
    for k in range(r):
        for l in range(k + 1, r):
            c_sym, c_anti = values[idx], values[idx + 1]
            idx += 2
            # c_sym = N_kl + N_lk, c_anti = i (N_kl - N_lk)
            N[k, l] = 0.5 * (c_sym - 1j * c_anti)
            N[l, k] = 0.5 * (c_sym + 1j * c_anti)
    return N


def polarized_covector(vs: Sequence, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """The linear functional ``u -> g(u, v_1, ..., v_{r-1})`` as a matrix ``N``.

    ``N`` pairs entrywise: ``sum(N * u) == mixed_chronometric([u, *vs])``.
    """
    vs = [as_interval(v, tol) for v in vs]
    if not vs:
        raise WrongArity("polarized_covector needs r-1 >= 1 slots")
    r = vs[0].shape[0]
    if len(vs) != r - 1 or any(v.shape != (r, r) for v in vs):
        raise WrongArity(f"polarized_covector needs exactly {r - 1} slots of shape {r}x{r}")
    values = [_polarized([h, *vs]).real for h in hermitian_basis(r)]
    return covector_from_hermitian_samples(r, values)


def eigensystem(v) -> tuple[np.ndarray, np.ndarray]:
    v = np.asarray(v, dtype=complex)
    return np.linalg.eigh(0.5 * (v + v.conj().T))


def signature(v, tol: Tolerance = DEFAULT_TOL) -> tuple[int, int]:
    v = as_interval(v, tol)
    w = np.linalg.eigvalsh(0.5 * (v + v.conj().T))
    theta = tol.threshold(float(np.max(np.abs(w))))
    return int(np.sum(w > theta)), int(np.sum(w < -theta))


def causal_classify(v, tol: Tolerance = DEFAULT_TOL) -> CausalClass:
    v = as_interval(v, tol)
    p, q = signature(v, tol)
    return CausalClass(p + q, p, q, label_for(v.shape[0], p, q))


def _fix_phase(u: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(u)))
    if abs(u[k]) == 0:
        return u
    return u * (abs(u[k]) / u[k])


def canonical_decompose(v, tol: Tolerance = DEFAULT_TOL) -> CanonicalDecomposition:
    """Write ``v`` as ``sum sign_k alpha_k alpha_k^H`` with orthogonal ``alpha_k``.

    Positive terms come first, each group ordered by decreasing ``|lambda|``;
    every ``alpha`` has its largest component real and positive.
    """
    v = as_interval(v, tol)
    w, U = eigensystem(v)
    theta = tol.threshold(float(np.max(np.abs(w))))
    pos = [k for k in np.argsort(-w) if w[k] > theta]
    neg = [k for k in np.argsort(w) if w[k] < -theta]
    terms = []
    for k in pos + neg:
        alpha = math.sqrt(abs(w[k])) * _fix_phase(U[:, k])
        terms.append((1 if w[k] > 0 else -1, alpha))
    return CanonicalDecomposition(tuple(terms))


def proper_time(x, y, tol: Tolerance = DEFAULT_TOL) -> float:
    """``|Delta(x - y)|^(1/r)`` for time-like separated events."""
    d = as_interval(np.asarray(x, dtype=complex) - np.asarray(y, dtype=complex), tol)
    cls = causal_classify(d, tol)
    if cls.label not in (Label.FutureTimelike, Label.PastTimelike):
        raise NotTimelike(f"separation is {cls.label.value}, proper time needs a time-like interval")
    return abs(chronometric_form(d, tol)) ** (1.0 / d.shape[0])


def minkowski_to_event(t: float, x: float, y: float, z: float) -> np.ndarray:
    return SQRT_HALF * np.array([[t + z, x + 1j * y], [x - 1j * y, t - z]], dtype=complex)


def event_to_minkowski(v, tol: Tolerance = DEFAULT_TOL) -> tuple[float, float, float, float]:
    v = as_interval(v, tol)
    if v.shape != (2, 2):
        raise WrongDimension(f"Minkowski coordinates need a 2x2 event, got {v.shape}")
    s = math.sqrt(2.0)
    a, d = v[0, 0].real, v[1, 1].real
    b = 0.5 * (v[0, 1] + v[1, 0].conjugate())
    return (a + d) / s, s * b.real, s * b.imag, (a - d) / s


def is_future_causal(v, tol: Tolerance = DEFAULT_TOL, include_origin: bool = False) -> bool:
    """True for nonzero positive semi-definite ``v`` (the closed future cone).

    With ``include_origin`` the zero interval counts as well.
    """
    p, q = signature(v, tol)
    return q == 0 and (p >= 1 or include_origin)
