"""Seeded Monte Carlo verification suites.

Each suite returns a :class:`SuiteReport`.  Single-check suites compare
``max_violation`` against their own tolerance; suites that bundle several
checks (mechanics, projection) report the worst ``violation / tolerance``
ratio and use tolerance 1.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import breaking, chronometry as chrono, mechanics as mech, projection as proj, symmetry as sym
from .chronometry import Label
from .sampling import (
    complex_gaussian,
    random_density_matrix,
    random_future_timelike,
    random_hermitian,
    rng_from,
)

SUITES = ("invariance", "killing", "cone", "projection", "mechanics", "dimension")

INVARIANCE_TOL = 1e-8
KILLING_TOL = 1e-7
MECHANICS_TOL = 1e-9
EQUIVARIANCE_TOL = 1e-9
EMBED_TOL = 1e-12
CAUSALITY_TOL = 1e-12


@dataclass
class Check:
    name: str
    max_violation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance

    def to_dict(self) -> dict:
        return {"name": self.name, "max_violation": self.max_violation,
                "tolerance": self.tolerance, "pass": self.passed}


@dataclass
class SuiteReport:
    suite: str
    dim_key: str
    dim: int
    trials: int
    seed: int | None
    max_violation: float
    tolerance: float
    wall_time: float = 0.0
    checks: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            self.dim_key: self.dim,
            "trials": self.trials,
            "seed": self.seed,
            "max_violation": self.max_violation,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.checks:
            out["checks"] = [c.to_dict() for c in self.checks]
        out.update(self.extra)
        if timing:
            out["wall_time"] = self.wall_time
        return out


def _from_checks(suite, dim_key, dim, trials, seed, checks, extra=None) -> SuiteReport:
    worst = max(c.max_violation / c.tolerance for c in checks)
    return SuiteReport(suite, dim_key, dim, trials, seed, worst, 1.0, checks=checks, extra=extra or {})


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.wall_time = time.perf_counter() - t0
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@_timed
def invariance_suite(r: int, trials: int = 1000, seed: int | None = 0) -> SuiteReport:
    """Relative change of Delta under random hyper-Poincare maps.

    A change of causal label counts as a violation of 1.
    """
    rng = rng_from(seed)
    worst = 0.0
    label_changes = 0
    for _ in range(trials):
        g = sym.random_poincare(r, rng)
        x, y = random_hermitian(r, rng), random_hermitian(r, rng)
        before = x - y
        after = sym.apply_poincare(g, x) - sym.apply_poincare(g, y)
        d0 = chrono.chronometric_form(before)
        d1 = chrono.chronometric_form(after)
        worst = max(worst, abs(d1 - d0) / max(abs(d0), 1e-300))
        if chrono.causal_classify(before) != chrono.causal_classify(after):
            label_changes += 1
            worst = max(worst, 1.0)
    return SuiteReport("invariance", "r", r, trials, seed, worst, INVARIANCE_TOL,
                       extra={"label_changes": label_changes})


def random_geodesic(r: int, rng) -> sym.Curve:
    z = random_hermitian(r, rng)
    return sym.geodesic_between(z + random_future_timelike(r, rng), z)


def killing_spread(gen, curve, samples: int = 11) -> float:
    """Spread of the conserved quantity along ``curve``, relative to r! |xi| |v|^(r-1)."""
    values = []
    scale = 0.0
    for lam in np.linspace(curve.a, curve.b, samples):
        values.append(sym.killing_conserved_quantity(gen, curve, lam))
        xi = sym.generator_field(gen, curve(lam))
        v = curve.tangent(lam)
        r = v.shape[0]
        scale = max(scale, math.factorial(r) * np.linalg.norm(xi) * np.linalg.norm(v) ** (r - 1))
    return (max(values) - min(values)) / max(scale, 1e-300)


@_timed
def killing_suite(r: int, trials: int = 50, seed: int | None = 0) -> SuiteReport:
    rng = rng_from(seed)
    gens = sym.poincare_generator_basis(r)
    worst = 0.0
    for _ in range(trials):
        curve = random_geodesic(r, rng)
        worst = max(worst, max(killing_spread(g, curve) for g in gens))
    return SuiteReport("killing", "r", r, trials, seed, worst, KILLING_TOL,
                       extra={"generators": len(gens)})


def random_future_timelike_conjugated(r: int, rng) -> np.ndarray:
    """``lambda diag(d) lambda^H`` with log-uniform positive ``d``: wide spread of shapes."""
    lam = sym.random_sl(r, rng).matrix
    d = np.exp(rng.uniform(-3.0, 3.0, size=r))
    return lam @ np.diag(d) @ lam.conj().T


@_timed
def cone_suite(r: int, trials: int = 1000, seed: int | None = 0) -> SuiteReport:
    """Count FutureTimelike pairs whose sum is not FutureTimelike."""
    rng = rng_from(seed)
    failures = 0
    for _ in range(trials):
        a = random_future_timelike_conjugated(r, rng)
        b = random_future_timelike_conjugated(r, rng)
        if chrono.causal_classify(a).label is not Label.FutureTimelike:
            continue
        if chrono.causal_classify(b).label is not Label.FutureTimelike:
            continue
        if chrono.causal_classify(a + b).label is not Label.FutureTimelike:
            failures += 1
    return SuiteReport("cone", "r", r, trials, seed, float(failures), 0.0)


def random_system(r: int, rng) -> mech.ElementarySystem:
    l = complex_gaussian(rng, (r, r))
    l -= np.trace(l) / r * np.eye(r)
    return mech.ElementarySystem.create(random_future_timelike(r, rng), l)


_EPS4 = np.zeros((4, 4, 4, 4))
for _perm in itertools.permutations(range(4)):
    _EPS4[_perm] = np.linalg.det(np.eye(4)[list(_perm)])
_ETA = np.diag([1.0, -1.0, -1.0, -1.0])


def minkowski_mass_and_spin(p, l) -> tuple[float, float]:
    """Mass and Pauli-Lubanski spin of an r = 2 system, computed in 4-vector form.

    The momentum 4-vector is read off the pairing ``sum(P * x)``, the angular
    momentum tensor from the Lorentz generator ``x -> l x + x l^H`` written in
    (t, x, y, z) coordinates.
    """
    basis = [chrono.minkowski_to_event(*e) for e in np.eye(4)]
    gen = np.array([chrono.event_to_minkowski(l @ v + v @ l.conj().T) for v in basis]).T
    J = gen @ _ETA
    p_lower = np.array([np.sum(np.asarray(p) * v).real for v in basis])
    p_upper = _ETA @ p_lower
    m = math.sqrt(p_upper @ _ETA @ p_upper)
    w = 0.5 * np.einsum("abcd,bc,d->a", _EPS4, J, p_upper)
    return m, math.sqrt(abs(w @ _ETA @ w)) / m


@_timed
def mechanics_suite(r: int, trials: int = 1000, seed: int | None = 0) -> SuiteReport:
    rng = rng_from(seed)
    shift = lorentz_mass = lorentz_spin = oracle = 0.0
    for _ in range(trials):
        sys = random_system(r, rng)
        s0 = mech.spin_covector(sys)
        moved = mech.shift_origin(sys, random_hermitian(r, rng))
        scale = max(1.0, float(np.max(np.abs(s0))))
        shift = max(shift, float(np.max(np.abs(mech.spin_covector(moved) - s0))) / scale)
        lam = sym.random_sl(r, rng)
        boosted = mech.lorentz_transform_system(sys, lam)
        m0 = mech.mass(sys.p)
        lorentz_mass = max(lorentz_mass, abs(mech.mass(boosted.p) - m0) / m0)
        sm = mech.spin_magnitude(sys)
        lorentz_spin = max(lorentz_spin, abs(mech.spin_magnitude(boosted) - sm) / max(sm, 1.0))
        if r == 2:
            m_ref, s_ref = minkowski_mass_and_spin(sys.p, sys.l)
            oracle = max(oracle, abs(m0 - m_ref) / m_ref, abs(sm - s_ref) / max(s_ref, 1.0))
    checks = [
        Check("spin_origin_shift", shift, MECHANICS_TOL),
        Check("mass_lorentz", lorentz_mass, MECHANICS_TOL),
        Check("spin_lorentz", lorentz_spin, 1e-8),
    ]
    if r == 2:
        checks.append(Check("minkowski_oracle", oracle, MECHANICS_TOL))
    return _from_checks("mechanics", "r", r, trials, seed, checks)


@_timed
def projection_suite(n: int, trials: int = 1000, seed: int | None = 0, rho=None) -> SuiteReport:
    """Checks a density matrix (random if ``rho`` is None) against the three map properties.

    A non-PSD ``rho`` is not sampled at all: the report fails and carries the
    falsifier's counterexample under ``extra["counterexample"]``.
    """
    rng = rng_from(seed)
    if rho is None:
        rho = random_density_matrix(n, rng)
    cand = proj.CandidateMap(rho)
    n = cand.n
    cx = proj.falsify_non_psd(cand)
    if cx is not None:
        violation = -cand.min_eigenvalue()
        checks = [Check("positivity", violation, CAUSALITY_TOL)]
        return _from_checks("projection", "n", n, 0, seed, checks, extra={"counterexample": cx})
    embed_err = equiv_err = 0.0
    for _ in range(trials):
        x = random_hermitian(2, rng)
        embed_err = max(embed_err, float(np.max(np.abs(proj.project(cand, breaking.embed_minkowski(x, n)) - x))))
        g = sym.random_poincare(2, rng)
        X = random_hermitian(2 * n, rng)
        lifted = breaking.lift_poincare(g.lam, g.beta, n)
        lhs = proj.project(cand, sym.apply_poincare(lifted, X))
        rhs = sym.apply_poincare(g, proj.project(cand, X))
        equiv_err = max(equiv_err, float(np.max(np.abs(lhs - rhs))) / max(1.0, float(np.max(np.abs(rhs)))))
    causal = proj.check_causality_preservation(cand.rho, trials, rng, CAUSALITY_TOL)
    checks = [
        Check("project_embed_identity", embed_err, EMBED_TOL),
        Check("equivariance", equiv_err, EQUIVARIANCE_TOL),
        Check("causality", max(0.0, -causal.min_image_eigenvalue) + causal.violations, CAUSALITY_TOL),
    ]
    return _from_checks("projection", "n", n, trials, seed, checks)


@_timed
def dimension_suite(r: int, trials: int = 1, seed: int | None = 0) -> SuiteReport:
    """Generator count and real rank of the induced fields versus 3r^2 - 2."""
    rng = rng_from(seed)
    gens = sym.poincare_generator_basis(r)
    points = [np.zeros((r, r), dtype=complex)] + [random_hermitian(r, rng) for _ in range(max(3, trials))]
    rank = sym.generator_field_rank(gens, points)
    expected = 3 * r * r - 2
    violation = float(abs(len(gens) - expected) + abs(rank - expected))
    return SuiteReport("dimension", "r", r, trials, seed, violation, 0.0,
                       extra={"expected": expected, "generators": len(gens), "rank": rank})


def run_suite(name: str, dim: int, trials: int, seed: int | None, rho=None) -> SuiteReport:
    if name == "invariance":
        return invariance_suite(dim, trials, seed)
    if name == "killing":
        return killing_suite(dim, trials, seed)
    if name == "cone":
        return cone_suite(dim, trials, seed)
    if name == "mechanics":
        return mechanics_suite(dim, trials, seed)
    if name == "dimension":
        return dimension_suite(dim, trials, seed)
    if name == "projection":
        return projection_suite(dim, trials, seed, rho)
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
