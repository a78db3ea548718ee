"""Acceptance criteria AC1 to AC11, one test each.

Every test records a ``[PASS]`` or ``[FAIL]`` line with the measured figure
before asserting; the lines are echoed in the pytest terminal summary and
when this file is run directly with ``python tests/test_acceptance.py``.
"""

import math
import sys
import time

import numpy as np
import pytest

from hyperchron import breaking, chronometry as c, mechanics, projection, symmetry as sym, verify
from hyperchron.chronometry import Label
from hyperchron.sampling import (
    random_density_matrix,
    random_future_timelike,
    random_hermitian,
    random_non_psd_candidate,
    random_unit_trace_hermitian,
    rng_from,
)

RESULTS: list[str] = []

# (r, canonical diagonal, label): both case lists, r = 2 and r = 3
TAXONOMY = [
    (2, [0, 0], Label.Zero),
    (2, [1, 0], Label.FutureNull),
    (2, [-1, 0], Label.PastNull),
    (2, [1, 1], Label.FutureTimelike),
    (2, [1, -1], Label.Spacelike),
    (2, [-1, -1], Label.PastTimelike),
    (3, [0, 0, 0], Label.Zero),
    (3, [1, 0, 0], Label.FutureNull),
    (3, [-1, 0, 0], Label.PastNull),
    (3, [1, 1, 0], Label.DegenerateFutureTimelike),
    (3, [1, -1, 0], Label.DegenerateSpacelike),
    (3, [-1, -1, 0], Label.DegeneratePastTimelike),
    (3, [1, 1, 1], Label.FutureTimelike),
    (3, [1, 1, -1], Label.FutureSemiSpacelike),
    (3, [1, -1, -1], Label.PastSemiSpacelike),
    (3, [-1, -1, -1], Label.PastTimelike),
]


def record(key: str, title: str, ok: bool, detail: str, started: float) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {key} {title}: {detail} ({time.perf_counter() - started:.2f} s)"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_ac01_minkowski_round_trip():
    t0 = time.perf_counter()
    rng = rng_from(101)
    trip = form = 0.0
    for _ in range(1000):
        t, x, y, z = rng.normal(size=4)
        v = c.minkowski_to_event(t, x, y, z)
        trip = max(trip, float(np.max(np.abs(np.array(c.event_to_minkowski(v)) - (t, x, y, z)))))
        form = max(form, abs(2 * np.linalg.det(v).real - (t * t - x * x - y * y - z * z)))
    ok = trip <= 1e-12 and form <= 1e-10
    record("AC1", "Minkowski round trip", ok, f"max round-trip error {trip:.2e} (<= 1e-12), "
           f"max |2 det - interval| {form:.2e} (<= 1e-10)", t0)


def test_ac02_chronometric_oracle():
    t0 = time.perf_counter()
    rng = rng_from(102)
    worst = 0.0
    for r in (2, 3, 4):
        for _ in range(300):
            v = random_hermitian(r, rng)
            d = c.chronometric_form(v)
            mixed = c.mixed_chronometric([v] * r)
            worst = max(worst, abs(d - mixed) / abs(d))
    record("AC2", "r! det equals polarized mixed form", worst <= 1e-9,
           f"max relative error {worst:.2e} (<= 1e-9) over 900 matrices", t0)


def test_ac03_taxonomy():
    t0 = time.perf_counter()
    rng = rng_from(103)
    wrong = []
    for r, diag, label in TAXONOMY:
        q, _ = np.linalg.qr(rng.normal(size=(r, r)) + 1j * rng.normal(size=(r, r)))
        v = q @ np.diag(np.array(diag, dtype=float)) @ q.conj().T
        got = c.causal_classify(v).label
        if got is not label:
            wrong.append(f"{diag}->{got.value}")
    record("AC3", "taxonomy conformance", not wrong,
           f"{len(TAXONOMY) - len(wrong)}/{len(TAXONOMY)} canonical cases labelled exactly"
           + (f"; wrong: {wrong}" if wrong else ""), t0)


def test_ac04_poincare_invariance():
    t0 = time.perf_counter()
    worst = 0.0
    changes = 0
    for r in (2, 3, 4):
        rep = verify.invariance_suite(r, 1000, seed=104 + r)
        worst = max(worst, rep.max_violation)
        changes += rep.extra["label_changes"]
    ok = worst <= 1e-8 and changes == 0
    record("AC4", "hyper-Poincare invariance", ok,
           f"max relative change of Delta {worst:.2e} (<= 1e-8), label changes {changes} over 3000 actions", t0)


def test_ac05_geodesics():
    t0 = time.perf_counter()
    rng = rng_from(105)
    endpoint = quad = reparam = 0.0
    for r in (2, 3, 4):
        for _ in range(5):
            z = random_hermitian(r, rng)
            d = random_future_timelike(r, rng)
            y = z + d
            g = sym.geodesic_between(y, z)
            tau = c.chronometric_form(d) ** (1.0 / r)
            endpoint = max(endpoint, float(np.max(np.abs(g(tau) - y))))
            quad = max(quad, abs(sym.proper_time_functional(g, 1000) - tau))
            bent = sym.Curve(lambda lam, z=z, d=d: z + d * (lam**3 - 1) / 7, 1.0, 2.0)
            reparam = max(reparam, abs(sym.proper_time_functional(bent, 1000) - tau))
    ok = endpoint <= 1e-9 and quad <= 1e-6 and reparam <= 1e-5
    record("AC5", "geodesics and proper time", ok,
           f"endpoint error {endpoint:.2e} (<= 1e-9), quadrature error {quad:.2e} (<= 1e-6), "
           f"reparametrised error {reparam:.2e} (<= 1e-5)", t0)


def test_ac06_killing():
    t0 = time.perf_counter()
    worst = 0.0
    ranks = {}
    for r in (2, 3):
        worst = max(worst, verify.killing_suite(r, 50, seed=106 + r).max_violation)
        ranks[r] = verify.dimension_suite(r, 3, seed=106).extra["rank"]
    ok = worst <= 1e-7 and ranks == {2: 10, 3: 25}
    record("AC6", "Killing conservation", ok,
           f"max relative spread {worst:.2e} (<= 1e-7) over 50 geodesics, field ranks {ranks[2]} and {ranks[3]} "
           "(10, 25)", t0)


def test_ac07_cone_convexity():
    t0 = time.perf_counter()
    failures = 0
    for r in (2, 3, 4):
        failures += int(verify.cone_suite(r, 1000, seed=107 + r).max_violation)
    record("AC7", "future cone convexity", failures == 0,
           f"{failures} failures over 1000 pairs each for r = 2, 3, 4", t0)


def test_ac08_mechanics():
    t0 = time.perf_counter()
    rng = rng_from(108)
    shift = 0.0
    for r in (2, 3):
        for _ in range(1000):
            sys_ = verify.random_system(r, rng)
            s0 = mechanics.spin_covector(sys_)
            s1 = mechanics.spin_covector(mechanics.shift_origin(sys_, random_hermitian(r, rng)))
            shift = max(shift, float(np.max(np.abs(s1 - s0))) / max(1.0, float(np.max(np.abs(s0)))))
    oracle = 0.0
    for _ in range(100):
        sys_ = verify.random_system(2, rng)
        m_ref, s_ref = verify.minkowski_mass_and_spin(sys_.p, sys_.l)
        oracle = max(oracle, abs(mechanics.mass(sys_.p) - m_ref) / m_ref,
                     abs(mechanics.spin_magnitude(sys_) - s_ref) / max(1.0, s_ref))
    ok = shift <= 1e-9 and oracle <= 1e-9
    record("AC8", "mechanics", ok,
           f"spin origin-shift change {shift:.2e} (<= 1e-9), Minkowski oracle mismatch {oracle:.2e} (<= 1e-9)", t0)


def test_ac09_projection():
    t0 = time.perf_counter()
    rng = rng_from(109)
    embed = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 4))
        rho = random_unit_trace_hermitian(n, rng)
        x = random_hermitian(2, rng)
        embed = max(embed, float(np.max(np.abs(projection.project(rho, breaking.embed_minkowski(x, n)) - x))))
    lowest = math.inf
    for n in (1, 2, 3):
        report = projection.check_causality_preservation(random_density_matrix(n, rng), 1000, seed=109 + n)
        lowest = min(lowest, report.min_image_eigenvalue)
    equiv = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 4))
        rho = random_density_matrix(n, rng)
        g = sym.random_poincare(2, rng)
        X = random_hermitian(2 * n, rng)
        lhs = projection.project(rho, sym.apply_poincare(breaking.lift_poincare(g.lam, g.beta, n), X))
        rhs = sym.apply_poincare(g, projection.project(rho, X))
        equiv = max(equiv, float(np.max(np.abs(lhs - rhs))) / max(1.0, float(np.max(np.abs(rhs)))))
    ok = embed <= 1e-12 and lowest >= -1e-12 and equiv <= 1e-9
    record("AC9", "density-matrix projection", ok,
           f"project(embed) error {embed:.2e} (<= 1e-12), min image eigenvalue {lowest:.2e} (>= -1e-12), "
           f"equivariance error {equiv:.2e} (<= 1e-9)", t0)


def test_ac10_falsification():
    t0 = time.perf_counter()
    rng = rng_from(110)
    verified = 0
    for _ in range(100):
        n = int(rng.integers(2, 5))
        rho = random_non_psd_candidate(n, rng)
        cx = projection.falsify_non_psd(rho)
        if cx is None:
            continue
        # independent checks: the image is recomputed by explicit block traces
        image = np.array([[np.trace(rho @ cx.X[A * n:(A + 1) * n, B * n:(B + 1) * n]) for B in range(2)]
                          for A in range(2)])
        w_in = np.linalg.eigvalsh(cx.X)
        w_out = np.linalg.eigvalsh(image)
        input_null = np.sum(w_in > 1e-12) == 1 and w_in[0] >= -1e-12
        image_past = w_out[0] < -1e-12 and w_out[-1] <= 1e-12
        labels_ok = (c.causal_classify(cx.X).label is Label.FutureNull
                     and c.causal_classify(image).label in (Label.PastNull, Label.PastTimelike,
                                                              Label.DegeneratePastTimelike))
        verified += bool(input_null and image_past and labels_ok)
    record("AC10", "non-PSD falsification", verified == 100, f"{verified}/100 counterexamples verified", t0)


def test_ac11_embedding_scaling():
    t0 = time.perf_counter()
    rng = rng_from(111)
    worst = 0.0
    for n in (1, 2, 3, 4):
        cn = (math.factorial(2 * n) / 2**n) ** (1.0 / (2 * n))
        for _ in range(25):
            x = random_future_timelike(2, rng)
            ratio = c.proper_time(breaking.embed_minkowski(x, n), np.zeros((2 * n, 2 * n))) / \
                c.proper_time(x, np.zeros((2, 2)))
            worst = max(worst, abs(ratio - cn) / cn)
    record("AC11", "embedding proper-time scaling", worst <= 1e-9,
           f"max relative deviation from ((2n)!/2^n)^(1/2n) {worst:.2e} (<= 1e-9), n = 1..4", t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
