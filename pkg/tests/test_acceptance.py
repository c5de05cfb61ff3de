"""Acceptance suite: the ten end-to-end criteria, one test (and one
pass/fail line) each.  Tolerances are fixed here and must not be loosened."""

import math
import random
import time

import numpy as np
from scipy import integrate

from engelsr import elliptic, maxwell, synthesis
from engelsr.expmap import (
    TimedCovector,
    dilate,
    dilate_state,
    exp,
    integrate_oracle,
    reflect_covector,
    reflect_state,
)
from engelsr.pendulum import Covector, classify, flow


def _report(num, desc, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {desc}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def _stratified_covectors(rng, n):
    """Covectors drawn from every stratum, biased toward the generic ones."""
    out = []
    while len(out) < n - 40:
        out.append(
            Covector(rng.uniform(-math.pi, math.pi), rng.uniform(-3, 3), rng.uniform(-3, 3))
        )
    for _ in range(16):  # separatrix
        a = rng.uniform(0.3, 2.5) * rng.choice([-1.0, 1.0])
        th = rng.uniform(-2.8, 2.8)
        c2 = 2.0 * (abs(a) + a * math.cos(th))
        if c2 > 1e-3:
            out.append(Covector(th, rng.choice([-1.0, 1.0]) * math.sqrt(c2), a))
    for _ in range(8):  # equilibria
        a = rng.uniform(0.3, 2.5) * rng.choice([-1.0, 1.0])
        out.append(Covector(rng.choice([0.0, math.pi]), 0.0, a))
    for _ in range(8):  # circles
        out.append(Covector(rng.uniform(-math.pi, math.pi), rng.uniform(0.4, 3) * rng.choice([-1, 1]), 0.0))
    for _ in range(8):  # lines
        out.append(Covector(rng.uniform(-math.pi, math.pi), 0.0, 0.0))
    return out


def test_criterion_01_special_function_suite():
    start = time.time()
    worst = 0.0
    for k in np.linspace(0.01, 0.99, 30):
        k = float(k)
        big_k, big_e = elliptic.complete_integrals(k)
        for x in np.linspace(-15.0, 15.0, 31):
            x = float(x)
            sn, cn, dn, _ = elliptic.jacobi(x, k)
            worst = max(worst, abs(sn * sn + cn * cn - 1.0))
            worst = max(worst, abs(dn * dn + k * k * sn * sn - 1.0))
            worst = max(
                worst,
                abs(elliptic.jacobi_eps(x + 2 * big_k, k) - elliptic.jacobi_eps(x, k) - 2 * big_e),
            )
    for k in (0.2, 0.6, 0.9, 0.97):
        for x in (0.8, 3.1, 6.4):
            quad, _ = integrate.quad(lambda u: elliptic.jacobi(u, k)[2] ** 2, 0.0, x, limit=200)
            worst = max(worst, abs(elliptic.jacobi_eps(x, k) - quad))
    elapsed = time.time() - start
    _report(
        1,
        "special-function identities and quadrature oracle <= 1e-10",
        worst <= 1e-10 and elapsed < 5.0,
        f"max residual {worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_02_closed_form_vs_ode_oracle():
    start = time.time()
    rng = random.Random(101)
    worst = 0.0
    count = 0
    for lam in _stratified_covectors(rng, 500):
        tm = maxwell.t_max1(lam)
        cap = min(10.0, 0.95 * tm.value) if tm.finite else 10.0
        t = rng.uniform(0.05, 1.0) * cap
        a = exp(lam, t)
        b = integrate_oracle(lam, t, steps=max(500, math.ceil(400 * t)))
        worst = max(worst, max(abs(p - q) for p, q in zip(a.as_tuple(), b.as_tuple())))
        count += 1
    elapsed = time.time() - start
    _report(
        2,
        "closed-form endpoint vs ODE oracle <= 1e-8 on stratified sample",
        worst <= 1e-8 and count >= 500 and elapsed < 60.0,
        f"{count} samples, max diff {worst:.2e}, {elapsed:.0f}s",
    )


def test_criterion_03_symmetry_commutation():
    rng = random.Random(102)
    worst = 0.0
    for _ in range(200):
        lam = Covector(rng.uniform(-math.pi, math.pi), rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5))
        nu = TimedCovector(lam, rng.uniform(0.1, 6.0))
        q = exp(nu.lam, nu.t)

        def rel(a, b):
            return max(
                abs(p - r) / max(1.0, abs(p), abs(r)) for p, r in zip(a.as_tuple(), b.as_tuple())
            )

        for i in range(1, 8):
            rc = reflect_covector(i, nu)
            worst = max(worst, rel(reflect_state(i, q), exp(rc.lam, rc.t)))
        for mu in (0.1, 1.0, 7.0):
            rd = dilate(mu, nu)
            worst = max(worst, rel(dilate_state(mu, q), exp(rd.lam, rd.t)))
    _report(
        3,
        "reflection/dilation commutation residuals <= 1e-9",
        worst <= 1e-9,
        f"max residual {worst:.2e}",
    )


def test_criterion_04_root_constants():
    ok = abs(maxwell.p_z1(0.0) - 4.4934094579) <= 1e-8
    k0 = maxwell.k0()
    big_k, big_e = elliptic.complete_integrals(k0)
    ok = ok and abs(2.0 * big_e - big_k) <= 1e-12
    ok = ok and abs(maxwell.f_z(2.0 * big_k, k0)) <= 1e-10
    bracket_ok = True
    for i in range(100):
        k = 0.005 + 0.985 * i / 99
        kk = elliptic.complete_integrals(k)[0]
        p = maxwell.p_z1(k)
        bracket_ok = bracket_ok and kk < p < 3.0 * kk
    _report(
        4,
        "root constants p_z1(0), k0 and the (K, 3K) bracket",
        ok and bracket_ok,
        f"p_z1(0)={maxwell.p_z1(0.0):.10f}, k0={k0:.12f}",
    )


def test_criterion_05_cut_time_table():
    ok = maxwell.cut_time(Covector(0.0, 2.0, 0.0)).value == math.pi
    for lam in (
        Covector(0.0, 0.0, 1.0),
        Covector(math.pi, 0.0, 1.0),
        Covector(0.3, 0.0, 0.0),
        Covector(0.0, 2.0, 1.0),
    ):
        ok = ok and not maxwell.cut_time(lam).finite
    val = maxwell.cut_time(Covector(0.0, 4.0, 1.0)).value  # rotation, k = 1/2
    ok = ok and abs(val - elliptic.complete_integrals(0.5)[0]) <= 1e-10
    _report(5, "cut-time closed-form table per stratum", ok)


def test_criterion_06_profile_endpoints_and_divergence():
    ok = abs(maxwell.cut_profile(0.5 * math.pi).value - 2.0 * math.pi) <= 1e-10
    ok = ok and abs(maxwell.cut_profile(1e-4).value - 2.0 * math.pi) <= 1e-2
    ok = ok and not maxwell.cut_profile(0.0).finite
    beta1 = math.acos(math.sqrt(5.0) - 2.0)
    ok = ok and maxwell.cut_profile(beta1).as_float() > 1e3
    _report(6, "cut-time profile endpoints and divergence at beta_1", ok)


def test_criterion_07_inverse_round_trip():
    start = time.time()
    rng = random.Random(103)
    failures = 0
    worst = 0.0
    count = {1: 0, 2: 0, 3: 0, 4: 0}
    while min(count.values()) < 100:
        lam = Covector(rng.uniform(-math.pi, math.pi), rng.uniform(-3, 3), rng.uniform(-3, 3))
        tm = maxwell.t_max1(lam)
        cap = tm.value if tm.finite else 10.0
        nu = TimedCovector(lam, rng.uniform(0.05, 0.95) * cap)
        d = synthesis.in_domain(nu)
        if d is None or count[d] >= 100:
            continue
        count[d] += 1
        try:
            r = synthesis.solve_generic(exp(nu.lam, nu.t))
        except synthesis.NonConvergenceError:
            failures += 1
            continue
        worst = max(worst, r.residual)
    elapsed = time.time() - start
    _report(
        7,
        "inverse-map round trip, 100 per domain, residual <= 1e-7",
        failures == 0 and worst <= 1e-7 and elapsed < 300.0,
        f"max residual {worst:.2e}, {failures} failures, {elapsed:.0f}s",
    )


def test_criterion_08_special_syntheses():
    r1 = synthesis.solve_special(synthesis.State(0, 3, 0, 4.5))
    ok = r1.region is synthesis.Region.A and abs(r1.sr_distance - 3.0) <= 1e-9
    r2 = synthesis.solve_special(synthesis.State(-1, 1, 0, 1.0 / 3.0))
    ok = ok and r2.region is synthesis.Region.L_MINUS_A
    ok = ok and abs(r2.sr_distance - math.sqrt(2.0)) <= 1e-9
    ok = ok and abs(r2.trajectories[0].lam.theta - math.pi / 4) <= 1e-9
    r3 = synthesis.solve_special(synthesis.State(2, 0, math.pi / 2, math.pi / 2))
    ok = ok and r3.region is synthesis.Region.S6_PP
    ok = ok and abs(r3.sr_distance - math.pi) <= 1e-9
    ok = ok and abs(r3.trajectories[0].lam.c - 1.0) <= 1e-9
    for z in (2.0, -0.7):
        r4 = synthesis.solve_special(synthesis.State(0, 0, z, 0))
        ok = ok and len(r4.trajectories) == 2
        ok = ok and r4.trajectories[0].t == r4.trajectories[1].t
        ok = ok and r4.residual <= 1e-9
    _report(8, "worked special-set targets and the two-circle pair", ok)


def test_criterion_09_maxwell_boundary_consistency():
    rng = random.Random(104)
    worst = 0.0
    n = 0
    while n < 200:
        kind = n % 3
        if kind == 0:  # vanishing midpoint momentum
            lam_h = Covector(rng.uniform(-math.pi, math.pi), 0.0, rng.uniform(-2, 2))
            t = rng.uniform(0.3, 5.0)
            lam = flow(lam_h, -0.5 * t)
        elif kind == 1:  # midpoint angle on the axis
            lam_h = Covector(rng.choice([0.0, math.pi]), rng.uniform(-2.5, 2.5), rng.uniform(-2, 2))
            t = rng.uniform(0.3, 5.0)
            lam = flow(lam_h, -0.5 * t)
        else:  # first Maxwell time
            lam = Covector(rng.uniform(-math.pi, math.pi), rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5))
            tm = maxwell.t_max1(lam)
            if not tm.finite:
                continue
            t = tm.value
        q = exp(lam, t)
        worst = max(worst, abs(q.x * q.z))
        n += 1
    cone_ok = True
    m = 0
    while m < 200:
        lam = Covector(rng.uniform(-math.pi, math.pi), rng.uniform(-3, 3), rng.uniform(-3, 3))
        tm = maxwell.t_max1(lam)
        cap = tm.value if tm.finite else 10.0
        nu = TimedCovector(lam, rng.uniform(0.05, 0.95) * cap)
        d = synthesis.in_domain(nu)
        if d is None:
            continue
        m += 1
        q = exp(nu.lam, nu.t)
        sign_x = -1 if d in (1, 2) else 1
        sign_z = 1 if d in (1, 4) else -1
        cone_ok = cone_ok and sign_x * q.x > 0 and sign_z * q.z > 0
    _report(
        9,
        "Maxwell boundary maps to xz=0 and open domains to open cones",
        worst <= 1e-9 and cone_ok,
        f"max |xz| {worst:.2e}",
    )


def test_criterion_10_cut_time_invariance_suite():
    rng = random.Random(105)
    ok = True
    n = 0
    while n < 500:
        lam = Covector(rng.uniform(-math.pi, math.pi), rng.uniform(-3, 3), rng.uniform(-3, 3))
        t0 = maxwell.t_max1(lam)
        n += 1
        if not t0.finite:
            # invariance of the infinite value under flow and reflections
            ok = ok and not maxwell.t_max1(flow(lam, 1.3)).finite
            continue
        # same (E, |alpha|) on the same stratum
        e = 0.5 * lam.c**2 - lam.alpha * math.cos(lam.theta)
        th2 = rng.uniform(-math.pi, math.pi)
        c2sq = 2.0 * (e + lam.alpha * math.cos(th2))
        if c2sq > 1e-6:
            lam2 = Covector(th2, rng.choice([-1.0, 1.0]) * math.sqrt(c2sq), lam.alpha)
            if classify(lam2).tag == classify(lam).tag:
                ok = ok and abs(maxwell.t_max1(lam2).value - t0.value) <= 1e-12 * max(1.0, t0.value)
        # flow invariance
        moved = maxwell.t_max1(flow(lam, rng.uniform(-4, 4)))
        ok = ok and abs(moved.value - t0.value) <= 1e-12 * max(1.0, t0.value)
        # reflection invariance
        for i in range(1, 8):
            li = reflect_covector(i, TimedCovector(lam, 1.0)).lam
            ok = ok and abs(maxwell.t_max1(li).value - t0.value) <= 1e-12 * max(1.0, t0.value)
        # dilation homogeneity
        mu = rng.uniform(0.2, 5.0)
        lmu = dilate(mu, TimedCovector(lam, 1.0)).lam
        ok = ok and abs(maxwell.t_max1(lmu).value - mu * t0.value) <= 1e-12 * max(1.0, mu * t0.value)
    _report(10, "cut-time invariance under flow, reflections and dilations", ok)
