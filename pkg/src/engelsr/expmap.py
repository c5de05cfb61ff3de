"""Closed-form geodesic endpoint mapping and its symmetry group.

``exp`` evaluates the endpoint of the arclength geodesic with initial
momentum lam after time t, stratum by stratum.  The oscillating /
rotating / separatrix formulas are written for alpha = 1; general alpha
is reached through the scaling symmetry and, for alpha < 0, the
reflection (theta - pi, c, -alpha) <-> (-x, -y, z, -v).

The planar projections (x_t, y_t) are Euler elasticae; the remaining two
coordinates are signed areas accumulated along them.

``integrate_oracle`` integrates the full system with a fixed-step RK4 and
exists only as an independent cross-check for tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import elliptic
from .pendulum import Covector, classify, flow, to_elliptic

#: inputs closer than this to a stratum boundary in k are evaluated with
#: the adjacent singular stratum's closed form
K_SNAP = 1e-6
#: the separatrix snap band must be much tighter: the hyperbolic form has
#: O(1) model error for genuinely oscillating motion near a turning point,
#: while the elliptic formulas stay accurate up to 1 - k ~ 1e-12
SEPARATRIX_SNAP = 1e-11


@dataclass(frozen=True)
class State:
    x: float
    y: float
    z: float
    v: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x, self.y, self.z, self.v)


@dataclass(frozen=True)
class TimedCovector:
    lam: Covector
    t: float


ORIGIN = State(0.0, 0.0, 0.0, 0.0)


def _exp_oscillating(phi: float, k: float, t: float) -> State:
    # alpha = 1; inflexional elastica
    phi_t = phi + t
    sn0, cn0, dn0, _ = elliptic.jacobi(phi, k)
    snt, cnt, dnt, _ = elliptic.jacobi(phi_t, k)
    ep0 = elliptic.jacobi_eps(phi, k)
    ept = elliptic.jacobi_eps(phi_t, k)
    k2 = k * k
    x = 2.0 * k * (cnt - cn0)
    y = 2.0 * (ept - ep0) - t
    z = 2.0 * k * (snt * dnt - sn0 * dn0 - 0.5 * y * (cnt + cn0))
    v = (
        y**3 / 6.0
        + 2.0 * k2 * cn0 * cn0 * y
        - 4.0 * k2 * cn0 * (snt * dnt - sn0 * dn0)
        + 2.0
        * k2
        * (
            (2.0 / 3.0) * (cnt * dnt * snt - cn0 * dn0 * sn0)
            + (1.0 - k2) / (3.0 * k2) * t
            + (2.0 * k2 - 1.0) / (3.0 * k2) * (ept - ep0)
        )
    )
    return State(x, y, z, v)


def _exp_rotating(phi: float, k: float, sgn_c: int, t: float) -> State:
    # alpha = 1; non-inflexional elastica
    psi = phi / k
    psi_t = psi + t / k
    sn0, cn0, dn0, _ = elliptic.jacobi(psi, k)
    snt, cnt, dnt, _ = elliptic.jacobi(psi_t, k)
    k2 = k * k
    # the coordinates are regrouped around the scaled argument dpsi = t/k
    # and the small quantity dg = integral of sn^2 over [psi, psi_t]: the
    # naive transcription has 1/k^3 coefficient blow-ups whose cancellation
    # destroys the small-k (fast rotation) accuracy in double precision
    dpsi = t / k
    dg = (elliptic.jacobi_d(psi_t, k) - elliptic.jacobi_d(psi, k)) / k2
    dcs = cnt * snt - cn0 * sn0
    x = 2.0 * sgn_c * k * (sn0 * sn0 - snt * snt) / (dnt + dn0)
    y = k * (dpsi - 2.0 * dg)
    z = -0.5 * x * y - 2.0 * sgn_c * (dn0 * (dpsi - 2.0 * dg) - dcs)
    bracket = (
        (cnt * dnt * snt - cn0 * dn0 * sn0) / 3.0
        + dpsi / 6.0
        + (k2 - 2.0) / 6.0 * dg
        + 0.5 * (dpsi - 2.0 * dg) * dn0 * dn0
        - dn0 * dcs
    )
    v = 4.0 / k * bracket + y**3 / 6.0
    return State(x, y, z, v)


def _exp_separatrix(theta: float, sgn_c: int, t: float) -> State:
    # alpha = 1, E = 1, c != 0; critical elastica in hyperbolic closed form
    # clamp strictly inside (-1, 1): atanh(+-1) raises at the equilibrium
    lim = math.nextafter(1.0, 0.0)
    phi = math.atanh(max(-lim, min(lim, sgn_c * math.sin(0.5 * theta))))
    phi_t = phi + t
    th0, tht = math.tanh(phi), math.tanh(phi_t)
    sc0, sct = 1.0 / math.cosh(phi), 1.0 / math.cosh(phi_t)
    x = 2.0 * sgn_c * (sct - sc0)
    y = 2.0 * (tht - th0) - t
    z = -0.5 * x * y - 2.0 * sgn_c * sc0 * y + 2.0 * sgn_c * (tht * sct - th0 * sc0)
    v = (
        (2.0 / 3.0) * (tht - th0 + 2.0 * tht * sct * sct - 2.0 * th0 * sc0 * sc0)
        + y**3 / 6.0
        + 2.0 * y * sc0 * sc0
        - 4.0 * sc0 * (tht * sct - th0 * sc0)
    )
    return State(x, y, z, v)


def _exp_circular(theta: float, c: float, t: float) -> State:
    # alpha = 0, c != 0; circle of radius 1/|c|
    ct = c * t
    x = (math.cos(ct + theta) - math.cos(theta)) / c
    y = (math.sin(ct + theta) - math.sin(theta)) / c
    z = (ct - math.sin(ct)) / (2.0 * c * c)
    v = (
        4.0 * math.sin(ct + theta)
        - 3.0 * math.sin(theta)
        - math.sin(2.0 * ct + theta)
        - 2.0 * ct * math.cos(theta)
    ) / (4.0 * c**3)
    return State(x, y, z, v)


def _exp_line(theta: float, t: float) -> State:
    # straight-line geodesic (alpha = c = 0)
    return State(
        -t * math.sin(theta),
        t * math.cos(theta),
        0.0,
        t**3 / 6.0 * math.cos(theta),
    )


def _exp_unit_alpha(lam: Covector, t: float, tag: str) -> State:
    """Endpoint for alpha = 1 on the elliptic strata, with boundary snapping."""
    if tag == "C3":
        return _exp_separatrix(lam.theta, 1 if lam.c > 0 else -1, t)
    ec = to_elliptic(lam)
    if ec.k >= 1.0 - SEPARATRIX_SNAP:
        # next to the separatrix; its hyperbolic form is the exact limit
        if abs(lam.c) <= 1e-9:
            sgn = 1 if math.cos(lam.theta) < 0 else -1  # unstable equilibrium side
            return State(0.0, -t if sgn > 0 else t, 0.0, -(t**3) / 6.0 * sgn)
        return _exp_separatrix(lam.theta, 1 if lam.c > 0 else -1, t)
    if tag == "C1":
        if ec.k <= K_SNAP:
            # small oscillation around the stable equilibrium: straight line
            return State(0.0, t, 0.0, t**3 / 6.0)
        return _exp_oscillating(ec.phi, ec.k, t)
    if ec.k <= K_SNAP:
        # fast rotation: the circular limit
        return _exp_circular(lam.theta, lam.c, t)
    return _exp_rotating(ec.phi, ec.k, ec.sgn_c, t)


def exp(lam: Covector, t: float) -> State:
    """Endpoint of the geodesic with initial momentum lam after time t >= 0."""
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if t == 0.0:
        return ORIGIN
    stratum = classify(lam)
    tag = stratum.tag
    if tag == "C4":
        sa = float(stratum.sign_alpha)
        return State(0.0, sa * t, 0.0, sa * t**3 / 6.0)
    if tag == "C5":
        sa = float(stratum.sign_alpha)
        return State(0.0, -sa * t, 0.0, -sa * t**3 / 6.0)
    if tag == "C6":
        return _exp_circular(lam.theta, lam.c, t)
    if tag == "C7":
        return _exp_line(lam.theta, t)
    # elliptic strata: reduce alpha < 0 by reflection, then scale to alpha = 1
    work, negate = (lam, False)
    if lam.alpha < 0:
        work = Covector(lam.theta - math.pi, lam.c, -lam.alpha)
        negate = True
    sigma = math.sqrt(work.alpha)
    unit = Covector(work.theta, work.c / sigma, 1.0)
    q1 = _exp_unit_alpha(unit, sigma * t, tag)
    q = State(q1.x / sigma, q1.y / sigma, q1.z / sigma**2, q1.v / sigma**3)
    if negate:
        q = State(-q.x, -q.y, q.z, -q.v)
    return q


def integrate_oracle(lam: Covector, t: float, steps: int | None = None) -> State:
    """Fixed-step RK4 integration of the full Hamiltonian system (test oracle)."""
    if steps is None:
        steps = max(1000, math.ceil(1000.0 * t))
    if steps < 1:
        raise ValueError("steps must be >= 1")
    alpha = lam.alpha
    sin, cos = math.sin, math.cos

    def rhs(u):
        th, c, x, y, z, v = u
        dx = -sin(th)
        dy = cos(th)
        return (
            c,
            -alpha * sin(th),
            dx,
            dy,
            0.5 * (x * dy - y * dx),
            0.5 * (x * x + y * y) * dy,
        )

    u = (lam.theta, lam.c, 0.0, 0.0, 0.0, 0.0)
    h = t / steps
    for _ in range(steps):
        k1 = rhs(u)
        k2 = rhs(tuple(ui + 0.5 * h * ki for ui, ki in zip(u, k1)))
        k3 = rhs(tuple(ui + 0.5 * h * ki for ui, ki in zip(u, k2)))
        k4 = rhs(tuple(ui + h * ki for ui, ki in zip(u, k3)))
        u = tuple(
            ui + h / 6.0 * (a + 2.0 * b + 2.0 * c_ + d)
            for ui, a, b, c_, d in zip(u, k1, k2, k3, k4)
        )
    return State(u[2], u[3], u[4], u[5])


_REFLECTIONS_M = {
    1: lambda x, y, z, v: (x, y, -z, v - x * z),
    2: lambda x, y, z, v: (-x, y, z, v - x * z),
    3: lambda x, y, z, v: (-x, y, -z, v),
    4: lambda x, y, z, v: (-x, -y, z, -v),
    5: lambda x, y, z, v: (-x, -y, -z, -v + x * z),
    6: lambda x, y, z, v: (x, -y, z, -v + x * z),
    7: lambda x, y, z, v: (x, -y, -z, -v),
}

_REFLECTIONS_C = {
    1: lambda th, c, a: (th, -c, a),
    2: lambda th, c, a: (-th, c, a),
    3: lambda th, c, a: (-th, -c, a),
    4: lambda th, c, a: (th + math.pi, c, -a),
    5: lambda th, c, a: (th + math.pi, -c, -a),
    6: lambda th, c, a: (-th + math.pi, c, -a),
    7: lambda th, c, a: (-th + math.pi, -c, -a),
}

#: reflections that reverse the vertical flow and therefore act on the
#: preimage through the endpoint covector
_ANTI = frozenset({1, 2, 5, 6})


def reflect_state(i: int, q: State) -> State:
    """Image of an endpoint under the i-th discrete symmetry, i in 1..7."""
    return State(*_REFLECTIONS_M[i](q.x, q.y, q.z, q.v))


def reflect_covector(i: int, nu: TimedCovector) -> TimedCovector:
    """Action of the i-th discrete symmetry on the preimage (lam, t)."""
    lam = flow(nu.lam, nu.t) if i in _ANTI else nu.lam
    return TimedCovector(
        Covector(*_REFLECTIONS_C[i](lam.theta, lam.c, lam.alpha)), nu.t
    )


def dilate(mu: float, nu: TimedCovector) -> TimedCovector:
    """Scaling symmetry on the preimage: (theta, c/mu, alpha/mu^2, mu*t)."""
    if mu <= 0.0:
        raise ValueError("dilation factor must be positive")
    lam = nu.lam
    return TimedCovector(
        Covector(lam.theta, lam.c / mu, lam.alpha / mu**2), mu * nu.t
    )


def dilate_state(mu: float, q: State) -> State:
    """Scaling symmetry on endpoints: (mu*x, mu*y, mu^2*z, mu^3*v)."""
    if mu <= 0.0:
        raise ValueError("dilation factor must be positive")
    return State(mu * q.x, mu * q.y, mu**2 * q.z, mu**3 * q.v)
