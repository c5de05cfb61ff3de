"""Inverse of the geodesic endpoint map: optimal trajectories to a target.

Targets are classified into a partition of the state space: the origin,
the abnormal line A = {x = z = 0, v = y^3/6}, the line set
L = {z = 0, v = (x^2+y^2) y/6}, the surface S6 = {y = 0, v = x z / 2}
split by the signs of x and z, the four open cones

    M1: x < 0, z > 0    M2: x < 0, z < 0
    M3: x > 0, z < 0    M4: x > 0, z > 0

and a residual boundary set.  On the special sets the optimal trajectory
is in closed form (or a scalar root-find); on M1..M4 the endpoint map
restricted to the matching open domain D_i of (covector, time) pairs is
a diffeomorphism and is inverted by damped multi-start Newton in the
midpoint chart (theta_half, c_half, alpha, t).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy import optimize

from . import maxwell
from .expmap import State, TimedCovector, dilate, dilate_state, exp
from .pendulum import Covector, flow

#: relative half-width of the bands around the measure-zero special sets
EPS_REGION = 1e-9

#: default componentwise tolerance of the Newton inversion (normalized frame)
DEFAULT_TOL = 1e-11


class Region(enum.Enum):
    ORIGIN = "Origin"
    M1 = "M1"
    M2 = "M2"
    M3 = "M3"
    M4 = "M4"
    A = "A"
    L_MINUS_A = "L_minus_A"
    S6_PP = "S6_pp"
    S6_PM = "S6_pm"
    S6_MP = "S6_mp"
    S6_MM = "S6_mm"
    S6_0P = "S6_0p"
    S6_0M = "S6_0m"
    S6_P0 = "S6_p0"
    S6_M0 = "S6_m0"
    MPRIME_OTHER = "Mprime_other"


_SPECIAL = frozenset(
    {
        Region.A,
        Region.L_MINUS_A,
        Region.S6_PP,
        Region.S6_PM,
        Region.S6_MP,
        Region.S6_MM,
        Region.S6_0P,
        Region.S6_0M,
        Region.S6_P0,
        Region.S6_M0,
    }
)

_GENERIC = frozenset({Region.M1, Region.M2, Region.M3, Region.M4})


class WrongRegionError(ValueError):
    """The target lies outside the region required by the called solver."""


class UnsupportedRegionError(ValueError):
    """The target lies on a boundary set with no implemented synthesis."""


class NonConvergenceError(RuntimeError):
    """All Newton starts were exhausted without meeting the tolerance."""


@dataclass(frozen=True)
class SynthesisResult:
    trajectories: tuple[TimedCovector, ...]
    region: Region
    residual: float
    sr_distance: float


def _scale(q: State) -> float:
    """Dilation-homogeneous size max(|x|, |y|, sqrt|z|, cbrt|v|)."""
    return max(abs(q.x), abs(q.y), math.sqrt(abs(q.z)), abs(q.v) ** (1.0 / 3.0))


def classify_target(q: State) -> Region:
    """Region tag of a terminal state, with relative snap bands EPS_REGION."""
    s = _scale(q)
    if s == 0.0:
        return Region.ORIGIN
    # equality bands weighted by the dilation degree of each coordinate
    b1, b2, b3 = EPS_REGION * s, EPS_REGION * s * s, EPS_REGION * s**3
    x0 = abs(q.x) <= b1
    y0 = abs(q.y) <= b1
    z0 = abs(q.z) <= b2
    if x0 and z0 and abs(q.v - q.y**3 / 6.0) <= b3:
        return Region.A
    if z0 and abs(q.v - (q.x * q.x + q.y * q.y) * q.y / 6.0) <= b3:
        return Region.L_MINUS_A
    if y0 and abs(q.v - 0.5 * q.x * q.z) <= b3:
        i = 0 if x0 else (1 if q.x > 0 else -1)
        j = 0 if z0 else (1 if q.z > 0 else -1)
        tags = {
            (1, 1): Region.S6_PP,
            (1, -1): Region.S6_PM,
            (-1, 1): Region.S6_MP,
            (-1, -1): Region.S6_MM,
            (0, 1): Region.S6_0P,
            (0, -1): Region.S6_0M,
            (1, 0): Region.S6_P0,
            (-1, 0): Region.S6_M0,
        }
        tag = tags.get((i, j))
        if tag is not None:
            return tag
    if not x0 and not z0:
        if q.x < 0.0:
            return Region.M1 if q.z > 0.0 else Region.M2
        return Region.M4 if q.z > 0.0 else Region.M3
    return Region.MPRIME_OTHER


def _replay_residual(trajs: tuple[TimedCovector, ...], q: State) -> float:
    s = max(1.0, _scale(q))
    worst = 0.0
    for nu in trajs:
        p = exp(nu.lam, nu.t)
        for a, b, w in (
            (p.x, q.x, s),
            (p.y, q.y, s),
            (p.z, q.z, s * s),
            (p.v, q.v, s**3),
        ):
            worst = max(worst, abs(a - b) / w)
    return worst


def _s6_ratio(p: float) -> float:
    # (2p - sin 2p) / (8 sin^2 p), increasing from 0 to +inf on (0, pi)
    return (2.0 * p - math.sin(2.0 * p)) / (8.0 * math.sin(p) ** 2)


def solve_special(q: State) -> SynthesisResult:
    """Optimal trajectory(ies) to a target on A, L or S6, in closed form."""
    region = classify_target(q)
    if region not in _SPECIAL:
        raise WrongRegionError(f"target in region {region.value}, not a special set")
    if region is Region.A:
        # vertical line through the equilibrium covectors
        lam = Covector(0.0, 0.0, 1.0) if q.y > 0 else Covector(math.pi, 0.0, 1.0)
        trajs = (TimedCovector(lam, abs(q.y)),)
    elif region is Region.L_MINUS_A:
        t1 = math.hypot(q.x, q.y)
        trajs = (TimedCovector(Covector(math.atan2(-q.x, q.y), 0.0, 0.0), t1),)
    elif region in (Region.S6_P0, Region.S6_M0):
        theta = -0.5 * math.pi if q.x > 0 else 0.5 * math.pi
        trajs = (TimedCovector(Covector(theta, 0.0, 0.0), abs(q.x)),)
    elif region in (Region.S6_0P, Region.S6_0M):
        # full circles; exactly two optimal trajectories, theta = +-pi/2
        j = 1.0 if q.z > 0 else -1.0
        c = j * math.sqrt(math.pi / abs(q.z))
        t1 = 2.0 * math.pi / abs(c)
        trajs = (
            TimedCovector(Covector(0.5 * math.pi, c, 0.0), t1),
            TimedCovector(Covector(-0.5 * math.pi, c, 0.0), t1),
        )
    else:
        # circular arcs: scalar solve for the half-turn parameter p
        i = 1.0 if q.x > 0 else -1.0
        j = 1.0 if q.z > 0 else -1.0
        ratio = abs(q.z) / (q.x * q.x)
        p_hat = float(
            optimize.brentq(
                lambda p: _s6_ratio(p) - ratio, 1e-12, math.pi - 1e-12, xtol=1e-14
            )
        )
        c_hat = 2.0 * math.sin(p_hat) / abs(q.x)
        p = j * p_hat
        c = j * c_hat
        theta = -i * 0.5 * math.pi - p
        trajs = (TimedCovector(Covector(theta, c, 0.0), 2.0 * p_hat / c_hat),)
    return SynthesisResult(trajs, region, _replay_residual(trajs, q), trajs[0].t)


def in_domain(nu: TimedCovector) -> int | None:
    """Index i of the open domain D_i containing (lam, t), or None."""
    if nu.t <= 0.0:
        return None
    tm = maxwell.t_max1(nu.lam)
    if tm.finite and nu.t >= tm.value:
        return None
    half = flow(nu.lam, 0.5 * nu.t)
    s, c = math.sin(half.theta), half.c
    # the domains are open; points within rounding error of the separating
    # walls sin(theta_half) = 0 or c_half = 0 are treated as boundary
    if abs(s) <= 1e-12 or abs(c) <= 1e-12:
        return None
    if s > 0.0:
        return 1 if c > 0.0 else 2
    return 4 if c > 0.0 else 3


_DOMAIN_OF_REGION = {Region.M1: 1, Region.M2: 2, Region.M3: 3, Region.M4: 4}


def _midpoint_chart_exp(u: tuple[float, float, float, float]) -> State:
    th_h, c_h, alpha, t = u
    lam = flow(Covector(th_h, c_h, alpha), -0.5 * t)
    return exp(lam, t)


def _newton(u0, q: State, domain: int, tol: float):
    """Damped Newton on the midpoint chart; returns (u, residual) or None."""

    def respect_signs(u):
        th_h, c_h, _, t = u
        s = math.sin(th_h)
        if t <= 0.0 or s == 0.0 or c_h == 0.0:
            return False
        want_s = 1.0 if domain in (1, 2) else -1.0
        want_c = 1.0 if domain in (1, 4) else -1.0
        return s * want_s > 0.0 and c_h * want_c > 0.0

    def resid_vec(u):
        p = _midpoint_chart_exp(u)
        return (p.x - q.x, p.y - q.y, p.z - q.z, p.v - q.v)

    def norm(r):
        return max(abs(ri) for ri in r)

    u = tuple(u0)
    r = resid_vec(u)
    best = norm(r)
    h = 1e-6
    # polish well below tol: the covector accuracy is the endpoint residual
    # amplified by the inverse Jacobian, which can be ill-conditioned near
    # the domain boundary
    floor = min(tol, 1e-13)
    for _ in range(60):
        if best <= floor:
            break
        # central-difference Jacobian, column by column
        jac = [[0.0] * 4 for _ in range(4)]
        for jcol in range(4):
            up = list(u)
            um = list(u)
            up[jcol] += h
            um[jcol] -= h
            rp = resid_vec(tuple(up))
            rm = resid_vec(tuple(um))
            for irow in range(4):
                jac[irow][jcol] = (rp[irow] - rm[irow]) / (2.0 * h)
        try:
            step = _solve4(jac, r)
        except ZeroDivisionError:
            break
        lam_damp = 1.0
        improved = False
        for _ in range(25):
            trial = tuple(ui - lam_damp * si for ui, si in zip(u, step))
            if respect_signs(trial):
                rt = resid_vec(trial)
                nt = norm(rt)
                if nt < best:
                    u, r, best = trial, rt, nt
                    improved = True
                    break
            lam_damp *= 0.5
        if not improved:
            break
    return (u, best) if best <= tol else None


def _solve4(a, b):
    """4x4 linear solve by partial-pivot elimination (tiny, allocation-light)."""
    n = 4
    m = [row[:] + [bi] for row, bi in zip(a, b)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if abs(m[piv][col]) < 1e-300:
            raise ZeroDivisionError("singular Jacobian")
        m[col], m[piv] = m[piv], m[col]
        inv = 1.0 / m[col][col]
        for r in range(n):
            if r != col:
                f = m[r][col] * inv
                for cc in range(col, n + 1):
                    m[r][cc] -= f * m[col][cc]
    return [m[r][n] / m[r][r] for r in range(n)]


def _start_grid(domain: int):
    """Deterministic 5 x 5 x 7 x 8 start grid inside the sign cone of D_i."""
    s_sign = 1.0 if domain in (1, 2) else -1.0
    c_sign = 1.0 if domain in (1, 4) else -1.0
    thetas = [s_sign * f * math.pi for f in (0.1, 0.3, 0.5, 0.7, 0.9)]
    cs = [c_sign * m for m in (0.15, 0.45, 1.0, 2.0, 3.5)]
    alphas = [-3.0, -1.2, -0.35, 0.0, 0.35, 1.2, 3.0]
    ts = [0.4, 0.8, 1.3, 1.9, 2.6, 3.5, 4.8, 6.5]
    for th in thetas:
        for c in cs:
            for a in alphas:
                for t in ts:
                    yield (th, c, a, t)


def solve_generic(q: State, tol: float = 1e-8) -> SynthesisResult:
    """The unique optimal trajectory to a target in one of the open cones M1..M4.

    The target is first dilated to unit size, inverted by multi-start damped
    Newton in the midpoint chart, and the solution dilated back.  ``tol`` is
    the componentwise replay tolerance in the normalized frame.
    """
    region = classify_target(q)
    if region not in _GENERIC:
        raise WrongRegionError(f"target in region {region.value}, not in M1..M4")
    domain = _DOMAIN_OF_REGION[region]
    s = _scale(q)
    qn = dilate_state(1.0 / s, q)
    inner = min(tol, DEFAULT_TOL)

    starts = sorted(
        _start_grid(domain),
        key=lambda u: max(
            abs(a - b)
            for a, b in zip(_midpoint_chart_exp(u).as_tuple(), qn.as_tuple())
        ),
    )
    for u0 in starts:
        hit = _newton(u0, qn, domain, inner)
        if hit is None:
            continue
        u, res = hit
        th_h, c_h, alpha, t = u
        lam = flow(Covector(th_h, c_h, alpha), -0.5 * t)
        nu_n = TimedCovector(lam, t)
        if in_domain(nu_n) != domain:
            continue  # converged to a non-optimal preimage; try the next start
        nu = dilate(s, nu_n)
        trajs = (nu,)
        return SynthesisResult(trajs, region, _replay_residual(trajs, q), nu.t)
    raise NonConvergenceError(
        f"no Newton start converged into D{domain} at tolerance {tol}"
    )


def sr_distance(q: State) -> float:
    """Sub-Riemannian distance from the origin (arclength of the optimum)."""
    region = classify_target(q)
    if region is Region.ORIGIN:
        return 0.0
    if region in _SPECIAL:
        return solve_special(q).sr_distance
    if region in _GENERIC:
        return solve_generic(q).sr_distance
    raise UnsupportedRegionError(
        "target lies on a boundary set outside the implemented synthesis"
    )
