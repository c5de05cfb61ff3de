"""Vertical pendulum subsystem of the normal Hamiltonian flow.

Initial momenta live on the phase cylinder coordinatized by
(theta, c, alpha); the vertical dynamics is the pendulum

    theta' = c,   c' = -alpha * sin(theta),   alpha' = 0,

with energy E = c^2/2 - alpha*cos(theta).  The cylinder splits into seven
strata by trajectory type (oscillation, rotation, separatrix, equilibria,
free motion); oscillations and rotations are rectified by elliptic
coordinates (phi, k) in which the flow is a unit-speed shift of phi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import elliptic

TWO_PI = 2.0 * math.pi

#: relative half-width of the band snapped onto singular strata
STRATUM_TOL = 1e-12


def wrap_angle(theta: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    th = math.remainder(theta, TWO_PI)
    if th <= -math.pi:
        th += TWO_PI
    return th


@dataclass(frozen=True)
class Covector:
    """Initial momentum (theta, c, alpha); theta is stored in (-pi, pi]."""

    theta: float
    c: float
    alpha: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", wrap_angle(self.theta))


@dataclass(frozen=True)
class Stratum:
    tag: str  # one of C1..C7
    sign_alpha: int  # +1, -1 or 0 (0 only for C6, C7)

    def __post_init__(self) -> None:
        if (self.sign_alpha == 0) != (self.tag in ("C6", "C7")):
            raise ValueError(f"inconsistent stratum {self.tag}/{self.sign_alpha}")


@dataclass(frozen=True)
class EllipticCoords:
    """Rectified coordinates for oscillations (C1) and rotations (C2).

    phi is the rectified time, sigma = sqrt(|alpha|); for alpha < 0 the
    values describe the reflected pendulum (theta - pi, c, -alpha) and
    stratum.sign_alpha records the original sign.  sgn_c is the constant
    rotation sense, meaningful for C2 only.
    """

    phi: float
    k: float
    sigma: float
    stratum: Stratum
    sgn_c: int = 0


def energy(lam: Covector) -> float:
    """Pendulum energy E = c^2/2 - alpha*cos(theta)."""
    return 0.5 * lam.c * lam.c - lam.alpha * math.cos(lam.theta)


def classify(lam: Covector, tol: float = STRATUM_TOL) -> Stratum:
    """Assign the unique stratum C1..C7, snapping within a relative band.

    Equalities E = +-|alpha|, c = 0, alpha = 0 are tested with tolerance
    ``tol`` relative to the magnitude of the covector; borderline values
    snap onto the singular stratum so its closed forms apply.
    """
    e = energy(lam)
    aa = abs(lam.alpha)
    scale = max(1.0, aa, abs(lam.c), abs(e))
    band = tol * scale
    if aa <= band:
        if abs(lam.c) <= band:
            return Stratum("C7", 0)
        return Stratum("C6", 0)
    sa = 1 if lam.alpha > 0 else -1
    if abs(e + aa) <= band:
        return Stratum("C4", sa)
    if abs(e - aa) <= band:
        if abs(lam.c) <= band:
            return Stratum("C5", sa)
        return Stratum("C3", sa)
    if e < aa:
        return Stratum("C1", sa)
    return Stratum("C2", sa)


def _reflect_neg_alpha(lam: Covector) -> Covector:
    # (theta, c, alpha) -> (theta - pi, c, -alpha), an involution on the cylinder
    return Covector(lam.theta - math.pi, lam.c, -lam.alpha)


def to_elliptic(lam: Covector) -> EllipticCoords:
    """Elliptic coordinates (phi, k, sigma) of an oscillating or rotating covector."""
    stratum = classify(lam)
    if stratum.tag not in ("C1", "C2"):
        raise ValueError(f"elliptic coordinates undefined on stratum {stratum.tag}")
    work = lam if lam.alpha > 0 else _reflect_neg_alpha(lam)
    e = energy(work)
    a = work.alpha
    sigma = math.sqrt(a)
    if stratum.tag == "C1":
        k = math.sqrt((e + a) / (2.0 * a))
        sn = math.sin(0.5 * work.theta) / k
        cn = work.c / (2.0 * k * sigma)
        u = elliptic.inverse_amplitude(sn, cn, k)
        return EllipticCoords(u / sigma, k, sigma, stratum)
    k = math.sqrt(2.0 * a / (e + a))
    sgn_c = 1 if work.c > 0 else -1
    sn = sgn_c * math.sin(0.5 * work.theta)
    cn = math.cos(0.5 * work.theta)
    psi = elliptic.inverse_amplitude(sn, cn, k)
    big_k = elliptic.complete_integrals(k)[0]
    psi = math.fmod(psi, 2.0 * big_k)  # rotation orbit closes after 2K in psi
    return EllipticCoords(psi * k / sigma, k, sigma, stratum, sgn_c)


def _from_elliptic(ec: EllipticCoords, shift: float) -> Covector:
    """Covector at rectified time phi + shift (inverse of ``to_elliptic``)."""
    sigma = ec.sigma
    if ec.stratum.tag == "C1":
        u = sigma * (ec.phi + shift)
        sn, cn, dn, _ = elliptic.jacobi(u, ec.k)
        theta = 2.0 * math.atan2(ec.k * sn, dn)
        c = 2.0 * ec.k * sigma * cn
    else:
        psi = sigma * (ec.phi + shift) / ec.k
        sn, cn, dn, _ = elliptic.jacobi(psi, ec.k)
        theta = 2.0 * math.atan2(ec.sgn_c * sn, cn)
        c = 2.0 * ec.sgn_c * sigma * dn / ec.k
    lam = Covector(theta, c, sigma * sigma)
    if ec.stratum.sign_alpha < 0:
        lam = _reflect_neg_alpha(lam)
    return lam


def _flow_separatrix(lam: Covector, s: float) -> Covector:
    # critical pendulum in hyperbolic closed form; alpha > 0 here
    sigma = math.sqrt(lam.alpha)
    sgn_c = 1 if lam.c > 0 else -1
    # clamp strictly inside (-1, 1): at the unstable equilibrium the
    # asymptotic argument is infinite and atanh(+-1) raises
    lim = math.nextafter(1.0, 0.0)
    u = math.atanh(max(-lim, min(lim, sgn_c * math.sin(0.5 * lam.theta))))
    us = u + sigma * s
    theta = 2.0 * math.atan2(sgn_c * math.tanh(us), 1.0 / math.cosh(us))
    c = 2.0 * sgn_c * sigma / math.cosh(us)
    return Covector(theta, c, lam.alpha)


def flow(lam: Covector, s: float) -> Covector:
    """Exact pendulum flow e^{s H_v} of an initial covector."""
    stratum = classify(lam)
    tag = stratum.tag
    if tag in ("C4", "C5", "C7"):
        return lam
    if tag == "C6":
        return Covector(lam.theta + lam.c * s, lam.c, lam.alpha)
    if tag == "C3":
        if lam.alpha > 0:
            return _flow_separatrix(lam, s)
        return _reflect_neg_alpha(_flow_separatrix(_reflect_neg_alpha(lam), s))
    return _from_elliptic(to_elliptic(lam), s)


def midpoint(lam: Covector, t: float) -> tuple[float, float]:
    """(theta, c) of the covector flowed to half time, used by the domain tests."""
    half = flow(lam, 0.5 * t)
    return half.theta, half.c
