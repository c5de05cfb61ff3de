"""Jacobi elliptic functions and elliptic integrals.

Thin, validating wrappers around scipy.special.  All functions take the
modulus k (not the parameter m = k^2) and require 0 <= k < 1; the k = 1
limit is handled elsewhere by explicit hyperbolic formulas.

The amplitude returned by ``jacobi`` is the continuous (unwrapped) one,
with F(am(x), k) = x for all real x, which is what the geodesic formulas
need when differencing the epsilon function across many periods.
"""

from __future__ import annotations

import math

from scipy import special


def _check_modulus(k: float) -> float:
    if not 0.0 <= k < 1.0:
        raise ValueError(f"modulus k must lie in [0, 1), got {k}")
    return k * k  # scipy wants the parameter m = k^2


def complete_integrals(k: float) -> tuple[float, float]:
    """Complete elliptic integrals (K(k), E(k))."""
    m = _check_modulus(k)
    return float(special.ellipk(m)), float(special.ellipe(m))


def jacobi(x: float, k: float) -> tuple[float, float, float, float]:
    """Jacobi functions (sn, cn, dn, am) at argument x.

    am is continuous in x (not reduced mod 2*pi), sn = sin(am),
    cn = cos(am), dn = sqrt(1 - k^2 sn^2).
    """
    m = _check_modulus(k)
    if not math.isfinite(x):
        raise ValueError(f"argument x must be finite, got {x}")
    sn, cn, dn, am = special.ellipj(x, m)
    return float(sn), float(cn), float(dn), float(am)


def _carlson_fe(phi: float, m: float) -> tuple[float, float]:
    # incomplete F and E of amplitude phi through the Carlson symmetric
    # forms R_F, R_D; the Cephes-backed ellipkinc/ellipeinc have isolated
    # wrong values for m near 1, while the Carlson routines are uniformly
    # accurate.  phi is first reduced to [-pi/2, pi/2] by quasi-periodicity
    # F(phi + n pi) = F(phi) + 2 n K, E(phi + n pi) = E(phi) + 2 n E.
    n = round(phi / math.pi)
    phir = phi - n * math.pi
    s, c = math.sin(phir), math.cos(phir)
    x, y = c * c, 1.0 - m * s * s
    rf = float(special.elliprf(x, y, 1.0))
    big_f = s * rf
    big_e = s * rf - (m / 3.0) * s**3 * float(special.elliprd(x, y, 1.0))
    if n:
        big_f += 2.0 * n * float(special.ellipk(m))
        big_e += 2.0 * n * float(special.ellipe(m))
    return big_f, big_e


def jacobi_eps(x: float, k: float) -> float:
    """Jacobi epsilon function, the integral of dn^2 from 0 to x.

    Satisfies the quasi-periodicity eps(x + 2K) = eps(x) + 2E.
    """
    m = _check_modulus(k)
    am = float(special.ellipj(x, m)[3])
    return _carlson_fe(am, m)[1]


def jacobi_d(x: float, k: float) -> float:
    """The difference x - eps(x) = k^2 * integral of sn^2 from 0 to x.

    Evaluated to full relative precision through F - E = (m/3) sin^3(phi)
    R_D, which matters because the naive difference of two O(x) quantities
    loses the small-k information entirely.
    """
    m = _check_modulus(k)
    am = float(special.ellipj(x, m)[3])
    n = round(am / math.pi)
    phir = am - n * math.pi
    s, c = math.sin(phir), math.cos(phir)
    val = (m / 3.0) * s**3 * float(special.elliprd(c * c, 1.0 - m * s * s, 1.0))
    if n:
        # complete counterpart K - E = (m/3) R_D(0, 1-m, 1)
        val += 2.0 * n * (m / 3.0) * float(special.elliprd(0.0, 1.0 - m, 1.0))
    return val


def incomplete_integrals(u: float, k: float) -> tuple[float, float]:
    """Incomplete elliptic integrals (F(u, k), E(u, k)) of the amplitude u."""
    m = _check_modulus(k)
    return _carlson_fe(u, m)


def inverse_amplitude(sn: float, cn: float, k: float) -> float:
    """Elliptic argument x in [0, 4K) with given (sn, cn) signs and values.

    Inverts sn(x) = sn, cn(x) = cn for the principal orbit position; the
    pair must satisfy sn^2 + cn^2 = 1 up to rounding.
    """
    m = _check_modulus(k)
    # atan2 recovers the principal amplitude without the accuracy loss of
    # asin near the turning points |sn| = 1
    x = _carlson_fe(math.atan2(sn, cn), m)[0]
    if x < 0.0:
        x += 4.0 * float(special.ellipk(m))
    return x
