"""First Maxwell time, cut time, and conjugate-at-cut predicates.

The cut time of a geodesic equals the first Maxwell time t_max1, given
stratum by stratum in closed form through the elliptic modulus k and the
scale sigma = sqrt(|alpha|):

    C1: min(2*p_z1(k), 4K(k)) / sigma      C2: 2*k*K(k) / sigma
    C6: 2*pi/|c|                           C3, C4, C5, C7: +infinity

p_z1(k) is the first positive root of f_z(p, k) = dn p sn p + (p - 2E(p)) cn p,
bracketed in (K, 3K).  Infinite values are carried by a dedicated flag on
``CutTimeValue`` rather than an IEEE infinity inside arithmetic.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from scipy import optimize

from . import elliptic
from .pendulum import Covector, classify, to_elliptic, _reflect_neg_alpha

#: half-width of the zero tests in the conjugate-point predicates
EPS_CONJ = 1e-9


@dataclass(frozen=True)
class CutTimeValue:
    """A positive time or +infinity, with the infinity kept as a flag."""

    value: float = 0.0
    finite: bool = True

    def __post_init__(self) -> None:
        if self.finite and not self.value > 0.0:
            raise ValueError(f"finite cut time must be positive, got {self.value}")

    def as_float(self) -> float:
        """The value, with infinity rendered as math.inf (display only)."""
        return self.value if self.finite else math.inf


#: the unique infinite cut-time value; its ``value`` field is meaningless
INFINITE = CutTimeValue(math.nan, False)


def f_z(p: float, k: float) -> float:
    """dn(p) sn(p) + (p - 2 eps(p)) cn(p); its first root sets the C1 cut time."""
    sn, cn, dn, _ = elliptic.jacobi(p, k)
    ep = elliptic.jacobi_eps(p, k)
    return dn * sn + (p - 2.0 * ep) * cn


def p_z1(k: float) -> float:
    """First positive root of f_z(., k), which lies in (K(k), 3K(k))."""
    big_k = elliptic.complete_integrals(k)[0]
    lo, hi = big_k, 3.0 * big_k
    f_lo = f_z(lo, k)
    if f_lo <= 0.0:
        raise RuntimeError(f"f_z unexpectedly nonpositive at K for k={k}")
    # one sign change in the bracket; a short scan guards the root finder
    n = 64
    step = (hi - lo) / n
    a, fa = lo, f_lo
    for i in range(1, n + 1):
        b = lo + i * step
        fb = f_z(b, k)
        if fb <= 0.0:
            return float(optimize.brentq(f_z, a, b, args=(k,), xtol=1e-12))
        a, fa = b, fb
    raise RuntimeError(f"no root of f_z found in (K, 3K) for k={k}")


@functools.lru_cache(maxsize=1)
def k0() -> float:
    """The modulus of the figure-of-eight elastica, root of 2E(k) - K(k)."""

    def g(k: float) -> float:
        big_k, big_e = elliptic.complete_integrals(k)
        return 2.0 * big_e - big_k

    return float(optimize.brentq(g, 0.8, 0.99, xtol=1e-14))


def t_max1(lam: Covector) -> CutTimeValue:
    """First Maxwell time of the geodesic with initial momentum lam."""
    stratum = classify(lam)
    tag = stratum.tag
    if tag == "C6":
        return CutTimeValue(2.0 * math.pi / abs(lam.c))
    if tag in ("C3", "C4", "C5", "C7"):
        return INFINITE
    ec = to_elliptic(lam)
    big_k = elliptic.complete_integrals(ec.k)[0]
    if tag == "C1":
        return CutTimeValue(min(2.0 * p_z1(ec.k), 4.0 * big_k) / ec.sigma)
    return CutTimeValue(2.0 * ec.k * big_k / ec.sigma)


def cut_time(lam: Covector) -> CutTimeValue:
    """Cut time of the geodesic; coincides with the first Maxwell time."""
    return t_max1(lam)


def cut_profile(beta: float) -> CutTimeValue:
    """Cut time along the one-parameter family (theta, c, alpha) = (0, sin b, cos b).

    Defined for beta in [0, pi/2]; infinite at beta = 0 (stable equilibrium)
    and at beta_1 = arccos(sqrt(5) - 2), where the covector is on the
    separatrix.
    """
    if not 0.0 <= beta <= 0.5 * math.pi:
        raise ValueError(f"beta must lie in [0, pi/2], got {beta}")
    return cut_time(Covector(0.0, math.sin(beta), math.cos(beta)))


def conjugate_at_cut(lam: Covector) -> bool:
    """Whether the first conjugate time coincides with the (finite) cut time.

    Stratum-wise zero tests at the midpoint elliptic argument
    tau: C1 -- sn tau cn tau = 0 or k = k0; C2 -- sn tau cn tau = 0;
    C6 -- sin theta = 0.
    """
    t1 = cut_time(lam)
    if not t1.finite:
        raise ValueError("conjugate_at_cut requires a finite cut time")
    tag = classify(lam).tag
    if tag == "C6":
        return abs(math.sin(lam.theta)) <= EPS_CONJ
    work = lam if lam.alpha > 0 else _reflect_neg_alpha(lam)
    sigma = math.sqrt(work.alpha)
    unit = Covector(work.theta, work.c / sigma, 1.0)
    ec = to_elliptic(unit)
    tau = ec.phi + 0.5 * sigma * t1.value
    if tag == "C1":
        if abs(ec.k - k0()) < 1e-9:
            return True
    else:
        tau /= ec.k
    sn, cn, _, _ = elliptic.jacobi(tau, ec.k)
    return abs(sn * cn) <= EPS_CONJ
