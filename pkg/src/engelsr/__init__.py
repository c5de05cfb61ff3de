"""Sub-Riemannian geodesics, cut times and optimal synthesis on the Engel group."""

from .pendulum import Covector, EllipticCoords, Stratum, classify, energy, flow
from .expmap import (
    ORIGIN,
    State,
    TimedCovector,
    dilate,
    dilate_state,
    exp,
    integrate_oracle,
    reflect_covector,
    reflect_state,
)
from .maxwell import (
    CutTimeValue,
    INFINITE,
    conjugate_at_cut,
    cut_profile,
    cut_time,
    f_z,
    k0,
    p_z1,
    t_max1,
)
from .synthesis import (
    NonConvergenceError,
    Region,
    SynthesisResult,
    UnsupportedRegionError,
    WrongRegionError,
    classify_target,
    in_domain,
    solve_generic,
    solve_special,
    sr_distance,
)

__all__ = [
    "Covector",
    "EllipticCoords",
    "Stratum",
    "classify",
    "energy",
    "flow",
    "ORIGIN",
    "State",
    "TimedCovector",
    "dilate",
    "dilate_state",
    "exp",
    "integrate_oracle",
    "reflect_covector",
    "reflect_state",
    "CutTimeValue",
    "INFINITE",
    "conjugate_at_cut",
    "cut_profile",
    "cut_time",
    "f_z",
    "k0",
    "p_z1",
    "t_max1",
    "NonConvergenceError",
    "Region",
    "SynthesisResult",
    "UnsupportedRegionError",
    "WrongRegionError",
    "classify_target",
    "in_domain",
    "solve_generic",
    "solve_special",
    "sr_distance",
]

__version__ = "0.1.0"
