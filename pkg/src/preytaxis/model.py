"""Reaction constants, equilibria, and stabilization certificates.

The simulated system couples a predator density u and a prey density v:
predators diffuse with a prey-enhanced mobility and drift up prey
gradients (attractive taxis), prey diffuse plainly, and both react
logistically.  This module holds everything that can be decided from the
constants alone: the homogeneous equilibria, the sufficient smallness
condition on the taxis coefficient under which long-time stabilization
is guaranteed, and the explicit comparison bound for the prey sup-norm
used to certify when the dissipation inequality kicks in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "ModelParams",
    "Regime",
    "SteadyState",
    "StabilizationCertificate",
    "ConditionViolated",
    "Degenerate",
    "InvalidTarget",
    "steady_states",
    "check_stabilization_condition",
    "certify",
    "taxis_mobility",
    "logistic_comparison",
    "waiting_time",
]


class ConditionViolated(ValueError):
    """certify() was asked for a certificate but the smallness condition fails."""


class Degenerate(ArithmeticError):
    """The logistic comparison expression lost positivity for the given inputs."""


class InvalidTarget(ValueError):
    """waiting_time() target is not strictly above the prey carrying level."""


@dataclass(frozen=True)
class ModelParams:
    """Constants of the predator-prey system.

    d1, d2: base diffusivities of predator and prey.
    m1, m2: intrinsic growth rates (m2 may be negative or zero).
    chi:    taxis coefficient (strength of the drift up prey gradients).
    a, b:   interaction gains (predation benefit / prey loss).
    eps:    mobility saturation; 0 means the drift mobility is plain u,
            eps > 0 means u / (1 + eps*u).
    """

    d1: float
    d2: float
    m1: float
    m2: float
    chi: float
    a: float
    b: float
    eps: float = 0.0

    def __post_init__(self):
        for name in ("d1", "d2", "m1", "chi", "a", "b"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and > 0 (got {value})")
        if not math.isfinite(self.m2):
            raise ValueError(f"m2 must be finite (got {self.m2})")
        if not (math.isfinite(self.eps) and self.eps >= 0):
            raise ValueError(f"eps must be finite and >= 0 (got {self.eps})")

    @property
    def m2_plus(self) -> float:
        """Nonnegative part of the prey growth rate (prey carrying level)."""
        return max(0.0, self.m2)


class Regime(Enum):
    COEXISTENCE = "coexistence"
    PREY_EXTINCTION = "prey_extinction"


@dataclass(frozen=True)
class SteadyState:
    u_star: float
    v_star: float
    regime: Regime


@dataclass(frozen=True)
class StabilizationCertificate:
    """Outcome of the taxis-smallness check, possibly with decay data.

    holds/chi_sq/threshold always filled; the remaining fields are only
    present when a full certificate was requested via certify():

    m2_relaxed: auxiliary prey bound strictly above max(0, m2) kept small
                enough that the smallness condition still holds with it.
    delta:      dissipation margin; the energy decays at least at rate
                delta times the dissipation functional once the prey
                sup-norm has fallen below (1 - delta) * m2_relaxed.
    t_settle:   time by which the comparison bound guarantees that fall
                (0 when the initial sup-norm is already below it).
    """

    holds: bool
    chi_sq: float
    threshold: float
    m2_relaxed: float | None = None
    delta: float | None = None
    t_settle: float | None = None


def steady_states(p: ModelParams) -> SteadyState:
    """Homogeneous equilibrium selected by the sign of m2 - b*m1.

    Both reaction terms vanish identically at the returned state; the
    boundary case m2 - b*m1 = 0 is folded into the coexistence branch
    (where it coincides with the extinction state).
    """
    surplus = p.m2 - p.b * p.m1
    if surplus >= 0:
        denom = p.a * p.b + 1.0
        return SteadyState(
            u_star=(p.m1 + p.a * p.m2) / denom,
            v_star=surplus / denom,
            regime=Regime.COEXISTENCE,
        )
    return SteadyState(u_star=p.m1, v_star=0.0, regime=Regime.PREY_EXTINCTION)


def _condition_rhs(p: ModelParams, ss: SteadyState, cap: float) -> float:
    """Right-hand side of the taxis-smallness condition at prey bound `cap`."""
    # single trailing division so round parameter sets give exact thresholds
    return 4.0 * p.d1 * p.d2 * (p.a * ss.v_star / cap + 4.0 / p.b) / (p.b * cap * ss.u_star)


def check_stabilization_condition(p: ModelParams) -> StabilizationCertificate:
    """Decide whether chi^2 is below the explicit stabilization threshold.

    The threshold is +inf when max(0, m2) = 0: the prey sup-norm then
    decays to zero on its own and the condition is vacuous.
    """
    ss = steady_states(p)
    m2p = p.m2_plus
    threshold = math.inf if m2p == 0.0 else _condition_rhs(p, ss, m2p)
    chi_sq = p.chi * p.chi
    return StabilizationCertificate(holds=chi_sq < threshold, chi_sq=chi_sq, threshold=threshold)


def certify(p: ModelParams, v0_sup: float) -> StabilizationCertificate:
    """Produce a full decay certificate (m2_relaxed, delta, t_settle).

    Raises ConditionViolated when the smallness condition fails.  The
    relaxed prey bound is the midpoint of the admissible interval above
    max(0, m2) (supremum located by geometric expansion + bisection);
    delta is the largest margin jointly satisfying

        delta <= a/b,
        (1 - delta) * m2_relaxed > max(0, m2),
        d1 - delta/u_star > 0, and
        (chi^2 u*/(4(d1 - delta/u*)) - 4 d2/(b^2 m2_relaxed)) m2_relaxed^2
            - d2 v* (a/b) < -delta,

    found by bisection to relative tolerance 1e-9 and then scaled by
    0.99 so every inequality holds strictly.  t_settle is the waiting
    time for the prey comparison bound to fall below
    (1 - delta) * m2_relaxed starting from v0_sup.
    """
    if not (math.isfinite(v0_sup) and v0_sup > 0):
        raise ValueError(f"v0_sup must be finite and > 0 (got {v0_sup})")
    base = check_stabilization_condition(p)
    if not base.holds:
        raise ConditionViolated(
            f"chi^2 = {base.chi_sq:.6g} is not below the threshold {base.threshold:.6g}"
        )
    ss = steady_states(p)
    m2p = p.m2_plus
    chi_sq = base.chi_sq

    def admissible(cap: float) -> bool:
        return chi_sq < _condition_rhs(p, ss, cap)

    # The condition right-hand side is strictly decreasing in the cap and
    # tends to 0, so the admissible caps form an interval (m2p, sup).
    span = max(m2p, 1.0)
    while admissible(m2p + span):
        span *= 2.0
    lo, hi = m2p, m2p + span
    while hi - lo > 1e-12 * hi:
        mid = 0.5 * (lo + hi)
        if admissible(mid):
            lo = mid
        else:
            hi = mid
    m2_relaxed = 0.5 * (m2p + lo)
    if not admissible(m2_relaxed):  # midpoint of a monotone interval
        raise AssertionError("relaxed prey bound failed its own admissibility check")

    def feasible(delta: float) -> bool:
        if delta <= 0 or delta > p.a / p.b:
            return False
        if (1.0 - delta) * m2_relaxed <= m2p:
            return False
        slack = p.d1 - delta / ss.u_star
        if slack <= 0:
            return False
        lhs = (
            chi_sq * ss.u_star / (4.0 * slack) - 4.0 * p.d2 / (p.b * p.b * m2_relaxed)
        ) * m2_relaxed * m2_relaxed - p.d2 * ss.v_star * (p.a / p.b)
        return lhs < -delta

    cap = min(p.a / p.b, 1.0 - m2p / m2_relaxed, p.d1 * ss.u_star)
    if feasible(cap):
        delta_max = cap  # only the a/b bound admits equality
    else:
        lo_d, hi_d = 0.0, cap
        while hi_d - lo_d > 1e-9 * hi_d:
            mid = 0.5 * (lo_d + hi_d)
            if feasible(mid):
                lo_d = mid
            else:
                hi_d = mid
        delta_max = lo_d
    delta = 0.99 * delta_max
    if delta <= 0 or not feasible(delta):
        raise ConditionViolated("no positive dissipation margin survives the constraints")

    t_settle = waiting_time((1.0 - delta) * m2_relaxed, p, v0_sup)
    return StabilizationCertificate(
        holds=True,
        chi_sq=chi_sq,
        threshold=base.threshold,
        m2_relaxed=m2_relaxed,
        delta=delta,
        t_settle=t_settle,
    )


def taxis_mobility(u, eps: float = 0.0):
    """Drift mobility of the predator: u when eps=0, u/(1+eps*u) otherwise.

    Works elementwise on arrays.  Saturates monotonically: larger eps
    gives a smaller mobility for the same density.
    """
    if eps < 0:
        raise ValueError(f"eps must be >= 0 (got {eps})")
    if eps == 0.0:
        return u
    return u / (1.0 + eps * u)


def logistic_comparison(v0_sup: float, m2: float, t):
    """Explicit upper solution for the prey sup-norm.

        y(t) = 1 / (1/m2 + (1/v0_sup - 1/m2) * exp(-m2 t))   for m2 != 0
        y(t) = 1 / (1/v0_sup + t)                             for m2 == 0

    Accepts scalar or array t >= 0.  Raises Degenerate if the expression
    in the denominator is not strictly positive (only possible for
    invalid sign combinations; a guard against returning garbage).
    """
    if not (math.isfinite(v0_sup) and v0_sup > 0):
        raise ValueError(f"v0_sup must be finite and > 0 (got {v0_sup})")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be >= 0")
    if m2 == 0.0:
        denom = 1.0 / v0_sup + t
    else:
        with np.errstate(over="ignore"):
            denom = 1.0 / m2 + (1.0 / v0_sup - 1.0 / m2) * np.exp(-m2 * t)
    if np.any(denom <= 0):
        raise Degenerate(f"comparison expression lost positivity (v0_sup={v0_sup}, m2={m2})")
    out = 1.0 / denom
    return float(out) if out.ndim == 0 else out


def waiting_time(m: float, p: ModelParams, v0_sup: float) -> float:
    """Smallest T >= 0 with logistic_comparison(v0_sup, m2, t) <= m for all t >= T.

    Solved by inverting the closed form.  The target must satisfy
    m > max(0, m2): at or below the carrying level the bound never
    commits, and InvalidTarget is raised.
    """
    if not (math.isfinite(v0_sup) and v0_sup > 0):
        raise ValueError(f"v0_sup must be finite and > 0 (got {v0_sup})")
    if m <= p.m2_plus:
        raise InvalidTarget(
            f"target {m} must exceed the prey carrying level {p.m2_plus}"
        )
    if v0_sup <= m:
        return 0.0  # the bound starts (and stays) at or below the target
    if p.m2 == 0.0:
        return 1.0 / m - 1.0 / v0_sup
    ratio = (1.0 / m - 1.0 / p.m2) / (1.0 / v0_sup - 1.0 / p.m2)
    return -math.log(ratio) / p.m2
