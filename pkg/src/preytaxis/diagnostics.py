"""Norms, entropy/energy functionals, decay checks, and the CSV format.

The energy combines two relative-entropy terms with a quadratic prey
term weighted by the certificate's relaxed prey bound,

    energy = int H(u | u*) + (a/b) int H(v | v*)
             + (2 / (b^2 m2_relaxed)) int (v - v*)^2,

with H(eta | xi) = eta - xi - xi*log(eta/xi) for xi > 0 and plain eta at
xi = 0.  The dissipation functional pairs the squared relative gradients
with the squared distances to equilibrium.  Once the prey sup-norm sits
below (1 - delta) * m2_relaxed, the energy decays at least at rate
delta times the dissipation; check_energy_decay verifies that slope
inequality and its time-integrated budget on sampled records.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from io import StringIO

import numpy as np

from .dynamics import SchemeConfig, State, StepAccounting
from .grid import Field, gradient_sq_values, integrate_values
from .model import ModelParams, StabilizationCertificate, SteadyState

__all__ = [
    "DiagnosticsRecord",
    "RunContext",
    "EnergyDecayReport",
    "entropy_integral",
    "energy",
    "dissipation",
    "record",
    "check_energy_decay",
    "entropy_lower_bound_residual",
    "csv_header",
    "format_csv",
    "write_csv",
]

# 1/(1 - log 2): constant in the L1 lower bound for the entropy integral.
_ENTROPY_L1_FACTOR = 1.0 / (1.0 - math.log(2.0))


@dataclass(frozen=True)
class DiagnosticsRecord:
    """Everything sampled at one instant.  Field order defines the CSV."""

    t: float
    mass_u: float
    linf_v: float
    l2_v: float
    l4_v: float
    dist_u_l1: float
    dist_u_l2: float
    dist_v_l1: float
    dist_v_l2: float
    entropy_u: float
    entropy_v: float
    energy: float
    dissipation: float
    ulogu: float
    gradv2_over_v: float
    gradv4_over_v3: float
    clamped_mass: float
    floored_cells: int


@dataclass
class RunContext:
    """Static inputs a record needs besides the state itself."""

    params: ModelParams
    steady_state: SteadyState
    certificate: StabilizationCertificate | None
    scheme: SchemeConfig
    accounting: StepAccounting


def entropy_integral(xi: float, f: Field, u_floor: float) -> float:
    """Integral of the relative-entropy density against level xi >= 0.

    The field is floored at u_floor before logs are taken; the density is
    clipped at zero to keep rounding from leaking tiny negatives.
    """
    if xi < 0:
        raise ValueError(f"xi must be >= 0 (got {xi})")
    floored = np.maximum(f.values, u_floor)
    if xi == 0.0:
        density = floored
    else:
        density = np.maximum(floored - xi - xi * np.log(floored / xi), 0.0)
    return integrate_values(f.grid, density)


def energy(s: State, ss: SteadyState, p: ModelParams, m2_relaxed: float, u_floor: float) -> float:
    """Certified decay functional; zero exactly at the equilibrium state.

    m2_relaxed = inf drops the quadratic prey term, which is the natural
    observational fallback when no certificate exists.
    """
    quad = 0.0 if math.isinf(m2_relaxed) else (
        2.0 / (p.b * p.b * m2_relaxed)
    ) * integrate_values(s.grid, (s.v.values - ss.v_star) ** 2)
    return (
        entropy_integral(ss.u_star, s.u, u_floor)
        + (p.a / p.b) * entropy_integral(ss.v_star, s.v, u_floor)
        + quad
    )


def dissipation(s: State, ss: SteadyState, u_floor: float) -> float:
    """Squared relative gradients plus squared distances to equilibrium."""
    g = s.grid
    uf = np.maximum(s.u.values, u_floor)
    vf = np.maximum(s.v.values, u_floor)
    return (
        integrate_values(g, gradient_sq_values(g, s.u.values) / uf**2)
        + integrate_values(g, gradient_sq_values(g, s.v.values) / vf**2)
        + integrate_values(g, (s.u.values - ss.u_star) ** 2)
        + integrate_values(g, (s.v.values - ss.v_star) ** 2)
    )


def record(s: State, ctx: RunContext) -> DiagnosticsRecord:
    """Assemble the full diagnostics row for one sampled state."""
    g = s.grid
    p = ctx.params
    ss = ctx.steady_state
    floor = ctx.scheme.u_floor
    u = s.u.values
    v = s.v.values
    vf = np.maximum(v, floor)
    uf = np.maximum(u, floor)
    gsq_v = gradient_sq_values(g, v)
    m2_relaxed = ctx.certificate.m2_relaxed if (
        ctx.certificate is not None and ctx.certificate.m2_relaxed is not None
    ) else math.inf
    return DiagnosticsRecord(
        t=s.t,
        mass_u=integrate_values(g, u),
        linf_v=float(v.max()),
        l2_v=integrate_values(g, v**2) ** 0.5,
        l4_v=integrate_values(g, v**4) ** 0.25,
        dist_u_l1=integrate_values(g, np.abs(u - ss.u_star)),
        dist_u_l2=integrate_values(g, (u - ss.u_star) ** 2) ** 0.5,
        dist_v_l1=integrate_values(g, np.abs(v - ss.v_star)),
        dist_v_l2=integrate_values(g, (v - ss.v_star) ** 2) ** 0.5,
        entropy_u=entropy_integral(ss.u_star, s.u, floor),
        entropy_v=entropy_integral(ss.v_star, s.v, floor),
        energy=energy(s, ss, p, m2_relaxed, floor),
        dissipation=dissipation(s, ss, floor),
        ulogu=integrate_values(g, uf * np.log(uf)),
        gradv2_over_v=integrate_values(g, gsq_v / vf),
        gradv4_over_v3=integrate_values(g, gsq_v**2 / vf**3),
        clamped_mass=ctx.accounting.clamped_mass,
        floored_cells=int((u < floor).sum() + (v < floor).sum()),
    )


@dataclass(frozen=True)
class EnergyDecayReport:
    """Outcome of checking the decay inequality on sampled records.

    Slopes are forward differences of the sampled energy checked against
    the dissipation at the left sample; the budget compares the
    left-sum of delta * dissipation with the total energy drop.
    """

    start_time: float
    n_pairs: int
    n_slope_violations: int
    slope_fraction: float
    max_slope_violation: float
    monotone_ok: bool
    max_increase_rate: float
    budget_lhs: float
    budget_rhs: float
    budget_ok: bool


def check_energy_decay(
    records: list[DiagnosticsRecord],
    cert: StabilizationCertificate,
    tol_slope: float | None = None,
    tol_budget: float = 1e-6,
) -> EnergyDecayReport:
    """Verify (E_{k+1} - E_k)/dt <= -delta * G_k + tol on records past t_settle.

    tol_slope = None applies the default 1e-6 * (1 + |E_k|) / dt per pair,
    sized to absorb the first-order sampling error.
    """
    if cert.delta is None or cert.t_settle is None:
        raise ValueError("certificate carries no decay data; call certify() first")
    start = cert.t_settle
    tail = [r for r in records if r.t >= start - 1e-12 * max(1.0, start)]
    if len(tail) < 2:
        return EnergyDecayReport(start, 0, 0, 1.0, 0.0, True, 0.0, 0.0, tol_budget, True)
    delta = cert.delta
    violations = 0
    max_violation = 0.0
    max_increase = 0.0
    budget_lhs = 0.0
    for left, right in zip(tail[:-1], tail[1:]):
        dt = right.t - left.t
        if dt <= 0:
            continue
        tol = tol_slope if tol_slope is not None else 1e-6 * (1.0 + abs(left.energy)) / dt
        slope = (right.energy - left.energy) / dt
        excess = slope - (-delta * left.dissipation + tol)
        if excess > 0:
            violations += 1
            max_violation = max(max_violation, excess)
        max_increase = max(max_increase, slope - tol)
        budget_lhs += delta * left.dissipation * dt
    n_pairs = len(tail) - 1
    budget_rhs = tail[0].energy - tail[-1].energy + tol_budget
    return EnergyDecayReport(
        start_time=start,
        n_pairs=n_pairs,
        n_slope_violations=violations,
        slope_fraction=1.0 - violations / n_pairs,
        max_slope_violation=max_violation,
        monotone_ok=max_increase <= 0.0,
        max_increase_rate=max_increase,
        budget_lhs=budget_lhs,
        budget_rhs=budget_rhs,
        budget_ok=budget_lhs <= budget_rhs,
    )


def entropy_lower_bound_residual(xi: float, f: Field, u_floor: float) -> float:
    """Residual of the L1 lower bound for the entropy integral.

        int |f - xi| <= (1/(1-log 2)) int H(f | xi)
                        + sqrt(8 xi |box|) * (int H(f | xi))^(1/2)

    Returns lhs - rhs, which must be <= 0 up to rounding for any
    positive field.
    """
    floored = np.maximum(f.values, u_floor)
    lhs = integrate_values(f.grid, np.abs(floored - xi))
    h = entropy_integral(xi, f, u_floor)
    rhs = _ENTROPY_L1_FACTOR * h + math.sqrt(8.0 * xi * f.grid.volume) * math.sqrt(h)
    return lhs - rhs


# --- CSV format --------------------------------------------------------------
# Header row names every DiagnosticsRecord field in declared order; one row
# per sample; 17 significant digits; comma separator, "." decimal.

def csv_header() -> str:
    return ",".join(f.name for f in fields(DiagnosticsRecord))


def _format_cell(value) -> str:
    if isinstance(value, int):
        return str(value)
    return f"{value:.17g}"


def format_csv(records: list[DiagnosticsRecord]) -> str:
    out = StringIO()
    out.write(csv_header() + "\n")
    for r in records:
        out.write(",".join(_format_cell(getattr(r, f.name)) for f in fields(DiagnosticsRecord)))
        out.write("\n")
    return out.getvalue()


def write_csv(records: list[DiagnosticsRecord], path) -> None:
    with open(path, "w") as fh:
        fh.write(format_csv(records))
