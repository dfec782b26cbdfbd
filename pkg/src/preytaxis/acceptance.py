"""Numbered acceptance checks covering the verified properties end to end.

Each criterion is a self-contained check that either certifies a property
of the scheme (equilibria, thresholds, refinement order, comparison
bounds, energy decay, determinism) or fails with a one-line explanation.
Scenario runs are cached so criteria sharing a trajectory reuse it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import model
from .config import build_config, scenario_items
from .diagnostics import check_energy_decay, entropy_lower_bound_residual, format_csv
from .dynamics import SchemeConfig, State, reaction_rates, run_to_time, stable_dt, step
from .grid import Grid, integrate, integrate_values
from .model import ModelParams, Regime, steady_states
from .oracle import heat_eigenmode_error, homogeneous_ode, refinement_order
from .runner import RunResult, execute

__all__ = ["CriterionResult", "criterion_numbers", "run_criterion", "run_all"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str


_scenario_cache: dict[str, RunResult] = {}


def _scenario_result(name: str) -> RunResult:
    """Execute a bundled scenario once per process and reuse the outcome."""
    if name not in _scenario_cache:
        _scenario_cache[name] = execute(build_config(scenario_items(name)))
    return _scenario_cache[name]


# --- 1: equilibria ------------------------------------------------------------

def _criterion_1() -> tuple[bool, str]:
    rng = np.random.default_rng(1618)
    worst = 0.0
    for _ in range(1000):
        p = ModelParams(
            d1=float(10.0 ** rng.uniform(-1.0, 1.0)),
            d2=float(10.0 ** rng.uniform(-1.0, 1.0)),
            m1=float(rng.uniform(0.1, 5.0)),
            m2=float(rng.uniform(-2.0, 5.0)),
            chi=float(rng.uniform(0.05, 3.0)),
            a=float(rng.uniform(0.05, 4.0)),
            b=float(rng.uniform(0.05, 4.0)),
        )
        ss = steady_states(p)
        gap = p.m2 - p.b * p.m1
        if ss.regime is Regime.PREY_EXTINCTION:
            if gap >= 0.0 or ss.u_star != p.m1 or ss.v_star != 0.0:
                return False, f"wrong prey-extinction equilibrium for {p}"
        else:
            if gap < 0.0 or ss.u_star <= 0.0 or ss.v_star < 0.0:
                return False, f"wrong coexistence equilibrium for {p}"
        rate_u = ss.u_star * (p.m1 - ss.u_star + p.a * ss.v_star)
        rate_v = ss.v_star * (p.m2 - p.b * ss.u_star - ss.v_star)
        scale_u = max(1.0, ss.u_star * (abs(p.m1) + ss.u_star + p.a * ss.v_star))
        scale_v = max(1.0, ss.v_star * (abs(p.m2) + p.b * ss.u_star + ss.v_star))
        worst = max(worst, abs(rate_u) / scale_u, abs(rate_v) / scale_v)
    return worst <= 1e-12, f"1000 parameter sets, worst relative reaction residual {worst:.2e} (cap 1e-12)"


# --- 2: stabilization thresholds ----------------------------------------------

def _criterion_2() -> tuple[bool, str]:
    def params(m2: float, chi: float) -> ModelParams:
        return ModelParams(d1=1.0, d2=1.0, m1=1.0, m2=m2, chi=chi, a=1.0, b=1.0)

    c_coex = model.check_stabilization_condition(params(2.0, 1.0))
    c_ext5 = model.check_stabilization_condition(params(0.5, 5.0))
    c_ext6 = model.check_stabilization_condition(params(0.5, 6.0))
    c_neg = model.check_stabilization_condition(params(-1.0, 10.0))

    rel = max(
        abs(c_coex.threshold - 17.0 / 3.0) / (17.0 / 3.0),
        abs(c_ext5.threshold - 32.0) / 32.0,
        abs(c_ext6.threshold - 32.0) / 32.0,
    )
    flags_ok = c_coex.holds and c_ext5.holds and not c_ext6.holds and c_neg.holds
    inf_ok = math.isinf(c_neg.threshold)
    passed = rel <= 1e-15 and flags_ok and inf_ok
    return passed, (
        f"thresholds {c_coex.threshold:.17g}, {c_ext5.threshold:.17g}, inf "
        f"(rel err {rel:.1e}, cap 1e-15); holds flags "
        f"{c_coex.holds}/{c_ext5.holds}/{c_ext6.holds}/{c_neg.holds} expect True/True/False/True"
    )


# --- 3: refinement orders -----------------------------------------------------

def _criterion_3() -> tuple[bool, str]:
    heat_pairs = [(1.0 / n, heat_eigenmode_error(n, 1, 1.0, 0.1)) for n in (32, 64, 128)]
    heat_order = refinement_order(heat_pairs)

    items = scenario_items("order_1d")
    finals: dict[int, np.ndarray] = {}
    for n in (32, 64, 128, 512):
        trial = dict(items)
        trial["grid.n"] = str(n)
        result = execute(build_config(trial))
        if not result.ok:
            return False, f"refinement run at n={n} ended with {result.status}"
        finals[n] = result.final_state.u.values
    ref = finals[512]
    pairs = []
    for n in (32, 64, 128):
        projected = ref.reshape(n, 512 // n).mean(axis=1)
        pairs.append((2.0 / n, float(np.max(np.abs(finals[n] - projected)))))
    nonlinear_order = refinement_order(pairs)

    passed = heat_order >= 1.9 and nonlinear_order >= 1.9
    return passed, f"observed orders: heat {heat_order:.3f}, nonlinear {nonlinear_order:.3f} (need >= 1.9)"


# --- 4: homogeneous dynamics vs reference ODE ---------------------------------

def _criterion_4() -> tuple[bool, str]:
    notes = []
    worst = 0.0
    for label, m2 in (("coexistence", 2.0), ("extinction", 0.5)):
        p = ModelParams(d1=1.0, d2=1.0, m1=1.0, m2=m2, chi=1.0, a=1.0, b=1.0)
        g = Grid.uniform(1, 8, 1.0)
        s0 = State(g.field(np.full(g.n, 1.0)), g.field(np.full(g.n, 1.0)), 0.0)
        samples: list[tuple[float, float, float]] = []

        def sink(state: State, _acc, out=samples) -> None:
            out.append((state.t, float(state.u.values.mean()), float(state.v.values.mean())))

        run_to_time(s0, p, SchemeConfig(), 10.0, 0.5, sink=sink)
        times = [t for t, _, _ in samples]
        ref = homogeneous_ode(1.0, 1.0, p, 10.0, t_eval=times)
        scale_u = float(np.max(np.abs(ref.u)))
        scale_v = max(float(np.max(np.abs(ref.v))), 1e-300)
        err_u = max(abs(su - ru) for (_, su, _), ru in zip(samples, ref.u)) / scale_u
        err_v = max(abs(sv - rv) for (_, _, sv), rv in zip(samples, ref.v)) / scale_v
        err = max(err_u, err_v)
        worst = max(worst, err)
        notes.append(f"{label} {err:.2e}")
    return worst <= 1e-4, "max rel err vs adaptive RK45: " + ", ".join(notes) + " (cap 1e-4)"


# --- 5: predator maximum principle --------------------------------------------

def _criterion_5() -> tuple[bool, str]:
    result = _scenario_result("max_principle_64")
    if not result.ok:
        return False, f"run ended with {result.status}"
    m2 = result.config.params.m2
    peak = result.accounting.peak_v
    peak_ok = peak <= 3.0 + 1e-10
    worst_excess = -math.inf
    for r in result.records:
        bound = model.logistic_comparison(3.0, m2, r.t) + 1e-8 * 3.0
        worst_excess = max(worst_excess, r.linf_v - bound)
    passed = peak_ok and worst_excess <= 0.0
    return passed, (
        f"running max v = {peak:.12f} (cap 3+1e-10); "
        f"worst gap to logistic comparison {worst_excess:.3e} (must stay <= 0)"
    )


# --- 6: prey mass budget consistency -------------------------------------------

def _criterion_6() -> tuple[bool, str]:
    p = ModelParams(d1=1.0, d2=1.0, m1=1.0, m2=2.0, chi=1.0, a=1.0, b=1.0)
    ss = steady_states(p)
    g = Grid.uniform(1, 16, 2.0)
    bump = np.cos(np.pi * g.centers(0) / g.length[0])
    s0 = State(g.field(ss.u_star + 1e-4 * bump), g.field(ss.v_star + 2e-4 * bump), 0.0)
    cfg = SchemeConfig()
    dt0 = stable_dt(s0, p, cfg) / 2.0
    mass0 = integrate(s0.u)
    expected = integrate(reaction_rates(s0, p)[0])

    def residual(dt: float) -> float:
        s1 = step(s0, p, cfg, dt=dt)
        return abs((integrate(s1.u) - mass0) / dt - expected)

    r_full = residual(dt0)
    r_half = residual(dt0 / 2.0)
    ratio = r_full / r_half if r_half > 0 else math.inf
    passed = r_full <= 1e-10 * mass0 and 1.6 <= ratio <= 2.4
    return passed, (
        f"mass-rate residual {r_full:.3e} (cap {1e-10 * mass0:.1e}); "
        f"halving ratio {ratio:.3f} (need 1.6..2.4)"
    )


# --- 7: energy decay ----------------------------------------------------------

def _criterion_7() -> tuple[bool, str]:
    result = _scenario_result("coexistence_64")
    if not result.ok:
        return False, f"run ended with {result.status}"
    if result.certificate is None:
        return False, f"no certificate: {result.certificate_reason}"
    report = check_energy_decay(result.records, result.certificate, tol_budget=1e-6)
    passed = report.monotone_ok and report.slope_fraction >= 0.99 and report.budget_ok
    return passed, (
        f"monotone={report.monotone_ok} (max rise {report.max_increase_rate:.2e}); "
        f"slope bound holds at {report.slope_fraction:.2%} of {report.n_pairs} pairs "
        f"(need >= 99%); budget {report.budget_lhs:.6f} <= {report.budget_rhs:.6f} "
        f"is {report.budget_ok}"
    )


# --- 8: long-time convergence --------------------------------------------------

def _criterion_8() -> tuple[bool, str]:
    co = _scenario_result("coexistence_64")
    ex = _scenario_result("extinction_64")
    for label, res in (("coexistence", co), ("extinction", ex)):
        if not res.ok:
            return False, f"{label} run ended with {res.status}"
    t_co = next(
        (r.t for r in co.records if r.t <= 200.0 and r.dist_u_l1 <= 1e-3 and r.dist_v_l1 <= 1e-3),
        None,
    )
    t_ex = next((r.t for r in ex.records if r.t <= 200.0 and r.dist_v_l1 <= 1e-3), None)
    passed = t_co is not None and t_ex is not None
    return passed, (
        f"coexistence distances under 1e-3 at t={t_co} (final u/v: "
        f"{co.records[-1].dist_u_l1:.2e}/{co.records[-1].dist_v_l1:.2e}); "
        f"predator mass under 1e-3 at t={t_ex} (final {ex.records[-1].dist_v_l1:.2e})"
    )


# --- 9: entropy distance lower bound -------------------------------------------

def _criterion_9() -> tuple[bool, str]:
    rng = np.random.default_rng(907)
    g = Grid.uniform(1, 32, 1.0)
    worst = -math.inf
    for _ in range(1000):
        mu = rng.uniform(-1.0, 1.0)
        sigma = rng.uniform(0.1, 1.0)
        f = g.field(rng.lognormal(mu, sigma, size=g.n))
        for xi in (0.0, 0.5, 1.0, 10.0):
            resid = entropy_lower_bound_residual(xi, f, 1e-14)
            l1 = integrate_values(g, np.abs(f.values - xi))
            worst = max(worst, resid / max(1.0, l1))
    return worst <= 1e-12, (
        f"worst scaled residual {worst:.2e} over 1000 fields x 4 offsets (cap 1e-12)"
    )


# --- 10: taxis regularization continuity ---------------------------------------

def _criterion_10() -> tuple[bool, str]:
    items = scenario_items("eps_family_1d")
    finals = []
    for eps in ("0.1", "0.05", "0.025"):
        trial = dict(items)
        trial["params.eps"] = eps
        result = execute(build_config(trial))
        if not result.ok:
            return False, f"eps={eps} run ended with {result.status}"
        finals.append(result.final_state.u)
    g = finals[0].grid
    gap_coarse = integrate_values(g, np.abs(finals[0].values - finals[1].values))
    gap_fine = integrate_values(g, np.abs(finals[1].values - finals[2].values))
    passed = gap_coarse > gap_fine > 0.0
    return passed, f"L1 gaps between eps neighbours: {gap_coarse:.3e} > {gap_fine:.3e} > 0"


# --- 11: determinism ------------------------------------------------------------

def _criterion_11() -> tuple[bool, str]:
    first = _scenario_result("coexistence_64")
    second = execute(build_config(scenario_items("coexistence_64")))
    if not (first.ok and second.ok):
        return False, f"runs ended with {first.status} / {second.status}"
    csv_a = format_csv(first.records)
    csv_b = format_csv(second.records)
    if csv_a != csv_b:
        mismatch = next(
            i for i, (x, y) in enumerate(zip(csv_a.splitlines(), csv_b.splitlines())) if x != y
        )
        return False, f"diagnostics CSVs differ at line {mismatch + 1}"
    return True, f"repeat run reproduced the diagnostics CSV byte for byte ({len(csv_a)} chars)"


_CRITERIA: list[tuple[int, str, object]] = [
    (1, "equilibrium residuals", _criterion_1),
    (2, "stabilization thresholds", _criterion_2),
    (3, "refinement orders", _criterion_3),
    (4, "homogeneous dynamics vs reference ODE", _criterion_4),
    (5, "predator maximum principle", _criterion_5),
    (6, "prey mass budget consistency", _criterion_6),
    (7, "energy decay along the coexistence run", _criterion_7),
    (8, "long-time convergence to equilibrium", _criterion_8),
    (9, "entropy distance lower bound", _criterion_9),
    (10, "taxis regularization continuity", _criterion_10),
    (11, "deterministic reruns", _criterion_11),
]


def criterion_numbers() -> list[int]:
    return [number for number, _, _ in _CRITERIA]


def run_criterion(number: int) -> CriterionResult:
    for num, name, fn in _CRITERIA:
        if num == number:
            passed, detail = fn()
            return CriterionResult(num, name, passed, detail)
    raise ValueError(f"no criterion numbered {number}")


def run_all() -> list[CriterionResult]:
    return [run_criterion(number) for number in criterion_numbers()]
