"""Explicit finite-volume time stepping for the taxis system.

The predator flux through each interior face combines prey-enhanced
diffusion with drift up the prey gradient,

    flux = (d1 + chi*v_face) * du/dn - chi * F(u_upwind) * dv/dn,

where v_face is the arithmetic face mean and the drift carries the
donor-cell (upwind) density by default.  Prey diffuse with the plain
zero-flux Laplacian.  Time integration is Heun's two-stage scheme, which
is a convex combination of forward Euler substeps, so the step-size
limiter that keeps each substep positivity- and max-principle-safe
protects the full step as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable

import numpy as np

from .grid import (
    Field,
    Grid,
    divergence_values,
    face_gradient_values,
    integrate_values,
    laplacian_values,
)
from .model import ModelParams, taxis_mobility

__all__ = [
    "TaxisScheme",
    "SchemeConfig",
    "State",
    "StepAccounting",
    "BlowUp",
    "ExcessiveClamping",
    "reaction_rates",
    "flux_u",
    "rhs",
    "stable_dt",
    "step",
    "run_to_time",
]

BLOWUP_LIMIT = 1e12
_TINY = 1e-300


class BlowUp(RuntimeError):
    """A field value left [0, 1e12] or stopped being finite."""


class ExcessiveClamping(BlowUp):
    """Negative mass removed in one step exceeded 1e-10 of the field mass."""


class TaxisScheme(Enum):
    UPWIND = "upwind"
    CENTRAL = "central"


@dataclass(frozen=True)
class SchemeConfig:
    """Numerical scheme choices.

    u_floor only affects diagnostics that divide by or take logs of the
    densities; the stepper itself never floors.
    """

    taxis_scheme: TaxisScheme = TaxisScheme.UPWIND
    cfl_safety: float = 0.4
    reaction_limiter: float = 0.5
    u_floor: float = 1e-14

    def __post_init__(self):
        if not 0 < self.cfl_safety <= 1:
            raise ValueError(f"cfl_safety must be in (0, 1] (got {self.cfl_safety})")
        if not 0 < self.reaction_limiter <= 1:
            raise ValueError(f"reaction_limiter must be in (0, 1] (got {self.reaction_limiter})")
        if not 0 < self.u_floor < 1:
            raise ValueError(f"u_floor must be in (0, 1) (got {self.u_floor})")


@dataclass(frozen=True)
class State:
    u: Field
    v: Field
    t: float

    def __post_init__(self):
        if self.u.grid != self.v.grid:
            raise ValueError("u and v must live on the same grid")
        if self.t < 0 or not math.isfinite(self.t):
            raise ValueError(f"t must be finite and >= 0 (got {self.t})")
        if (self.u.values < 0).any() or (self.v.values < 0).any():
            raise ValueError("densities must be nonnegative")

    @property
    def grid(self) -> Grid:
        return self.u.grid


@dataclass
class StepAccounting:
    """Mutable counters threaded through a run."""

    steps: int = 0
    clamped_mass: float = 0.0
    clamped_cells: int = 0
    peak_v: float = field(default=-math.inf)


# --- pointwise reactions ----------------------------------------------------

def _reaction_arrays(u: np.ndarray, v: np.ndarray, p: ModelParams):
    ru = u * (p.m1 - u + p.a * v)
    rv = v * (p.m2 - p.b * u - v)
    return ru, rv


def reaction_rates(s: State, p: ModelParams) -> tuple[Field, Field]:
    """Logistic reaction terms of both species, as fields."""
    ru, rv = _reaction_arrays(s.u.values, s.v.values, p)
    return Field(s.grid, ru), Field(s.grid, rv)


# --- predator flux ----------------------------------------------------------

def _flux_u_arrays(u, v, grid: Grid, p: ModelParams, cfg: SchemeConfig):
    gu = face_gradient_values(grid, u)
    gv = face_gradient_values(grid, v)
    fluxes = []
    for ax in range(grid.dim):
        left = [slice(None)] * grid.dim
        right = [slice(None)] * grid.dim
        left[ax] = slice(0, grid.n[ax] - 1)
        right[ax] = slice(1, grid.n[ax])
        interior = [slice(None)] * grid.dim
        interior[ax] = slice(1, grid.n[ax])

        v_face = 0.5 * (v[tuple(left)] + v[tuple(right)])
        drift = p.chi * gv[ax][tuple(interior)]
        if cfg.taxis_scheme is TaxisScheme.UPWIND:
            # donor cell: positive drift carries density from the left cell
            u_face = np.where(drift > 0, u[tuple(left)], u[tuple(right)])
        else:
            u_face = 0.5 * (u[tuple(left)] + u[tuple(right)])

        flux = np.zeros_like(gu[ax])
        flux[tuple(interior)] = (p.d1 + p.chi * v_face) * gu[ax][tuple(interior)] - taxis_mobility(
            u_face, p.eps
        ) * drift
        fluxes.append(flux)
    return tuple(fluxes), gv


def flux_u(s: State, p: ModelParams, cfg: SchemeConfig) -> tuple[np.ndarray, ...]:
    """Per-face predator flux; boundary faces are exactly zero."""
    fluxes, _ = _flux_u_arrays(s.u.values, s.v.values, s.grid, p, cfg)
    return fluxes


# --- semidiscrete right-hand side -------------------------------------------

def _rhs_arrays(u, v, grid: Grid, p: ModelParams, cfg: SchemeConfig):
    fluxes, gv = _flux_u_arrays(u, v, grid, p, cfg)
    ru, rv = _reaction_arrays(u, v, p)
    du = divergence_values(grid, fluxes) + ru
    dv = p.d2 * laplacian_values(grid, v) + rv
    return du, dv, gv


def rhs(s: State, p: ModelParams, cfg: SchemeConfig) -> tuple[Field, Field]:
    """Time derivatives of (u, v).  The flux part integrates to zero exactly,
    so the discrete mass identity d/dt integral(u) = integral(reaction_u)
    holds to rounding."""
    du, dv, _ = _rhs_arrays(s.u.values, s.v.values, s.grid, p, cfg)
    return Field(s.grid, du), Field(s.grid, dv)


# --- step-size limiter --------------------------------------------------------

def _stable_dt_arrays(u, v, grid: Grid, p: ModelParams, cfg: SchemeConfig, gv=None) -> float:
    if gv is None:
        gv = face_gradient_values(grid, v)
    h_min = min(grid.h)
    v_max = float(v.max())
    limits = [
        h_min * h_min / (2.0 * grid.dim * (p.d1 + p.chi * v_max)),
        h_min * h_min / (2.0 * grid.dim * p.d2),
    ]
    for ax in range(grid.dim):
        speed = p.chi * float(np.abs(gv[ax]).max())
        limits.append(grid.h[ax] / (speed + _TINY))
    decay_u = max(0.0, float((u - p.a * v - p.m1).max()))
    decay_v = max(0.0, float((p.b * u + v - p.m2).max()))
    limits.append(cfg.reaction_limiter / (max(decay_u, decay_v) + _TINY))
    return cfg.cfl_safety * min(limits)


def stable_dt(s: State, p: ModelParams, cfg: SchemeConfig) -> float:
    """Largest step the limiter allows at this state: the minimum of the
    diffusive, drift, and relative-reaction-decay limits times cfl_safety."""
    return _stable_dt_arrays(s.u.values, s.v.values, s.grid, p, cfg)


# --- time stepping -----------------------------------------------------------

def _clamp_negative(arr: np.ndarray) -> tuple[float, int]:
    """Zero out negative entries in place; return (removed sum, cell count)."""
    negative = arr < 0
    count = int(negative.sum())
    if count == 0:
        return 0.0, 0
    removed = -float(arr[negative].sum())
    arr[negative] = 0.0
    return removed, count


def _advance(u, v, t, grid: Grid, p: ModelParams, cfg: SchemeConfig, dt: float,
             acc: StepAccounting | None):
    """One Heun step on raw arrays with clamp-and-count positivity repair."""
    mass_u = integrate_values(grid, u)
    mass_v = integrate_values(grid, v)

    du1, dv1, _ = _rhs_arrays(u, v, grid, p, cfg)
    u1 = u + dt * du1
    v1 = v + dt * dv1
    removed_u, cells_u = _clamp_negative(u1)
    removed_v, cells_v = _clamp_negative(v1)

    du2, dv2, _ = _rhs_arrays(u1, v1, grid, p, cfg)
    u_new = u + 0.5 * dt * (du1 + du2)
    v_new = v + 0.5 * dt * (dv1 + dv2)
    ru, cu = _clamp_negative(u_new)
    rv, cv = _clamp_negative(v_new)
    removed_u += ru
    removed_v += rv

    if not (np.isfinite(u_new).all() and np.isfinite(v_new).all()):
        raise BlowUp(f"non-finite density at t = {t + dt:.6g}")
    if max(float(u_new.max()), float(v_new.max())) > BLOWUP_LIMIT:
        raise BlowUp(f"density above {BLOWUP_LIMIT:.0e} at t = {t + dt:.6g}")

    vol = grid.cell_volume
    if vol * removed_u > 1e-10 * mass_u + _TINY or vol * removed_v > 1e-10 * mass_v + _TINY:
        raise ExcessiveClamping(
            f"clamped mass {vol * max(removed_u, removed_v):.3e} at t = {t + dt:.6g} "
            "exceeds 1e-10 of the field mass"
        )
    if acc is not None:
        acc.steps += 1
        acc.clamped_mass += vol * (removed_u + removed_v)
        acc.clamped_cells += cells_u + cells_v + cu + cv
        acc.peak_v = max(acc.peak_v, float(v_new.max()))
    return u_new, v_new


def step(s: State, p: ModelParams, cfg: SchemeConfig, dt: float | None = None,
         accounting: StepAccounting | None = None) -> State:
    """Advance one RK2 (Heun) step of size dt (stable_dt when omitted)."""
    if dt is None:
        dt = stable_dt(s, p, cfg)
    if dt <= 0:
        raise ValueError(f"dt must be > 0 (got {dt})")
    u_new, v_new = _advance(s.u.values, s.v.values, s.t, s.grid, p, cfg, dt, accounting)
    return State(Field(s.grid, u_new), Field(s.grid, v_new), s.t + dt)


def run_to_time(
    s0: State,
    p: ModelParams,
    cfg: SchemeConfig,
    t_end: float,
    sample_every: float,
    sink: Callable[[State, StepAccounting], None] | None = None,
    accounting: StepAccounting | None = None,
) -> State:
    """March from s0 to t_end with per-step adaptive dt.

    The sink is called once at the start and then at the first completed
    step at or after each multiple of sample_every (no interpolation), so
    a full run emits floor((t_end - t0)/sample_every) + 1 samples.  The
    final step is clipped to land on t_end.
    """
    if t_end < s0.t:
        raise ValueError(f"t_end {t_end} precedes the state time {s0.t}")
    if sample_every <= 0:
        raise ValueError(f"sample_every must be > 0 (got {sample_every})")
    acc = accounting if accounting is not None else StepAccounting()
    acc.peak_v = max(acc.peak_v, float(s0.v.values.max()))

    def emit(state: State) -> None:
        if sink is not None:
            sink(state, acc)

    emit(s0)
    if t_end == s0.t:
        return s0

    grid = s0.grid
    u = s0.u.values.copy()
    v = s0.v.values.copy()
    t0 = s0.t
    t = t0
    n_samples = int(math.floor((t_end - t0) / sample_every + 1e-9))
    next_sample = 1
    time_eps = 1e-12 * max(1.0, abs(t_end))
    state = s0
    while t_end - t > time_eps:
        dt = min(_stable_dt_arrays(u, v, grid, p, cfg), t_end - t)
        u, v = _advance(u, v, t, grid, p, cfg, dt, acc)
        t = t_end if t_end - (t + dt) <= time_eps else t + dt
        state = None
        while next_sample <= n_samples and t >= t0 + next_sample * sample_every - 1e-9 * sample_every:
            if state is None:
                state = State(Field(grid, u), Field(grid, v), t)
            emit(state)
            next_sample += 1
    if state is None:
        state = State(Field(grid, u), Field(grid, v), t)
    if state.t != t_end and abs(state.t - t_end) <= time_eps:
        state = replace(state, t=t_end)
    while next_sample <= n_samples:  # guard against float stragglers
        emit(state)
        next_sample += 1
    return state
