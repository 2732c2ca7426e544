"""Conservative explicit time integration with a positivity guard.

Forward Euler on the flux form du_i/dt = -(F_{i+1/2} - F_{i-1/2})/dx + f,
with the step limited by the fourth-order von Neumann bound
dt <= cfl * dx^4 / (8 * stiffness).  Boundary fluxes are exactly zero
(mirror ghosts), so the flux never changes the total mass; the source adds
its exact per-step time integral, so the mass identity against the
closed-form injection holds to roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import _kernels
from .diagnostics import (
    SimRecord,
    dissipation,
    dissipation_unregularized,
    energy,
    reference_value,
)
from .forcing import ConstantForce, Force, SeparableForce
from .grid import (
    Grid,
    discrete_h1_error,
    extend_even,
    face_mean,
    face_third_derivative,
    gradient_l2,
)
from .model import Ellis, FluidModel, NonPositiveHeight, PowerLaw


class NonFinite(RuntimeError):
    """NaN or Inf appeared in the film state (unstable step or bad config)."""


@dataclass
class State:
    t: float
    u: np.ndarray

    def copy(self) -> "State":
        return State(self.t, self.u.copy())


@dataclass(frozen=True)
class StepControl:
    """Stability and output cadence knobs for a run."""

    t_end: float
    cfl: float = 0.4
    dt_max: float = 1e-2
    record_every: float = 0.01
    tol_extinct: float = 1e-6
    max_steps: int = 2_000_000_000

    def __post_init__(self):
        if not 0 < self.cfl <= 1:
            raise ValueError(f"cfl must lie in (0, 1], got {self.cfl}")
        if not self.t_end > 0:
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if not 0 < self.record_every <= self.t_end:
            raise ValueError(f"record_every must lie in (0, t_end], got {self.record_every}")
        if not self.dt_max > 0:
            raise ValueError(f"dt_max must be positive, got {self.dt_max}")
        ratio = self.t_end / self.record_every
        if abs(ratio - round(ratio)) > 1e-9:
            raise ValueError("t_end must be a whole number of record intervals")

    @property
    def n_records(self) -> int:
        return int(round(self.t_end / self.record_every))


def rhs(state: State, grid: Grid, model: FluidModel, force: Force) -> np.ndarray:
    """Semi-discrete right-hand side -(F_{i+1/2}-F_{i-1/2})/dx + f(t, x_i)."""
    u = np.asarray(state.u, dtype=float)
    if not np.min(u) > 0:
        raise NonPositiveHeight(f"film height must stay positive, got min {np.min(u)}")
    ue = extend_even(u)
    s = face_third_derivative(ue, grid.dx)
    uf = face_mean(ue)
    flux = model.face_flux(uf, s)
    return -(flux[1:] - flux[:-1]) / grid.dx + force.eval(state.t, grid.x)


def stable_dt(
    state: State,
    grid: Grid,
    model: FluidModel,
    control: StepControl,
    t_next_record: float | None = None,
) -> float:
    """Stability-limited step min(dt_max, cfl dx^4 / (8 stiffness), to-record)."""
    u = np.asarray(state.u, dtype=float)
    ue = extend_even(u)
    s = face_third_derivative(ue, grid.dx)
    stiff = model.effective_stiffness(float(np.max(u)), float(np.max(np.abs(s))))
    dt = control.dt_max
    if stiff > 0:
        dt = min(dt, control.cfl * grid.dx**4 / (8.0 * stiff))
    if t_next_record is not None:
        dt = min(dt, t_next_record - state.t)
    return dt


def _encode_model(model: FluidModel):
    if isinstance(model, PowerLaw):
        return _kernels.MODEL_POWER_LAW, model.alpha, model.a, 0.0, model.eps_reg
    if isinstance(model, Ellis):
        return _kernels.MODEL_ELLIS, model.alpha, model.b, model.c, model.eps_reg
    raise TypeError(f"unknown model {model!r}")


def _encode_force(force: Force, x: np.ndarray):
    dummy_t = np.array([0.0, 1.0])
    dummy_g = np.array([0.0, 0.0])
    if isinstance(force, ConstantForce):
        if force.f0 == 0.0:
            return _kernels.TIME_NONE, 0.0, np.zeros_like(x), dummy_t, dummy_g, 0.0
        return _kernels.TIME_STEADY, 0.0, np.full_like(x, force.f0), dummy_t, dummy_g, 0.0
    if isinstance(force, SeparableForce):
        phi = force.space_field(x)
        kind = force.kind
        if kind == "static":
            return _kernels.TIME_STEADY, 0.0, phi, dummy_t, dummy_g, 0.0
        if kind == "exp":
            return _kernels.TIME_EXP, force.time_profile.kappa, phi, dummy_t, dummy_g, 0.0
        if kind == "power":
            return _kernels.TIME_POWER, force.time_profile.beta, phi, dummy_t, dummy_g, 0.0
        if kind == "tabulated":
            ts, g_cum = force.time_profile.cumulative()
            g_last = float(np.asarray(force.time_profile.g_samples)[-1])
            return _kernels.TIME_TABULATED, 0.0, phi, ts, g_cum, g_last
    raise TypeError(f"unknown force {force!r}")


def advance(
    state: State,
    grid: Grid,
    model: FluidModel,
    force: Force,
    control: StepControl,
    envelope_fn: Callable[[float], float] | None = None,
    hyp_ok: bool = True,
) -> Iterator[tuple[State, SimRecord]]:
    """Step to t_end, yielding (state snapshot, diagnostics row) per record point.

    The stream ends early once a constant-force run's H1 error falls below
    tol_extinct relative to its initial value (finite-time coincidence with
    the moving reference); callers can distinguish that from reaching t_end
    by the last record's time.  Positivity or finiteness violations raise
    NonPositiveHeight / NonFinite carrying the last recorded state.
    """
    u = np.array(state.u, dtype=float, copy=True)
    if u.shape[0] != grid.N:
        raise ValueError(f"state has {u.shape[0]} cells, grid has {grid.N}")
    if not np.all(np.isfinite(u)):
        raise NonFinite("initial film contains NaN or Inf")
    if not np.min(u) > 0:
        raise NonPositiveHeight(f"initial film must be positive, got min {np.min(u)}")

    model_kind, alpha, coef_a, coef_c, eps_reg = _encode_model(model)
    time_kind, time_param, phi, tab_t, tab_g_cum, tab_g_last = _encode_force(force, grid.x)
    dphi = np.diff(phi)

    mass0 = float(np.sum(u)) * grid.dx
    u0_mean = mass0 / grid.L
    energy0 = energy(u, grid)
    acc = np.zeros(2)

    def snapshot(t: float) -> SimRecord:
        e = energy(u, grid)
        ref = reference_value(force, u0_mean, t)
        return SimRecord(
            t=t,
            mass=float(np.sum(u)) * grid.dx,
            mass_expected=mass0 + force.cumulative_mass(t),
            energy=e,
            dissipation=dissipation(u, grid, model),
            ux_l2=gradient_l2(u, grid.dx),
            h1_error=discrete_h1_error(u, ref, grid.dx),
            envelope=envelope_fn(t) if envelope_fn is not None else math.nan,
            min_u=float(np.min(u)),
            hyp_ok=hyp_ok,
            dissipation_unreg=dissipation_unregularized(u, grid, model),
            energy_residual=e + acc[0] - acc[1] - energy0,
        )

    first = snapshot(state.t)
    yield State(state.t, u.copy()), first
    h1_floor = control.tol_extinct * first.h1_error
    watch_extinction = isinstance(force, ConstantForce) and first.h1_error > 0

    steps_total = 0
    last_good = State(state.t, u.copy())
    for i in range(control.n_records):
        t0 = state.t + i * control.record_every
        status, steps = _kernels.advance_interval(
            u,
            t0,
            control.record_every,
            grid.dx,
            model_kind,
            alpha,
            coef_a,
            coef_c,
            eps_reg,
            time_kind,
            time_param,
            phi,
            dphi,
            tab_t,
            tab_g_cum,
            tab_g_last,
            control.cfl,
            control.dt_max,
            control.max_steps - steps_total,
            acc,
        )
        steps_total += steps
        if status == _kernels.STATUS_NONPOSITIVE:
            err = NonPositiveHeight(
                f"film height reached zero between t={t0:g} and t={t0 + control.record_every:g}"
            )
            err.last_state = last_good
            raise err
        if status == _kernels.STATUS_NONFINITE:
            err = NonFinite(
                f"non-finite film values between t={t0:g} and t={t0 + control.record_every:g}"
            )
            err.last_state = last_good
            raise err
        if status == _kernels.STATUS_DT_COLLAPSE:
            raise RuntimeError("stable step collapsed below record_every / 2^44")
        if status == _kernels.STATUS_BUDGET:
            raise RuntimeError(f"step budget {control.max_steps} exhausted at t~{t0:g}")

        t = state.t + (i + 1) * control.record_every
        rec = snapshot(t)
        last_good = State(t, u.copy())
        yield last_good, rec
        if watch_extinction and rec.h1_error <= h1_floor:
            return
