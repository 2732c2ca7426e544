"""Config-driven execution: build, run, collect records and envelope checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import EnvelopeParams, compute_params, envelope_for_run
from .config import ExperimentConfig
from .diagnostics import SimRecord
from .forcing import Force
from .grid import Grid
from .model import FluidModel
from .stepper import State, advance


@dataclass
class RunResult:
    config: ExperimentConfig
    grid: Grid
    model: FluidModel
    force: Force
    params: EnvelopeParams
    envelope_applicable: bool
    records: list[SimRecord]
    snapshots: list[State]  # film profiles at a handful of spread-out times
    final_state: State
    status: str  # completed | extinct

    @property
    def t_star(self) -> float | None:
        """Extinction (finite-time coincidence) time, if the run stopped early."""
        return self.records[-1].t if self.status == "extinct" else None

    def times(self) -> np.ndarray:
        return np.array([r.t for r in self.records])

    def h1_errors(self) -> np.ndarray:
        return np.array([r.h1_error for r in self.records])

    def time_to_threshold(self, threshold: float) -> float:
        """First recorded time with h1_error <= threshold, inf if never."""
        for r in self.records:
            if r.h1_error <= threshold:
                return r.t
        return math.inf

    def max_mass_defect(self) -> float:
        return max(
            abs(r.mass - r.mass_expected) / (1.0 + abs(r.mass_expected)) for r in self.records
        )

    def max_envelope_ratio(self) -> float:
        """max over recorded t of h1_error / envelope (NaN if not applicable)."""
        if not self.envelope_applicable:
            return math.nan
        ratios = [
            r.h1_error / r.envelope
            for r in self.records
            if math.isfinite(r.envelope) and r.envelope > 0
        ]
        return max(ratios) if ratios else math.nan


def run_simulation(config: ExperimentConfig) -> RunResult:
    """Execute one configured run to t_end (or finite-time coincidence)."""
    config.validate()
    grid = config.build_grid()
    model = config.build_model()
    force = config.build_force()
    control = config.build_control()
    u0_profile = config.build_u0_profile()
    params = compute_params(u0_profile, force, model, config.L)
    envelope_fn, applicable = envelope_for_run(params, model, force)

    u0 = grid.sample(u0_profile)
    n_rec = control.n_records
    snap_idx = {round(i * n_rec / 5) for i in range(6)}
    records: list[SimRecord] = []
    snapshots: list[State] = []
    final = State(0.0, u0)
    for i, (state, rec) in enumerate(
        advance(
            State(0.0, u0),
            grid,
            model,
            force,
            control,
            envelope_fn=envelope_fn,
            hyp_ok=applicable,
        )
    ):
        records.append(rec)
        final = state
        if i in snap_idx:
            snapshots.append(state.copy())
    if not any(math.isclose(s.t, final.t) for s in snapshots):
        snapshots.append(final.copy())
    status = "completed" if math.isclose(final.t, control.t_end) else "extinct"
    return RunResult(
        config=config,
        grid=grid,
        model=model,
        force=force,
        params=params,
        envelope_applicable=applicable,
        records=records,
        snapshots=snapshots,
        final_state=final,
        status=status,
    )


def fit_log_slope(ts: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    """Least-squares slope and R^2 of log(values) against t (semilog fit)."""
    ts = np.asarray(ts, dtype=float)
    values = np.asarray(values, dtype=float)
    keep = values > 0
    ts, values = ts[keep], values[keep]
    if ts.size < 3:
        return math.nan, math.nan
    y = np.log(values)
    a = np.vstack([ts, np.ones_like(ts)]).T
    coef, *_ = np.linalg.lstsq(a, y, rcond=None)
    fit = a @ coef
    ss_res = float(np.sum((y - fit) ** 2))
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(coef[0]), r2
