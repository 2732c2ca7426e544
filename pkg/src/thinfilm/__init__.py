"""Thin-film evolution under inhomogeneous forcing: solver and decay checks.

A one-dimensional finite-difference toolkit for fourth-order degenerate
film equations with power-law or Ellis rheology, driven by decaying, steady
or constant forces.  It tracks mass/energy/dissipation diagnostics, the H1
distance to the moving flat reference, and evaluates the closed-form decay
envelopes and ODE comparison bounds those dynamics are expected to obey.
"""

from .bounds import (
    EnvelopeParams,
    compute_params,
    dissipation_window_bound,
    envelope_ellis,
    envelope_f0,
    envelope_for_run,
    envelope_time_dependent,
    envelope_time_independent,
    predicted_extinction_bound,
)
from .config import ConfigError, ExperimentConfig, load_config, parse_config_text
from .diagnostics import (
    SimRecord,
    dissipation,
    dissipation_unregularized,
    dissipation_window,
    energy,
    reference_value,
)
from .forcing import (
    ConstantForce,
    CosineProfile,
    DryOutError,
    ExpDecay,
    PowerDecay,
    SeparableForce,
    TabulatedProfile,
    hypothesis_check,
    static_force,
    time_dependent_force,
)
from .grid import Grid, discrete_h1_error, discrete_l2, extend_even, face_third_derivative
from .model import Ellis, NonPositiveHeight, PowerLaw, phi_eps
from .ode_lemmas import (
    BlowUp,
    DecayForcing,
    OdeInstance,
    bound_inequ,
    bound_inequ11,
    bound_y1,
    dominance_suite,
    lower_bound_lem01,
    ode_oracle,
)
from .presets import PRESETS, get_preset
from .runner import RunResult, fit_log_slope, run_simulation
from .stepper import NonFinite, State, StepControl, advance, rhs, stable_dt

__version__ = "0.1.0"

__all__ = [
    "BlowUp",
    "ConfigError",
    "ConstantForce",
    "CosineProfile",
    "DecayForcing",
    "DryOutError",
    "Ellis",
    "EnvelopeParams",
    "ExpDecay",
    "ExperimentConfig",
    "Grid",
    "NonFinite",
    "NonPositiveHeight",
    "OdeInstance",
    "PRESETS",
    "PowerDecay",
    "PowerLaw",
    "RunResult",
    "SeparableForce",
    "SimRecord",
    "State",
    "StepControl",
    "TabulatedProfile",
    "advance",
    "bound_inequ",
    "bound_inequ11",
    "bound_y1",
    "compute_params",
    "discrete_h1_error",
    "discrete_l2",
    "dissipation",
    "dissipation_unregularized",
    "dissipation_window",
    "dissipation_window_bound",
    "dominance_suite",
    "energy",
    "envelope_ellis",
    "envelope_f0",
    "envelope_for_run",
    "envelope_time_dependent",
    "envelope_time_independent",
    "extend_even",
    "face_third_derivative",
    "fit_log_slope",
    "get_preset",
    "hypothesis_check",
    "load_config",
    "lower_bound_lem01",
    "ode_oracle",
    "parse_config_text",
    "phi_eps",
    "predicted_extinction_bound",
    "reference_value",
    "rhs",
    "run_simulation",
    "stable_dt",
    "static_force",
    "time_dependent_force",
]
