"""Shipped experiment presets.

The four numbered experiment families share the cosine initial film
3 + B cos(pi x / 10): the 200-length domain takes B = 0.01 with the
exponentially decaying force, the 100-length domain takes B = 0.1 with a
constant (possibly zero) force.  Resolution defaults to 2 cells per unit
length.  The eps_reg knob per preset is chosen so explicit stepping stays
at desk scale: shear-dependent runs on the long domain use 4e-3, the
strongly nonlinear constant-force runs 1e-4; Newtonian and Ellis runs keep
the library default (the value is inert at alpha = 1).
"""

from __future__ import annotations

from .config import ExperimentConfig

_LONG = dict(
    model_kind="power-law",
    L=200.0,
    u0_A=3.0,
    u0_B=0.01,
    u0_m=10.0,
    force_kind="exp",
    force_kappa=1.0,
    force_A=1.0,
    force_B=0.01,
    force_m=10.0,
)

_SHORT = dict(
    model_kind="power-law",
    L=100.0,
    u0_A=3.0,
    u0_B=0.1,
    u0_m=10.0,
    force_kind="constant",
)

PRESETS: dict[str, ExperimentConfig] = {
    "example-8.1": ExperimentConfig(
        name="example-8.1", alpha=0.5, eps_reg=4e-3, t_end=6.0, record_every=0.01, **_LONG
    ),
    "example-8.2": ExperimentConfig(
        name="example-8.2", alpha=1.5, eps_reg=4e-3, t_end=800.0, record_every=0.5, **_LONG
    ),
    "example-8.3i": ExperimentConfig(
        name="example-8.3i",
        alpha=0.5,
        eps_reg=1e-4,
        force_f0=1.0,
        t_end=1.2,
        record_every=0.005,
        **_SHORT,
    ),
    "example-8.3ii": ExperimentConfig(
        name="example-8.3ii", alpha=1.0, force_f0=1.0, t_end=5.0, record_every=0.01, **_SHORT
    ),
    "example-8.3iii": ExperimentConfig(
        name="example-8.3iii",
        alpha=1.5,
        eps_reg=1e-4,
        force_f0=1.0,
        t_end=15.0,
        record_every=0.05,
        **_SHORT,
    ),
    "example-8.4i": ExperimentConfig(
        name="example-8.4i", alpha=0.5, eps_reg=1e-4, t_end=8.0, record_every=0.01, **_SHORT
    ),
    "example-8.4ii": ExperimentConfig(
        name="example-8.4ii", alpha=1.0, t_end=20.0, record_every=0.05, **_SHORT
    ),
    "example-8.4iii": ExperimentConfig(
        name="example-8.4iii", alpha=1.5, eps_reg=1e-4, t_end=800.0, record_every=1.0, **_SHORT
    ),
    "ellis-newtonian": ExperimentConfig(
        name="ellis-newtonian",
        model_kind="ellis",
        alpha=2.0,
        b=1.0,
        c=1.0,
        L=100.0,
        u0_A=3.0,
        u0_B=0.01,
        u0_m=10.0,
        force_kind="constant",
        force_f0=0.0,
        t_end=20.0,
        record_every=0.05,
    ),
}


def get_preset(name: str) -> ExperimentConfig:
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise KeyError(f"unknown preset {name!r}; known presets: {known}") from None
