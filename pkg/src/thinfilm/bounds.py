"""Closed-form decay envelopes and the constants they are built from.

Every generic constant in the decay statements is replaced by the explicit
value the corresponding proof produces, so each envelope is a computable
number:

    m   = mean(u0) - sqrt(L) ||u0_x||_2          (pointwise lower film bound)
    m1  = 2^((alpha+1)/2) L^(-(5 alpha+3)/2) m^(alpha+2)
    m2  = 2 m^3 / L^4                            (Ellis / Newtonian rate)
    C6  = L^(-(5 alpha+3)/2)
    C1  = L/pi + 1                               (H1 from gradient, linear)
    C4  = (L/pi)^2 + 1, C3 = 2 C4                (H1 from gradient, squared)
    M0  = ||u0_x||_2 + total gradient-norm input of the force
    h   = film lower bound for the constant-force regime

Envelopes bound the H1 distance between the film and the moving flat
reference; they are only meaningful when m > 0 (and, per family, when M0 is
finite or h exists), otherwise they evaluate to NaN and runs are reported as
"not applicable".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .forcing import ConstantForce, CosineProfile, Force, HypothesisVerdicts, hypothesis_check
from .model import Ellis, FluidModel, PowerLaw

_ALPHA_NEWTONIAN_TOL = 1e-12


@dataclass(frozen=True)
class EnvelopeParams:
    """Derived constants of a run plus the hypothesis verdicts."""

    L: float
    alpha: float
    u0_mean: float
    u0_min: float
    u0_grad: float  # ||u0_x||_2, closed form
    m: float
    m1: float  # NaN when m <= 0
    m2: float  # NaN when m <= 0
    c6: float
    h: float  # NaN when neither constant-force hypothesis window is satisfiable
    eps_floor: float  # midpoint choice in the high-energy window, NaN otherwise
    m0: float  # may be inf for non-decaying forces
    verdicts: HypothesisVerdicts

    @property
    def c1(self) -> float:
        return self.L / math.pi + 1.0

    @property
    def c4(self) -> float:
        return (self.L / math.pi) ** 2 + 1.0

    @property
    def c3(self) -> float:
        return 2.0 * self.c4


def compute_params(
    u0_profile: CosineProfile, force: Force, model: FluidModel, L: float
) -> EnvelopeParams:
    """Evaluate every envelope constant in closed form for cosine data."""
    alpha = model.alpha
    u0_grad = u0_profile.grad_l2(L)
    u0_mean = u0_profile.mean()
    u0_min = u0_profile.A - abs(u0_profile.B)
    m = u0_mean - math.sqrt(L) * u0_grad

    if m > 0:
        m1 = 2.0 ** (0.5 * (alpha + 1.0)) * L ** (-0.5 * (5.0 * alpha + 3.0)) * m ** (alpha + 2.0)
        m2 = 2.0 * m**3 / L**4
    else:
        m1 = math.nan
        m2 = math.nan
    c6 = L ** (-0.5 * (5.0 * alpha + 3.0))

    # film lower bound for the constant-force regime: the low-energy case
    # gives h = m; the high-energy window gives h = -m + eps with eps the
    # midpoint of its admissible interval, provided the window is nonempty
    if m > 0:
        h = m
        eps_floor = math.nan
    else:
        width = u0_min + u0_mean - math.sqrt(L) * u0_grad
        if width > 0:
            eps_floor = 0.5 * width
            h = -m + eps_floor
        else:
            eps_floor = math.nan
            h = math.nan

    m0 = u0_grad + force.cumulative_grad_norm(0.0, math.inf)

    return EnvelopeParams(
        L=L,
        alpha=alpha,
        u0_mean=u0_mean,
        u0_min=u0_min,
        u0_grad=u0_grad,
        m=m,
        m1=m1,
        m2=m2,
        c6=c6,
        h=h,
        eps_floor=eps_floor,
        m0=m0,
        verdicts=hypothesis_check(force, u0_profile, L),
    )


# ---------------------------------------------------------------------------
# power-law envelopes


def envelope_time_dependent(params: EnvelopeParams, force: Force, alpha: float, t: float) -> float:
    """H1 envelope under a decaying force.

    Shear-thinning: polynomial decay at rate 2^(-(alpha+3)/2) m1 (alpha-1)
    plus the undiscounted force tail; alpha <= 1: exponential decay at rate
    r = 2^(-(alpha+3)/2) m1 M0^(alpha-1) plus the r-discounted tail.
    """
    if not (params.m > 0) or not math.isfinite(params.m0) or params.m0 <= 0:
        return math.nan
    c1, m0, m1 = params.c1, params.m0, params.m1
    if alpha > 1.0:
        base = 1.0 + 2.0 ** (-0.5 * (alpha + 3.0)) * m1 * (alpha - 1.0) * m0 ** (alpha - 1.0) * t
        return c1 * m0 * base ** (1.0 / (1.0 - alpha)) + c1 * force.cumulative_grad_norm(
            0.5 * t, t
        )
    rate = 2.0 ** (-0.5 * (alpha + 3.0)) * m1 * m0 ** (alpha - 1.0)
    return c1 * m0 * math.exp(-rate * t) + c1 * force.conv_grad_norm(0.5 * t, t, rate)


def envelope_time_independent(params: EnvelopeParams, force: Force, alpha: float, t: float) -> float:
    """H1 envelope under a steady force: bounded tracking of the linear ramp.

    Below the threshold ||u0_x||_2 <= sqrt(2) (sqrt(2)||f_x||_2 / m1)^(1/alpha)
    the envelope is the constant plateau; above it, a decaying transient is
    added (polynomial for alpha > 1, exponential for alpha <= 1).
    """
    if not (params.m > 0):
        return math.nan
    m1, u0g = params.m1, params.u0_grad
    fx = force.grad_l2_norm(0.0)
    plateau = (math.sqrt(2.0) * fx / m1) ** (1.0 / alpha)
    if u0g <= math.sqrt(2.0) * plateau:
        return math.sqrt(params.c3) * plateau
    if alpha > 1.0:
        c2 = u0g / math.sqrt(2.0) - plateau
        trans = (c2 ** (1.0 - alpha) + 0.5 * m1 * (alpha - 1.0) * t) ** (1.0 / (1.0 - alpha))
        return math.sqrt(params.c4) * (plateau + trans)
    lead = 2.0 ** (0.5 * (alpha + 1.0)) * (fx / m1) * u0g ** (1.0 - alpha)
    c5 = u0g - lead
    rate = 2.0 ** (-0.5 * (alpha + 1.0)) * m1 * u0g ** (alpha - 1.0)
    return math.sqrt(params.c4) * (lead + c5 * math.exp(-rate * t))


def envelope_f0(params: EnvelopeParams, alpha: float, t: float) -> float:
    """H1 envelope for a constant force; the perturbation equation is
    force-free, so f0 itself never enters.

    alpha < 1: finite-time extinction envelope; alpha > 1: polynomial decay;
    alpha = 1: exponential decay at rate C6 h^3.
    """
    if not math.isfinite(params.h) or params.h <= 0:
        return math.nan
    c4, c6, h, w0 = params.c4, params.c6, params.h, params.u0_grad
    if w0 == 0.0:
        return 0.0
    if abs(alpha - 1.0) <= _ALPHA_NEWTONIAN_TOL:
        return math.sqrt(c4) * w0 * math.exp(-c6 * h**3 * t)
    if alpha < 1.0:
        s = w0 ** (1.0 - alpha) - (1.0 - alpha) * c6 * h ** (alpha + 2.0) * t
        if s <= 0.0:
            return 0.0
        return math.sqrt(c4) * s ** (1.0 / (1.0 - alpha))
    base = 1.0 + (alpha - 1.0) * c6 * w0 ** (alpha - 1.0) * h ** (alpha + 2.0) * t
    return math.sqrt(c4) * w0 * base ** (1.0 / (1.0 - alpha))


def predicted_extinction_bound(params: EnvelopeParams, alpha: float) -> float | None:
    """Upper bound on the coincidence time t* in the shear-thickening case."""
    if alpha >= 1.0 or not math.isfinite(params.h) or params.h <= 0 or params.u0_grad == 0:
        return None
    return params.u0_grad ** (1.0 - alpha) / ((1.0 - alpha) * params.c6 * params.h ** (alpha + 2.0))


def wx_sq_envelope_newtonian(params: EnvelopeParams, t: float) -> float:
    """Bound on ||w_x(t)||_2^2 for alpha = 1 constant force: w0 decays at 2 C6 h^3."""
    if not math.isfinite(params.h) or params.h <= 0:
        return math.nan
    return params.u0_grad**2 * math.exp(-2.0 * params.c6 * params.h**3 * t)


# ---------------------------------------------------------------------------
# Ellis envelopes (behave like the Newtonian fluid)


def envelope_ellis(params: EnvelopeParams, force: Force, t: float, force_kind: str | None = None) -> float:
    """H1 envelopes for the Ellis film, all exponential with m2-built rates.

    Decaying force: rate m2/4 with the undiscounted force tail; steady force:
    two branches keyed on ||u0_x||_2 against 2 ||f_x||_2 / m2; constant force:
    rate h^3 / L^4 on the force-free perturbation.
    """
    if not (params.m > 0) and force_kind != "constant":
        return math.nan
    kind = force_kind or force.kind
    if kind in ("exp", "power", "tabulated"):
        if not math.isfinite(params.m0) or params.m0 <= 0:
            return math.nan
        return params.c1 * (
            params.m0 * math.exp(-0.25 * params.m2 * t) + force.cumulative_grad_norm(0.5 * t, t)
        )
    if kind == "static":
        fx = force.grad_l2_norm(0.0)
        plateau = 2.0 * fx / params.m2
        if params.u0_grad <= plateau:
            return params.c1 * plateau
        return params.c1 * (
            plateau + (params.u0_grad - plateau) * math.exp(-0.5 * params.m2 * t)
        )
    if kind == "constant":
        if not math.isfinite(params.h) or params.h <= 0:
            return math.nan
        return math.sqrt(params.c4) * params.u0_grad * math.exp(-params.h**3 / params.L**4 * t)
    raise ValueError(f"unknown force kind {kind!r}")


# ---------------------------------------------------------------------------
# dispatch and the dissipation window estimate

CUTOFF_CONSTANT = 8.0  # |eta'| <= 8/t for the cut-off rising on [t/4, t/2]


def envelope_for_run(params: EnvelopeParams, model: FluidModel, force: Force):
    """Return (callable t -> envelope, applicable flag) for a run.

    The envelope is NaN-valued (and flagged not applicable) when the run's
    hypothesis verdicts fail or the constants are unavailable; hypothesis-
    violating runs still execute, they are just not envelope-checked.
    """
    if isinstance(model, Ellis):
        fn = lambda t: envelope_ellis(params, force, t)  # noqa: E731
    elif isinstance(model, PowerLaw):
        if isinstance(force, ConstantForce):
            fn = lambda t: envelope_f0(params, model.alpha, t)  # noqa: E731
        elif force.kind == "static":
            fn = lambda t: envelope_time_independent(params, force, model.alpha, t)  # noqa: E731
        else:
            fn = lambda t: envelope_time_dependent(params, force, model.alpha, t)  # noqa: E731
    else:
        raise TypeError(f"unknown model {model!r}")

    if isinstance(force, ConstantForce):
        hypotheses_met = params.verdicts.initial_slope or (
            math.isfinite(params.h) and params.h > 0
        )
    else:
        hypotheses_met = params.verdicts.all_ok
    applicable = hypotheses_met and math.isfinite(fn(0.0))
    if applicable:
        return fn, True
    return (lambda t: math.nan), False


def dissipation_window_bound(params: EnvelopeParams, records, force: Force, t: float) -> float:
    """Soft upper estimate (C/t + C int ||f_x||_2^2) * int E over [t/4, t].

    C is the cut-off constant 8; the statement's constant is generic, so this
    check is informational rather than a hard criterion.
    """
    ts = np.array([r.t for r in records])
    es = np.array([r.energy for r in records])
    from .diagnostics import window_integral

    e_int = window_integral(ts, es, 0.25 * t, t)
    fx2 = force.grad_sq_integral(0.25 * t, t)
    return (CUTOFF_CONSTANT / t + CUTOFF_CONSTANT * fx2) * e_int
