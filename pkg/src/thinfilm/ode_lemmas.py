"""Comparison bounds for scalar differential inequalities, with an RK4 oracle.

Two inequality families are covered:

* decay with integrable forcing, k' + beta k^lambda <= f(t), k(0)=k0 > 0 —
  the superposition-style upper bound `bound_y1` (polynomial branch for
  lambda > 1, exponential-convolution branch for lambda <= 1) plus the
  plain lower bound `lower_bound_lem01` from the unforced separable solution;

* relaxation toward a positive equilibrium, X' <= a X^lambda + b X^p with
  a > 0 > b, lambda in [0,1) — `bound_inequ` (p > 1) and `bound_inequ11`
  (p in (lambda, 1]), both keyed on X0 against the fixed point (a/-b)^(1/(p-lambda)).

`ode_oracle` integrates the corresponding *equality* ODE with classical
fixed-substep RK4; every solution of the inequality is dominated by it, and
the oracle in turn must be dominated by the closed-form bounds.  The oracle
is deliberately independent of the bound formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .forcing import ExpDecay, PowerDecay, TabulatedProfile

_LAMBDA_SWITCH = 1e-6  # |lambda-1| below this: use the exponential branch
_BLOWUP_LIMIT = 1e12


class BlowUp(RuntimeError):
    """Oracle trajectory exceeded the blow-up guard; instance misconfigured."""


@dataclass(frozen=True)
class DecayForcing:
    """Nonnegative closed-form time function c*g(t) for the lemma inequalities."""

    amplitude: float = 0.0
    kind: str = "zero"  # zero | exp | power | const | tabulated
    rate: float = 1.0  # kappa for exp, beta for power
    profile: TabulatedProfile | None = None

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError("forcing amplitude must be nonnegative")
        if self.kind not in ("zero", "exp", "power", "const", "tabulated"):
            raise ValueError(f"unknown forcing kind {self.kind!r}")
        if self.kind == "power" and not self.rate > 1:
            raise ValueError("power forcing needs rate > 1 for an integrable tail")
        if self.kind == "exp" and not self.rate > 0:
            raise ValueError("exp forcing needs a positive rate")
        if self.kind == "tabulated" and self.profile is None:
            raise ValueError("tabulated forcing needs a profile")

    def value(self, t):
        if self.kind == "zero" or self.amplitude == 0.0:
            return 0.0 * np.asarray(t, dtype=float) if np.ndim(t) else 0.0
        if self.kind == "const":
            return self.amplitude * (np.ones_like(np.asarray(t, float)) if np.ndim(t) else 1.0)
        if self.kind == "tabulated":
            return self.amplitude * self.profile(t)
        base = ExpDecay(self.rate) if self.kind == "exp" else PowerDecay(self.rate)
        return self.amplitude * base(t)

    def integral(self, t0: float, t1: float) -> float:
        if self.kind == "zero" or self.amplitude == 0.0:
            return 0.0
        if self.kind == "const":
            return self.amplitude * ((t1 - t0) if not math.isinf(t1) else math.inf)
        if self.kind == "tabulated":
            return self.amplitude * self.profile.integral(t0, t1)
        base = ExpDecay(self.rate) if self.kind == "exp" else PowerDecay(self.rate)
        return self.amplitude * base.integral(t0, t1)

    def total(self) -> float:
        return self.integral(0.0, math.inf)

    def convolved(self, t0: float, t1: float, rate: float) -> float:
        """integral of value(s) * exp(-rate (t1-s)) over [t0, t1]."""
        if self.kind == "zero" or self.amplitude == 0.0:
            return 0.0
        if self.kind == "const":
            if rate <= 0:
                return self.amplitude * (t1 - t0)
            return self.amplitude * (1.0 - math.exp(-rate * (t1 - t0))) / rate
        if self.kind == "tabulated":
            return self.amplitude * self.profile.convolved(t0, t1, rate)
        base = ExpDecay(self.rate) if self.kind == "exp" else PowerDecay(self.rate)
        return self.amplitude * base.convolved(t0, t1, rate)


NO_FORCING = DecayForcing()


@dataclass(frozen=True)
class OdeInstance:
    """One inequality instance.

    For the decay family (`bound_y1`, `lower_bound_lem01`) only beta > 0,
    lambda_exp and k0 matter and `forcing` is the right-hand side f(t).
    The relaxation family (`bound_inequ*`) additionally uses alpha_coef > 0
    (the growth coefficient) and p_exp, with beta < 0.
    """

    beta: float
    lambda_exp: float
    k0: float
    p_exp: float = 1.0
    alpha_coef: float = 0.0
    forcing: DecayForcing = NO_FORCING

    def __post_init__(self):
        if not self.k0 > 0:
            raise ValueError(f"initial value must be positive, got k0={self.k0}")


# ---------------------------------------------------------------------------
# closed-form bounds


def bound_y1(inst: OdeInstance, t: float) -> float:
    """Upper bound for k' + beta k^lambda <= f with integrable f >= 0.

    M0 = k0 + total forcing.  lambda > 1 gives the polynomial branch plus the
    undiscounted window integral of f; lambda <= 1 the exponential branch with
    the exponentially discounted window integral.  The two branches meet
    continuously at lambda = 1, and the polynomial branch is numerically
    fragile there, so lambda within 1e-6 of 1 is routed to the exponential one.
    """
    if not inst.beta > 0:
        raise ValueError("decay bound needs beta > 0")
    m0 = inst.k0 + inst.forcing.total()
    if not math.isfinite(m0):
        raise ValueError("forcing must have a finite tail integral")
    lam = inst.lambda_exp
    if lam <= 0:
        raise ValueError("decay bound needs lambda > 0")
    if t == 0.0:
        return m0
    rate = 0.5 * inst.beta * m0 ** (lam - 1.0)
    if lam > 1.0 + _LAMBDA_SWITCH:
        base = 1.0 + rate * (lam - 1.0) * t
        return m0 * base ** (1.0 / (1.0 - lam)) + inst.forcing.integral(0.5 * t, t)
    return m0 * math.exp(-rate * t) + inst.forcing.convolved(0.5 * t, t, rate)


def lower_bound_lem01(inst: OdeInstance, t0: float, y0: float, t: float) -> float:
    """Unforced separable solution; any y' + beta y^lambda = f >= 0 from
    (t0, y0) stays above it.  For lambda < 1 the formula reaches zero at a
    finite time and is clamped there.
    """
    if not inst.beta > 0:
        raise ValueError("comparison lower bound needs beta > 0")
    if t < t0:
        raise ValueError("t must be >= t0")
    lam = inst.lambda_exp
    dt = t - t0
    if abs(lam - 1.0) <= _LAMBDA_SWITCH:
        return y0 * math.exp(-inst.beta * dt)
    base = 1.0 + (lam - 1.0) * inst.beta * y0 ** (lam - 1.0) * dt
    if base <= 0.0:  # only possible for lambda < 1: finite-time extinction
        return 0.0
    return y0 * base ** (1.0 / (1.0 - lam))


def _equilibrium(inst: OdeInstance) -> float:
    return (inst.alpha_coef / -inst.beta) ** (1.0 / (inst.p_exp - inst.lambda_exp))


def _check_relaxation(inst: OdeInstance):
    if not (inst.alpha_coef > 0 and inst.beta < 0):
        raise ValueError("relaxation bound needs alpha_coef > 0 and beta < 0")
    if not 0 <= inst.lambda_exp < 1:
        raise ValueError("relaxation bound needs lambda in [0, 1)")


def bound_inequ(inst: OdeInstance, t: float) -> float:
    """Upper bound for X' <= a X^lambda + b X^p, p > 1, from X0 = k0."""
    _check_relaxation(inst)
    b, lam, p, x0 = inst.beta, inst.lambda_exp, inst.p_exp, inst.k0
    if not p > 1:
        raise ValueError(f"this branch needs p > 1, got p={p}")
    eq = _equilibrium(inst)
    if x0 <= eq:
        return eq
    z0 = x0 ** (1.0 - lam) - eq ** (1.0 - lam)
    decay = (z0 ** ((p - 1.0) / (lam - 1.0)) - b * (p - 1.0) * t) ** ((lam - 1.0) / (p - 1.0))
    return (eq ** (1.0 - lam) + decay) ** (1.0 / (1.0 - lam))


def bound_inequ11(inst: OdeInstance, t: float) -> float:
    """Upper bound for X' <= a X^lambda + b X^p, p in (lambda, 1], from X0 = k0."""
    _check_relaxation(inst)
    a, b, lam, p, x0 = inst.alpha_coef, inst.beta, inst.lambda_exp, inst.p_exp, inst.k0
    if not lam < p <= 1:
        raise ValueError(f"this branch needs p in (lambda, 1], got p={p}")
    eq = _equilibrium(inst)
    if x0 <= eq:
        return eq
    limit = a * x0 ** (1.0 - p) / -b
    shrink = math.exp(b * (1.0 - lam) * x0 ** (p - 1.0) * t)
    return (limit + (x0 ** (1.0 - lam) - limit) * shrink) ** (1.0 / (1.0 - lam))


# ---------------------------------------------------------------------------
# RK4 oracle for the equality ODEs


@njit(cache=True, nogil=True)
def _rk4_equality(y0, t_grid, max_sub, code, beta, lam, alpha_c, p, f_kind, f_amp, f_rate):
    """March the equality ODE on t_grid; code 0: k' = -beta k^lam + f,
    code 1: X' = alpha_c X^lam + beta X^p.  Returns (samples, ok_flag)."""
    n = t_grid.shape[0]
    out = np.empty(n)
    out[0] = y0
    y = y0
    scale = max(1.0, y0)
    floor = 1e-30
    for i in range(n - 1):
        dt = t_grid[i + 1] - t_grid[i]
        # local stiffness estimate from the Jacobian of the rhs
        yb = y
        if yb < 1e-6 * scale:
            yb = 1e-6 * scale
        if code == 0:
            stiff = beta * lam * yb ** (lam - 1.0)
        else:
            stiff = alpha_c * lam * yb ** (lam - 1.0) - beta * p * yb ** (p - 1.0)
        n_sub = int(dt * stiff / 0.2) + 1
        if n_sub < 2:
            n_sub = 2
        if n_sub > max_sub:
            n_sub = max_sub
        h = dt / n_sub
        for j in range(n_sub):
            t = t_grid[i] + j * h
            # RK4 stages; state powers are clamped at zero so fractional
            # exponents stay real if a stage value undershoots
            k1 = _rhs(t, y, code, beta, lam, alpha_c, p, f_kind, f_amp, f_rate)
            y2 = y + 0.5 * h * k1
            k2 = _rhs(t + 0.5 * h, y2, code, beta, lam, alpha_c, p, f_kind, f_amp, f_rate)
            y3 = y + 0.5 * h * k2
            k3 = _rhs(t + 0.5 * h, y3, code, beta, lam, alpha_c, p, f_kind, f_amp, f_rate)
            y4 = y + h * k3
            k4 = _rhs(t + h, y4, code, beta, lam, alpha_c, p, f_kind, f_amp, f_rate)
            y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if y < floor:
                y = 0.0
            if y > _BLOWUP_LIMIT or not np.isfinite(y):
                out[i + 1 :] = np.inf
                return out, False
        out[i + 1] = y
    return out, True


@njit(cache=True, nogil=True, inline="always")
def _rhs(t, y, code, beta, lam, alpha_c, p, f_kind, f_amp, f_rate):
    yc = y if y > 0.0 else 0.0
    if code == 0:
        f = 0.0
        if f_kind == 1:
            f = f_amp * math.exp(-f_rate * t)
        elif f_kind == 2:
            f = f_amp * (1.0 + t) ** (-f_rate)
        elif f_kind == 3:
            f = f_amp
        return -beta * yc**lam + f
    return alpha_c * yc**lam + beta * yc**p


_FORCING_CODES = {"zero": 0, "exp": 1, "power": 2, "const": 3}


def ode_oracle(inst: OdeInstance, lemma_kind: str, t_grid: np.ndarray) -> np.ndarray:
    """Classical RK4 trajectory of the equality ODE sampled on t_grid.

    lemma_kind "y1"/"lem01" integrates k' = -beta k^lambda + f; "inequ"/
    "inequ11" integrates X' = alpha_coef X^lambda + beta X^p.  Substeps per
    grid interval keep h at most 1e-3 of the span and refine further where
    the local Jacobian is large.  Raises BlowUp past 1e12.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size < 2:
        raise ValueError("need a 1-d time grid with at least two points")
    if np.any(np.diff(t_grid) <= 0):
        raise ValueError("time grid must be strictly increasing")
    span = float(t_grid[-1] - t_grid[0])
    # enforce the coarse cap h <= 1e-3 * span by densifying the sample grid
    #: with >= 1000 intervals and n_sub >= 2 every substep is below the cap
    if t_grid.size - 1 < 1000:
        dense = np.linspace(t_grid[0], t_grid[-1], 2001)
        full = np.union1d(dense, t_grid)
    else:
        full = t_grid

    if lemma_kind in ("y1", "lem01"):
        code = 0
        if inst.forcing.kind == "tabulated":
            raise ValueError("tabulated forcing is not supported by the fast oracle")
        f_kind = _FORCING_CODES[inst.forcing.kind]
        f_amp = inst.forcing.amplitude
        f_rate = inst.forcing.rate
    elif lemma_kind in ("inequ", "inequ11"):
        _check_relaxation(inst)
        code = 1
        f_kind, f_amp, f_rate = 0, 0.0, 1.0
    else:
        raise ValueError(f"unknown lemma kind {lemma_kind!r}")

    samples, ok = _rk4_equality(
        float(inst.k0),
        full,
        8192,
        code,
        float(inst.beta),
        float(inst.lambda_exp),
        float(inst.alpha_coef),
        float(inst.p_exp),
        f_kind,
        float(f_amp),
        float(f_rate),
    )
    if not ok:
        raise BlowUp(f"oracle exceeded {_BLOWUP_LIMIT:g}; instance {inst} is misconfigured")
    if full is t_grid:
        return samples
    idx = np.searchsorted(full, t_grid)
    return samples[idx]


# ---------------------------------------------------------------------------
# randomized dominance suites


def _random_forcing(rng: np.random.Generator) -> DecayForcing:
    kind = rng.choice(["zero", "exp", "power"])
    if kind == "zero":
        return NO_FORCING
    amp = float(rng.uniform(0.01, 2.0))
    rate = float(rng.uniform(0.2, 3.0)) if kind == "exp" else float(rng.uniform(1.1, 4.0))
    return DecayForcing(amplitude=amp, kind=str(kind), rate=rate)


def random_instance(lemma_kind: str, rng: np.random.Generator) -> OdeInstance:
    """Draw an admissible instance for the given lemma's dominance suite."""
    if lemma_kind in ("y1", "lem01"):
        return OdeInstance(
            beta=float(rng.uniform(0.1, 5.0)),
            lambda_exp=float(rng.uniform(0.2, 3.0)),
            k0=float(rng.uniform(0.1, 10.0)),
            forcing=_random_forcing(rng),
        )
    lam = float(rng.uniform(0.0, 0.9))
    if lemma_kind == "inequ":
        p = float(rng.uniform(1.1, 3.0))
    elif lemma_kind == "inequ11":
        p = float(rng.uniform(lam + 0.05, 1.0))
    else:
        raise ValueError(f"unknown lemma kind {lemma_kind!r}")
    return OdeInstance(
        beta=-float(rng.uniform(0.1, 3.0)),
        lambda_exp=lam,
        p_exp=p,
        alpha_coef=float(rng.uniform(0.1, 3.0)),
        k0=float(rng.uniform(0.1, 10.0)),
    )


@dataclass
class DominanceReport:
    lemma: str
    instances: int
    violations: int
    worst_margin: float  # max (oracle - bound) / scale, negative when dominated
    worst_instance: OdeInstance | None

    @property
    def passed(self) -> bool:
        return self.violations == 0


def dominance_suite(
    lemma_kind: str,
    count: int = 200,
    seed: int = 0,
    t_end: float = 20.0,
    grid_points: int = 1000,
    rel_tol: float = 1e-6,
) -> DominanceReport:
    """Run `count` randomized instances and compare oracle against bound.

    For y1 the check is oracle <= bound (and oracle <= M0); for lem01 it is
    lower bound <= oracle; for the relaxation lemmas oracle <= bound.
    Margins are normalized by max(1, k0).
    """
    rng = np.random.default_rng(seed)
    t_grid = np.linspace(0.0, t_end, grid_points)
    worst = -math.inf
    worst_inst = None
    violations = 0
    for _ in range(count):
        inst = random_instance(lemma_kind, rng)
        scale = max(1.0, inst.k0)
        path = ode_oracle(inst, lemma_kind, t_grid)
        if lemma_kind == "y1":
            m0 = inst.k0 + inst.forcing.total()
            bounds = np.array([bound_y1(inst, t) for t in t_grid])
            margin = float(np.max((path - bounds) / scale))
            margin = max(margin, float(np.max((path - m0) / scale)))
        elif lemma_kind == "lem01":
            lows = np.array([lower_bound_lem01(inst, 0.0, inst.k0, t) for t in t_grid])
            margin = float(np.max((lows - path) / scale))
        elif lemma_kind == "inequ":
            bounds = np.array([bound_inequ(inst, t) for t in t_grid])
            margin = float(np.max((path - bounds) / scale))
        else:
            bounds = np.array([bound_inequ11(inst, t) for t in t_grid])
            margin = float(np.max((path - bounds) / scale))
        if margin > worst:
            worst = margin
            worst_inst = inst
        if margin > rel_tol:
            violations += 1
    return DominanceReport(lemma_kind, count, violations, worst, worst_inst)


ALL_LEMMAS = ("y1", "lem01", "inequ", "inequ11")
