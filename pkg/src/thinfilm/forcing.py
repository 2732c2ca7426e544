"""Force regimes: separable decaying f(t,x), steady f(x), constant f0.

Space profiles are the single-cosine family A + B cos(pi x / m) with L/m a
whole number, so that period-complete integrals give exact closed forms for
the mass rate, the gradient norm ||f_x(t)||_2 and their cumulative time
integrals.  Those closed forms feed both the mass bookkeeping of the stepper
and every decay envelope, which keeps the theoretical constants exact instead
of grid-dependent.

An escape hatch accepts a tabulated time profile g(t); its integrals are
trapezoid-based and results are flagged numeric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad


class DryOutError(ValueError):
    """Negative constant force: the film drains completely in finite time."""

    def __init__(self, f0: float, u0_mean: float | None = None):
        msg = f"constant force must be nonnegative, got f0={f0}"
        if u0_mean is not None and f0 < 0:
            msg += f" (film would dry out at T* = {-u0_mean / f0:.6g})"
        super().__init__(msg)
        self.f0 = f0


@dataclass(frozen=True)
class CosineProfile:
    """Spatial profile A + B cos(pi x / m) on (0, L) with L a multiple of m.

    A is the mean level (> 0), B the oscillation amplitude, m the half-period.
    The amplitude smallness condition k |B| pi < sqrt(2) A (k = L/m) is *not*
    enforced here; it is a sufficient-hypothesis verdict reported by
    `hypothesis_check`, and runs violating it are allowed to proceed.
    """

    A: float
    B: float
    m: float

    def __post_init__(self):
        if not self.A > 0:
            raise ValueError(f"mean amplitude must be positive, got A={self.A}")
        if not self.m > 0:
            raise ValueError(f"half-period must be positive, got m={self.m}")

    def validate_on_domain(self, L: float) -> int:
        """Return k = L/m after checking it is a whole number of half-periods."""
        k = L / self.m
        if abs(k - round(k)) > 1e-9 or round(k) < 1:
            raise ValueError(f"L/m must be a positive integer, got L={L}, m={self.m}")
        return int(round(k))

    def __call__(self, x):
        return self.A + self.B * np.cos(np.pi * x / self.m)

    def gradient(self, x):
        return -self.B * (np.pi / self.m) * np.sin(np.pi * x / self.m)

    def mean(self) -> float:
        return self.A

    def integral(self, L: float) -> float:
        """Integral over (0, L); the cosine cancels over whole half-period pairs."""
        self.validate_on_domain(L)
        return self.A * L

    def grad_l2(self, L: float) -> float:
        """||d/dx profile||_2 = |B| (pi/m) sqrt(L/2)."""
        self.validate_on_domain(L)
        return abs(self.B) * (np.pi / self.m) * math.sqrt(L / 2.0)

    def slope_hypothesis_ok(self, L: float) -> bool:
        """Sufficient smallness condition k |B| pi < sqrt(2) A."""
        k = self.validate_on_domain(L)
        return k * abs(self.B) * np.pi < math.sqrt(2.0) * self.A


# ---------------------------------------------------------------------------
# time profiles


@dataclass(frozen=True)
class ExpDecay:
    """g(t) = exp(-kappa t)."""

    kappa: float

    kind = "exp"
    numeric = False

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"decay rate must be positive, got kappa={self.kappa}")

    def __call__(self, t):
        return np.exp(-self.kappa * t)

    def integral(self, t0: float, t1: float) -> float:
        if math.isinf(t1):
            return math.exp(-self.kappa * t0) / self.kappa
        return (math.exp(-self.kappa * t0) - math.exp(-self.kappa * t1)) / self.kappa

    def convolved(self, t0: float, t1: float, rate: float) -> float:
        """integral of g(s) exp(-rate (t1 - s)) over [t0, t1], closed form."""
        k, r = self.kappa, rate
        if abs(r - k) < 1e-12 * max(r, k):
            # degenerate equal-rate limit t e^{-rt}
            return math.exp(-r * t1) * (t1 - t0)
        return (math.exp(-k * t1) - math.exp(-k * t0 - r * (t1 - t0))) / (r - k)


@dataclass(frozen=True)
class PowerDecay:
    """g(t) = (1 + t)^(-beta) with beta > 1 so the tail integral is finite."""

    beta: float

    kind = "power"
    numeric = False

    def __post_init__(self):
        if not self.beta > 1:
            raise ValueError(f"power decay needs beta > 1, got beta={self.beta}")

    def __call__(self, t):
        return (1.0 + t) ** (-self.beta)

    def integral(self, t0: float, t1: float) -> float:
        b1 = self.beta - 1.0
        if math.isinf(t1):
            return (1.0 + t0) ** (-b1) / b1
        return ((1.0 + t0) ** (-b1) - (1.0 + t1) ** (-b1)) / b1

    def convolved(self, t0: float, t1: float, rate: float) -> float:
        val, _ = quad(
            lambda s: (1.0 + s) ** (-self.beta) * math.exp(-rate * (t1 - s)),
            t0,
            t1,
            epsabs=1e-12,
            epsrel=1e-10,
        )
        return val


@dataclass(frozen=True)
class TabulatedProfile:
    """Piecewise profile from samples (t_j, g_j); integrals by trapezoid."""

    t_samples: tuple
    g_samples: tuple

    kind = "tabulated"
    numeric = True

    def __post_init__(self):
        t = np.asarray(self.t_samples, dtype=float)
        g = np.asarray(self.g_samples, dtype=float)
        if t.ndim != 1 or t.shape != g.shape or t.size < 2:
            raise ValueError("need matching 1-d sample arrays with at least 2 points")
        if np.any(np.diff(t) <= 0):
            raise ValueError("sample times must be strictly increasing")
        if np.any(g < 0):
            raise ValueError("tabulated profile must be nonnegative")

    def _arrays(self):
        return np.asarray(self.t_samples, dtype=float), np.asarray(self.g_samples, dtype=float)

    def __call__(self, t):
        ts, gs = self._arrays()
        return np.interp(t, ts, gs)

    def cumulative(self):
        """Sample times and the trapezoid cumulative integral at them."""
        ts, gs = self._arrays()
        G = np.concatenate(([0.0], np.cumsum(0.5 * (gs[1:] + gs[:-1]) * np.diff(ts))))
        return ts, G

    def integral(self, t0: float, t1: float) -> float:
        ts, G = self.cumulative()
        gs = np.asarray(self.g_samples, dtype=float)
        if math.isinf(t1):
            if gs[-1] > 0:
                return math.inf
            t1 = ts[-1]
        lo = np.interp(t0, ts, G) + max(t0 - ts[-1], 0.0) * gs[-1]
        hi = np.interp(t1, ts, G) + max(t1 - ts[-1], 0.0) * gs[-1]
        return float(hi - lo)

    def convolved(self, t0: float, t1: float, rate: float) -> float:
        val, _ = quad(
            lambda s: float(self(s)) * math.exp(-rate * (t1 - s)),
            t0,
            t1,
            epsabs=1e-12,
            epsrel=1e-10,
            limit=200,
        )
        return val


@dataclass(frozen=True)
class _UnitProfile:
    """g(t) = 1, the time factor of a steady force."""

    kind = "static"
    numeric = False

    def __call__(self, t):
        return np.ones_like(np.asarray(t, dtype=float)) if np.ndim(t) else 1.0

    def integral(self, t0: float, t1: float) -> float:
        return t1 - t0

    def convolved(self, t0: float, t1: float, rate: float) -> float:
        if rate <= 0:
            return t1 - t0
        return (1.0 - math.exp(-rate * (t1 - t0))) / rate


# ---------------------------------------------------------------------------
# force variants


@dataclass(frozen=True)
class SeparableForce:
    """f(t, x) = g(t) * (A + B cos(pi x / m)) with decaying or unit g."""

    time_profile: ExpDecay | PowerDecay | TabulatedProfile | _UnitProfile
    space: CosineProfile
    L: float

    def __post_init__(self):
        self.space.validate_on_domain(self.L)

    @property
    def kind(self) -> str:
        return self.time_profile.kind

    @property
    def numeric(self) -> bool:
        return self.time_profile.numeric

    def eval(self, t, x):
        return self.time_profile(t) * self.space(x)

    def eval_grad(self, t, x):
        return self.time_profile(t) * self.space.gradient(x)

    def grad_l2_norm(self, t) -> float:
        return float(np.abs(self.time_profile(t))) * self.space.grad_l2(self.L)

    def mass_rate(self, t) -> float:
        return float(self.time_profile(t)) * self.space.integral(self.L)

    def cumulative_mass(self, t: float) -> float:
        return self.space.integral(self.L) * self.time_profile.integral(0.0, t)

    def cumulative_grad_norm(self, t0: float, t1: float) -> float:
        return self.space.grad_l2(self.L) * self.time_profile.integral(t0, t1)

    def conv_grad_norm(self, t0: float, t1: float, rate: float) -> float:
        """integral of ||f_x(s)||_2 e^{-rate (t1-s)} over [t0, t1]."""
        return self.space.grad_l2(self.L) * self.time_profile.convolved(t0, t1, rate)

    def grad_sq_integral(self, t0: float, t1: float) -> float:
        """integral of ||f_x(s)||_2^2 over [t0, t1]."""
        amp2 = self.space.grad_l2(self.L) ** 2
        p = self.time_profile
        if isinstance(p, ExpDecay):
            return amp2 * ExpDecay(2.0 * p.kappa).integral(t0, t1)
        if isinstance(p, PowerDecay):
            return amp2 * PowerDecay(2.0 * p.beta).integral(t0, t1)
        if isinstance(p, _UnitProfile):
            return amp2 * (t1 - t0)
        val, _ = quad(lambda s: float(p(s)) ** 2, t0, t1, epsabs=1e-12, epsrel=1e-10)
        return amp2 * val

    def space_field(self, x: np.ndarray) -> np.ndarray:
        return self.space(x)


def time_dependent_force(space: CosineProfile, L: float, *, kappa=None, beta=None, samples=None):
    """Separable decaying force; pick exactly one of kappa / beta / samples."""
    given = sum(v is not None for v in (kappa, beta, samples))
    if given != 1:
        raise ValueError("specify exactly one of kappa, beta, samples")
    if kappa is not None:
        profile = ExpDecay(kappa)
    elif beta is not None:
        profile = PowerDecay(beta)
    else:
        profile = TabulatedProfile(tuple(samples[0]), tuple(samples[1]))
    return SeparableForce(profile, space, L)


def static_force(space: CosineProfile, L: float) -> SeparableForce:
    """Time-independent force f(x) = A + B cos(pi x / m)."""
    return SeparableForce(_UnitProfile(), space, L)


@dataclass(frozen=True)
class ConstantForce:
    """Spatially and temporally constant force f0 >= 0."""

    f0: float
    L: float

    kind = "constant"
    numeric = False

    def __post_init__(self):
        if self.f0 < 0:
            raise DryOutError(self.f0)

    def eval(self, t, x):
        return np.full_like(np.asarray(x, dtype=float), self.f0) if np.ndim(x) else self.f0

    def eval_grad(self, t, x):
        return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0

    def grad_l2_norm(self, t) -> float:
        return 0.0

    def mass_rate(self, t) -> float:
        return self.f0 * self.L

    def cumulative_mass(self, t: float) -> float:
        return self.f0 * self.L * t

    def cumulative_grad_norm(self, t0: float, t1: float) -> float:
        return 0.0

    def conv_grad_norm(self, t0: float, t1: float, rate: float) -> float:
        return 0.0

    def grad_sq_integral(self, t0: float, t1: float) -> float:
        return 0.0

    def space_field(self, x: np.ndarray) -> np.ndarray:
        return np.full_like(x, self.f0)


Force = SeparableForce | ConstantForce


# ---------------------------------------------------------------------------
# hypothesis verdicts


@dataclass(frozen=True)
class HypothesisVerdicts:
    """Which sufficient conditions for the decay guarantees the data satisfies.

    initial_slope      ||u0_x||_2 < L^(-1/2) * mean(u0)
    force_gradient     ||f_x(t)||_2 <= L^(-3/2) * integral of f, for all t
                       (amplitude inequality; the time factor cancels)
    u0_amplitude_ok    k1 |B1| pi < sqrt(2) A1 for the initial profile
    force_amplitude_ok k2 |B2| pi < sqrt(2) A2 for the force profile
    """

    initial_slope: bool
    force_gradient: bool
    u0_amplitude_ok: bool
    force_amplitude_ok: bool

    @property
    def all_ok(self) -> bool:
        """Both primary hypotheses (the amplitude checks are informational)."""
        return self.initial_slope and self.force_gradient


def hypothesis_check(force: Force, u0_profile: CosineProfile, L: float) -> HypothesisVerdicts:
    """Evaluate the decay-guarantee hypotheses analytically for cosine data."""
    u0_grad = u0_profile.grad_l2(L)
    initial_slope = u0_grad < u0_profile.mean() / math.sqrt(L)

    if isinstance(force, ConstantForce):
        force_gradient = True
        force_amplitude_ok = True
    else:
        # g(t) >= 0 factors out of ||f_x||_2 <= L^(-3/2) * integral f
        force_gradient = force.space.grad_l2(L) <= L ** (-1.5) * force.space.integral(L)
        force_amplitude_ok = force.space.slope_hypothesis_ok(L)

    return HypothesisVerdicts(
        initial_slope=initial_slope,
        force_gradient=force_gradient,
        u0_amplitude_ok=u0_profile.slope_hypothesis_ok(L),
        force_amplitude_ok=force_amplitude_ok,
    )
