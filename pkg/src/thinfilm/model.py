"""Mobility/flux laws for the two rheologies.

PowerLaw carries the doubly degenerate flux a u^(alpha+2) |u_xxx|^(alpha-1) u_xxx,
Ellis the flux b u^3 (1 + c |u u_xxx|^(alpha-1)) u_xxx which only degenerates
at u = 0.  The signed power |s|^(alpha-1) s is smoothed as
(s^2 + eps^2)^((alpha-1)/2) s so that shear-thickening runs (alpha < 1) stay
differentiable at u_xxx = 0; eps is a config knob, default 1e-8.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_EPS_REG = 1e-8


class NonPositiveHeight(RuntimeError):
    """Film height reached zero or below; the mobility degenerates there."""


def phi_eps(s, alpha: float, eps_reg: float):
    """Smoothed signed power (s^2 + eps^2)^((alpha-1)/2) * s.

    Odd and monotone increasing in s; reduces to s exactly at alpha = 1 and
    to |s|^(alpha-1) s as eps -> 0.
    """
    return (s * s + eps_reg * eps_reg) ** (0.5 * (alpha - 1.0)) * s


@dataclass(frozen=True)
class PowerLaw:
    """Ostwald-de Waele rheology: alpha > 1 shear-thinning, < 1 thickening."""

    alpha: float
    a: float = 1.0
    eps_reg: float = DEFAULT_EPS_REG

    kind = "power-law"

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"flow-behavior index must be positive, got alpha={self.alpha}")
        if not self.a > 0:
            raise ValueError(f"mobility coefficient must be positive, got a={self.a}")
        if not 0 < self.eps_reg < 1:
            raise ValueError(f"eps_reg must lie in (0,1), got {self.eps_reg}")

    def face_flux(self, u_face, uxxx_face):
        """Flux a u^(alpha+2) phi_eps(u_xxx) at a face; u_face must be > 0."""
        _require_positive(u_face)
        return self.a * u_face ** (self.alpha + 2.0) * phi_eps(uxxx_face, self.alpha, self.eps_reg)

    def effective_stiffness(self, u_max: float, uxxx_max: float) -> float:
        """Worst-case linearized fourth-order coefficient, for the CFL bound.

        The flux slope (s^2+eps^2)^((alpha-3)/2) (alpha s^2 + eps^2) peaks at
        s = uxxx_max for alpha >= 1 but at s = 0 for alpha < 1 (and some face,
        e.g. a boundary face, always has u_xxx = 0), so the shear-thickening
        branch is pinned to the eps floor.
        """
        s = uxxx_max if self.alpha >= 1.0 else 0.0
        return (
            self.a
            * u_max ** (self.alpha + 2.0)
            * max(self.alpha, 1.0)
            * (s * s + self.eps_reg**2) ** (0.5 * (self.alpha - 1.0))
        )

    def dissipation_density(self, u_face, uxxx_face):
        """Regularized integrand a u^(alpha+2) (uxxx^2+eps^2)^((alpha-1)/2) uxxx^2.

        Matches face_flux * uxxx exactly, so the discrete energy balance closes.
        """
        s2 = uxxx_face * uxxx_face
        return (
            self.a
            * u_face ** (self.alpha + 2.0)
            * (s2 + self.eps_reg**2) ** (0.5 * (self.alpha - 1.0))
            * s2
        )

    def dissipation_density_unregularized(self, u_face, uxxx_face):
        """Singular integrand a u^(alpha+2) |uxxx|^(alpha+1), for comparison."""
        return self.a * u_face ** (self.alpha + 2.0) * np.abs(uxxx_face) ** (self.alpha + 1.0)


@dataclass(frozen=True)
class Ellis:
    """Ellis rheology: Newtonian plateau at low stress, power-law above."""

    alpha: float
    b: float = 1.0
    c: float = 1.0
    eps_reg: float = DEFAULT_EPS_REG

    kind = "ellis"

    def __post_init__(self):
        if not self.alpha >= 1:
            raise ValueError(f"Ellis law needs alpha >= 1, got alpha={self.alpha}")
        if not (self.b > 0 and self.c > 0):
            raise ValueError(f"Ellis coefficients must be positive, got b={self.b}, c={self.c}")
        if not 0 < self.eps_reg < 1:
            raise ValueError(f"eps_reg must lie in (0,1), got {self.eps_reg}")

    def face_flux(self, u_face, uxxx_face):
        """Flux b u^3 (1 + c ((u uxxx)^2 + eps^2)^((alpha-1)/2)) uxxx; u_face > 0."""
        _require_positive(u_face)
        tau = u_face * uxxx_face
        bracket = 1.0 + self.c * (tau * tau + self.eps_reg**2) ** (0.5 * (self.alpha - 1.0))
        return self.b * u_face**3 * bracket * uxxx_face

    def effective_stiffness(self, u_max: float, uxxx_max: float) -> float:
        tau = u_max * uxxx_max
        return (
            self.b
            * u_max**3
            * (1.0 + self.c * self.alpha * (tau * tau + self.eps_reg**2) ** (0.5 * (self.alpha - 1.0)))
        )

    def dissipation_density(self, u_face, uxxx_face):
        """Regularized integrand b u^3 (1 + c ((u uxxx)^2+eps^2)^((alpha-1)/2)) uxxx^2."""
        tau = u_face * uxxx_face
        bracket = 1.0 + self.c * (tau * tau + self.eps_reg**2) ** (0.5 * (self.alpha - 1.0))
        return self.b * u_face**3 * bracket * uxxx_face * uxxx_face

    def dissipation_density_unregularized(self, u_face, uxxx_face):
        tau = np.abs(u_face * uxxx_face)
        return self.b * u_face**3 * (1.0 + self.c * tau ** (self.alpha - 1.0)) * uxxx_face * uxxx_face


FluidModel = PowerLaw | Ellis


def _require_positive(u_face):
    bad = np.min(u_face) if np.ndim(u_face) else u_face
    if not bad > 0:
        raise NonPositiveHeight(f"face height must be positive, got min {bad}")
