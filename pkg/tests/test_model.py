"""Flux laws, regularized signed power, stiffness estimates."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from thinfilm.model import Ellis, NonPositiveHeight, PowerLaw, phi_eps

finite = st.floats(-1e8, 1e8, allow_nan=False)


def test_phi_eps_zero_and_newtonian():
    assert phi_eps(0.0, 0.5, 1e-8) == 0.0
    assert phi_eps(0.0, 3.0, 0.1) == 0.0
    # alpha = 1 collapses to the identity exactly
    for s in (-2.0, 0.3, 7.0):
        assert phi_eps(s, 1.0, 1e-2) == s


def test_phi_eps_unregularized_cube():
    assert phi_eps(2.0, 3.0, 0.0) == 8.0


@given(finite, st.floats(0.1, 3.0), st.floats(1e-10, 0.5))
def test_phi_eps_odd(s, alpha, eps):
    assert phi_eps(-s, alpha, eps) == -phi_eps(s, alpha, eps)


@given(st.floats(-1e4, 1e4), st.floats(-1e4, 1e4), st.floats(0.3, 3.0), st.floats(1e-8, 0.5))
def test_phi_eps_monotone_and_dissipative(s1, s2, alpha, eps):
    lo, hi = min(s1, s2), max(s1, s2)
    assert phi_eps(lo, alpha, eps) <= phi_eps(hi, alpha, eps)
    assert phi_eps(s1, alpha, eps) * s1 >= 0.0


def test_phi_eps_converges_monotonically_for_shear_thinning():
    s, alpha = 0.7, 2.2
    target = abs(s) ** (alpha - 1.0) * s
    gaps = [abs(phi_eps(s, alpha, eps) - target) for eps in (1e-1, 1e-2, 1e-3, 1e-4)]
    assert all(a >= b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-7


def test_model_validation():
    with pytest.raises(ValueError):
        PowerLaw(alpha=0.0)
    with pytest.raises(ValueError):
        PowerLaw(alpha=1.0, a=-1.0)
    with pytest.raises(ValueError):
        PowerLaw(alpha=1.0, eps_reg=0.0)
    with pytest.raises(ValueError):
        Ellis(alpha=0.5)
    with pytest.raises(ValueError):
        Ellis(alpha=2.0, c=0.0)


def test_face_flux_vanishes_without_curvature_gradient():
    assert PowerLaw(alpha=0.5, eps_reg=1e-6).face_flux(1.7, 0.0) == 0.0
    assert Ellis(alpha=2.0).face_flux(1.7, 0.0) == 0.0


def test_face_flux_newtonian_reduction():
    assert PowerLaw(alpha=1.0, a=1.0).face_flux(2.0, 3.0) == pytest.approx(24.0, rel=1e-14)


def test_face_flux_ellis_example():
    # alpha=2, b=c=1, u=1, uxxx=1: u^3 (1 + |u uxxx|) uxxx = 2
    flux = Ellis(alpha=2.0, eps_reg=1e-30).face_flux(1.0, 1.0)
    assert flux == pytest.approx(2.0, rel=1e-12)


def test_face_flux_rejects_nonpositive_height():
    with pytest.raises(NonPositiveHeight):
        PowerLaw(alpha=1.0).face_flux(0.0, 1.0)
    with pytest.raises(NonPositiveHeight):
        Ellis(alpha=2.0).face_flux(np.array([1.0, -0.5]), np.array([1.0, 1.0]))


@given(st.floats(0.1, 10.0), st.floats(-1e3, 1e3), st.floats(0.3, 2.8))
def test_face_flux_odd_in_slope(u, s, alpha):
    m = PowerLaw(alpha=alpha, eps_reg=1e-6)
    assert m.face_flux(u, -s) == -m.face_flux(u, s)
    e = Ellis(alpha=max(alpha, 1.0), eps_reg=1e-6)
    assert e.face_flux(u, -s) == -e.face_flux(u, s)


@given(st.floats(0.1, 10.0), st.floats(-1e3, 1e3), st.floats(1.0, 3.0))
def test_ellis_flux_dominates_newtonian_part(u, s, alpha):
    # (Ellis flux) * uxxx >= b u^3 uxxx^2: the bracket is at least one
    e = Ellis(alpha=alpha, b=1.3, c=0.7, eps_reg=1e-8)
    assert e.face_flux(u, s) * s >= 1.3 * u**3 * s * s * (1.0 - 1e-15)


def test_effective_stiffness_newtonian():
    m = PowerLaw(alpha=1.0, a=1.0)
    assert m.effective_stiffness(2.0, 0.0) == pytest.approx(8.0)
    assert m.effective_stiffness(2.0, 123.0) == pytest.approx(8.0)


def test_effective_stiffness_regularization_floor():
    m = PowerLaw(alpha=0.5, a=1.0, eps_reg=1e-8)
    expect = 2.0**2.5 * 1e4  # u^2.5 * eps^(alpha-1)
    assert m.effective_stiffness(2.0, 0.0) == pytest.approx(expect, rel=1e-12)
    # shear-thickening stiffness is pinned at the u_xxx = 0 floor: some face
    # (the walls at least) always sits there, whatever the max slope is
    assert m.effective_stiffness(2.0, 5.0) == m.effective_stiffness(2.0, 0.0)


def test_effective_stiffness_shear_thinning_grows_with_slope():
    m = PowerLaw(alpha=1.5, a=1.0, eps_reg=1e-8)
    assert m.effective_stiffness(2.0, 2.0) > m.effective_stiffness(2.0, 1.0)


def test_effective_stiffness_ellis_newtonian_limit():
    e = Ellis(alpha=2.0, b=1.0, c=1e-12)
    assert e.effective_stiffness(2.0, 1.0) == pytest.approx(8.0, rel=1e-9)


def test_dissipation_density_matches_flux_times_slope():
    for model in (PowerLaw(alpha=0.5, eps_reg=1e-4), Ellis(alpha=2.0, b=0.8, c=1.4)):
        u, s = 1.7, -0.9
        assert model.dissipation_density(u, s) == pytest.approx(
            model.face_flux(u, s) * s, rel=1e-14
        )
