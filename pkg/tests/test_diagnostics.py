"""Energy/dissipation functionals and windowed integrals."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from thinfilm.diagnostics import (
    SimRecord,
    dissipation,
    dissipation_unregularized,
    dissipation_window,
    energy,
    reference_value,
    window_integral,
)
from thinfilm.forcing import ConstantForce, CosineProfile, time_dependent_force
from thinfilm.grid import Grid, extend_even, face_third_derivative
from thinfilm.model import Ellis, PowerLaw


def cosine_field(grid, A=3.0, B=0.01, m=10.0):
    return A + B * np.cos(np.pi * grid.x / m)


def test_energy_constant_field_is_zero():
    g = Grid(20.0, 40)
    assert energy(np.full(g.N, 2.7), g) == 0.0


def test_energy_cosine_closed_form():
    # E = (1/2) (B pi / m)^2 L/2 = 4.9348e-4 for B=0.01, m=10, L=200
    exact = 0.5 * (0.01 * math.pi / 10.0) ** 2 * 100.0
    assert exact == pytest.approx(4.9348e-4, rel=1e-4)
    errs = []
    for n in (200, 400, 800):
        g = Grid(200.0, n)
        errs.append(abs(energy(cosine_field(g), g) - exact))
    assert errs[0] < 1e-5
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert all(1.8 < o < 2.2 for o in orders)


def test_energy_quadratic_scaling():
    g = Grid(50.0, 100)
    u = cosine_field(g, B=0.2)
    assert energy(2.0 * u, g) == pytest.approx(4.0 * energy(u, g), rel=1e-14)


def test_dissipation_constant_field_is_zero():
    g = Grid(20.0, 40)
    for model in (PowerLaw(alpha=0.5, eps_reg=1e-6), Ellis(alpha=2.0)):
        assert dissipation(np.full(g.N, 2.7), g, model) == 0.0


def test_dissipation_newtonian_cosine_against_quadrature():
    # D = a int (A + B cos kx)^3 (B k^3 sin kx)^2 dx, computed by quadrature
    A, B, m = 3.0, 0.5, 10.0
    k = math.pi / m
    oracle, _ = quad(
        lambda x: (A + B * math.cos(k * x)) ** 3 * (B * k**3 * math.sin(k * x)) ** 2,
        0.0,
        200.0,
        limit=200,
    )
    # the same value in closed form: B^2 k^6 (A^3 L/2 + 3 A B^2 L / 8)
    closed = B**2 * k**6 * (A**3 * 100.0 + 3 * A * B**2 * 25.0)
    assert oracle == pytest.approx(closed, rel=1e-9)
    vals = []
    for n in (200, 400, 800):
        g = Grid(200.0, n)
        vals.append(dissipation(cosine_field(g, A, B, m), g, PowerLaw(alpha=1.0)))
    assert vals[-1] == pytest.approx(oracle, rel=2e-3)
    errs = [abs(v - oracle) for v in vals]
    assert 1.6 < math.log2(errs[0] / errs[1]) < 2.4


def test_dissipation_scales_with_mobility_coefficient():
    g = Grid(100.0, 200)
    u = cosine_field(g, B=0.2)
    d1 = dissipation(u, g, PowerLaw(alpha=1.5, a=1.0, eps_reg=1e-6))
    d2 = dissipation(u, g, PowerLaw(alpha=1.5, a=2.5, eps_reg=1e-6))
    assert d2 == pytest.approx(2.5 * d1, rel=1e-13)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_unregularized_dissipation_pointwise_lower_bound(alpha):
    # D >= m^(alpha+2) sum |uxxx|^(alpha+1) dx whenever min u >= m
    g = Grid(100.0, 200)
    u = cosine_field(g, B=0.3)
    model = PowerLaw(alpha=alpha, eps_reg=1e-6)
    m = float(np.min(u))
    s = face_third_derivative(extend_even(u), g.dx)[1:-1]
    lower = m ** (alpha + 2.0) * float(np.sum(np.abs(s) ** (alpha + 1.0))) * g.dx
    assert dissipation_unregularized(u, g, model) >= lower * (1 - 1e-12)
    if alpha >= 1.0:
        assert dissipation(u, g, model) >= lower * (1 - 1e-12)


def test_reference_value():
    f = ConstantForce(1.0, 100.0)
    assert reference_value(f, 3.0, 0.0) == 3.0
    assert reference_value(f, 3.0, 2.5) == pytest.approx(5.5)
    f_exp = time_dependent_force(CosineProfile(1.0, 0.01, 10.0), 200.0, kappa=1.0)
    assert reference_value(f_exp, 3.0, math.inf) == pytest.approx(4.0, rel=1e-14)


def _records_with_dissipation(ts, ds):
    return [
        SimRecord(
            t=t, mass=0.0, mass_expected=0.0, energy=0.0, dissipation=d,
            ux_l2=0.0, h1_error=0.0, envelope=math.nan, min_u=1.0, hyp_ok=True,
        )
        for t, d in zip(ts, ds)
    ]


def test_dissipation_window_constant_rate():
    ts = np.linspace(0.0, 10.0, 101)
    recs = _records_with_dissipation(ts, np.full_like(ts, 0.8))
    assert dissipation_window(recs, 6.0) == pytest.approx(0.8 * 3.0, rel=1e-12)
    recs0 = _records_with_dissipation(ts, np.zeros_like(ts))
    assert dissipation_window(recs0, 6.0) == 0.0


def test_window_integral_edges_interpolated():
    ts = np.array([0.0, 1.0, 2.0])
    vals = np.array([0.0, 1.0, 2.0])  # integrand = t
    assert window_integral(ts, vals, 0.5, 1.5) == pytest.approx(1.0, rel=1e-12)
    assert window_integral(ts, vals, 2.0, 1.0) == 0.0
    # window clipped to the sampled range
    assert window_integral(ts, vals, -3.0, 5.0) == pytest.approx(2.0, rel=1e-12)
