"""Numerical kernels against independent oracles: a literal four-stage RK4
stepper, closed forms, symbolic/quadrature cross-checks, and central
finite differences."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from optbench import (
    ContractViolation,
    Path,
    PathFunctional,
    analytic_step_response,
    closed_form_integral,
    functional_gradient,
    oscillatory_integral,
    path_energy,
    path_length,
    path_length_residual,
    rk4_step_response,
)
from optbench.numerics import OdeSamples


# ---------------------------------------------------------------------------
# Step response
# ---------------------------------------------------------------------------

def textbook_rk4(zeta, omega, t_end, h):
    """Literal four-stage RK4 on the first-order system (oracle)."""
    def deriv(y, v):
        return v, omega * omega * (1.0 - y) - 2.0 * zeta * omega * v

    y, v = 0.0, 0.0
    n = round(t_end / h)
    for _ in range(n):
        k1y, k1v = deriv(y, v)
        k2y, k2v = deriv(y + h / 2 * k1y, v + h / 2 * k1v)
        k3y, k3v = deriv(y + h / 2 * k2y, v + h / 2 * k2v)
        k4y, k4v = deriv(y + h * k3y, v + h * k3v)
        y += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y)
        v += h / 6 * (k1v + 2 * k2v + 2 * k3v + k4v)
    return y


@pytest.mark.parametrize("zeta,omega", [(0.25, 2.0), (0.1, 0.5), (0.9, 4.0), (0.5, 1.3)])
def test_rk4_equals_literal_stage_stepper(zeta, omega):
    for t_end in (0.37, 1.0, 5.0):
        ours = rk4_step_response(zeta, omega, [t_end], h=0.01).y[0]
        oracle = textbook_rk4(zeta, omega, t_end, 0.01)
        assert ours == pytest.approx(oracle, abs=1e-12)


def test_rk4_initial_condition():
    assert rk4_step_response(0.25, 2.0, [0.0]).y[0] == 0.0


def test_rk4_measured_value_at_one_second():
    assert rk4_step_response(0.25, 2.0, [1.0], h=0.01).y[0] == pytest.approx(1.0706, abs=2e-3)


def test_rk4_matches_analytic_oracle_on_grid():
    t = np.arange(11.0)
    worst = 0.0
    for zeta in np.linspace(0.1, 0.9, 5):
        for omega in np.linspace(0.5, 4.0, 5):
            rk = rk4_step_response(zeta, omega, t, h=0.01)
            exact = analytic_step_response(zeta, omega, t)
            worst = max(worst, float(np.max(np.abs(rk.y - exact))))
    assert worst <= 1e-6


def test_rk4_at_three_seconds_matches_analytic():
    got = rk4_step_response(0.25, 2.0, [3.0], h=0.01).y[0]
    assert got == pytest.approx(analytic_step_response(0.25, 2.0, 3.0), abs=1e-6)


def test_analytic_step_response_values():
    assert analytic_step_response(0.25, 2.0, 0.0) == 0.0
    assert analytic_step_response(0.25, 2.0, 1.0) == pytest.approx(1.0706, abs=1e-3)
    assert analytic_step_response(0.25, 2.0, 10.0) == pytest.approx(0.9933, abs=1e-3)


def test_step_response_contract_violations():
    with pytest.raises(ContractViolation):
        rk4_step_response(-0.1, 2.0, [1.0])
    with pytest.raises(ContractViolation):
        rk4_step_response(0.25, 0.0, [1.0])
    with pytest.raises(ContractViolation):
        rk4_step_response(0.25, 2.0, [1.0], h=0.0)
    with pytest.raises(ContractViolation):
        analytic_step_response(1.2, 2.0, 1.0)  # overdamped branch out of scope
    with pytest.raises(ContractViolation):
        analytic_step_response(0.25, 2.0, -1.0)


def test_ode_samples_invariants():
    with pytest.raises(ContractViolation):
        OdeSamples(t=np.array([0.0, 1.0, 1.0]), y=np.zeros(3))
    with pytest.raises(ContractViolation):
        OdeSamples(t=np.array([0.0, 1.0]), y=np.array([0.5, 1.0]))


# ---------------------------------------------------------------------------
# Oscillatory integral
# ---------------------------------------------------------------------------

def test_oscillatory_integral_examples():
    assert oscillatory_integral(0.0, 1, 1e-8).value == pytest.approx(math.pi / 2, abs=1e-8)
    assert oscillatory_integral(1.0, 3, 1e-8).value == pytest.approx(math.pi / 4, abs=1e-8)
    expected = math.pi / 2 - math.atan(0.25)
    assert oscillatory_integral(0.25, 3, 1e-8).value == pytest.approx(expected, abs=1e-8)


def test_oscillatory_integral_error_estimate_is_honest():
    for beta, k in ((0.0, 1), (0.5, 5), (2.0, 10)):
        result = oscillatory_integral(beta, k, 1e-10)
        true = closed_form_integral(beta)
        assert abs(result.value - true) <= max(result.est_error, 1e-10)
        assert result.est_error >= 0.0
        assert result.segments_used >= 1


def test_oscillatory_integral_contracts():
    with pytest.raises(ContractViolation):
        oscillatory_integral(-0.1, 1)
    with pytest.raises(ContractViolation):
        oscillatory_integral(11.0, 1)
    with pytest.raises(ContractViolation):
        oscillatory_integral(0.5, 0)
    with pytest.raises(ContractViolation):
        oscillatory_integral(0.5, 2.5)
    with pytest.raises(ContractViolation):
        oscillatory_integral(0.5, 1, tol=1e-13)


def test_convergence_error_carries_best_value_and_estimate():
    from optbench.numerics import QuadratureConvergenceError

    err = QuadratureConvergenceError(value=1.23, est_error=4.5e-7, segments_used=512)
    assert err.value == 1.23
    assert err.est_error == 4.5e-7
    assert err.segments_used == 512
    assert "1.23" in str(err)


def test_closed_form_values():
    assert closed_form_integral(0.0) == pytest.approx(math.pi / 2, abs=1e-15)
    assert closed_form_integral(1.0) == pytest.approx(math.pi / 4, abs=1e-15)
    assert closed_form_integral(0.5) == pytest.approx(1.1071487, abs=1e-7)


# ---------------------------------------------------------------------------
# Path functionals
# ---------------------------------------------------------------------------

def line_interior(m):
    return np.linspace(0.0, 1.0, m + 2)[1:-1]


@pytest.mark.parametrize("m", [1, 4, 16, 100])
def test_straight_line_length(m):
    p = Path(0.0, 1.0, 0.0, 1.0, line_interior(m))
    assert path_length(p) == pytest.approx(math.sqrt(2.0), abs=1e-12)


def test_flat_path_length():
    p = Path(0.0, 1.0, 0.0, 0.0, np.zeros(3))
    assert path_length(p) == pytest.approx(1.0, abs=1e-15)


def test_single_tent_length():
    # two segments of sqrt(0.5^2 + 0.5^2) each
    p = Path(0.0, 1.0, 0.0, 0.0, np.array([0.5]))
    assert path_length(p) == pytest.approx(2.0 * math.sqrt(0.5), abs=1e-15)


def test_flat_path_energies():
    assert path_energy(Path(0.0, 1.0, 0.0, 0.0, np.zeros(5))) == 0.0
    for c in (0.5, -1.2, 3.0):
        p = Path(-1.0, 1.0, c, c, np.full(7, c))
        assert path_energy(p) == pytest.approx(2.0 * c, abs=1e-12)


def catenary_path(m, a=1.0):
    grid = np.linspace(-a, a, m + 2)
    return Path(-a, a, 0.0, 0.0, np.cosh(grid[1:-1]) - math.cosh(a))


def test_catenary_energy_against_symbolic_oracle():
    # symbolic integration of (cosh x - cosh 1) cosh x over [-1, 1]
    oracle = 1.0 - math.sinh(2.0) / 2.0
    check, _ = quad(lambda x: (math.cosh(x) - math.cosh(1.0)) * math.cosh(x), -1.0, 1.0)
    assert oracle == pytest.approx(check, abs=1e-12)
    assert path_energy(catenary_path(256)) == pytest.approx(oracle, abs=5e-4)


def test_length_residuals():
    target = 2.0 * math.sinh(1.0)  # catenary arc length for a = 1
    assert abs(path_length_residual(catenary_path(256), target)) <= 5e-4

    flat = Path(-1.0, 1.0, 0.0, 0.0, np.zeros(9))
    assert path_length_residual(flat, 2.3504) == pytest.approx(-0.3504, abs=1e-12)

    line = Path(0.0, 1.0, 0.0, 1.0, line_interior(6))
    assert path_length_residual(line, math.sqrt(2.0)) == pytest.approx(0.0, abs=1e-12)


def test_length_is_at_least_chord():
    rng = np.random.default_rng(17)
    for _ in range(200):
        m = int(rng.integers(1, 12))
        y_lo, y_hi = rng.uniform(-2, 2, 2)
        p = Path(0.0, float(rng.uniform(0.5, 3.0)), y_lo, y_hi, rng.uniform(-3, 3, m))
        chord = math.hypot(p.x_hi - p.x_lo, y_hi - y_lo)
        assert path_length(p) >= chord - 1e-12


def test_length_equals_chord_only_when_collinear():
    m = 5
    x_hi, y_lo, y_hi = 2.0, -0.5, 1.5
    chord = math.hypot(x_hi, y_hi - y_lo)
    collinear = y_lo + (np.arange(1, m + 1) / (m + 1)) * (y_hi - y_lo)
    assert path_length(Path(0.0, x_hi, y_lo, y_hi, collinear)) == pytest.approx(chord, abs=1e-12)
    bent = collinear.copy()
    bent[2] += 0.3
    assert path_length(Path(0.0, x_hi, y_lo, y_hi, bent)) > chord + 1e-4


# ---------------------------------------------------------------------------
# Gradients
# ---------------------------------------------------------------------------

def fd_gradient(p, value_fn, step=1e-6):
    grad = np.empty(p.n_interior)
    base = np.asarray(p.interior, dtype=float)
    for i in range(p.n_interior):
        up, down = base.copy(), base.copy()
        up[i] += step
        down[i] -= step
        grad[i] = (
            value_fn(Path(p.x_lo, p.x_hi, p.y_lo, p.y_hi, up))
            - value_fn(Path(p.x_lo, p.x_hi, p.y_lo, p.y_hi, down))
        ) / (2 * step)
    return grad


def test_length_gradient_vanishes_on_the_line():
    p = Path(0.0, 1.0, 0.0, 1.0, line_interior(8))
    grad = functional_gradient(p, PathFunctional.LENGTH)
    assert np.max(np.abs(grad)) <= 1e-12


def test_energy_gradient_on_flat_path_is_plus_h():
    # only the height term contributes: (ell_{i-1} + ell_i) / 2 = h per node;
    # frozen from the central-difference oracle below
    p = Path(-1.0, 1.0, 0.0, 0.0, np.zeros(7))
    h = p.spacing
    grad = functional_gradient(p, PathFunctional.ENERGY)
    fd = fd_gradient(p, path_energy)
    assert np.allclose(grad, h, atol=1e-12)
    assert np.allclose(fd, h, atol=1e-9)


def test_gradients_match_central_differences_on_random_paths():
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(100):
        p = Path(
            0.0,
            float(rng.uniform(0.5, 2.0)),
            float(rng.uniform(-1, 1)),
            float(rng.uniform(-1, 1)),
            rng.uniform(-2.0, 2.0, 8),
        )
        target = float(rng.uniform(1.0, 3.0))
        pairs = (
            (PathFunctional.LENGTH, path_length),
            (PathFunctional.ENERGY, path_energy),
            (PathFunctional.LENGTH_RESIDUAL, lambda q: path_length_residual(q, target)),
        )
        for functional, fn in pairs:
            analytic = functional_gradient(p, functional)
            fd = fd_gradient(p, fn)
            scale = max(1.0, float(np.max(np.abs(fd))))
            worst = max(worst, float(np.max(np.abs(analytic - fd))) / scale)
    assert worst <= 1e-6


def test_path_validation():
    with pytest.raises(ContractViolation):
        Path(0.0, 1.0, 0.0, 1.0, np.empty(0))
    with pytest.raises(ContractViolation):
        Path(1.0, 0.0, 0.0, 1.0, np.zeros(3))
