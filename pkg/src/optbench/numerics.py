"""Numerical kernels the benchmark objectives are built on.

Three independent pieces live here:

* a fixed-step RK4 integrator for the second-order vibration system driven
  by a unit step, plus the closed-form underdamped response used as its
  oracle;
* an infinite-interval quadrature for the damped oscillatory integrand
  ``sin(k x) / (x exp(b k x))``, splitting the axis at the sine zeros and
  accelerating the alternating half-period series with repeated averaging
  (Euler transformation) when plain truncation cannot reach the tolerance;
* discrete path functionals (polyline length, height-weighted polyline
  energy, length residual) with exact gradients with respect to the free
  interior ordinates.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import ContractViolation


# ---------------------------------------------------------------------------
# Vibration step response
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OdeSamples:
    """Step-response samples: times ``t`` (s) and displacements ``y``."""

    t: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if t.shape != y.shape or t.ndim != 1:
            raise ContractViolation("t and y must be 1-d arrays of equal length")
        if len(t) and np.any(np.diff(t) <= 0):
            raise ContractViolation("sample times must be strictly increasing")
        if len(t) and t[0] == 0.0 and abs(y[0]) > 1e-12:
            raise ContractViolation("response starts from rest: y(0) must be 0")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "y", y)


def _rk4_update(zeta: float, omega: float, h: float):
    """One-step affine map of the classical RK4 scheme for this system.

    The state is z = (y, y').  Because the system is linear time-invariant
    with constant forcing for t >= 0, the four RK4 stage evaluations reduce
    exactly to z <- R z + d with constant R and d (the degree-4 Taylor
    polynomial of the matrix exponential).  Iterating this map is
    arithmetically identical to running the textbook stepper.
    """
    m = np.array([[0.0, 1.0], [-omega * omega, -2.0 * zeta * omega]])
    b = np.array([0.0, omega * omega])
    p = h * m
    r = np.eye(2)
    s = np.eye(2)  # accumulates I + P/2 + P^2/6 + P^3/24
    term = np.eye(2)
    for j in (1, 2, 3, 4):
        term = term @ p / j
        r = r + term
        if j < 4:
            s = s + term / (j + 1)
    d = s @ (h * b)
    return r, d


def _affine_power(r, d, n: int):
    """Compose the affine map (R, d) with itself ``n`` times (n >= 1)."""
    rn, dn = np.eye(2), np.zeros(2)
    base_r, base_d = r, d
    while n:
        if n & 1:
            dn = base_r @ dn + base_d
            rn = base_r @ rn
        n >>= 1
        if n:
            base_d = base_r @ base_d + base_d
            base_r = base_r @ base_r
    return rn, dn


def rk4_step_response(zeta: float, omega: float, t_grid, h: float = 0.01) -> OdeSamples:
    """Integrate the unit-step vibration response with fixed-step RK4.

    Solves y''/w^2 + 2 zeta y'/w + y = u(t) from rest (y(0) = y'(0) = 0)
    and returns samples at ``t_grid``.  Grid times are snapped to the
    nearest integer multiple of ``h``; global error is O(h^4).
    """
    if zeta <= 0 or omega <= 0 or h <= 0:
        raise ContractViolation("zeta, omega and h must all be positive")
    t_grid = np.atleast_1d(np.asarray(t_grid, dtype=float))
    if np.any(t_grid < 0):
        raise ContractViolation("sample times must be non-negative")
    steps = np.rint(t_grid / h).astype(int)

    r, d = _rk4_update(zeta, omega, h)
    order = np.argsort(steps)
    z = np.zeros(2)
    done = 0
    out = np.empty(len(t_grid))
    seg_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for idx in order:
        n = steps[idx] - done
        if n > 0:
            if n not in seg_cache:
                seg_cache[n] = _affine_power(r, d, n)
            rn, dn = seg_cache[n]
            z = rn @ z + dn
            done = steps[idx]
        out[idx] = z[0]
    return OdeSamples(t=steps * h, y=out)


def analytic_step_response(zeta: float, omega: float, t):
    """Closed-form underdamped unit-step response (oracle for the RK4 path).

    Returns ``1 - exp(-zeta w t) [cos(wd t) + (zeta w / wd) sin(wd t)]``
    with ``wd = w sqrt(1 - zeta^2)``.  Only the underdamped branch
    ``0 < zeta < 1`` is supported.
    """
    if not 0 < zeta < 1:
        raise ContractViolation("analytic step response requires 0 < zeta < 1")
    if omega <= 0:
        raise ContractViolation("omega must be positive")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ContractViolation("t must be non-negative")
    wd = omega * math.sqrt(1.0 - zeta * zeta)
    envelope = np.exp(-zeta * omega * t)
    out = 1.0 - envelope * (np.cos(wd * t) + (zeta * omega / wd) * np.sin(wd * t))
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Oscillatory infinite-limit quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureResult:
    value: float
    est_error: float
    segments_used: int


class QuadratureConvergenceError(RuntimeError):
    """Raised when the segment budget runs out before the tolerance is met."""

    def __init__(self, value: float, est_error: float, segments_used: int):
        super().__init__(
            f"quadrature did not reach tolerance: best value {value!r} "
            f"(estimated error {est_error:.3e} after {segments_used} segments)"
        )
        self.value = value
        self.est_error = est_error
        self.segments_used = segments_used


_GAUSS_NODES, _GAUSS_WEIGHTS = np.polynomial.legendre.leggauss(16)
_MAX_SEGMENTS = 512


def _half_period_integrals(beta: float, k: int, m_lo: int, m_hi: int) -> np.ndarray:
    """Gauss-Legendre integrals of sin(kx) exp(-beta k x)/x over the sine
    half-periods [m pi/k, (m+1) pi/k] for m in [m_lo, m_hi)."""
    edges = np.arange(m_lo, m_hi + 1) * (math.pi / k)
    a = edges[:-1, None]
    b = edges[1:, None]
    x = 0.5 * (b - a) * _GAUSS_NODES[None, :] + 0.5 * (a + b)
    g = np.sin(k * x) * np.exp(-beta * k * x) / x
    return (0.5 * (b - a)[:, 0]) * (g @ _GAUSS_WEIGHTS)


def _euler_accelerate(partial_sums: np.ndarray) -> tuple[float, float]:
    """Estimate the limit of alternating partial sums by repeated averaging."""
    row = partial_sums.astype(float)
    ladder = [row[-1]]
    while len(row) > 1:
        row = 0.5 * (row[:-1] + row[1:])
        ladder.append(row[-1])
    ladder = np.array(ladder)
    diffs = np.abs(np.diff(ladder))
    best = int(np.argmin(diffs)) + 1
    value = float(ladder[best])
    est = max(float(diffs[best - 1]), 4.0 * np.finfo(float).eps * abs(value))
    return value, est


def oscillatory_integral(beta: float, k: int, tol: float = 1e-8) -> QuadratureResult:
    """Integrate sin(kx) / (x exp(beta k x)) over [0, inf) to within ``tol``.

    The axis is split at the zeros x_m = m pi / k of sin(kx) and each
    half-period is integrated with a fixed 16-point Gauss rule.  When the
    exponential damping makes the tail negligible the series is truncated;
    otherwise (small beta, conditionally convergent) the alternating
    half-period sums are accelerated by Euler transformation.
    """
    if not 0.0 <= beta <= 10.0:
        raise ContractViolation(f"beta must lie in [0, 10], got {beta!r}")
    if not (isinstance(k, (int, np.integer)) or float(k).is_integer()) or not 1 <= int(k) <= 10:
        raise ContractViolation(f"k must be an integer in [1, 10], got {k!r}")
    if tol < 1e-12:
        raise ContractViolation(f"tol must be at least 1e-12, got {tol!r}")
    k = int(k)

    segments = np.empty(0)
    m = 0
    for m_target in (16, 32, 64, 128, 256, _MAX_SEGMENTS):
        segments = np.concatenate([segments, _half_period_integrals(beta, k, m, m_target)])
        m = m_target
        partial = np.cumsum(segments)
        if beta > 0:
            # tail bound: |int_{x_m}^inf| <= exp(-beta k x_m) / (beta k x_m)
            x_m = m * math.pi / k
            tail = math.exp(-beta * k * x_m) / (beta * k * x_m)
            if tail <= 0.5 * tol:
                return QuadratureResult(float(partial[-1]), tail, m)
        value, est = _euler_accelerate(partial)
        if est <= 0.5 * tol:
            return QuadratureResult(value, est, m)
    raise QuadratureConvergenceError(value, est, m)


def closed_form_integral(beta: float) -> float:
    """Known value pi/2 - arctan(beta) of the oscillatory integral.

    Oracle only: never called by the benchmark objective.
    """
    return math.pi / 2.0 - math.atan(beta)


# ---------------------------------------------------------------------------
# Discrete paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Path:
    """Discretized curve: pinned endpoints plus M free interior ordinates
    on a uniform abscissa grid with spacing h = (x_hi - x_lo) / (M + 1)."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float
    interior: np.ndarray

    def __post_init__(self):
        interior = np.asarray(self.interior, dtype=float)
        if interior.ndim != 1 or len(interior) < 1:
            raise ContractViolation("a path needs at least one interior ordinate")
        if not self.x_hi > self.x_lo:
            raise ContractViolation("x_hi must exceed x_lo")
        interior = interior.copy()
        interior.setflags(write=False)
        object.__setattr__(self, "interior", interior)

    @property
    def n_interior(self) -> int:
        return len(self.interior)

    @property
    def spacing(self) -> float:
        return (self.x_hi - self.x_lo) / (self.n_interior + 1)

    @property
    def abscissa(self) -> np.ndarray:
        return np.linspace(self.x_lo, self.x_hi, self.n_interior + 2)

    @property
    def ordinates(self) -> np.ndarray:
        return np.concatenate([[self.y_lo], self.interior, [self.y_hi]])


class PathFunctional(enum.Enum):
    LENGTH = "length"
    ENERGY = "energy"
    LENGTH_RESIDUAL = "length_residual"


def _segments(p: Path):
    y = p.ordinates
    dy = np.diff(y)
    h = p.spacing
    ell = np.sqrt(h * h + dy * dy)
    return y, dy, h, ell


def path_length(p: Path) -> float:
    """Exact polyline length: sum of sqrt(h^2 + dy_i^2) over the segments."""
    _, _, _, ell = _segments(p)
    return float(ell.sum())


def path_energy(p: Path) -> float:
    """Midpoint-weighted polyline energy: sum of mean segment height times
    segment length (density-gravity product normalized to 1)."""
    y, _, _, ell = _segments(p)
    ybar = 0.5 * (y[:-1] + y[1:])
    return float((ybar * ell).sum())


def path_length_residual(p: Path, target_length: float) -> float:
    """Signed constraint residual path_length(p) - target_length."""
    return path_length(p) - target_length


def functional_gradient(p: Path, functional: PathFunctional) -> np.ndarray:
    """Exact gradient of the chosen discrete functional with respect to the
    interior ordinates (endpoints are pinned and carry no derivative)."""
    y, dy, _, ell = _segments(p)
    slope = dy / ell  # d(ell_i)/d(y_{i+1}) = -d(ell_i)/d(y_i)
    if functional in (PathFunctional.LENGTH, PathFunctional.LENGTH_RESIDUAL):
        return slope[:-1] - slope[1:]
    if functional is PathFunctional.ENERGY:
        ybar = 0.5 * (y[:-1] + y[1:])
        height_term = 0.5 * (ell[:-1] + ell[1:])
        stretch_term = ybar[:-1] * slope[:-1] - ybar[1:] * slope[1:]
        return height_term + stretch_term
    raise ContractViolation(f"unknown path functional {functional!r}")
