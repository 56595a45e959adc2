"""Constructors for the benchmark catalog.

Ten hard benchmarks (f1..f10) plus three warm-up functions, each returned
as a fully specified :class:`~optbench.core.Problem` whose declared optimum
is verified by a construction-time self-check:

========  =====================================================  ==========
id        landscape                                              optimum
========  =====================================================  ==========
noisy_sphere  sphere with multiplicative uniform noise           point (origin)
f1        noisy polynomial well, f_min = -1                      point (origin)
abs_sum   sum of |x_n| (single kink per axis)                    point (origin)
f2        kinked distance product with oscillatory damping       point (pi, 2pi, ..., D pi)
f3        quadratic/cubic bowl on two isolated feasible pieces   point (a, 0, ..., 0)
f4        Gaussian grid of 4(N+1)^2 peaks on tiny diamonds       4 corner points (maximize)
f5        sphere outside a hyperboloid of revolution             ring manifold, value a^2
floor_sphere  floor-quantized sphere                             flat region (open unit ball)
f6        floor of sum of |x| + cos(x^2)                         disconnected flat regions
f7        vibration parameter fit against measured samples       point (1/4, 2)
f8        damped oscillatory integral over [0, inf)              manifold beta = 0 (maximize)
f9        discrete shortest path (0,0) -> (1,1)                  curve y = x, value sqrt(2)
f10       hanging-rope energy at fixed length L > 2a             catenary cosh(x) - cosh(a)
========  =====================================================  ==========
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from typing import Optional

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from .core import (
    Combinator,
    ContractViolation,
    Curve,
    Direction,
    FeasibleRegion,
    FlatRegions,
    Manifold,
    PathFrame,
    PointSet,
    Problem,
    check_problem,
)
from .noise import NoiseKey, NoisePolicy, effective_key, uniform_vector
from .numerics import (
    PathFunctional,
    oscillatory_integral,
    path_energy,
    path_length,
    path_length_residual,
    rk4_step_response,
)

# Measured unit-step response of the reference vibration system, sampled at
# t = 0..10 s.  The best-fit parameters are zeta = 1/4, omega = 2.
VIBRATION_TIMES = np.arange(11.0)
VIBRATION_DATA = np.array(
    [0.0, 1.0706, 1.3372, 0.8277, 0.9507, 1.0848, 0.9814, 0.9769, 1.0169, 1.0012, 0.9933]
)

# Published 5-decimal endpoints of the two optimal flat regions of the 1-d
# floor benchmark (roots of |x| + cos(x^2) = 1).
FLOOR_REGION_ENDPOINTS = (1.41299, 1.89714)


# ---------------------------------------------------------------------------
# Parameter records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NoisyParams:
    dimension: int = 5

    def __post_init__(self):
        if self.dimension < 1:
            raise ContractViolation("dimension must be at least 1")


@dataclass(frozen=True)
class KinkParams:
    dimension: int = 2

    def __post_init__(self):
        if self.dimension < 1:
            raise ContractViolation("dimension must be at least 1")


@dataclass(frozen=True)
class IsolatedParams:
    dimension: int = 2
    a: float = 1.0

    def __post_init__(self):
        if self.dimension < 1:
            raise ContractViolation("dimension must be at least 1")
        if self.a < 1.0:
            raise ContractViolation("a must be at least 1")


@dataclass(frozen=True)
class GridPeaksParams:
    n: int = 100
    a: float = 10.0

    def __post_init__(self):
        if self.n < 1:
            raise ContractViolation("n must be at least 1")
        if self.a <= 0:
            raise ContractViolation("a must be positive")


@dataclass(frozen=True)
class HyperboloidParams:
    dimension: int = 3
    a: float = 1.0
    b: float = 1.0
    half_width: Optional[float] = None  # defaults to 10 a

    def __post_init__(self):
        if self.dimension < 3:
            raise ContractViolation("the hyperboloid constraint needs dimension >= 3")
        if self.a < 1.0 or self.b < 1.0:
            raise ContractViolation("a and b must be at least 1")
        if self.half_width is not None and self.half_width <= self.a:
            raise ContractViolation("the box must contain the optimal ring (half_width > a)")

    @property
    def box(self) -> float:
        return 10.0 * self.a if self.half_width is None else self.half_width


@dataclass(frozen=True)
class FloorParams:
    dimension: int = 1

    def __post_init__(self):
        if self.dimension < 1:
            raise ContractViolation("dimension must be at least 1")


@dataclass(frozen=True)
class VibrationParams:
    times: np.ndarray = field(default_factory=lambda: VIBRATION_TIMES.copy())
    data: np.ndarray = field(default_factory=lambda: VIBRATION_DATA.copy())
    step: float = 0.01

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        data = np.asarray(self.data, dtype=float)
        if times.shape != data.shape or times.ndim != 1:
            raise ContractViolation("times and data must be 1-d arrays of equal length")
        if self.step <= 0:
            raise ContractViolation("step size must be positive")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "data", data)


@dataclass(frozen=True)
class IntegralParams:
    beta_hi: float = 10.0
    k_hi: int = 10
    tol: float = 1e-8

    def __post_init__(self):
        if not 0 < self.beta_hi <= 10.0:
            raise ContractViolation("beta_hi must lie in (0, 10]")
        if not 1 <= self.k_hi <= 10:
            raise ContractViolation("k_hi must lie in [1, 10]")
        if self.tol < 1e-12:
            raise ContractViolation("tol must be at least 1e-12")


@dataclass(frozen=True)
class PathParams:
    interior_nodes: int = 16

    def __post_init__(self):
        if self.interior_nodes < 4:
            raise ContractViolation("path problems need at least 4 interior nodes")


@dataclass(frozen=True)
class RopeParams:
    a: float = 1.0
    length: float = 2.3504
    interior_nodes: int = 32
    eq_tol: float = 1e-3

    def __post_init__(self):
        if self.a <= 0:
            raise ContractViolation("half-span a must be positive")
        if self.length <= 2.0 * self.a:
            raise ContractViolation("the rope must be loose: length > 2 a")
        if self.interior_nodes < 4:
            raise ContractViolation("path problems need at least 4 interior nodes")
        if self.eq_tol <= 0:
            raise ContractViolation("equality tolerance must be positive")


# ---------------------------------------------------------------------------
# Noisy functions
# ---------------------------------------------------------------------------

def make_noisy(params: NoisyParams = NoisyParams(),
               policy: NoisePolicy = NoisePolicy.PER_EVALUATION):
    """Noisy sphere and the noisy polynomial well f1.

    Both multiply per-component uniform [0, 1) noise into the objective in
    a way that leaves the optimum location and value untouched: the origin
    evaluates to 0 and -1 respectively under every noise draw.
    """
    d = params.dimension
    exponents = 2.0 * np.arange(1, d + 1)

    def sphere_objective(x, key: NoiseKey):
        eps = uniform_vector(effective_key(key, policy), d)
        return float(np.sum(eps * x * x))

    def sphere_expected(x):
        return float(0.5 * np.sum(x * x))

    sphere = Problem(
        id="noisy_sphere",
        dimension=d,
        lower=np.full(d, -100.0),
        upper=np.full(d, 100.0),
        direction=Direction.MINIMIZE,
        objective=sphere_objective,
        objective_noise_free=sphere_expected,
        optimum=PointSet(points=(np.zeros(d),), value=0.0),
        stochastic=True,
        noise_policy=policy,
        description="sphere with multiplicative uniform noise; minimum 0 at the origin",
        params=params,
    )

    def f1_objective(x, key: NoiseKey):
        powers = np.abs(x) ** exponents
        eps = uniform_vector(effective_key(key, policy), d)
        return float(np.sum(powers) - math.exp(-float(np.sum(eps * powers))))

    def f1_expected(x):
        powers = np.abs(x) ** exponents
        return float(np.sum(powers) - math.exp(-0.5 * float(np.sum(powers))))

    f1 = Problem(
        id="f1",
        dimension=d,
        lower=np.full(d, -100.0),
        upper=np.full(d, 100.0),
        direction=Direction.MINIMIZE,
        objective=f1_objective,
        objective_noise_free=f1_expected,
        optimum=PointSet(points=(np.zeros(d),), value=-1.0),
        stochastic=True,
        noise_policy=policy,
        description="noisy polynomial well; minimum -1 at the origin under every draw",
        params=params,
    )
    check_problem(sphere)
    check_problem(f1)
    return sphere, f1


# ---------------------------------------------------------------------------
# Non-differentiable functions
# ---------------------------------------------------------------------------

def make_kinked(params: KinkParams = KinkParams()):
    """Abs-sum warm-up and the multi-kink function f2."""
    d = params.dimension
    shifts = math.pi * np.arange(1, d + 1)
    half_width = d * math.pi

    abs_sum = Problem(
        id="abs_sum",
        dimension=d,
        lower=np.full(d, -half_width),
        upper=np.full(d, half_width),
        direction=Direction.MINIMIZE,
        objective=lambda x, key: float(np.sum(np.abs(x))),
        optimum=PointSet(points=(np.zeros(d),), value=0.0),
        description="sum of |x_n|; one kink per axis, minimum 0 at the origin",
        params=params,
    )

    def f2_objective(x, key):
        t = np.abs(x - shifts)
        return float(np.sum(t) * math.exp(-float(np.sum(np.abs(np.sin(t))))))

    f2 = Problem(
        id="f2",
        dimension=d,
        lower=np.full(d, -half_width),
        upper=np.full(d, half_width),
        direction=Direction.MINIMIZE,
        objective=f2_objective,
        optimum=PointSet(points=(shifts.copy(),), value=0.0),
        description="multi-kink function; minimum 0 at (pi, 2 pi, ..., D pi)",
        params=params,
    )
    check_problem(abs_sum)
    check_problem(f2)
    return abs_sum, f2


# ---------------------------------------------------------------------------
# Isolated feasible domains
# ---------------------------------------------------------------------------

def make_isolated(params: IsolatedParams = IsolatedParams()) -> Problem:
    """f3: minimize x_1^2 + sum |x_n^3| over two disconnected feasible pieces.

    The diamond |x_1 - 2a| + sum_{n>=2} |x_n| <= a and the ball centered at
    (5a, ..., 5a) of radius a never intersect for a >= 1, so the region is
    their union.  The minimum a^2 sits on the diamond vertex (a, 0, ..., 0).
    """
    d, a = params.dimension, params.a

    def diamond(x):
        return abs(x[0] - 2.0 * a) + float(np.sum(np.abs(x[1:]))) - a

    def ball(x):
        return float(np.sum((x - 5.0 * a) ** 2)) - a * a

    best = np.zeros(d)
    best[0] = a
    problem = Problem(
        id="f3",
        dimension=d,
        lower=np.full(d, -10.0 * a),
        upper=np.full(d, 10.0 * a),
        direction=Direction.MINIMIZE,
        objective=lambda x, key: float(x[0] * x[0] + np.sum(np.abs(x[1:] ** 3))),
        region=FeasibleRegion(groups=((diamond,), (ball,)), combinator=Combinator.UNION_OF_GROUPS),
        optimum=PointSet(points=(best,), value=a * a),
        description="bowl over two isolated feasible pieces; minimum a^2 at (a, 0, ..., 0)",
        params=params,
    )
    check_problem(problem)
    return problem


def make_grid_peaks(params: GridPeaksParams = GridPeaksParams()) -> Problem:
    """f4: maximize a Gaussian grid of peaks over tiny diamond-shaped domains.

    Peak (i, j) has height ~ |i| + |j|, so the four box corners carry the
    highest peaks.  Gaussian weight beyond two grid cells is below 1e-17 of
    a peak, so evaluation truncates the double sum to the 5x5 neighborhood
    of the nearest grid point.
    """
    n, a = params.n, params.a
    radius = 1.0 / a

    def nearest_center(x):
        return np.clip(np.rint(x), -n, n)

    def objective(x, key):
        c0, c1 = nearest_center(x)
        i = np.arange(max(-n, int(c0) - 2), min(n, int(c0) + 2) + 1, dtype=float)
        j = np.arange(max(-n, int(c1) - 2), min(n, int(c1) + 2) + 1, dtype=float)
        gi = np.exp(-a * (x[0] - i) ** 2)
        gj = np.exp(-a * (x[1] - j) ** 2)
        coeff = np.abs(i)[:, None] + np.abs(j)[None, :]
        return float(np.sum(coeff * gi[:, None] * gj[None, :]))

    def diamond(x):
        c = nearest_center(x)
        return float(np.sum(np.abs(x - c))) - radius

    corner_value = objective(np.array([float(n), float(n)]), None)
    corners = tuple(
        np.array([sx * n, sy * n], dtype=float) for sx in (-1.0, 1.0) for sy in (-1.0, 1.0)
    )
    problem = Problem(
        id="f4",
        dimension=2,
        lower=np.full(2, -(n + radius)),
        upper=np.full(2, n + radius),
        direction=Direction.MAXIMIZE,
        objective=objective,
        region=FeasibleRegion(groups=((diamond,),), combinator=Combinator.UNION_OF_GROUPS),
        optimum=PointSet(points=corners, value=corner_value),
        description=f"grid of {(2 * n + 1) ** 2} isolated diamond domains; "
        f"four highest peaks at the corners (maximize)",
        params=params,
    )
    check_problem(problem)
    return problem


# ---------------------------------------------------------------------------
# Hyperboloid-constrained sphere
# ---------------------------------------------------------------------------

def make_hyperboloid(params: HyperboloidParams = HyperboloidParams()) -> Problem:
    """f5: minimize the sphere outside a hyperboloid of revolution.

    The minimum a^2 is attained on the whole (D-1)-sphere
    sum_{n<D} x_n^2 = a^2, x_D = 0 - infinitely many optima, so closeness
    is measured by the manifold residual, not by distance to any point.
    """
    d, a, b = params.dimension, params.a, params.b
    w = params.box

    def constraint(x):
        return 1.0 + (x[-1] / b) ** 2 - float(np.sum(x[:-1] ** 2)) / (a * a)

    def ring_residual(x):
        return (float(np.sum(x[:-1] ** 2)) - a * a) ** 2 + x[-1] ** 2

    probe = np.zeros(d)
    probe[0] = a
    problem = Problem(
        id="f5",
        dimension=d,
        lower=np.full(d, -w),
        upper=np.full(d, w),
        direction=Direction.MINIMIZE,
        objective=lambda x, key: float(np.sum(x * x)),
        region=FeasibleRegion(groups=((constraint,),), combinator=Combinator.INTERSECTION_OF_GROUPS),
        optimum=Manifold(residual=ring_residual, value=a * a, probe=probe),
        description="sphere outside a hyperboloid; minimum a^2 on an optimal ring",
        params=params,
    )
    check_problem(problem)
    return problem


# ---------------------------------------------------------------------------
# Floor-quantized functions
# ---------------------------------------------------------------------------

def _bisect(f, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200) -> float:
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ContractViolation("bisection bracket does not straddle a root")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0 or hi - lo < tol:
            return mid
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def _floor_inner(t):
    return np.abs(t) + np.cos(t * t)


def floor_region_roots(tol: float = 1e-12):
    """Positive roots of |x| + cos(x^2) = 1, bisected to ``tol``.

    These bracket the optimal flat regions of the 1-d floor benchmark:
    (-r2, -r1) and (r1, r2).
    """
    g = lambda t: float(_floor_inner(t)) - 1.0
    return _bisect(g, 1.0, 1.6, tol), _bisect(g, 1.6, 2.2, tol)


def floor_inner_minimum():
    """Global minimum of t + cos(t^2) on [0, 10] (attained near t = 1.685)."""
    result = minimize_scalar(lambda t: t + math.cos(t * t), bounds=(0.0, 2.5), method="bounded",
                             options={"xatol": 1e-12})
    return float(result.fun), float(result.x)


def make_floor(params: FloorParams = FloorParams()):
    """Floor-quantized sphere warm-up and the multi-region floor function f6.

    Both objectives are integer-valued and piecewise constant, so their
    optima are whole regions of positive measure.  The optimal level of f6
    is determined at construction from the separable inner sum: its global
    minimum is D times the 1-d minimum of |t| + cos(t^2) (~ 0.730365), so
    the optimal value is floor(D * 0.730365...) - which is 0 only for D = 1.
    """
    d = params.dimension

    def sphere_objective(x, key):
        return float(np.floor(np.sum(x * x)))

    sphere = Problem(
        id="floor_sphere",
        dimension=d,
        lower=np.full(d, -10.0),
        upper=np.full(d, 10.0),
        direction=Direction.MINIMIZE,
        objective=sphere_objective,
        optimum=FlatRegions(
            contains=lambda x: float(np.sum(x * x)) < 1.0,
            value=0.0,
            probe=np.zeros(d),
            boundary_distance=lambda x: max(0.0, float(np.linalg.norm(x)) - 1.0),
        ),
        description="floor-quantized sphere; value 0 everywhere inside the open unit ball",
        params=params,
    )

    def f6_objective(x, key):
        return float(np.floor(np.sum(_floor_inner(x))))

    h_star, t_star = floor_inner_minimum()
    level = math.floor(d * h_star)
    probe = np.full(d, t_star)

    def contains(x):
        return float(np.floor(np.sum(_floor_inner(x)))) == level

    def level_excess(x):
        return max(0.0, float(np.sum(_floor_inner(x))) - (level + 1.0))

    intervals = None
    count = None
    if d == 1:
        r1, r2 = floor_region_roots()
        intervals = (((-r2, -r1),), ((r1, r2),))
        count = 2
    elif d == 2:
        count = 8  # four axis blobs and four diagonal blobs; see the tests

    f6 = Problem(
        id="f6",
        dimension=d,
        lower=np.full(d, -10.0),
        upper=np.full(d, 10.0),
        direction=Direction.MINIMIZE,
        objective=f6_objective,
        optimum=FlatRegions(
            contains=contains,
            value=float(level),
            probe=probe,
            intervals=intervals,
            level_excess=level_excess,
            count=count,
        ),
        description=f"floor of sum of |x| + cos(x^2); optimal level {level} on "
        "disconnected flat regions",
        params=params,
    )
    check_problem(sphere)
    check_problem(f6)
    return sphere, f6


# ---------------------------------------------------------------------------
# Vibration parameter estimation
# ---------------------------------------------------------------------------

def make_vibration(params: VibrationParams = VibrationParams()) -> Problem:
    """f7: least-squares fit of (zeta, omega) to the measured step response.

    The objective integrates the vibration equation with fixed-step RK4 for
    each candidate parameter pair and sums squared residuals against the
    data table.  The stored optimal value is the residual actually attained
    at the best-fit parameters (the data are rounded, so it is small but
    not zero).
    """
    times, data, h = params.times, params.data, params.step

    def objective(x, key):
        samples = rk4_step_response(x[0], x[1], times, h)
        return float(np.sum((samples.y - data) ** 2))

    best = np.array([0.25, 2.0])
    problem = Problem(
        id="f7",
        dimension=2,
        lower=np.array([0.01, 0.1]),
        upper=np.array([0.99, 5.0]),
        direction=Direction.MINIMIZE,
        objective=objective,
        optimum=PointSet(points=(best,), value=objective(best, None)),
        description="vibration parameter estimation; best fit at zeta = 1/4, omega = 2",
        params=params,
    )
    check_problem(problem)
    return problem


# ---------------------------------------------------------------------------
# Oscillatory integral
# ---------------------------------------------------------------------------

def make_integral(params: IntegralParams = IntegralParams()) -> Problem:
    """f8: maximize the damped oscillatory integral over (beta, k).

    The value pi/2 - arctan(beta) is independent of k, so the optimum is
    the whole manifold beta = 0 with value pi/2.  k is integer-constrained;
    the objective rounds it to the nearest admissible integer so the
    function is total on the box.
    """
    k_hi, tol = params.k_hi, params.tol

    def objective(x, key):
        k = int(np.clip(np.rint(x[1]), 1, k_hi))
        return oscillatory_integral(x[0], k, tol).value

    problem = Problem(
        id="f8",
        dimension=2,
        lower=np.array([0.0, 1.0]),
        upper=np.array([params.beta_hi, float(k_hi)]),
        direction=Direction.MAXIMIZE,
        objective=objective,
        integer_coords=frozenset({1}),
        optimum=Manifold(
            residual=lambda x: float(x[0]),
            value=math.pi / 2.0,
            probe=np.array([0.0, 1.0]),
        ),
        description="damped oscillatory integral; maximum pi/2 at beta = 0 for every k",
        params=params,
    )
    check_problem(problem)
    return problem


# ---------------------------------------------------------------------------
# Path problems
# ---------------------------------------------------------------------------

def make_shortest_path(params: PathParams = PathParams()) -> Problem:
    """f9: minimize discrete path length from (0, 0) to (1, 1) with y >= 0.

    The polyline quadrature makes the discrete optimum exactly the straight
    line y = x with value sqrt(2) for every grid resolution.  The sign
    constraint y >= 0 is transcribed node-wise as a lower ordinate bound.
    """
    m = params.interior_nodes
    frame = PathFrame(0.0, 1.0, 0.0, 1.0)
    grid = np.linspace(0.0, 1.0, m + 2)

    def objective(y, key):
        return path_length(_as_path(frame, y))

    problem = Problem(
        id="f9",
        dimension=m,
        lower=np.zeros(m),
        upper=np.full(m, 5.0),
        direction=Direction.MINIMIZE,
        objective=objective,
        optimum=Curve(reference=grid[1:-1], value=math.sqrt(2.0)),
        path_frame=frame,
        path_functional=PathFunctional.LENGTH,
        description="discrete shortest path; optimum is the line y = x with length sqrt(2)",
        params=params,
    )
    check_problem(problem)
    return problem


def make_rope(params: RopeParams = RopeParams()) -> Problem:
    """f10: minimize hanging-rope potential energy at fixed length L > 2a.

    Endpoints are (-a, 0) and (a, 0); the known solution is the catenary
    y(x) = cosh(x) - cosh(a).  The declared optimal value is the continuum
    energy of that curve, computed here by high-resolution quadrature, so
    the reference check carries an O(h^2) discretization allowance.
    """
    a, length, m = params.a, params.length, params.interior_nodes
    frame = PathFrame(-a, a, 0.0, 0.0)
    grid = np.linspace(-a, a, m + 2)
    reference = np.cosh(grid[1:-1]) - math.cosh(a)
    energy_value = quad(lambda x: (math.cosh(x) - math.cosh(a)) * math.cosh(x), -a, a,
                        epsabs=1e-12, epsrel=1e-12)[0]
    h = 2.0 * a / (m + 1)

    def objective(y, key):
        return path_energy(_as_path(frame, y))

    def residual(y):
        return path_length_residual(_as_path(frame, y), length)

    problem = Problem(
        id="f10",
        dimension=m,
        lower=np.full(m, -5.0),
        upper=np.full(m, 5.0),
        direction=Direction.MINIMIZE,
        objective=objective,
        region=FeasibleRegion(
            groups=((lambda y: abs(residual(y)) - params.eq_tol,),),
            combinator=Combinator.INTERSECTION_OF_GROUPS,
        ),
        equality_residual=residual,
        equality_tol=params.eq_tol,
        optimum=Curve(
            reference=reference,
            value=energy_value,
            value_tol=max(1e-9, h * h * math.cosh(a)),
        ),
        path_frame=frame,
        path_functional=PathFunctional.ENERGY,
        description="hanging rope with fixed length; optimum is the catenary cosh(x) - cosh(a)",
        params=params,
    )
    check_problem(problem)
    return problem


def _as_path(frame: PathFrame, interior):
    from .numerics import Path

    return Path(frame.x_lo, frame.x_hi, frame.y_lo, frame.y_hi, interior)


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

# id -> (params class, builder, index into the builder's return tuple or None)
_CATALOG = {
    "noisy_sphere": (NoisyParams, make_noisy, 0),
    "f1": (NoisyParams, make_noisy, 1),
    "abs_sum": (KinkParams, make_kinked, 0),
    "f2": (KinkParams, make_kinked, 1),
    "f3": (IsolatedParams, make_isolated, None),
    "f4": (GridPeaksParams, make_grid_peaks, None),
    "f5": (HyperboloidParams, make_hyperboloid, None),
    "floor_sphere": (FloorParams, make_floor, 0),
    "f6": (FloorParams, make_floor, 1),
    "f7": (VibrationParams, make_vibration, None),
    "f8": (IntegralParams, make_integral, None),
    "f9": (PathParams, make_shortest_path, None),
    "f10": (RopeParams, make_rope, None),
}

_NOISY_IDS = {"noisy_sphere", "f1"}


def problem_ids():
    """Catalog ids in presentation order."""
    return tuple(_CATALOG)


def get_problem(problem_id: str, noise_policy: NoisePolicy = NoisePolicy.PER_EVALUATION,
                **param_overrides) -> Problem:
    """Build a catalog problem, optionally overriding its parameter record."""
    if problem_id not in _CATALOG:
        raise KeyError(problem_id)
    params_cls, builder, index = _CATALOG[problem_id]
    valid = {f.name for f in fields(params_cls)}
    unknown = set(param_overrides) - valid
    if unknown:
        raise ContractViolation(
            f"{problem_id} does not take parameter(s) {sorted(unknown)}; valid: {sorted(valid)}"
        )
    params = replace(params_cls(), **param_overrides) if param_overrides else params_cls()
    if problem_id in _NOISY_IDS:
        built = builder(params, noise_policy)
    else:
        built = builder(params)
    return built if index is None else built[index]
