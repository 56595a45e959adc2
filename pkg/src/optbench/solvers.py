"""Reference derivative-free solvers with feasibility-rule selection.

All solvers minimize the direction-normalized score (maximization problems
are negated at this boundary), draw their randomness from a private
seeded generator, and therefore reproduce results exactly for identical
``(problem, config, seed)`` - including under concurrent execution of
other runs.  Candidate comparison follows the standard feasibility rules:
a feasible candidate beats an infeasible one, two feasible candidates
compare by value, two infeasible ones by constraint violation.

Solvers:

* :func:`differential_evolution` - rand/1/bin with boundary reflection.
* :func:`simulated_annealing` - Metropolis with geometric cooling and
  optional restarts; infeasible moves are rejected once a feasible
  incumbent exists.
* :func:`nelder_mead_polish` - adaptive-coefficient simplex refinement
  with scale-reduction restarts.
* :func:`augmented_lagrangian_path` - multiplier outer loop for the
  equality-constrained path problem, with exact-gradient descent inside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    ContractViolation,
    Direction,
    FeasibilityReport,
    Problem,
    evaluate,
    is_feasible,
    score,
)
from .noise import NoiseKey
from .numerics import PathFunctional, functional_gradient

FINAL_AVERAGE_SAMPLES = 32  # re-measurements of the final point on noisy problems


@dataclass
class SolverConfig:
    """Shared knob set for all solvers; irrelevant fields are ignored."""

    max_evaluations: int = 10_000
    population: Optional[int] = None  # None -> 10 * dimension
    de_weight: float = 0.7            # DE differential weight F
    de_crossover: float = 0.9         # DE crossover rate CR
    sa_initial_temp: float = 1.0
    sa_cooling: float = 0.99          # geometric ratio, applied 1000x over the budget
    sa_step_fraction: float = 0.25    # initial proposal scale, fraction of range
    sa_restarts: int = 0
    nm_restarts: int = 2
    simplex_scale: float = 0.1        # initial simplex edge, fraction of range
    simplex_tol: float = 1e-10        # diameter below which the simplex has converged
    al_mu: float = 10.0               # initial penalty weight
    al_mu_growth: float = 10.0
    al_outer_iterations: int = 15
    al_eq_tol: float = 1e-5
    al_inner_tol: float = 1e-11
    seed: int = 0

    def __post_init__(self):
        if self.max_evaluations < 1:
            raise ContractViolation("a positive evaluation budget is required")
        if self.al_mu_growth <= 1.0:
            raise ContractViolation("penalty growth factor must exceed 1")
        if self.population is not None and self.population < 4:
            raise ContractViolation("population must be at least 4")

    def resolve_population(self, dimension: int) -> int:
        npop = self.population if self.population is not None else 10 * dimension
        npop = max(npop, 4)
        if self.max_evaluations < npop:
            raise ContractViolation("max_evaluations must at least cover one population")
        return npop


@dataclass(frozen=True)
class Candidate:
    point: np.ndarray      # evaluated phenotype (integer coords already rounded)
    value: float           # direction-normalized score
    feasible: bool
    violation: float


def feasibility_compare(a: Candidate, b: Candidate) -> int:
    """Total preorder: -1 if ``a`` wins, 1 if ``b`` wins, 0 on a tie."""
    if a.feasible != b.feasible:
        return -1 if a.feasible else 1
    key_a = a.value if a.feasible else a.violation
    key_b = b.value if b.feasible else b.violation
    if key_a < key_b:
        return -1
    if key_a > key_b:
        return 1
    return 0


@dataclass(frozen=True)
class SolveResult:
    """One solver run.

    ``trace`` records the best feasible direction-normalized score after
    each generation (+inf while no feasible point has been seen), so it is
    non-increasing and ``best_value`` is its minimum.  ``objective_value``
    is the natural-direction measurement reported for ``best_point`` (on
    stochastic problems the average of 32 fresh re-evaluations, so a lucky
    single draw cannot decide a trial).
    """

    solver: str
    seed: int
    best_point: np.ndarray
    best_value: float
    objective_value: float
    feasibility: FeasibilityReport
    n_evaluations: int
    trace: np.ndarray

    def __post_init__(self):
        if len(self.trace) and not math.isclose(
            self.best_value, float(np.min(self.trace)), rel_tol=0.0, abs_tol=0.0
        ):
            raise ContractViolation("best value must be the minimum of the trace")


class _Evaluator:
    """Budget-counting objective wrapper issuing per-call noise keys."""

    def __init__(self, problem: Problem, cfg: SolverConfig):
        self.problem = problem
        self.seed = cfg.seed
        self.limit = cfg.max_evaluations
        if problem.stochastic:
            self.limit -= FINAL_AVERAGE_SAMPLES
            if self.limit < 1:
                raise ContractViolation(
                    "budget too small to re-measure the final point on a noisy problem"
                )
        self.count = 0
        self._int_idx = sorted(problem.integer_coords)
        self._lo = problem.lower
        self._hi = problem.upper

    def phenotype(self, x: np.ndarray) -> np.ndarray:
        if self._int_idx:
            x = x.copy()
            x[self._int_idx] = np.clip(
                np.rint(x[self._int_idx]), self._lo[self._int_idx], self._hi[self._int_idx]
            )
        return x

    @property
    def exhausted(self) -> bool:
        return self.count >= self.limit

    def __call__(self, x: np.ndarray) -> Candidate:
        x = self.phenotype(np.asarray(x, dtype=float))
        value = evaluate(self.problem, x, NoiseKey(self.seed, self.count))
        self.count += 1
        report = is_feasible(self.problem, x)
        return Candidate(
            point=x.copy(),
            value=score(self.problem.direction, value),
            feasible=report.feasible,
            violation=report.violation,
        )


def _trace_entry(best: Candidate) -> float:
    return best.value if best.feasible else math.inf


def _finalize(solver: str, cfg: SolverConfig, ev: _Evaluator, best: Candidate,
              trace: list) -> SolveResult:
    problem = ev.problem
    natural = best.value if problem.direction is Direction.MINIMIZE else -best.value
    if problem.stochastic:
        draws = [
            evaluate(problem, best.point, NoiseKey(cfg.seed, ev.count + i))
            for i in range(FINAL_AVERAGE_SAMPLES)
        ]
        ev.count += FINAL_AVERAGE_SAMPLES
        natural = float(np.mean(draws))
    trace_arr = np.asarray(trace, dtype=float)
    return SolveResult(
        solver=solver,
        seed=cfg.seed,
        best_point=best.point,
        best_value=float(np.min(trace_arr)) if len(trace_arr) else _trace_entry(best),
        objective_value=natural,
        feasibility=is_feasible(problem, best.point),
        n_evaluations=ev.count,
        trace=trace_arr,
    )


def _reflect_into_bounds(v: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    v = np.where(v < lo, 2.0 * lo - v, v)
    v = np.where(v > hi, 2.0 * hi - v, v)
    return np.clip(v, lo, hi)


# ---------------------------------------------------------------------------
# Differential evolution (rand/1/bin)
# ---------------------------------------------------------------------------

def differential_evolution(problem: Problem, cfg: SolverConfig) -> SolveResult:
    """rand/1/bin differential evolution with feasibility-rule selection."""
    ev = _Evaluator(problem, cfg)
    rng = np.random.default_rng(cfg.seed)
    d = problem.dimension
    npop = cfg.resolve_population(d)
    lo, hi = problem.lower, problem.upper
    f_weight, crossover = cfg.de_weight, cfg.de_crossover

    genotypes = lo + rng.random((npop, d)) * (hi - lo)
    population = [ev(genotypes[i]) for i in range(npop)]
    best = min(population, key=lambda c: (not c.feasible, c.value if c.feasible else c.violation))
    trace = [_trace_entry(best)]

    while not ev.exhausted:
        for i in range(npop):
            if ev.exhausted:
                break
            r1, r2, r3 = _distinct_indices(rng, npop, i)
            mutant = genotypes[r1] + f_weight * (genotypes[r2] - genotypes[r3])
            mutant = _reflect_into_bounds(mutant, lo, hi)
            cross = rng.random(d) <= crossover
            cross[rng.integers(d)] = True
            child_genotype = np.where(cross, mutant, genotypes[i])
            child = ev(child_genotype)
            if feasibility_compare(child, population[i]) <= 0:
                genotypes[i] = child_genotype
                population[i] = child
                if feasibility_compare(child, best) < 0:
                    best = child
        trace.append(_trace_entry(best))
        values = [c.value for c in population]
        if all(c.feasible for c in population) and max(values) - min(values) < 1e-15:
            break
    return _finalize("de", cfg, ev, best, trace)


def _distinct_indices(rng, npop: int, banned: int):
    picks = []
    while len(picks) < 3:
        j = int(rng.integers(npop))
        if j != banned and j not in picks:
            picks.append(j)
    return picks


# ---------------------------------------------------------------------------
# Simulated annealing
# ---------------------------------------------------------------------------

def simulated_annealing(problem: Problem, cfg: SolverConfig) -> SolveResult:
    """Metropolis annealing with geometric cooling and optional restarts.

    Proposal scale shrinks with the square root of the temperature.  While
    the incumbent is infeasible the walk anneals on constraint violation;
    once feasible, infeasible proposals are rejected outright.
    """
    ev = _Evaluator(problem, cfg)
    rng = np.random.default_rng(cfg.seed)
    d = problem.dimension
    lo, hi = problem.lower, problem.upper
    runs = max(1, cfg.sa_restarts + 1)
    per_run = max(2, ev.limit // runs)
    step0 = cfg.sa_step_fraction * (hi - lo)
    t0 = cfg.sa_initial_temp

    best = None
    trace = []
    for _ in range(runs):
        if ev.exhausted:
            break
        incumbent = ev(_feasible_draw(problem, rng, lo, hi))
        if best is None or feasibility_compare(incumbent, best) < 0:
            best = incumbent
        trace.append(_trace_entry(best))
        temp = t0
        epoch = max(1, per_run // 1000)
        run_end = min(ev.count + per_run - 1, ev.limit)
        move = 0
        while ev.count < run_end:
            scale = step0 * max(math.sqrt(temp / t0), 0.05)
            proposal = np.clip(incumbent.point + rng.normal(size=d) * scale, lo, hi)
            candidate = ev(proposal)
            if _sa_accept(incumbent, candidate, temp, rng):
                incumbent = candidate
            if feasibility_compare(candidate, best) < 0:
                best = candidate
            trace.append(_trace_entry(best))
            move += 1
            if move % epoch == 0:
                temp = max(temp * cfg.sa_cooling, 1e-12)
    return _finalize("sa", cfg, ev, best, trace)


def _sa_accept(incumbent: Candidate, candidate: Candidate, temp: float, rng) -> bool:
    if incumbent.feasible:
        if not candidate.feasible:
            return False
        delta = candidate.value - incumbent.value
    else:
        if candidate.feasible:
            return True
        delta = candidate.violation - incumbent.violation
    if delta <= 0:
        return True
    return rng.random() < math.exp(-delta / max(temp, 1e-300))


def _feasible_draw(problem: Problem, rng, lo, hi, tries: int = 100) -> np.ndarray:
    """Rejection-sample a feasible start; falls back to the last draw."""
    x = lo + rng.random(len(lo)) * (hi - lo)
    if problem.region is None:
        return x
    for _ in range(tries):
        if is_feasible(problem, x).feasible:
            return x
        x = lo + rng.random(len(lo)) * (hi - lo)
    return x


# ---------------------------------------------------------------------------
# Nelder-Mead polish
# ---------------------------------------------------------------------------

def nelder_mead_polish(problem: Problem, start, cfg: SolverConfig) -> SolveResult:
    """Adaptive Nelder-Mead refinement from ``start``.

    Uses dimension-adaptive coefficients, orders vertices with the
    feasibility rules, clips trial points into the bounds, and restarts
    with a reduced simplex around the incumbent when it collapses before
    the budget is spent.  The best-so-far value is monotone non-increasing.
    """
    ev = _Evaluator(problem, cfg)
    d = problem.dimension
    lo, hi = problem.lower, problem.upper
    start = np.asarray(start, dtype=float)
    if start.shape != (d,):
        raise ContractViolation(f"start point must have dimension {d}")
    x0 = np.clip(start, lo, hi)

    alpha, gamma = 1.0, 1.0 + 2.0 / d
    rho, sigma = 0.75 - 1.0 / (2.0 * d), 1.0 - 1.0 / d
    scale = cfg.simplex_scale * (hi - lo)

    def build_simplex(center, edge):
        points = [center]
        for i in range(d):
            vertex = center.copy()
            shift = edge[i] if center[i] + edge[i] <= hi[i] else -edge[i]
            vertex[i] = np.clip(vertex[i] + shift, lo[i], hi[i])
            points.append(vertex)
        return [ev(p) for p in points]

    def order(simplex):
        simplex.sort(key=lambda c: (not c.feasible, c.value if c.feasible else c.violation))
        return simplex

    best = None
    trace = []
    restarts_left = max(0, cfg.nm_restarts)
    simplex = order(build_simplex(x0, scale))
    while not ev.exhausted:
        if best is None or feasibility_compare(simplex[0], best) < 0:
            best = simplex[0]
        trace.append(_trace_entry(best))

        spread = max(np.max(np.abs(c.point - simplex[0].point)) for c in simplex[1:])
        if spread < cfg.simplex_tol:
            if restarts_left == 0:
                break
            restarts_left -= 1
            scale = scale * 0.3
            simplex = order(build_simplex(best.point, np.maximum(scale, 1e-12)))
            continue

        centroid = np.mean([c.point for c in simplex[:-1]], axis=0)
        worst = simplex[-1]
        reflected = ev(np.clip(centroid + alpha * (centroid - worst.point), lo, hi))
        if feasibility_compare(reflected, simplex[0]) < 0:
            expanded = ev(np.clip(centroid + gamma * (reflected.point - centroid), lo, hi))
            simplex[-1] = expanded if feasibility_compare(expanded, reflected) < 0 else reflected
        elif feasibility_compare(reflected, simplex[-2]) < 0:
            simplex[-1] = reflected
        else:
            inside = feasibility_compare(reflected, worst) >= 0
            anchor = worst.point if inside else reflected.point
            contracted = ev(np.clip(centroid + rho * (anchor - centroid), lo, hi))
            if feasibility_compare(contracted, worst if inside else reflected) < 0:
                simplex[-1] = contracted
            else:
                simplex = [simplex[0]] + [
                    ev(np.clip(simplex[0].point + sigma * (c.point - simplex[0].point), lo, hi))
                    for c in simplex[1:]
                    if not ev.exhausted
                ]
        simplex = order(simplex)
    if best is None:  # pragma: no cover - budget >= 1 guarantees one evaluation
        best = simplex[0]
    return _finalize("nm", cfg, ev, best, trace)


def nelder_mead(problem: Problem, cfg: SolverConfig) -> SolveResult:
    """Nelder-Mead from a seeded random start (harness entry point)."""
    rng = np.random.default_rng(cfg.seed)
    start = problem.lower + rng.random(problem.dimension) * (problem.upper - problem.lower)
    return nelder_mead_polish(problem, start, cfg)


# ---------------------------------------------------------------------------
# Augmented Lagrangian for path problems
# ---------------------------------------------------------------------------

def augmented_lagrangian_path(problem: Problem, inner: Optional[str],
                              cfg: SolverConfig) -> SolveResult:
    """Multiplier method for the (at most one) equality-constrained path.

    Minimizes objective + lambda c + (mu/2) c^2 over the interior ordinates
    with exact functional gradients; the outer loop updates
    lambda <- lambda + mu c and grows mu while the residual stalls.  With
    no equality constraint the lambda and mu terms vanish and the loop
    reduces to plain minimization.  ``inner`` ("de", "nm" or None) selects
    an optional derivative-free exploration stage before the first descent.
    """
    if not problem.is_path_problem or problem.path_functional is None:
        raise ContractViolation("the augmented Lagrangian solver needs a path problem")
    if inner not in (None, "de", "nm"):
        raise ContractViolation(f"unknown inner solver {inner!r}")
    if problem.direction is not Direction.MINIMIZE:
        raise ContractViolation("path problems are minimization problems")
    ev = _Evaluator(problem, cfg)
    rng = np.random.default_rng(cfg.seed)
    lo, hi = problem.lower, problem.upper
    residual = problem.equality_residual
    obj_kind = problem.path_functional

    def raw_value(y):
        value = evaluate(problem, y, NoiseKey(cfg.seed, ev.count))
        ev.count += 1
        return value

    def merit(y, lam, mu):
        value = raw_value(y)
        c = residual(y) if residual is not None else 0.0
        return value + lam * c + 0.5 * mu * c * c, c

    def merit_gradient(y, lam, mu):
        ev.count += 1  # a gradient costs about one extra functional pass
        path = problem.make_path(y)
        g = functional_gradient(path, obj_kind)
        if residual is not None:
            c = float(residual(y))
            g = g + (lam + mu * c) * functional_gradient(path, PathFunctional.LENGTH_RESIDUAL)
        return g

    y = lo + rng.random(problem.dimension) * (hi - lo)
    lam, mu = 0.0, cfg.al_mu
    if inner is not None and ev.limit > 400:
        explore_budget = min(1500, ev.limit // 5)
        y = _explore(lambda p: merit(p, lam, mu)[0], y, lo, hi, rng, explore_budget, inner)

    trace = []
    best = None
    prev_residual = math.inf
    for outer in range(max(1, cfg.al_outer_iterations)):
        y, converged = _projected_descent(
            y, lambda p: merit(p, lam, mu)[0], lambda p: merit_gradient(p, lam, mu),
            lo, hi, ev, cfg.al_inner_tol,
        )
        candidate = ev(y)
        if best is None or feasibility_compare(candidate, best) < 0:
            best = candidate
        trace.append(_trace_entry(best))
        c = float(residual(y)) if residual is not None else 0.0
        if abs(c) <= cfg.al_eq_tol and converged:
            break
        lam += mu * c
        if abs(c) > 0.25 * prev_residual:
            mu *= cfg.al_mu_growth
        prev_residual = abs(c)
        if ev.exhausted:
            break
    name = "al" if inner is None else f"al+{inner}"
    return _finalize(name, cfg, ev, best, trace)


def _projected_descent(y, fn, grad, lo, hi, ev, tol, max_iter: int = 400):
    """Projected gradient descent with Barzilai-Borwein steps and an
    Armijo backtracking safeguard.  Returns (point, converged flag)."""
    y = np.clip(y, lo, hi)
    value = fn(y)
    g = grad(y)
    step = 1.0 / max(1.0, float(np.max(np.abs(g))))
    prev_y, prev_g = None, None
    for _ in range(max_iter):
        if ev.exhausted:
            return y, False
        if prev_y is not None:
            dy = y - prev_y
            dg = g - prev_g
            denom = float(dy @ dg)
            if denom > 1e-300:
                step = float(dy @ dy) / denom
            step = min(max(step, 1e-12), 1e6)
        accepted = False
        for _ in range(40):
            trial = np.clip(y - step * g, lo, hi)
            direction = trial - y
            slope = float(g @ direction)
            trial_value = fn(trial)
            if trial_value <= value + 1e-4 * slope or ev.exhausted:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            return y, True  # no acceptable step: stationary to line-search resolution
        moved = float(np.max(np.abs(trial - y)))
        improvement = value - trial_value
        prev_y, prev_g = y, g
        y, value = trial, trial_value
        g = grad(y)
        if moved < 1e-14 or (0 <= improvement < tol * max(1.0, abs(value))):
            return y, True
    return y, False


def _explore(fn, y0, lo, hi, rng, budget, method: str):
    """Cheap derivative-free warm start for the first descent stage."""
    if method == "nm":
        from scipy.optimize import minimize

        used = 0

        def counted(p):
            nonlocal used
            used += 1
            return fn(np.clip(p, lo, hi))

        result = minimize(
            counted, y0, method="Nelder-Mead",
            bounds=list(zip(lo, hi)),
            options={"maxfev": budget, "xatol": 1e-8, "fatol": 1e-10},
        )
        return np.clip(result.x, lo, hi)
    # tiny rand/1/bin loop on the raw callable
    d = len(y0)
    npop = min(20, max(8, budget // 20))
    pop = lo + rng.random((npop, d)) * (hi - lo)
    pop[0] = y0
    values = np.array([fn(p) for p in pop])
    spent = npop
    while spent < budget:
        for i in range(npop):
            if spent >= budget:
                break
            r1, r2, r3 = _distinct_indices(rng, npop, i)
            mutant = _reflect_into_bounds(pop[r1] + 0.7 * (pop[r2] - pop[r3]), lo, hi)
            cross = rng.random(d) <= 0.9
            cross[rng.integers(d)] = True
            child = np.where(cross, mutant, pop[i])
            child_value = fn(child)
            spent += 1
            if child_value <= values[i]:
                pop[i], values[i] = child, child_value
    return pop[int(np.argmin(values))]


SOLVERS = {
    "de": differential_evolution,
    "sa": simulated_annealing,
    "nm": nelder_mead,
    "al+de": lambda problem, cfg: augmented_lagrangian_path(problem, "de", cfg),
    "al+nm": lambda problem, cfg: augmented_lagrangian_path(problem, "nm", cfg),
}
