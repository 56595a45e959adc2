"""Problem abstraction: evaluation contracts, feasibility semantics,
variant-matched gap reports."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optbench import (
    ContractViolation,
    Direction,
    NoiseKey,
    Path,
    evaluate,
    get_problem,
    is_feasible,
    optimum_gap,
)
from optbench.core import score


def test_evaluate_examples():
    f2 = get_problem("f2")
    assert evaluate(f2, [math.pi, 2 * math.pi], NoiseKey(3, 1)) == 0.0

    f1 = get_problem("f1")
    for key in (NoiseKey(0, 0), NoiseKey(7, 123), NoiseKey(2**40, 5)):
        assert evaluate(f1, np.zeros(5), key) == -1.0

    floor_sphere = get_problem("floor_sphere")
    assert evaluate(floor_sphere, [0.4]) == 0.0  # floor(0.16) = 0


def test_evaluate_contract_violations():
    f2 = get_problem("f2")
    with pytest.raises(ContractViolation):
        evaluate(f2, [1.0, 2.0, 3.0])  # dimension mismatch
    with pytest.raises(ContractViolation):
        evaluate(f2, [100.0, 0.0])  # outside the box


def test_is_feasible_examples():
    f3 = get_problem("f3")  # D=2, a=1
    assert is_feasible(f3, [1.0, 0.0]).feasible       # diamond: |1-2| + 0 = 1 <= 1
    assert is_feasible(f3, [5.0, 5.0]).feasible       # ball center
    assert not is_feasible(f3, [3.5, 0.0]).feasible   # fails both clauses


def test_is_feasible_dimension_contract():
    f3 = get_problem("f3")
    with pytest.raises(ContractViolation):
        is_feasible(f3, [1.0, 0.0, 0.0])


def test_unconstrained_problems_always_feasible():
    f2 = get_problem("f2")
    report = is_feasible(f2, [1.0, -1.0])
    assert report.feasible and report.violation == 0.0 and report.group_worst == ()


@settings(max_examples=200, deadline=None)
@given(
    x0=st.floats(min_value=-10, max_value=10),
    x1=st.floats(min_value=-10, max_value=10),
    a=st.sampled_from([1.0, 2.0]),
)
def test_union_combinator_matches_clause_or(x0, x1, a):
    # independent re-statement of the two clause groups
    problem = get_problem("f3", a=a)
    in_diamond = abs(x0 - 2 * a) + abs(x1) <= a
    in_ball = (x0 - 5 * a) ** 2 + (x1 - 5 * a) ** 2 <= a * a
    report = is_feasible(problem, [x0, x1])
    assert report.feasible == (in_diamond or in_ball)
    assert (report.violation == 0.0) == report.feasible


def test_gap_report_hyperboloid_manifold():
    f5 = get_problem("f5", a=2.0)
    report = optimum_gap(f5, [2.0, 0.0, 0.0])
    assert report.objective_gap == 0.0
    assert report.location_gap == 0.0
    assert report.feasible

    # moving along the optimal ring keeps the residual at zero
    for theta in (0.3, 1.2, 2.9):
        point = [2.0 * math.cos(theta), 2.0 * math.sin(theta), 0.0]
        moved = optimum_gap(f5, point)
        assert moved.location_gap <= 1e-12
        assert moved.objective_gap <= 1e-12


def test_gap_report_flat_region_membership():
    f6 = get_problem("f6")
    inside = optimum_gap(f6, [1.6])
    assert inside.objective_gap == 0.0 and inside.location_gap == 0.0
    outside = optimum_gap(f6, [0.0])
    assert outside.objective_gap == 1.0
    assert outside.location_gap == pytest.approx(1.4129844 - 0.0, abs=1e-4)


def test_gap_report_curve():
    f9 = get_problem("f9")
    line = np.linspace(0.0, 1.0, f9.dimension + 2)[1:-1]
    report = optimum_gap(f9, line)
    assert report.objective_gap <= 1e-12
    assert report.location_gap == 0.0
    assert report.curve_l2 == 0.0

    path = f9.make_path(line)
    assert optimum_gap(f9, path).location_gap == 0.0


def test_gap_report_candidate_kind_contract():
    f2 = get_problem("f2")
    f9 = get_problem("f9")
    with pytest.raises(ContractViolation):
        optimum_gap(f2, Path(0.0, 1.0, 0.0, 1.0, np.zeros(2)))
    with pytest.raises(ContractViolation):
        optimum_gap(f9, Path(0.0, 2.0, 0.0, 1.0, np.zeros(f9.dimension)))  # wrong frame
    with pytest.raises(ContractViolation):
        optimum_gap(f2, [1.0, 2.0, 3.0])


def test_gap_report_noise_free_for_noisy_problems():
    f1 = get_problem("f1")
    # identical reports regardless of what any draw would have produced
    a = optimum_gap(f1, np.full(5, 0.1))
    b = optimum_gap(f1, np.full(5, 0.1))
    assert a == b
    assert a.objective_gap >= 0.0


def test_direction_normalization():
    assert score(Direction.MINIMIZE, 3.5) == 3.5
    assert score(Direction.MAXIMIZE, 3.5) == -3.5
    values = [1.0, -2.0, 0.5]
    argbest_min = int(np.argmin([score(Direction.MINIMIZE, v) for v in values]))
    argbest_max = int(np.argmax(values))
    assert argbest_min == int(np.argmin(values))
    assert int(np.argmin([score(Direction.MAXIMIZE, v) for v in values])) == argbest_max


def test_gap_values_are_nonnegative():
    rng = np.random.default_rng(5)
    for pid in ("f3", "f5", "f6", "f8"):
        problem = get_problem(pid)
        for _ in range(25):
            x = problem.lower + rng.random(problem.dimension) * (problem.upper - problem.lower)
            report = optimum_gap(problem, x)
            assert report.objective_gap >= 0.0
            assert report.location_gap >= 0.0
