import numpy as np
import pytest

from simplexnmf import (failure_problem, pw_curvature_witness, pw_fw_run,
                        pw_lmo, success_problem)
from simplexnmf.counterexample import VERTICES, barycentric, is_feasible


def test_objective_values():
    fail = failure_problem()
    succ = success_problem()
    assert fail.objective([0.0, 0.0]) == 0.0
    assert fail.objective([0.5, 1.5]) == pytest.approx(4.0)
    assert succ.objective([0.5, 1.5]) == pytest.approx(1.75)


def test_feasibility_via_barycentric_coordinates():
    for v in VERTICES:
        assert is_feasible(v)
        assert np.min(barycentric(v)) >= -1e-15
    assert is_feasible([0.0, 1.0])
    assert not is_feasible([5.0, 5.0])
    assert not is_feasible([0.0, -0.1])
    assert not is_feasible([1.0, 2.0])  # right of the right edge


def test_lmo_case_table():
    fail = failure_problem()
    succ = success_problem()
    assert np.array_equal(pw_lmo(fail, [0.5, 1.5]), [-1.0, 3.0])
    assert np.array_equal(pw_lmo(fail, [-0.3, 2.0]), [1.0, 3.0])
    assert np.array_equal(pw_lmo(succ, [0.5, 1.5]), [0.0, 0.0])
    # success: the origin wins everywhere on a feasible grid
    for x1 in np.linspace(-0.9, 0.9, 7):
        for x2 in np.linspace(0.05, 2.95, 7):
            if is_feasible([x1, x2]):
                assert np.array_equal(pw_lmo(succ, [x1, x2]), [0.0, 0.0])


def test_lmo_tie_at_kink():
    # documented tie rule: the kink keeps the negative-slope piece, whose
    # linear form is minimized at (1, 3) for the steep variant
    assert np.array_equal(pw_lmo(failure_problem(), [0.0, 2.0]), [1.0, 3.0])


def test_lmo_matches_vertex_enumeration():
    fail = failure_problem()
    x = np.array([-0.3, 2.0])
    g = fail.subgradient(x)
    assert np.allclose(g, [-5.0, 1.0])
    scores = [g @ v for v in VERTICES]
    assert np.array_equal(pw_lmo(fail, x), VERTICES[int(np.argmin(scores))])


def test_lmo_rejects_infeasible_point():
    with pytest.raises(ValueError, match="outside"):
        pw_lmo(failure_problem(), [5.0, 5.0])


def test_failure_run_stalls_near_top_edge():
    trajectory = pw_fw_run(failure_problem(), [0.5, 1.5], "diminishing", T=1000)
    final_f = trajectory.objectives[-1]
    assert final_f >= 2.9
    # lower-bound recurrence on the second coordinate
    prod = np.prod(1.0 - trajectory.gammas)
    assert trajectory.points[-1][1] >= 3.0 - 3.0 * prod - 1e-9
    assert final_f >= 3.0 - 3.0 * prod - 1e-9


def test_failure_bound_holds_at_every_iteration():
    trajectory = pw_fw_run(failure_problem(), [0.5, 1.5], "diminishing", T=200)
    x0_2 = trajectory.points[0][1]
    prod = 1.0
    for t in range(1, 201):
        prod *= 1.0 - trajectory.gammas[t - 1]
        lower = 3.0 - prod * (3.0 - x0_2)
        assert trajectory.points[t][1] >= lower - 1e-9


def test_success_run_converges_to_origin():
    trajectory = pw_fw_run(success_problem(), [0.5, 1.5], "diminishing", T=1000)
    assert np.linalg.norm(trajectory.points[-1]) <= 1e-2
    assert trajectory.objectives[-1] <= 2e-2


def test_success_objective_scales_exactly_with_step_products():
    trajectory = pw_fw_run(success_problem(), [0.5, 1.5], "diminishing", T=50)
    f0 = trajectory.objectives[0]
    prod = 1.0
    for t in range(1, 51):
        prod *= 1.0 - trajectory.gammas[t - 1]
        assert trajectory.objectives[t] == pytest.approx(prod * f0, abs=1e-12)


def test_diminishing_products_telescope():
    trajectory = pw_fw_run(success_problem(), [0.5, 1.5], "diminishing", T=1000)
    T = 1000
    assert np.prod(1.0 - trajectory.gammas) == pytest.approx(
        2.0 / ((T + 1) * (T + 2)), rel=1e-9)


def test_trajectories_stay_in_triangle():
    for problem in (failure_problem(), success_problem()):
        for steps in ("diminishing", "linesearch"):
            trajectory = pw_fw_run(problem, [0.4, 2.0], steps, T=300)
            for point in trajectory.points:
                assert np.min(barycentric(point)) >= -1e-12


def test_failure_linesearch_picks_only_top_vertices():
    trajectory = pw_fw_run(failure_problem(), [0.5, 1.5], "linesearch", T=100)
    picked = {tuple(v) for v in trajectory.vertices}
    assert picked <= {(-1.0, 3.0), (1.0, 3.0)}
    # the run lands on the kink of the two linear pieces and stays there,
    # bounded away from the optimum at the origin
    assert trajectory.objectives[-1] >= 1.9
    assert np.allclose(trajectory.points[-1], [0.0, 2.0], atol=1e-12)


def test_success_linesearch_jumps_to_optimum():
    trajectory = pw_fw_run(success_problem(), [0.5, 1.5], "linesearch", T=10)
    assert np.array_equal(trajectory.points[-1], [0.0, 0.0])
    assert trajectory.objectives[-1] == 0.0


def test_start_at_optimum_is_a_known_pathology_for_the_steep_variant():
    # the documented kink tie rule sends the iterate away from the optimum;
    # the set of such starts has measure zero
    trajectory = pw_fw_run(failure_problem(), [0.0, 0.0], "diminishing", T=5)
    assert trajectory.objectives[1] > 0.0
    # the gentle variant stays put: the oracle returns the origin itself
    trajectory = pw_fw_run(success_problem(), [0.0, 0.0], "diminishing", T=5)
    assert np.array_equal(trajectory.points[-1], [0.0, 0.0])


def test_infeasible_start_rejected():
    with pytest.raises(ValueError, match="outside"):
        pw_fw_run(failure_problem(), [5.0, 5.0], "diminishing", T=10)
    with pytest.raises(ValueError, match="steps"):
        pw_fw_run(failure_problem(), [0.5, 1.5], "bogus", T=10)


def test_witness_quotients_hand_values():
    gammas, quotients = pw_curvature_witness(failure_problem(), gammas=[1e-2])
    # deviation 5 * gamma over a squared step of gamma^2: quotient 10 / gamma
    assert quotients[0] == pytest.approx(1000.0, rel=1e-9)
    gammas, quotients = pw_curvature_witness(success_problem(), gammas=[1e-2])
    assert quotients[0] == pytest.approx(100.0, rel=1e-9)


def test_witness_diverges_for_both_variants():
    for problem in (failure_problem(), success_problem()):
        gammas, quotients = pw_curvature_witness(problem)
        ratios = quotients[1:] / quotients[:-1]
        assert np.all(ratios >= 9.0)


def test_witness_rejects_infeasible_configuration():
    with pytest.raises(ValueError, match="infeasible"):
        pw_curvature_witness(failure_problem(), gammas=[0.1], delta=10.0)
