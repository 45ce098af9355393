import numpy as np
import pytest

from simplexnmf import (SolverConfig, TerminalReason, fw_solve, gradient,
                        initial_factor, lmo_and_update, planted_instance,
                        vertex_to_dense)
from oracles import brute_force_lmo


def test_kernel_zero_gradient_is_a_fixed_point():
    W = np.full((3, 2), 0.5)
    W_next, g, gamma, S = lmo_and_update(np.zeros((3, 2)), W, 4.0)
    assert g == 0.0
    assert gamma == 0.0
    assert np.array_equal(W_next, W)
    assert np.array_equal(S, [0, 0, 0])


def test_kernel_hand_case():
    G = np.array([[1.0, 2.0], [3.0, 0.0]])
    W = np.full((2, 2), 0.5)
    W_next, g, gamma, S = lmo_and_update(G, W, 4.0)
    assert np.array_equal(S, [0, 1])
    assert g == pytest.approx(2.0, abs=1e-15)
    assert gamma == pytest.approx(0.5, abs=1e-15)
    assert np.allclose(W_next, [[0.75, 0.25], [0.25, 0.75]], atol=1e-15)


def test_kernel_tie_breaks_to_lowest_column():
    G = np.array([[1.0, 1.0, 2.0], [3.0, 0.0, 0.0]])
    _, _, _, S = lmo_and_update(G, np.full((2, 3), 1 / 3), 1.0)
    assert np.array_equal(S, [0, 1])


def test_kernel_matches_brute_force_enumeration():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n, k = int(rng.integers(2, 5)), int(rng.integers(2, 4))
        G = rng.standard_normal((n, k))
        W = rng.dirichlet(np.ones(k), size=n)
        _, g, _, S = lmo_and_update(G, W, 2.0)
        S_bf, val_bf = brute_force_lmo(G)
        assert np.array_equal(S, S_bf)
        assert g == float(np.vdot(G, W)) - val_bf


def test_kernel_rejects_nonpositive_constant():
    with pytest.raises(ValueError, match="positive"):
        lmo_and_update(np.zeros((2, 2)), np.full((2, 2), 0.5), 0.0)


def test_solve_terminates_at_stationary_start():
    rng = np.random.default_rng(12)
    W0 = rng.dirichlet(np.ones(3), size=8)
    P = W0 @ W0.T
    W, trace, cert = fw_solve(P, W0, SolverConfig(epsilon=1e-9))
    assert trace.terminal_reason is TerminalReason.GAP_BELOW_EPSILON
    assert len(trace) == 1
    assert trace.fw_gap[0] <= 1e-12
    assert np.array_equal(W, W0)


def test_barycenter_is_stationary_for_symmetric_input():
    P, _ = planted_instance(10, 3, seed=0)
    W0 = initial_factor(10, 3, kind="barycenter")
    _, trace, _ = fw_solve(P, W0)
    assert trace.terminal_reason is TerminalReason.GAP_BELOW_EPSILON
    assert len(trace) == 1


def test_solve_trace_and_certificate():
    P, _ = planted_instance(20, 3, seed=5)
    W0 = initial_factor(20, 3, seed=5)
    W, trace, cert = fw_solve(P, W0, SolverConfig(max_iterations=300))
    assert trace.terminal_reason is TerminalReason.MAX_ITERATIONS
    assert len(trace) == 301
    assert np.all(np.diff(trace.elapsed_seconds) >= 0)
    assert np.all(trace.fw_gap >= -1e-10)
    assert trace.min_gap_so_far == np.min(trace.fw_gap)
    assert cert.certified
    assert cert.violations == []
    # min-gap curve sits under the a priori bound pointwise
    min_gaps = np.minimum.accumulate(trace.fw_gap)
    assert np.all(min_gaps <= cert.bound(trace.t))
    # feasibility of the returned iterate
    assert np.max(np.abs(W.sum(axis=1) - 1.0)) <= 1e-12
    assert W.min() >= 0.0


def test_solve_descent_inequality_with_auto_constant():
    P, _ = planted_instance(15, 3, seed=9)
    W0 = initial_factor(15, 3, seed=9)
    _, trace, cert = fw_solve(P, W0, SolverConfig(max_iterations=200))
    f, g, gamma = trace.objective, trace.fw_gap, trace.step_size
    C = cert.C_used
    lhs = f[1:]
    rhs = f[:-1] - gamma[:-1] * g[:-1] + 0.5 * gamma[:-1] ** 2 * C
    assert np.all(lhs <= rhs + 1e-9)


def test_solve_objective_stall_stop():
    P, _ = planted_instance(12, 2, seed=1)
    W0 = initial_factor(12, 2, seed=1)
    _, trace, _ = fw_solve(P, W0, SolverConfig(objective_stall_tol=1e-3))
    assert trace.terminal_reason is TerminalReason.OBJECTIVE_STALLED
    assert abs(trace.objective[-1] - trace.objective[-2]) < 1e-3


def test_solve_small_custom_constant_voids_certificate():
    P, _ = planted_instance(10, 2, seed=2)
    W0 = initial_factor(10, 2, seed=2)
    _, _, cert = fw_solve(P, W0, SolverConfig(max_iterations=50, curvature_C=1.0))
    assert not cert.certified


def test_support_growth_from_vertex_start():
    P, _ = planted_instance(12, 4, seed=3)
    rng = np.random.default_rng(3)
    W0 = vertex_to_dense(rng.integers(0, 4, size=12), 4)
    for T in range(1, 6):
        W, trace, _ = fw_solve(P, W0, SolverConfig(max_iterations=T))
        steps = int(trace.t[-1])
        assert np.all((W > 0).sum(axis=1) <= steps + 1)


def test_solve_shape_mismatch():
    with pytest.raises(ValueError, match="rows"):
        fw_solve(np.eye(3), np.full((2, 2), 0.5))


def test_gap_decreases_on_planted_instance():
    P, _ = planted_instance(20, 3, seed=7)
    W0 = initial_factor(20, 3, seed=7)
    _, trace, _ = fw_solve(P, W0, SolverConfig(max_iterations=5000))
    assert np.min(trace.fw_gap) < 0.1 * trace.fw_gap[0]
