"""Comparison solvers: projected gradient descent and the penalty method.

Both minimize the same quartic objective as the projection-free solver, so
benchmark traces are directly comparable. PGD stays feasible by projecting
every step onto the product of simplices; the penalty method works on
unconstrained iterates and drives them feasible by growing the penalty
coefficients.
"""

import time
from dataclasses import dataclass

import numpy as np

from .core import (CoClusterMatrix, TerminalReason, TraceRecorder,
                   check_factor_matrix, validate_cocluster)
from .objective import gradient, objective_value


def project_simplex(v) -> np.ndarray:
    """Euclidean projection of a vector onto the probability simplex.

    Sort-and-threshold: sort descending, find the largest prefix whose
    shifted values stay positive, subtract the shift and clip.
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise ValueError("expected a 1-D vector")
    return project_rows_simplex(v[None, :])[0]


def project_rows_simplex(V) -> np.ndarray:
    """Row-wise simplex projection of an n-by-k matrix (vectorized)."""
    V = np.asarray(V, dtype=float)
    if V.ndim != 2:
        raise ValueError("expected a 2-D array")
    n, k = V.shape
    s = -np.sort(-V, axis=1)
    cumsum = np.cumsum(s, axis=1)
    counts = np.arange(1, k + 1)
    positive = s + (1.0 - cumsum) / counts > 0
    # rho: largest prefix length with a positive shifted value (>= 1 always,
    # since the largest entry stays positive after shifting by itself).
    rho = k - 1 - np.argmax(positive[:, ::-1], axis=1)
    shift = (cumsum[np.arange(n), rho] - 1.0) / (rho + 1)
    return np.maximum(V - shift[:, None], 0.0)


@dataclass
class PgdConfig:
    """Projected gradient descent with Armijo backtracking settings.

    The trial step warm-starts at twice the previously accepted step
    (``initial_step`` on the first iteration) and is cut by
    ``backtrack_factor`` until the sufficient-decrease condition holds.
    """

    initial_step: float = 1.0
    backtrack_factor: float = 0.5
    armijo_c: float = 1e-4
    max_backtracks: int = 60
    epsilon: float = 1e-6
    max_iterations: int = 100_000
    stall_tol: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.initial_step <= 0:
            raise ValueError("initial_step must be positive")
        if not 0 < self.backtrack_factor < 1:
            raise ValueError("backtrack_factor must be in (0, 1)")
        if not 0 < self.armijo_c < 1:
            raise ValueError("armijo_c must be in (0, 1)")
        if self.epsilon <= 0 or self.max_iterations < 1 or self.stall_tol < 0:
            raise ValueError("invalid stopping settings")


def pgd_solve(P, W0, config: PgdConfig | None = None, gap_kind: str = "residual"):
    """Monotone projected gradient descent from a feasible W0.

    Each iteration projects W - eta * grad back onto the feasible set, with
    eta backtracked until f(W+) <= f(W) - c <grad, W - W+>. The trace's gap
    column holds the projected-gradient residual ||W - W+||_F / eta by
    default; ``gap_kind="fw"`` records the linearization gap instead so
    stationarity curves compare directly across solvers.

    Returns ``(W, trace)``.
    """
    if config is None:
        config = PgdConfig()
    if gap_kind not in ("residual", "fw"):
        raise ValueError("gap_kind must be 'residual' or 'fw'")
    if not isinstance(P, CoClusterMatrix):
        P = validate_cocluster(P)
    W = check_factor_matrix(W0).copy()
    n = W.shape[0]
    rows = np.arange(n)

    recorder = TraceRecorder(with_gap=True)
    f = objective_value(P, W)
    f_prev = None
    eta_accepted = config.initial_step / 2.0
    start = time.perf_counter()
    for t in range(config.max_iterations + 1):
        G = gradient(P, W)
        eta = min(eta_accepted * 2.0, 1e18)
        accepted = False
        stationary = False
        gap_pre = None
        if gap_kind == "fw":
            gap_pre = float(np.vdot(G, W) - G[rows, np.argmin(G, axis=1)].sum())
            stationary = gap_pre <= config.epsilon
        for trial in range(config.max_backtracks):
            if stationary:
                break
            W_next = project_rows_simplex(W - eta * G)
            if trial == 0 and gap_kind == "residual":
                # stationarity exit before demanding strict Armijo decrease,
                # which roundoff makes impossible at a stationary point
                gap_pre = float(np.linalg.norm(W - W_next)) / eta
                if gap_pre <= config.epsilon:
                    stationary = True
                    break
            f_next = objective_value(P, W_next)
            decrease = float(np.vdot(G, W - W_next))
            if f_next <= f - config.armijo_c * decrease:
                accepted = True
                break
            eta *= config.backtrack_factor

        if stationary:
            recorder.append(t, f, gap_pre, 0.0, time.perf_counter() - start)
            return W, recorder.finish(TerminalReason.GAP_BELOW_EPSILON)
        if not accepted:
            recorder.append(t, f, 0.0, 0.0, time.perf_counter() - start)
            return W, recorder.finish(TerminalReason.LINE_SEARCH_FAILED)

        if gap_kind == "fw":
            gap = float(np.vdot(G, W) - G[rows, np.argmin(G, axis=1)].sum())
        else:
            gap = float(np.linalg.norm(W - W_next)) / eta

        reason = None
        if gap <= config.epsilon:
            reason = TerminalReason.GAP_BELOW_EPSILON
        elif (config.stall_tol > 0 and f_prev is not None
              and abs(f - f_prev) < config.stall_tol):
            reason = TerminalReason.OBJECTIVE_STALLED
        elif t == config.max_iterations:
            reason = TerminalReason.MAX_ITERATIONS
        recorder.append(t, f, gap, 0.0 if reason else eta,
                        time.perf_counter() - start)
        if reason is not None:
            break

        eta_accepted = eta
        W, f_prev, f = W_next, f, f_next

    return W, recorder.finish(reason)


@dataclass
class PenaltyConfig:
    """Sequential unconstrained minimization settings.

    Two quadratic penalties enforce the constraints: mu/2 ||W 1 - 1||^2 for
    the row sums and nu/2 ||min(W, 0)||_F^2 for nonnegativity, both scaled
    by ``step_factor`` after every outer loop.
    """

    mu0: float = 1.0
    nu0: float = 1.0
    step_factor: float = 2.0
    max_inner_loops: int = 50
    feasibility_tol: float = 1e-6
    stall_tol: float = 1e-3
    max_outer: int = 50

    def __post_init__(self):
        if self.mu0 <= 0 or self.nu0 <= 0:
            raise ValueError("initial penalty coefficients must be positive")
        if self.step_factor <= 1:
            raise ValueError("step_factor must exceed 1")
        if self.max_inner_loops < 1 or self.max_outer < 1:
            raise ValueError("loop caps must be at least 1")


def _infeasibility(W: np.ndarray) -> float:
    row_err = np.max(np.abs(W.sum(axis=1) - 1.0))
    neg = max(0.0, -float(W.min()))
    return max(float(row_err), neg)


def penalty_solve(P, W0, config: PenaltyConfig | None = None, callback=None):
    """Penalty method: alternate inner descent with penalty growth.

    ``W0`` may be any real matrix. Each outer loop runs at most
    ``max_inner_loops`` backtracking gradient steps on

        F(W) = f(W) + mu/2 ||W 1 - 1||^2 + nu/2 ||min(W, 0)||_F^2

    then doubles (mu, nu). The outer loop stops once the iterate is
    feasible within tolerance and F has stalled, or at ``max_outer``. The
    returned matrix is projected row-wise onto the simplex so it is always
    feasible; intermediate iterates generally are not. The trace logs one
    record per outer loop with the raw objective f (not F) and no gap
    column. ``callback(outer, W)`` is invoked once per outer loop with the
    raw (possibly infeasible) iterate.

    Returns ``(W, trace)``.
    """
    if config is None:
        config = PenaltyConfig()
    if not isinstance(P, CoClusterMatrix):
        P = validate_cocluster(P)
    W = np.array(W0, dtype=float)
    if W.ndim != 2 or W.shape[0] != P.n:
        raise ValueError(f"W0 must be {P.n}-by-k, got shape {W.shape}")

    mu, nu = config.mu0, config.nu0

    def penalized(W):
        r = W.sum(axis=1) - 1.0
        neg = np.minimum(W, 0.0)
        return (objective_value(P, W) + 0.5 * mu * float(r @ r)
                + 0.5 * nu * float(np.vdot(neg, neg)))

    def penalized_grad(W):
        r = W.sum(axis=1) - 1.0
        neg = np.minimum(W, 0.0)
        return gradient(P, W) + mu * r[:, None] + nu * neg

    recorder = TraceRecorder(with_gap=False)
    start = time.perf_counter()
    F_prev = None
    reason = TerminalReason.MAX_ITERATIONS
    for outer in range(config.max_outer):
        F = penalized(W)
        eta = 0.5
        for _ in range(config.max_inner_loops):
            G = penalized_grad(W)
            gnorm2 = float(np.vdot(G, G))
            e = eta * 2.0
            accepted = False
            for _ in range(60):
                W_trial = W - e * G
                F_trial = penalized(W_trial)
                if F_trial <= F - 1e-4 * e * gnorm2:
                    accepted = True
                    break
                e *= 0.5
            if not accepted:
                break
            eta = e
            W, F = W_trial, F_trial

        recorder.append(outer, objective_value(P, W), None, eta,
                        time.perf_counter() - start)
        if callback is not None:
            callback(outer, W)
        infeas = _infeasibility(W)
        if (infeas <= config.feasibility_tol and F_prev is not None
                and abs(F - F_prev) < config.stall_tol):
            reason = TerminalReason.OBJECTIVE_STALLED
            break
        F_prev = F
        mu *= config.step_factor
        nu *= config.step_factor

    W_final = project_rows_simplex(W)
    return W_final, recorder.finish(reason)
