"""A pair of piecewise-linear problems on a triangle where projection-free
conditional-gradient steps fail or succeed.

Both problems minimize f(x) = max{a x1 + x2, -a x1 + x2} over the triangle
with vertices (-1, 3), (1, 3), (0, 0); the unique minimum is the origin
with value 0. With slope a = 5 the oracle always points at a top vertex
(for x1 != 0), so the iterates are dragged to the top edge and the method
converges to a point with objective near 3. With slope a = 1/2 the oracle
returns the origin everywhere and the method converges. Both objectives
have unbounded curvature: a bounded curvature constant is sufficient but
not necessary for convergence.
"""

from dataclasses import dataclass

import numpy as np

VERTICES = np.array([[-1.0, 3.0], [1.0, 3.0], [0.0, 0.0]])

FEASIBILITY_TOL = 1e-12


@dataclass(frozen=True)
class PolytopeProblem:
    """max{slope * x1 + x2, -slope * x1 + x2} over the fixed triangle."""

    slope: float
    name: str

    def objective(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return max(self.slope * x[0] + x[1], -self.slope * x[0] + x[1])

    def subgradient(self, x) -> np.ndarray:
        """A fixed subgradient selection: at the kink x1 = 0, keep the
        negative-slope piece (so the oracle's tie resolves to (1, 3))."""
        x = np.asarray(x, dtype=float)
        a = self.slope if x[0] > 0 else -self.slope
        return np.array([a, 1.0])


def failure_problem() -> PolytopeProblem:
    return PolytopeProblem(slope=5.0, name="failure")


def success_problem() -> PolytopeProblem:
    return PolytopeProblem(slope=0.5, name="success")


def barycentric(x) -> np.ndarray:
    """Barycentric coordinates of x w.r.t. the triangle's vertices."""
    x = np.asarray(x, dtype=float)
    l1 = -x[0] / 2.0 + x[1] / 6.0
    l2 = x[0] / 2.0 + x[1] / 6.0
    l3 = 1.0 - x[1] / 3.0
    return np.array([l1, l2, l3])


def is_feasible(x, tol: float = FEASIBILITY_TOL) -> bool:
    return bool(np.all(barycentric(x) >= -tol))


def pw_lmo(problem: PolytopeProblem, x) -> np.ndarray:
    """Vertex minimizing the chosen subgradient's linear form (ties to the
    lowest vertex index in the fixed ordering)."""
    x = np.asarray(x, dtype=float)
    if not is_feasible(x):
        raise ValueError(f"point {x.tolist()} is outside the triangle")
    scores = VERTICES @ problem.subgradient(x)
    return VERTICES[int(np.argmin(scores))].copy()


@dataclass
class PwTrajectory:
    """Iterates of a run: points[t], objectives[t], and per-step gamma and
    the vertex the oracle picked."""

    points: np.ndarray
    objectives: np.ndarray
    gammas: np.ndarray
    vertices: np.ndarray

    def __len__(self):
        return len(self.points)


def _linesearch_gamma(problem: PolytopeProblem, x, s) -> float:
    """Exact minimizer of the objective over the segment [x, s].

    The objective restricted to the segment is the max of two affine
    functions of gamma, so the minimum is at an endpoint or at the kink
    where x1 crosses zero. Ties prefer the smaller gamma.
    """
    candidates = [0.0, 1.0]
    dx1 = s[0] - x[0]
    if dx1 != 0.0:
        kink = x[0] / (x[0] - s[0])
        if 0.0 < kink < 1.0:
            candidates.append(kink)
    candidates.sort()
    values = [problem.objective(x + g * (s - x)) for g in candidates]
    return candidates[int(np.argmin(values))]


def pw_fw_run(problem: PolytopeProblem, x0, steps: str = "diminishing",
              T: int = 1000) -> PwTrajectory:
    """Run T conditional-gradient steps from x0.

    ``steps="diminishing"`` uses gamma_t = 2 / (t + 2) with the step counter
    starting at t = 1 (first step 2/3), so the products prod(1 - gamma_t)
    telescope to 2 / ((T+1)(T+2)). ``steps="linesearch"`` minimizes the
    objective exactly over each segment.
    """
    if steps not in ("diminishing", "linesearch"):
        raise ValueError("steps must be 'diminishing' or 'linesearch'")
    x = np.asarray(x0, dtype=float)
    if x.shape != (2,):
        raise ValueError("x0 must be a 2-vector")
    if not is_feasible(x):
        raise ValueError(f"x0 {x.tolist()} is outside the triangle")

    points = [x.copy()]
    objectives = [problem.objective(x)]
    gammas = []
    vertices = []
    for t in range(1, T + 1):
        s = pw_lmo(problem, x)
        if steps == "diminishing":
            gamma = 2.0 / (t + 2.0)
        else:
            gamma = _linesearch_gamma(problem, x, s)
        x = x + gamma * (s - x)
        points.append(x.copy())
        objectives.append(problem.objective(x))
        gammas.append(gamma)
        vertices.append(s)
    return PwTrajectory(points=np.asarray(points),
                        objectives=np.asarray(objectives),
                        gammas=np.asarray(gammas),
                        vertices=np.asarray(vertices))


def pw_curvature_witness(problem: PolytopeProblem, gammas=None, delta: float = 2.0):
    """Curvature quotients along shrinking segments across the kink.

    For each gamma, evaluates (2 / gamma^2)(f(y) - f(x) - <g, y - x>) at
    x = (-gamma/2, delta), y = (gamma/2, delta) with g the subgradient at x.
    The quotients grow like a constant times 1/gamma, witnessing an
    unbounded curvature constant for both problem variants.

    Returns ``(gammas, quotients)`` as arrays.
    """
    if gammas is None:
        gammas = np.logspace(-1, -6, 6)
    gammas = np.asarray(gammas, dtype=float)
    quotients = np.empty_like(gammas)
    for i, gamma in enumerate(gammas):
        eps = gamma / 2.0
        x = np.array([-eps, delta])
        y = np.array([gamma - eps, delta])
        if not (is_feasible(x) and is_feasible(y)):
            raise ValueError(f"witness points infeasible for gamma={gamma}")
        g = problem.subgradient(x)
        dev = problem.objective(y) - problem.objective(x) - float(g @ (y - x))
        quotients[i] = 2.0 * dev / gamma**2
    return gammas, quotients
