"""Curvature diagnostics: spectral norms, worst-case bounds, empirical sampling.

The solver's certified step-size constant is the worst-case curvature upper
bound 2n(3n + c) with c the spectral norm of the input matrix; the matching
lower bound 2n(n/k^2 - c) shows the constant really does grow as n^2. This
module computes both bounds, estimates spectral norms matrix-free, and
samples the curvature quotient

    (2 / gamma^2) |f(y) - f(x) - <grad f(x), y - x>|,   y = x + gamma (s - x)

over random feasible segments to compare against the bounds.
"""

import json
import warnings
from dataclasses import dataclass, asdict

import numpy as np

from .core import CoClusterMatrix, as_dense, vertex_to_dense
from .objective import gradient, hessian_vector_product, objective_value


@dataclass
class SpectralNormEstimate:
    value: float
    iterations: int
    converged: bool


def spectral_norm(op, dim: int | None = None, tol: float = 1e-9,
                  max_iters: int = 10_000, seed: int = 0) -> SpectralNormEstimate:
    """Largest absolute eigenvalue of a self-adjoint operator by power iteration.

    ``op`` is either a symmetric ndarray or a callable v -> A v together with
    ``dim``. Self-adjointness is a precondition: only then does the dominant
    absolute eigenvalue equal the spectral norm, and only then does the
    stopping rule ||A v - lambda v|| <= tol * |lambda| bound the eigenvalue
    error by tol * |lambda|. The start vector is seeded; a start that lands
    (near-)orthogonal to the dominant eigenspace is retried with fresh
    randomness. Non-convergence within ``max_iters`` returns the best
    estimate with ``converged=False`` and a warning (one cause: a tied
    dominant pair with opposite signs, which plain power iteration cannot
    resolve).
    """
    if callable(op):
        if dim is None:
            raise ValueError("dim is required for a callable operator")
        matvec = op
    else:
        A = np.asarray(op, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("matrix operator must be square")
        dim = A.shape[0]
        matvec = A.dot

    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    lam = 0.0
    restarts = 0
    for it in range(1, max_iters + 1):
        w = matvec(v)
        nw = np.linalg.norm(w)
        if nw <= 1e-300:
            if restarts >= 2:
                return SpectralNormEstimate(0.0, it, True)
            restarts += 1
            v = rng.standard_normal(dim)
            v /= np.linalg.norm(v)
            continue
        rayleigh = float(v @ w)
        residual = np.linalg.norm(w - rayleigh * v)
        lam = abs(rayleigh)
        if residual <= tol * max(lam, 1e-300):
            return SpectralNormEstimate(lam, it, True)
        v = w / nw
    warnings.warn(f"power iteration did not converge in {max_iters} iterations "
                  f"(last estimate {lam:g})", stacklevel=2)
    return SpectralNormEstimate(lam, max_iters, False)


def hessian_operator(P, W):
    """Matrix-free Hessian at W as a callable on flattened directions.

    Returns ``(matvec, dim)`` suitable for :func:`spectral_norm`. The
    flattening order is immaterial for norms as long as it is consistent.
    """
    P = as_dense(P)
    W = np.asarray(W, dtype=float)
    n, k = W.shape

    def matvec(v):
        V = v.reshape(n, k)
        return hessian_vector_product(P, W, V).ravel()

    return matvec, n * k


def curvature_bounds(n: int, k: int, c: float) -> tuple[float, float]:
    """Worst-case curvature bracket (max{0, 2n(n/k^2 - c)}, 2n(3n + c)).

    The lower expression can go negative for large c; it is clamped at zero
    since the curvature constant is nonnegative by definition.
    """
    if n < 1 or k < 2:
        raise ValueError("need n >= 1 and k >= 2")
    if c < 0:
        raise ValueError("spectral norm c must be nonnegative")
    lower = max(0.0, 2.0 * n * (n / k**2 - c))
    upper = 2.0 * n * (3.0 * n + c)
    return lower, upper


@dataclass
class CurvatureReport:
    """Curvature bracket plus the largest sampled quotient for one instance."""

    n: int
    k: int
    c: float
    lower_bound: float
    upper_bound: float
    empirical_max: float
    samples: int
    seed: int

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def empirical_curvature(P, k: int, samples: int = 1000, seed: int = 0) -> CurvatureReport:
    """Sample the curvature quotient over random feasible segments.

    Each sample draws a base point x with rows uniform on the simplex, a
    uniformly random vertex s, and gamma uniform on (0, 1], then evaluates
    the quotient at y = x + gamma (s - x). The maximum over samples is a
    lower estimate of the true curvature constant and must stay below the
    worst-case upper bound.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if not isinstance(P, CoClusterMatrix):
        P = CoClusterMatrix(np.asarray(P, dtype=float))
    n = P.n
    c = P.spectral_norm()
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(samples):
        X = rng.dirichlet(np.ones(k), size=n)
        S = vertex_to_dense(rng.integers(0, k, size=n), k)
        gamma = 1.0 - rng.random()  # uniform on (0, 1]
        D = gamma * (S - X)
        Y = X + D
        G = gradient(P, X)
        dev = objective_value(P, Y) - objective_value(P, X) - float(np.vdot(G, D))
        q = 2.0 * abs(dev) / gamma**2
        if q > best:
            best = q
    lower, upper = curvature_bounds(n, k, c)
    return CurvatureReport(n=n, k=k, c=c, lower_bound=lower, upper_bound=upper,
                           empirical_max=best, samples=samples, seed=seed)


def extremal_instances(n: int, k: int):
    """Feasible matrices attaining the worst-case norm and diameter.

    Returns ``(W_spec, (W_a, W_b))`` where W_spec (all rows on the first
    corner) attains ||W^T W||_2 = n, and the pair (all rows on the first
    corner, all rows on the second) attains squared Frobenius distance 2n,
    the squared diameter of the feasible set.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    W_spec = vertex_to_dense(np.zeros(n, dtype=np.intp), k)
    W_b = vertex_to_dense(np.ones(n, dtype=np.intp), k)
    return W_spec, (W_spec.copy(), W_b)
