"""Synthetic problem instances with known optima, and seeded initial points."""

import numpy as np

from .core import CoClusterMatrix, vertex_to_dense


def planted_instance(n: int, k: int, seed: int = 0):
    """Instance P = W* W*^T with a known feasible factorization (optimum 0).

    The planted rows are drawn Dirichlet(0.1, ..., 0.1), i.e. close to
    simplex corners, so P looks like a soft block structure. Uses its own
    seed stream, independent of :func:`initial_factor` at the same seed.

    Returns ``(P, W_star)``.
    """
    if n < 1 or k < 2:
        raise ValueError("need n >= 1 and k >= 2")
    rng = np.random.default_rng([seed, 0])
    W_star = rng.dirichlet(np.full(k, 0.1), size=n)
    P = CoClusterMatrix(W_star @ W_star.T)
    return P, W_star


def initial_factor(n: int, k: int, seed: int = 0, kind: str = "dirichlet") -> np.ndarray:
    """Shared starting point for benchmark runs.

    ``dirichlet`` draws each row uniformly from the simplex (seeded,
    reproducible, and independent of the planted instance stream at the
    same seed). ``barycenter`` puts every row at (1/k, ..., 1/k); note that
    for symmetric P the barycenter is always a stationary point (the
    gradient is constant along each row), so it suits unit tests better
    than benchmarks. ``vertex`` draws a random one-hot matrix.
    """
    if n < 1 or k < 2:
        raise ValueError("need n >= 1 and k >= 2")
    if kind == "dirichlet":
        rng = np.random.default_rng([seed, 1])
        return rng.dirichlet(np.ones(k), size=n)
    if kind == "barycenter":
        return np.full((n, k), 1.0 / k)
    if kind == "vertex":
        rng = np.random.default_rng([seed, 1])
        return vertex_to_dense(rng.integers(0, k, size=n), k)
    raise ValueError(f"unknown init kind {kind!r}")
