"""Objective f(W) = 1/4 ||P - W W^T||_F^2, its gradient, gap, and Hessian action.

All functions are pure and accept either a CoClusterMatrix or a plain
symmetric ndarray for P.
"""

import numpy as np

from .core import as_dense


def _check_shapes(P: np.ndarray, W: np.ndarray):
    if W.ndim != 2:
        raise ValueError(f"W must be 2-D, got shape {W.shape}")
    if P.shape[0] != P.shape[1] or P.shape[0] != W.shape[0]:
        raise ValueError(f"shape mismatch: P is {P.shape}, W is {W.shape}")


def objective_value(P, W) -> float:
    """Quarter squared Frobenius distance between P and W W^T."""
    P = as_dense(P)
    W = np.asarray(W, dtype=float)
    _check_shapes(P, W)
    R = P - W @ W.T
    return 0.25 * float(np.vdot(R, R))


def gradient(P, W) -> np.ndarray:
    """Gradient (W W^T - P) W, evaluated as W (W^T W) - P W.

    The factored order costs O(nk^2 + n^2 k) and never forms the n-by-n
    product W W^T.
    """
    P = as_dense(P)
    W = np.asarray(W, dtype=float)
    _check_shapes(P, W)
    return W @ (W.T @ W) - P @ W


def fw_gap(G, W, S) -> float:
    """Linearization gap <G, W - S> with S a vertex given by row indices.

    Nonnegative when S attains the per-row minimum of G; otherwise still a
    valid lower bound on the true gap.
    """
    G = np.asarray(G, dtype=float)
    W = np.asarray(W, dtype=float)
    S = np.asarray(S, dtype=np.intp)
    if G.shape != W.shape:
        raise ValueError(f"shape mismatch: G is {G.shape}, W is {W.shape}")
    if S.shape != (G.shape[0],):
        raise ValueError(f"vertex indices must have shape ({G.shape[0]},)")
    return float(np.vdot(G, W) - G[np.arange(G.shape[0]), S].sum())


def hessian_vector_product(P, W, V) -> np.ndarray:
    """Action of the objective's Hessian at W on a direction V.

    Computed in matrix form as

        H(V) = V (W^T W) + (W W^T - P) V + W (V^T W)

    without ever materializing the nk-by-nk operator. The third term is the
    transposition (commutation) part of the Hessian folded into a product.
    """
    P = as_dense(P)
    W = np.asarray(W, dtype=float)
    V = np.asarray(V, dtype=float)
    _check_shapes(P, W)
    if V.shape != W.shape:
        raise ValueError(f"V must match W's shape {W.shape}, got {V.shape}")
    M = W @ W.T - P
    return V @ (W.T @ W) + M @ V + W @ (V.T @ W)
