"""Shared domain types: validated input matrices, feasibility checks, traces.

The feasible set throughout the package is the product of n probability
simplices: nonnegative n-by-k matrices whose rows each sum to one. Vertices
of that set are one-hot row matrices, represented compactly by the column
index of each row's single 1.
"""

import enum
import warnings
from dataclasses import dataclass

import numpy as np

ROW_SUM_TOL = 1e-12

# Dense eigendecomposition for the PSD warning is O(n^3); skip it above this
# size unless explicitly requested.
_PSD_CHECK_MAX_N = 1024


class TerminalReason(enum.Enum):
    GAP_BELOW_EPSILON = "GapBelowEpsilon"
    OBJECTIVE_STALLED = "ObjectiveStalled"
    MAX_ITERATIONS = "MaxIterations"
    LINE_SEARCH_FAILED = "LineSearchFailed"


class CoClusterMatrix:
    """Validated symmetric nonnegative affinity matrix.

    Entry (i, j) encodes how strongly instances i and j are encouraged to
    share a cluster. The matrix is symmetrized at construction and its
    spectral norm is computed lazily and cached (several solver components
    need it and it is constant per instance).
    """

    def __init__(self, entries: np.ndarray):
        self.entries = entries
        self.n = entries.shape[0]
        self._spectral_norm = None

    def spectral_norm(self) -> float:
        """Largest absolute eigenvalue, cached after the first call."""
        if self._spectral_norm is None:
            from .curvature import spectral_norm

            self._spectral_norm = spectral_norm(self.entries).value
        return self._spectral_norm

    def __repr__(self):
        return f"CoClusterMatrix(n={self.n})"


def as_dense(P) -> np.ndarray:
    """Return the underlying ndarray of a CoClusterMatrix (or pass through)."""
    if isinstance(P, CoClusterMatrix):
        return P.entries
    return np.asarray(P, dtype=float)


def validate_cocluster(entries, psd_tol: float = 1e-8,
                       check_psd: bool | None = None) -> CoClusterMatrix:
    """Validate and symmetrize an affinity matrix.

    Requirements: square, entrywise nonnegative (entries below -1e-12 are
    an error, tiny negative roundoff is clipped to zero), symmetric up to
    1e-10 relative asymmetry (symmetrized by averaging with the transpose).
    Positive semidefiniteness is checked within ``psd_tol`` times the
    spectral norm and only warned about: the solvers run fine on indefinite
    input, PSD matters only for the co-clustering interpretation.

    ``check_psd=None`` checks PSD only for n <= 1024 (dense eigenvalues).
    """
    A = np.asarray(entries, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"co-cluster matrix must be square, got shape {A.shape}")
    if A.shape[0] < 1:
        raise ValueError("co-cluster matrix must be at least 1x1")
    if not np.all(np.isfinite(A)):
        raise ValueError("co-cluster matrix has non-finite entries")
    if np.any(A < -1e-12):
        i, j = np.unravel_index(np.argmin(A), A.shape)
        raise ValueError(f"negative entry {A[i, j]:g} at ({i}, {j}); "
                         "affinities must be nonnegative")

    scale = np.max(np.abs(A)) if A.size else 0.0
    asym = np.max(np.abs(A - A.T)) if A.size else 0.0
    if scale > 0 and asym > 1e-10 * scale:
        raise ValueError(f"asymmetry {asym:g} exceeds 1e-10 relative tolerance")
    A = 0.5 * (A + A.T)
    A[A < 0] = 0.0

    n = A.shape[0]
    if check_psd is None:
        check_psd = n <= _PSD_CHECK_MAX_N
    if check_psd:
        eigs = np.linalg.eigvalsh(A)
        norm = max(abs(eigs[0]), abs(eigs[-1]))
        if norm > 0 and eigs[0] < -psd_tol * norm:
            warnings.warn(
                f"matrix is not PSD within tolerance (lambda_min = {eigs[0]:g}, "
                f"norm = {norm:g}); solvers still run, but the probabilistic "
                "co-clustering interpretation may not apply",
                stacklevel=2,
            )
        M = CoClusterMatrix(A)
        M._spectral_norm = float(norm)
        return M
    return CoClusterMatrix(A)


def check_factor_matrix(W, k: int | None = None) -> np.ndarray:
    """Validate a row-stochastic factor matrix (rows on the simplex).

    Entries must be >= 0 and each row must sum to 1 within 1e-12.
    """
    W = np.asarray(W, dtype=float)
    if W.ndim != 2:
        raise ValueError(f"factor matrix must be 2-D, got shape {W.shape}")
    if W.shape[1] < 2:
        raise ValueError("factor matrix needs at least 2 columns")
    if k is not None and W.shape[1] != k:
        raise ValueError(f"expected k={k} columns, got {W.shape[1]}")
    if np.any(W < 0):
        raise ValueError("factor matrix has negative entries")
    sums = W.sum(axis=1)
    err = np.max(np.abs(sums - 1.0))
    if err > ROW_SUM_TOL:
        i = int(np.argmax(np.abs(sums - 1.0)))
        raise ValueError(f"row {i} sums to {sums[i]!r}, off by {err:g} > {ROW_SUM_TOL:g}")
    return W


def vertex_to_dense(row_indices, k: int) -> np.ndarray:
    """Expand a vertex (one nonzero per row) into its dense one-hot matrix."""
    idx = np.asarray(row_indices, dtype=np.intp)
    if idx.ndim != 1:
        raise ValueError("row indices must be a 1-D integer array")
    if idx.size and (idx.min() < 0 or idx.max() >= k):
        raise ValueError(f"row index out of range for k={k}")
    W = np.zeros((idx.size, k))
    W[np.arange(idx.size), idx] = 1.0
    return W


@dataclass
class SolverConfig:
    """Stopping and step-size settings shared by the solvers.

    ``curvature_C`` is the step-size constant: "auto" derives the certified
    worst-case value from the instance, a float overrides it (which voids
    the rate certificate if smaller than the certified value).
    """

    epsilon: float = 1e-6
    max_iterations: int = 100_000
    curvature_C: float | str = "auto"
    objective_stall_tol: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if isinstance(self.curvature_C, str):
            if self.curvature_C != "auto":
                raise ValueError("curvature_C must be a positive float or 'auto'")
        elif self.curvature_C <= 0:
            raise ValueError("curvature_C must be positive")
        if self.objective_stall_tol < 0:
            raise ValueError("objective_stall_tol must be nonnegative")


@dataclass
class SolverTrace:
    """Per-iteration log of a solver run (columns, one entry per iteration).

    ``fw_gap`` is None for solvers with no per-iteration stationarity
    measure (the penalty method); for projected gradient it holds the
    projected-gradient residual rather than the linearization gap.
    """

    t: np.ndarray
    objective: np.ndarray
    fw_gap: np.ndarray | None
    step_size: np.ndarray
    elapsed_seconds: np.ndarray
    terminal_reason: TerminalReason

    def __len__(self):
        return len(self.t)

    @property
    def min_gap_so_far(self) -> float | None:
        if self.fw_gap is None or len(self.fw_gap) == 0:
            return None
        return float(np.min(self.fw_gap))

    def records(self):
        """Yield one dict per iteration (fw_gap key omitted when absent)."""
        for i in range(len(self.t)):
            rec = {"t": int(self.t[i]), "objective": float(self.objective[i])}
            if self.fw_gap is not None:
                rec["fw_gap"] = float(self.fw_gap[i])
            rec["step_size"] = float(self.step_size[i])
            rec["elapsed_seconds"] = float(self.elapsed_seconds[i])
            yield rec


class TraceRecorder:
    """Accumulates iteration records and freezes them into a SolverTrace."""

    def __init__(self, with_gap: bool = True):
        self._t = []
        self._objective = []
        self._gap = [] if with_gap else None
        self._step = []
        self._elapsed = []

    def append(self, t, objective, gap, step_size, elapsed):
        self._t.append(t)
        self._objective.append(objective)
        if self._gap is not None:
            self._gap.append(gap)
        self._step.append(step_size)
        self._elapsed.append(elapsed)

    def finish(self, reason: TerminalReason) -> SolverTrace:
        return SolverTrace(
            t=np.asarray(self._t, dtype=np.int64),
            objective=np.asarray(self._objective, dtype=float),
            fw_gap=None if self._gap is None else np.asarray(self._gap, dtype=float),
            step_size=np.asarray(self._step, dtype=float),
            elapsed_seconds=np.asarray(self._elapsed, dtype=float),
            terminal_reason=reason,
        )
