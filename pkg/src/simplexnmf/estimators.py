"""Scikit-learn style estimator wrapping the solvers for pipeline use."""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils import check_array

from .baselines import PenaltyConfig, PgdConfig, pgd_solve, penalty_solve
from .core import SolverConfig, validate_cocluster
from .frank_wolfe import fw_solve
from .io import gaussian_kernel
from .synthetic import initial_factor


class SimplicialSymNMF(ClusterMixin, BaseEstimator):
    """Probabilistic clustering by symmetric NMF with row-stochastic factors.

    Factorizes an affinity matrix P as W W^T where each row of W is a
    probability distribution over ``n_clusters`` clusters. The fitted
    ``membership_`` matrix holds those distributions and ``labels_`` their
    argmax hard assignment.

    Parameters
    ----------
    n_clusters : int
        Number of clusters (columns of W).
    solver : {"fw", "pgd", "penalty"}
        "fw" is the projection-free conditional-gradient solver with a
        certified step constant; "pgd" is projected gradient descent with
        backtracking; "penalty" is sequential unconstrained minimization.
    affinity : {"precomputed", "gaussian"}
        With "precomputed", X is the symmetric nonnegative affinity matrix
        itself. With "gaussian", X is an (n_samples, n_features) matrix and
        the affinity is exp(-(||x_i - x_j|| / bandwidth)^2).
    bandwidth : float
        Gaussian kernel length scale (only for affinity="gaussian").
    tol : float
        Stationarity tolerance (linearization gap for "fw",
        projected-gradient residual for "pgd").
    max_iter : int
        Iteration cap ("fw"/"pgd"); the penalty solver uses its own outer
        cap of 50.
    curvature : float or "auto"
        Step constant for "fw"; "auto" uses the certified worst-case value.
    stall_tol : float
        Stop when consecutive objectives differ by less than this (0
        disables; the penalty solver always uses max(stall_tol, 1e-3)).
    init : {"dirichlet", "barycenter", "vertex"}
        Initial factor; "dirichlet" draws rows uniformly from the simplex.
    random_state : int
        Seed for the initial factor.

    Attributes
    ----------
    membership_ : ndarray of shape (n_samples, n_clusters)
    labels_ : ndarray of shape (n_samples,)
    objective_ : float
    n_iter_ : int
    trace_ : SolverTrace
    certificate_ : RateCertificate (solver="fw" only)
    """

    def __init__(self, n_clusters=2, solver="fw", affinity="precomputed",
                 bandwidth=1.0, tol=1e-6, max_iter=100_000, curvature="auto",
                 stall_tol=0.0, init="dirichlet", random_state=0):
        self.n_clusters = n_clusters
        self.solver = solver
        self.affinity = affinity
        self.bandwidth = bandwidth
        self.tol = tol
        self.max_iter = max_iter
        self.curvature = curvature
        self.stall_tol = stall_tol
        self.init = init
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_array(X, ensure_min_samples=2)
        if self.affinity == "gaussian":
            P = gaussian_kernel(X, bandwidth=self.bandwidth)
        elif self.affinity == "precomputed":
            P = validate_cocluster(X)
        else:
            raise ValueError("affinity must be 'precomputed' or 'gaussian'")

        W0 = initial_factor(P.n, self.n_clusters, seed=self.random_state,
                            kind=self.init)
        self.certificate_ = None
        if self.solver == "fw":
            config = SolverConfig(epsilon=self.tol, max_iterations=self.max_iter,
                                  curvature_C=self.curvature,
                                  objective_stall_tol=self.stall_tol)
            W, trace, cert = fw_solve(P, W0, config)
            self.certificate_ = cert
        elif self.solver == "pgd":
            config = PgdConfig(epsilon=self.tol, max_iterations=self.max_iter,
                               stall_tol=self.stall_tol)
            W, trace = pgd_solve(P, W0, config)
        elif self.solver == "penalty":
            config = PenaltyConfig(stall_tol=max(self.stall_tol, 1e-3))
            W, trace = penalty_solve(P, W0, config)
        else:
            raise ValueError("solver must be 'fw', 'pgd', or 'penalty'")

        self.membership_ = W
        self.labels_ = np.argmax(W, axis=1)
        self.objective_ = float(trace.objective[-1])
        self.trace_ = trace
        self.n_iter_ = int(trace.t[-1])
        return self

    def fit_transform(self, X, y=None):
        """Fit and return the membership matrix W."""
        return self.fit(X).membership_
