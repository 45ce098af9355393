"""Data pipeline: CSV feature ingestion, Gaussian-kernel affinities, and
trace/factor file formats.

File formats
------------
* Datasets: RFC-4180-style CSV, '.' decimal, optional header row, optional
  label column (categorical labels mapped to dense integers in order of
  first appearance).
* Traces: JSON lines, one iteration record per line with keys
  ``t, objective, fw_gap (when present), step_size, elapsed_seconds``,
  followed by one summary line with the terminal reason.
* Factor matrices: headerless CSV with 17-significant-digit decimals, which
  round-trip 64-bit floats exactly.
"""

import csv
import json
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .core import CoClusterMatrix, SolverTrace, validate_cocluster


@dataclass
class Dataset:
    features: np.ndarray
    labels: np.ndarray | None = None
    name: str = ""

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=float)
        if self.features.ndim != 2 or self.features.shape[0] < 2:
            raise ValueError("features must be a 2-D array with at least 2 rows")
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.intp)
            if self.labels.shape != (self.features.shape[0],):
                raise ValueError("labels must have one entry per feature row")

    @property
    def n_classes(self) -> int | None:
        if self.labels is None:
            return None
        return int(len(np.unique(self.labels)))


def gaussian_kernel(X, bandwidth: float = 1.0) -> CoClusterMatrix:
    """Affinity matrix P_ij = exp(-(||x_i - x_j|| / bandwidth)^2).

    The default bandwidth of 1.0 gives exp(-squared distance). Diagonal
    entries are exactly 1 and the matrix is symmetric by construction
    (each pair's distance is computed once).
    """
    if isinstance(X, Dataset):
        X = X.features
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValueError("need a 2-D feature matrix with at least 2 rows")
    if not np.all(np.isfinite(X)):
        raise ValueError("features contain non-finite values")
    if bandwidth <= 0:
        raise ValueError("bandwidth must be positive")
    d2 = squareform(pdist(X, "sqeuclidean"))
    P = np.exp(-d2 / bandwidth**2)
    return validate_cocluster(P)


def read_csv_dataset(path, has_header: bool = False,
                     label_column: int | None = None) -> Dataset:
    """Parse a rectangular numeric CSV into a Dataset.

    ``label_column`` selects a column (by index) whose values may be
    categorical; they are mapped to integers in first-appearance order.
    Malformed rows report their row and column numbers.
    """
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for row in reader:
            if row:
                rows.append(row)
    if has_header and rows:
        rows = rows[1:]
    if not rows:
        raise ValueError(f"{path}: empty file")

    width = len(rows[0])
    offset = 2 if has_header else 1
    features = []
    raw_labels = []
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"{path}: malformed row {i + offset}: expected "
                             f"{width} columns, got {len(row)}")
        feat = []
        for j, cell in enumerate(row):
            if j == label_column:
                raw_labels.append(cell.strip())
                continue
            try:
                feat.append(float(cell))
            except ValueError:
                raise ValueError(f"{path}: malformed row {i + offset}, column "
                                 f"{j + 1}: {cell!r} is not numeric") from None
        features.append(feat)

    labels = None
    if label_column is not None:
        mapping = {}
        labels = np.array([mapping.setdefault(lab, len(mapping))
                           for lab in raw_labels], dtype=np.intp)
    return Dataset(features=np.asarray(features, dtype=float), labels=labels,
                   name=str(path))


def write_trace(trace: SolverTrace, path, include_timing: bool = True):
    """Write a trace as JSON lines: iteration records plus a summary line."""
    with open(path, "w") as fh:
        for rec in trace.records():
            if not include_timing:
                rec["elapsed_seconds"] = 0.0
            fh.write(json.dumps(rec) + "\n")
        summary = {
            "terminal_reason": trace.terminal_reason.value,
            "iterations": len(trace),
            "min_gap_so_far": trace.min_gap_so_far,
            "final_objective": float(trace.objective[-1]) if len(trace) else None,
            "total_seconds": (float(trace.elapsed_seconds[-1])
                              if include_timing and len(trace) else 0.0),
        }
        fh.write(json.dumps(summary) + "\n")


def write_factor(W, path):
    """Write a factor matrix as headerless CSV, exact for 64-bit floats."""
    W = np.asarray(W, dtype=float)
    np.savetxt(path, W, fmt="%.17g", delimiter=",")


def read_factor(path) -> np.ndarray:
    """Read a factor matrix written by :func:`write_factor`."""
    W = np.loadtxt(path, delimiter=",", ndmin=2)
    return np.asarray(W, dtype=float)
