"""Embeddings of discrete data streams into piecewise-linear paths.

Every function takes a scalar stream (plus optional strictly increasing
times, integer indices 0..n-1 are synthesized otherwise) and returns an
(N, d) path array ready for signature computation.  Missing observations
are marked with NaN; only the missing-data embedding accepts them.
"""

from __future__ import annotations

import numpy as np


def _as_values(values, allow_nan: bool = False) -> np.ndarray:
    vals = np.asarray(values, dtype=float).ravel()
    if vals.size < 1:
        raise ValueError("stream must contain at least one value")
    if not allow_nan and not np.all(np.isfinite(vals)):
        raise ValueError("stream values must be finite")
    return vals


def _as_times(times, n: int) -> np.ndarray:
    if times is None:
        return np.arange(n, dtype=float)
    ts = np.asarray(times, dtype=float).ravel()
    if ts.size != n:
        raise ValueError(f"times length {ts.size} does not match {n} values")
    if not np.all(np.isfinite(ts)):
        raise ValueError("times must be finite")
    if n > 1 and not np.all(np.diff(ts) > 0):
        raise ValueError("times must be strictly increasing")
    return ts


def embed_linear(values, times=None) -> np.ndarray:
    """Piecewise-linear interpolation path: rows (t_i, x_i)."""
    vals = _as_values(values)
    ts = _as_times(times, vals.size)
    return np.column_stack([ts, vals])


def embed_rectilinear(values, times=None) -> np.ndarray:
    """Axis path: advance in time first, then in value, at every step.

    Visits (t_i, x_i) -> (t_{i+1}, x_i) -> (t_{i+1}, x_{i+1}); the output
    has 2n - 1 rows and the same endpoints as the linear embedding.
    """
    vals = _as_values(values)
    ts = _as_times(times, vals.size)
    n = vals.size
    rows = np.empty((2 * n - 1, 2))
    rows[::2, 0] = ts
    rows[::2, 1] = vals
    rows[1::2, 0] = ts[1:]
    rows[1::2, 1] = vals[:-1]
    return rows


def cumsum_basepoint(values) -> np.ndarray:
    """Partial sums with a prepended zero basepoint; length n + 1.

    The last entry is the total sum, so the increment of the embedded path
    equals the sum of the stream.
    """
    vals = np.asarray(values, dtype=float).ravel()
    if vals.size and not np.all(np.isfinite(vals)):
        raise ValueError("stream values must be finite")
    return np.concatenate(([0.0], np.cumsum(vals)))


def lead_lag(values) -> np.ndarray:
    """Lead-lag path of a scalar stream: (2n - 1) rows, 2 columns.

    The leading copy jumps to the next value first and the lagged copy
    catches up one step later:

        lead: x1, x2, x2, x3, x3, ..., xn, xn
        lag:  x1, x1, x2, x2, ..., x_{n-1}, xn

    Column 0 holds the lagged copy and column 1 the leading copy, so the
    traversal around each increment triangle is clockwise and the enclosed
    (signed) area comes out as -QV/2, where QV is the quadratic variation.
    For {1,4,2,6} the level-2 signature is (1, 5, 5, 12.5, -2, 27, 12.5).
    """
    vals = _as_values(values)
    n = vals.size
    rows = np.empty((2 * n - 1, 2))
    rows[::2, 0] = vals        # lag at anchor points
    rows[1::2, 0] = vals[:-1]  # lag still behind while lead has jumped
    rows[::2, 1] = vals
    rows[1::2, 1] = vals[1:]
    return rows


def lead_lag_time(values, times=None) -> np.ndarray:
    """Three-dimensional lead-lag path: columns (time, lead, lag).

    Between consecutive anchors (t_i, x_i, x_i) the path moves one
    coordinate at a time - time first, then the leading copy, then the
    lagged copy - so it passes through every anchor tuple and its
    projection onto the (lead, lag) plane traces the planar lead-lag path.
    """
    vals = _as_values(values)
    ts = _as_times(times, vals.size)
    n = vals.size
    if n == 1:
        return np.array([[ts[0], vals[0], vals[0]]])
    rows = np.empty((3 * (n - 1) + 1, 3))
    rows[0] = (ts[0], vals[0], vals[0])
    for i in range(n - 1):
        base = 1 + 3 * i
        rows[base] = (ts[i + 1], vals[i], vals[i])
        rows[base + 1] = (ts[i + 1], vals[i + 1], vals[i])
        rows[base + 2] = (ts[i + 1], vals[i + 1], vals[i + 1])
    return rows


def missing_data_embed(values, times=None) -> np.ndarray:
    """Lift a stream with missing entries (NaN) to rows (t, y, r).

    Missing values are filled forward with the last observation while the
    third coordinate counts missing entries cumulatively, so the path walks
    along the missing axis instead of inventing data.  The first entry must
    be observed (there is nothing to fill it from).
    """
    vals = _as_values(values, allow_nan=True)
    ts = _as_times(times, vals.size)
    mask = np.isnan(vals)
    if mask[0]:
        raise ValueError("first entry must be observed; cannot fill forward")
    filled = vals.copy()
    for i in range(1, filled.size):
        if mask[i]:
            filled[i] = filled[i - 1]
    return np.column_stack([ts, filled, np.cumsum(mask).astype(float)])
