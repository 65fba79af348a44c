"""Signatures of piecewise-linear paths.

A path is an (N, d) array of points traversed in row order, with linear
interpolation between consecutive rows.  The signature of such a path is
computed exactly as the product of segment exponentials (each straight
segment contributes tensor_exp of its displacement), which is the
multiplicative identity for concatenation.  A nested Riemann-sum evaluation
of the iterated integrals over the order simplex is provided as an
independent oracle.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .tensor import TruncatedTensorSeries, as_word, tensor_mul


def as_path(points) -> np.ndarray:
    """Validate and return a path as an (N, d) float array.

    1-D input is treated as a single d-dimensional point.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[np.newaxis, :]
    if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
        raise ValueError(f"path must be a nonempty (N, d) array, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise ValueError("path entries must be finite")
    return pts


def signature(points, depth: int) -> TruncatedTensorSeries:
    """Truncated signature of a piecewise-linear path.

    Folds the segment exponentials left to right; the result is exact for
    piecewise-linear paths, independent of the starting point, and a
    constant path gives the unit series.  Zero-length segments are skipped.
    """
    pts = as_path(points)
    n, dim = pts.shape
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    levels = [np.ones(1)] + [np.zeros(dim**k) for k in range(1, depth + 1)]
    for j in range(n - 1):
        delta = pts[j + 1] - pts[j]
        if not delta.any():
            continue
        # powers[k] = delta^{(x) k} / k! as a flat level-k array
        powers = [np.ones(1)]
        for k in range(1, depth + 1):
            powers.append(np.multiply.outer(powers[-1], delta).ravel() / k)
        # result <- result (x) exp(delta), updated top level first so that
        # lower levels are still the pre-segment values when read
        for lev in range(depth, 0, -1):
            acc = levels[lev] + powers[lev]
            for i in range(1, lev):
                acc = acc + np.multiply.outer(levels[lev - i], powers[i]).ravel()
            levels[lev] = acc
    return TruncatedTensorSeries(dim, depth, levels)


def _resample_by_parameter(pts: np.ndarray, num_points: int) -> np.ndarray:
    """Sample the path at uniform values of the vertex-index parameter."""
    n = pts.shape[0]
    if n == 1:
        return np.repeat(pts, num_points, axis=0)
    grid = np.linspace(0.0, n - 1.0, num_points)
    param = np.arange(n, dtype=float)
    return np.column_stack([np.interp(grid, param, pts[:, i]) for i in range(pts.shape[1])])


def signature_bruteforce(points, word: Sequence[int], steps: int) -> float:
    """One signature coefficient by lattice summation over the order simplex.

    Evaluates the k-fold iterated integral as a left-endpoint Riemann sum on
    a uniform refinement of the path with `steps` increments: each letter
    adds one strict cumulative-sum layer, so the result is the sum of
    increment products over the strict simplex lattice.  Converges to the
    exact value with error O(1/steps).  Independent of the segment
    exponential / concatenation-product route.
    """
    pts = as_path(points)
    w = as_word(word)
    if any(i > pts.shape[1] for i in w):
        raise ValueError(f"word {w} has letters outside 1..{pts.shape[1]}")
    if steps < max(len(w), 1):
        raise ValueError(f"steps must be >= len(word), got {steps}")
    samples = _resample_by_parameter(pts, steps + 1)
    deltas = np.diff(samples, axis=0)
    f = np.ones(steps + 1)
    for letter in w:
        inner = f[:-1] * deltas[:, letter - 1]
        f = np.concatenate(([0.0], np.cumsum(inner)))
    return float(f[-1])


def signature_of_sampled_function(
    sampler: Callable[[float], Sequence[float]],
    a: float,
    b: float,
    num_samples: int,
    depth: int,
) -> TruncatedTensorSeries:
    """Signature of t -> sampler(t) on [a, b] via piecewise-linear sampling.

    Samples at num_samples uniform times and returns the signature of the
    interpolating path; converges to the smooth-path signature as the
    sample count grows.  Level-1 terms are exact for any sample count since
    they only depend on the endpoints.
    """
    if num_samples < 2:
        raise ValueError(f"need at least 2 samples, got {num_samples}")
    if not b > a:
        raise ValueError(f"need b > a, got [{a}, {b}]")
    ts = np.linspace(a, b, num_samples)
    rows = np.asarray([np.asarray(sampler(t), dtype=float).ravel() for t in ts])
    if not np.all(np.isfinite(rows)):
        raise ValueError("sampler returned non-finite values")
    return signature(rows, depth)


def concat(x, y) -> np.ndarray:
    """Concatenation of two paths: y is translated to start at x's endpoint."""
    px, py = as_path(x), as_path(y)
    if px.shape[1] != py.shape[1]:
        raise ValueError(f"dimension mismatch: {px.shape[1]} vs {py.shape[1]}")
    shifted = py - py[0] + px[-1]
    return np.vstack([px, shifted[1:]])


def time_reverse(x) -> np.ndarray:
    """The path traversed backwards; its signature is the group inverse."""
    return as_path(x)[::-1].copy()


def levy_area(sig: TruncatedTensorSeries) -> float:
    """Signed area between a planar path and its chord: (S(1,2) - S(2,1)) / 2."""
    if sig.dim != 2:
        raise ValueError(f"Levy area needs a 2-dimensional signature, got dim={sig.dim}")
    if sig.depth < 2:
        raise ValueError(f"Levy area needs depth >= 2, got {sig.depth}")
    return 0.5 * (sig[(1, 2)] - sig[(2, 1)])


def reparametrize_uniform(x, num_points: int) -> np.ndarray:
    """Resample the trajectory at num_points uniform arc-length positions.

    All original vertices are kept (points are only inserted on segments,
    never removed), so the traced image is identical and the signature is
    unchanged.
    """
    if num_points < 2:
        raise ValueError(f"num_points must be >= 2, got {num_points}")
    pts = as_path(x)
    if pts.shape[0] == 1:
        return np.repeat(pts, num_points, axis=0)
    seg = np.diff(pts, axis=0)
    seg_len = np.linalg.norm(seg, axis=1)
    cum = np.concatenate(([0.0], np.cumsum(seg_len)))
    total = cum[-1]
    if total == 0.0:
        return np.repeat(pts[:1], num_points, axis=0)
    stops = np.unique(np.concatenate([cum, np.linspace(0.0, total, num_points)]))
    rows = np.empty((stops.size, pts.shape[1]))
    idx = np.clip(np.searchsorted(cum, stops, side="right") - 1, 0, len(seg_len) - 1)
    for r, (s, i) in enumerate(zip(stops, idx)):
        if seg_len[i] == 0.0:
            rows[r] = pts[i]
        else:
            frac = (s - cum[i]) / seg_len[i]
            rows[r] = pts[i] + frac * seg[i]
    return rows


def chen_concat_signature(
    sx: TruncatedTensorSeries, sy: TruncatedTensorSeries
) -> TruncatedTensorSeries:
    """Signature of a concatenation from the two part signatures."""
    return tensor_mul(sx, sy)
