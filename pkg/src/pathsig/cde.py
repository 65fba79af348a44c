"""Linear controlled differential equations driven by piecewise-linear paths.

For dY = V(Y) dX with linear vector fields (one e x e matrix per driving
coordinate), the endpoint of the solution is a signature-weighted series of
matrix products applied to the initial state.  A Picard-iteration example
for the scalar exponential ODE and an explicit Euler stepper (used as an
independent oracle) are included.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .signature import _resample_by_parameter, as_path, signature


@dataclass(frozen=True)
class LinearVectorField:
    """One e x e matrix per driving coordinate, stacked as shape (d, e, e)."""

    matrices: np.ndarray

    def __post_init__(self):
        mats = np.asarray(self.matrices, dtype=float)
        if mats.ndim == 2:
            mats = mats[np.newaxis]
        if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
            raise ValueError(f"expected shape (d, e, e), got {mats.shape}")
        if not np.all(np.isfinite(mats)):
            raise ValueError("vector field entries must be finite")
        object.__setattr__(self, "matrices", mats)

    @property
    def driver_dim(self) -> int:
        return self.matrices.shape[0]

    @property
    def state_dim(self) -> int:
        return self.matrices.shape[1]


@dataclass
class PicardTrace:
    """Successive Picard iterates sampled on a grid."""

    grid: np.ndarray
    iterates: list = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.iterates) - 1

    def final(self) -> np.ndarray:
        return self.iterates[-1]


def _cumtrapz(values: np.ndarray, grid: np.ndarray) -> np.ndarray:
    """Cumulative trapezoid integral starting at 0."""
    areas = 0.5 * (values[1:] + values[:-1]) * np.diff(grid)
    return np.concatenate(([0.0], np.cumsum(areas)))


def picard_exponential(iterations: int, grid) -> PicardTrace:
    """Picard iterates for dy/dx = y, y(0) = 1, by trapezoid quadrature.

    Iterate k reproduces the degree-k Taylor polynomial of exp up to
    quadrature error, so the trace converges to e^x on the grid.
    """
    if iterations < 0:
        raise ValueError(f"iterations must be >= 0, got {iterations}")
    xs = np.asarray(grid, dtype=float).ravel()
    if xs.size < 2 or not np.all(np.diff(xs) > 0):
        raise ValueError("grid must contain at least two strictly increasing points")
    trace = PicardTrace(grid=xs, iterates=[np.ones_like(xs)])
    for _ in range(iterations):
        trace.iterates.append(1.0 + _cumtrapz(trace.iterates[-1], xs))
    return trace


def linear_cde_solve_signature(
    field_v: LinearVectorField, path, y0, depth: int
) -> np.ndarray:
    """Endpoint of dY = V(Y) dX from the truncated signature of the driver.

    Accumulates I + sum over words w of S^w(X) * V_{w_k} ... V_{w_1}: the
    earliest letter of a word is the earliest differential, so its matrix
    acts first (rightmost).  Converges to the true endpoint as the depth
    grows when the series is contractive.
    """
    pts = as_path(path)
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    if pts.shape[1] != field_v.driver_dim:
        raise ValueError(
            f"path dim {pts.shape[1]} does not match driver dim {field_v.driver_dim}"
        )
    y = np.asarray(y0, dtype=float).ravel()
    if y.size != field_v.state_dim:
        raise ValueError(f"y0 has dim {y.size}, expected {field_v.state_dim}")
    sig = signature(pts, depth)
    e = field_v.state_dim
    d = field_v.driver_dim
    total = np.eye(e)
    # prods[i] = V_{w_k} ... V_{w_1} for the i-th level-k word in the flat
    # lexicographic layout; appending letter i maps index w -> w*d + (i-1)
    prods = np.eye(e)[np.newaxis]
    for k in range(1, depth + 1):
        prods = np.einsum("iab,wbc->wiac", field_v.matrices, prods).reshape(d**k, e, e)
        total += np.einsum("w,wab->ab", sig.levels[k], prods)
    return total @ y


def euler_cde_oracle(field_v: LinearVectorField, path, y0, steps: int) -> np.ndarray:
    """Explicit Euler stepping of dY = V(Y) dX on a uniform path refinement.

    Independent of the signature route; first-order accurate in the step
    count.
    """
    pts = as_path(path)
    if pts.shape[1] != field_v.driver_dim:
        raise ValueError(
            f"path dim {pts.shape[1]} does not match driver dim {field_v.driver_dim}"
        )
    if steps < max(pts.shape[0] - 1, 1):
        raise ValueError(f"steps must be >= number of segments, got {steps}")
    y = np.asarray(y0, dtype=float).ravel()
    if y.size != field_v.state_dim:
        raise ValueError(f"y0 has dim {y.size}, expected {field_v.state_dim}")
    samples = _resample_by_parameter(pts, steps + 1)
    deltas = np.diff(samples, axis=0)
    e = field_v.state_dim
    step_mats = np.eye(e) + np.einsum("si,iab->sab", deltas, field_v.matrices)
    if e == 1:
        return y * np.prod(step_mats[:, 0, 0])
    for mat in step_mats:
        y = mat @ y
    return y


def exact_linear_cde_endpoint(field_v: LinearVectorField, path, y0) -> np.ndarray:
    """Exact endpoint via per-segment matrix exponentials.

    On a straight segment the driving increment is constant, so the flow is
    expm(sum_i V_i * delta_i); the endpoint is the ordered product of the
    segment flows applied to y0.  Uses a scaling-and-squaring Taylor
    evaluation, adequate for the moderate norms this library targets.
    """
    pts = as_path(path)
    if pts.shape[1] != field_v.driver_dim:
        raise ValueError(
            f"path dim {pts.shape[1]} does not match driver dim {field_v.driver_dim}"
        )
    y = np.asarray(y0, dtype=float).ravel()
    for j in range(pts.shape[0] - 1):
        delta = pts[j + 1] - pts[j]
        gen = np.einsum("i,iab->ab", delta, field_v.matrices)
        y = _expm(gen) @ y
    return y


def _expm(a: np.ndarray) -> np.ndarray:
    squarings = max(0, int(np.ceil(np.log2(max(np.linalg.norm(a, 1), 1e-300)))) + 1)
    scaled = a / 2.0**squarings
    out = np.eye(a.shape[0])
    term = np.eye(a.shape[0])
    for n in range(1, 20):
        term = term @ scaled / n
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out
