"""Statistical features extracted from signatures of embedded streams.

Includes the closed-form level-2 terms of the cumulative-sum lead-lag
embedding, recovery of mean and variance from those terms, and assembly of
standardized feature matrices (one row per stream).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .embeddings import (
    cumsum_basepoint,
    embed_linear,
    embed_rectilinear,
    lead_lag,
    lead_lag_time,
    missing_data_embed,
)
from .lyndon import LyndonBasis, log_signature_coords, lyndon_words
from .signature import signature
from .tensor import word_label, words

#: Embeddings applicable to a scalar stream, by CLI/config name.
EMBEDDINGS: dict[str, Callable] = {
    "linear": embed_linear,
    "rectilinear": embed_rectilinear,
    "leadlag": lambda values, times=None: lead_lag(values),
    "cumsum-leadlag": lambda values, times=None: lead_lag(cumsum_basepoint(values)),
    "leadlag-time": lead_lag_time,
    "missing": missing_data_embed,
}


def quadratic_variation(values) -> float:
    """Sum of squared consecutive differences; 0 for a single point."""
    vals = np.asarray(values, dtype=float).ravel()
    if vals.size < 1:
        raise ValueError("stream must contain at least one value")
    return float(np.sum(np.diff(vals) ** 2))


class Level2Terms(NamedTuple):
    """Signature terms up to level 2 of a planar path (constant term omitted)."""

    s1: float
    s2: float
    s11: float
    s12: float
    s21: float
    s22: float


def cumsum_leadlag_level2(values) -> Level2Terms:
    """Closed-form level-2 terms of the cumsum + lead-lag embedding.

    With T = sum(x) and Q = sum(x^2):

        S1 = S2 = T,  S11 = S22 = T^2 / 2,
        S12 = (T^2 - Q) / 2,  S21 = (T^2 + Q) / 2.

    These match signature(lead_lag(cumsum_basepoint(x)), 2) exactly: the
    embedded path has increment T while its quadratic variation telescopes
    back to Q, and the clockwise lead-lag orientation puts -Q/2 into the
    (1,2) term.  For {1,4,2,6}: (13, 13, 84.5, 56, 113, 84.5).
    """
    vals = np.asarray(values, dtype=float).ravel()
    total = float(np.sum(vals))
    sumsq = float(np.sum(vals**2))
    half_sq = 0.5 * total**2
    return Level2Terms(
        s1=total,
        s2=total,
        s11=half_sq,
        s12=0.5 * (total**2 - sumsq),
        s21=0.5 * (total**2 + sumsq),
        s22=half_sq,
    )


def bare_leadlag_level2(values) -> Level2Terms:
    """Level-2 terms of the lead-lag embedding of the raw stream.

    Computed from the actual pipeline signature(lead_lag(x), 2), which is
    the ground truth.  The terms satisfy S1 = S2 = total increment,
    S11 = S22 = increment^2 / 2 and S12 - S21 = -QV(x); for {1,4,2,6} the
    full signature is (1, 5, 5, 12.5, -2, 27, 12.5).
    """
    vals = np.asarray(values, dtype=float).ravel()
    if vals.size < 2:
        raise ValueError("need at least two values")
    sig = signature(lead_lag(vals), 2)
    return Level2Terms(
        s1=sig[(1,)],
        s2=sig[(2,)],
        s11=sig[(1, 1)],
        s12=sig[(1, 2)],
        s21=sig[(2, 1)],
        s22=sig[(2, 2)],
    )


def mean_var_from_sig(s12: float, s21: float, s1: float, count: int) -> tuple[float, float]:
    """Population mean and variance of a stream from its cumsum lead-lag terms.

    mean = S1 / N and Var = -(N+1)/N^2 * S12 + (N-1)/N^2 * S21, the
    population convention E[X^2] - E[X]^2.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    n = float(count)
    mean = s1 / n
    var = -(n + 1.0) / n**2 * s12 + (n - 1.0) / n**2 * s21
    return mean, var


def standardize_columns(
    rows: np.ndarray, fit_rows: np.ndarray | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Center and scale columns to zero mean / unit standard deviation.

    Statistics are computed on `fit_rows` when given (e.g. the training
    split) and applied to `rows`.  Columns with zero standard deviation are
    centered only.  Returns (standardized, means, stds).
    """
    rows = np.asarray(rows, dtype=float)
    fit = rows if fit_rows is None else np.asarray(fit_rows, dtype=float)
    means = fit.mean(axis=0)
    stds = fit.std(axis=0)
    scale = np.where(stds > 0, stds, 1.0)
    return (rows - means) / scale, means, stds


@dataclass
class FeatureMatrix:
    """Signature features for a collection of streams.

    One row per stream; columns are signature (or log-signature)
    coefficients with the constant empty-word column removed.  When
    standardized, `column_means`/`column_stds` record the statistics that
    were subtracted and divided out.
    """

    words: list[str]
    rows: np.ndarray
    labels: np.ndarray | None = None
    column_means: np.ndarray | None = None
    column_stds: np.ndarray | None = None

    def to_json_dict(self) -> dict:
        return {
            "words": self.words,
            "rows": self.rows.tolist(),
            "labels": None if self.labels is None else self.labels.tolist(),
            "means": None if self.column_means is None else self.column_means.tolist(),
            "stds": None if self.column_stds is None else self.column_stds.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = list(self.words) + (["label"] if self.labels is not None else [])
        writer.writerow(header)
        for i, row in enumerate(self.rows):
            out = [f"{v:.17g}" for v in row]
            if self.labels is not None:
                out.append(f"{self.labels[i]:g}")
            writer.writerow(out)
        return buf.getvalue()


def signature_feature_words(dim: int, depth: int, log_coords: bool = False) -> list[str]:
    """Column labels for feature rows (constant term excluded)."""
    if log_coords:
        return [word_label(w, log=True) for w in lyndon_words(dim, depth).words]
    return [word_label(w) for w in words(dim, depth) if len(w) > 0]


def build_feature_matrix(
    streams: Sequence[Sequence[float]],
    depth: int = 2,
    embedding: str = "cumsum-leadlag",
    log_coords: bool = False,
    standardize: bool = False,
    labels: Sequence[float] | None = None,
    times: Sequence[Sequence[float]] | None = None,
) -> FeatureMatrix:
    """Embed each stream, compute its (log-)signature and stack the rows.

    The constant empty-word term is dropped.  With `standardize` the
    columns are centered/scaled over the whole matrix; fit on a training
    subset separately via `standardize_columns` when splitting.
    """
    if len(streams) == 0:
        raise ValueError("need at least one stream")
    if embedding not in EMBEDDINGS:
        raise ValueError(f"unknown embedding {embedding!r}; choose from {sorted(EMBEDDINGS)}")
    embed = EMBEDDINGS[embedding]
    basis: LyndonBasis | None = None
    rows = []
    dim = None
    for i, stream in enumerate(streams):
        ts = None if times is None else times[i]
        path = embed(stream, ts)
        if dim is None:
            dim = path.shape[1]
        elif path.shape[1] != dim:
            raise ValueError(f"stream {i} embeds to dim {path.shape[1]}, expected {dim}")
        sig = signature(path, depth)
        if log_coords:
            if basis is None:
                basis = lyndon_words(dim, depth)
            rows.append(log_signature_coords(sig, basis).coords)
        else:
            rows.append(sig.coeffs[1:])
    matrix = np.asarray(rows)
    label_arr = None if labels is None else np.asarray(labels, dtype=float)
    if label_arr is not None and label_arr.size != matrix.shape[0]:
        raise ValueError(f"{label_arr.size} labels for {matrix.shape[0]} streams")
    means = stds = None
    if standardize:
        matrix, means, stds = standardize_columns(matrix)
    return FeatureMatrix(
        words=signature_feature_words(dim, depth, log_coords),
        rows=matrix,
        labels=label_arr,
        column_means=means,
        column_stds=stds,
    )
