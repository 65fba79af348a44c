"""Truncated tensor algebra over R^d.

A truncated series keeps one real coefficient per word (multi-index) of
length <= depth over the alphabet {1, ..., dim}.  Storage is dense and
level-major: level k is a flat array of the d**k coefficients of all
length-k words in lexicographic order, so a word maps to a base-d number
within its level.  All series are immutable values after construction and
every operation returns a new series, which makes them safe to share
across threads.
"""

from __future__ import annotations

import math
from collections import Counter
from itertools import product
from typing import Iterator, Sequence

import numpy as np

# A word is a tuple of 1-based letters, e.g. (1, 2, 1); () is the empty word.
Word = tuple[int, ...]


def as_word(letters: Sequence[int]) -> Word:
    """Coerce to a word tuple, checking letters are positive integers."""
    word = tuple(int(i) for i in letters)
    if any(i < 1 for i in word):
        raise ValueError(f"letters must be >= 1, got {word}")
    return word


def words(dim: int, depth: int) -> Iterator[Word]:
    """All words of length <= depth, level-major, lexicographic in each level."""
    yield ()
    for k in range(1, depth + 1):
        yield from product(range(1, dim + 1), repeat=k)


def word_index(word: Sequence[int], dim: int, depth: int) -> int:
    """Flat index of a word in the level-major coefficient layout.

    The empty word is index 0; level k starts at sum(d**j for j < k) and
    words within it are ordered lexicographically.
    """
    w = as_word(word)
    if len(w) > depth:
        raise ValueError(f"word {w} longer than depth {depth}")
    if any(i > dim for i in w):
        raise ValueError(f"word {w} has letters outside 1..{dim}")
    offset = sum(dim**j for j in range(len(w)))
    idx = 0
    for letter in w:
        idx = idx * dim + (letter - 1)
    return offset + idx


def word_label(word: Sequence[int], log: bool = False) -> str:
    """Header label for one coefficient, e.g. "S(1,2)" or "logS(1,2)"."""
    name = "logS" if log else "S"
    return f"{name}({','.join(str(i) for i in word)})"


class TruncatedTensorSeries:
    """Dense truncated tensor series: levels[k] holds the level-k coefficients."""

    __slots__ = ("dim", "depth", "levels")

    def __init__(self, dim: int, depth: int, levels: Sequence[np.ndarray]):
        if dim < 1:
            raise ValueError(f"dim must be >= 1, got {dim}")
        if depth < 0:
            raise ValueError(f"depth must be >= 0, got {depth}")
        if len(levels) != depth + 1:
            raise ValueError(f"expected {depth + 1} levels, got {len(levels)}")
        self.dim = dim
        self.depth = depth
        self.levels = [np.asarray(lev, dtype=float) for lev in levels]
        for k, lev in enumerate(self.levels):
            if lev.shape != (dim**k,):
                raise ValueError(f"level {k} must have shape ({dim**k},), got {lev.shape}")

    @classmethod
    def unit(cls, dim: int, depth: int) -> "TruncatedTensorSeries":
        """The multiplicative identity: 1 on the empty word, 0 elsewhere."""
        levels = [np.zeros(dim**k) for k in range(depth + 1)]
        levels[0][0] = 1.0
        return cls(dim, depth, levels)

    @classmethod
    def zero(cls, dim: int, depth: int) -> "TruncatedTensorSeries":
        return cls(dim, depth, [np.zeros(dim**k) for k in range(depth + 1)])

    @classmethod
    def from_coeffs(cls, dim: int, depth: int, coeffs: Sequence[float]) -> "TruncatedTensorSeries":
        """Build a series from the flat level-major coefficient vector."""
        flat = np.asarray(coeffs, dtype=float)
        sizes = [dim**k for k in range(depth + 1)]
        if flat.shape != (sum(sizes),):
            raise ValueError(f"expected {sum(sizes)} coefficients, got {flat.shape}")
        levels, start = [], 0
        for size in sizes:
            levels.append(flat[start : start + size].copy())
            start += size
        return cls(dim, depth, levels)

    @property
    def coeffs(self) -> np.ndarray:
        """Flat level-major coefficient vector (a copy)."""
        return np.concatenate(self.levels)

    def __getitem__(self, word: Sequence[int]) -> float:
        w = as_word(word)
        if len(w) > self.depth or any(i > self.dim for i in w):
            raise ValueError(f"word {w} not addressable at dim={self.dim}, depth={self.depth}")
        idx = 0
        for letter in w:
            idx = idx * self.dim + (letter - 1)
        return float(self.levels[len(w)][idx])

    def __repr__(self) -> str:
        return f"TruncatedTensorSeries(dim={self.dim}, depth={self.depth}, coeffs={self.coeffs!r})"


def _check_compatible(a: TruncatedTensorSeries, b: TruncatedTensorSeries) -> None:
    if a.dim != b.dim or a.depth != b.depth:
        raise ValueError(
            f"series mismatch: (dim={a.dim}, depth={a.depth}) vs (dim={b.dim}, depth={b.depth})"
        )


def tensor_add(a: TruncatedTensorSeries, b: TruncatedTensorSeries) -> TruncatedTensorSeries:
    _check_compatible(a, b)
    return TruncatedTensorSeries(a.dim, a.depth, [x + y for x, y in zip(a.levels, b.levels)])


def tensor_scale(a: TruncatedTensorSeries, c: float) -> TruncatedTensorSeries:
    return TruncatedTensorSeries(a.dim, a.depth, [c * lev for lev in a.levels])


def tensor_mul(a: TruncatedTensorSeries, b: TruncatedTensorSeries) -> TruncatedTensorSeries:
    """Concatenation product of truncated series.

    The coefficient of word w in a*b is the sum of a[u]*b[v] over all
    splittings w = u.v; words longer than the truncation depth are dropped.
    The flat outer product of two level arrays lands exactly on the
    lexicographic layout of the concatenated level.
    """
    _check_compatible(a, b)
    levels = []
    for n in range(a.depth + 1):
        acc = np.zeros(a.dim**n)
        for i in range(n + 1):
            acc += np.multiply.outer(a.levels[i], b.levels[n - i]).ravel()
        levels.append(acc)
    return TruncatedTensorSeries(a.dim, a.depth, levels)


def tensor_exp(increment: Sequence[float], depth: int) -> TruncatedTensorSeries:
    """Series exponential of a level-1 increment vector.

    The coefficient of (i1, ..., ik) is increment[i1]*...*increment[ik] / k!,
    which is the signature of a straight segment with that displacement.
    """
    delta = np.asarray(increment, dtype=float).ravel()
    if delta.size < 1:
        raise ValueError("increment must have at least one coordinate")
    if not np.all(np.isfinite(delta)):
        raise ValueError("increment must be finite")
    levels = [np.ones(1)]
    for k in range(1, depth + 1):
        levels.append(np.multiply.outer(levels[-1], delta).ravel() / k)
    return TruncatedTensorSeries(delta.size, depth, levels)


def tensor_log(x: TruncatedTensorSeries) -> TruncatedTensorSeries:
    """Series logarithm, defined for positive empty-word coefficient.

    Writing x = lam * (1 + u) with u carrying no empty-word part, this
    evaluates log(lam) + sum_{n>=1} (-1)^(n+1)/n * u^n.  Since u is
    nilpotent at truncation depth L, powers beyond n = L vanish.
    """
    lam = float(x.levels[0][0])
    if lam <= 0:
        raise ValueError(f"empty-word coefficient must be > 0, got {lam}")
    u_levels = [lev / lam for lev in x.levels]
    u_levels[0] = np.zeros(1)
    u = TruncatedTensorSeries(x.dim, x.depth, u_levels)
    out = TruncatedTensorSeries.zero(x.dim, x.depth)
    out.levels[0][0] = math.log(lam)
    power = u
    sign = 1.0
    for n in range(1, x.depth + 1):
        out = tensor_add(out, tensor_scale(power, sign / n))
        if n < x.depth:
            power = tensor_mul(power, u)
        sign = -sign
    return out


def tensor_exp_series(x: TruncatedTensorSeries) -> TruncatedTensorSeries:
    """Series exponential sum_{n=0}^{L} x^n / n! of a series with no constant term.

    Inverse of tensor_log on series with empty-word coefficient 1; the input
    must have (numerically) zero empty-word coefficient.
    """
    lam = float(x.levels[0][0])
    if abs(lam) > 1e-12:
        raise ValueError(f"empty-word coefficient must be 0, got {lam}")
    if lam != 0.0:
        x = TruncatedTensorSeries(x.dim, x.depth, [lev.copy() for lev in x.levels])
        x.levels[0][0] = 0.0
    out = TruncatedTensorSeries.unit(x.dim, x.depth)
    term = TruncatedTensorSeries.unit(x.dim, x.depth)
    for n in range(1, x.depth + 1):
        term = tensor_scale(tensor_mul(term, x), 1.0 / n)
        out = tensor_add(out, term)
    return out


def shuffle(i_word: Sequence[int], j_word: Sequence[int]) -> Counter:
    """Multiset of all interleavings of two words, with multiplicities.

    The total count over the multiset is binomial(k + m, k) for words of
    lengths k and m.  Products of signature coefficients expand over this
    multiset (the shuffle identity).
    """
    left = as_word(i_word)
    right = as_word(j_word)

    def rec(a: Word, b: Word) -> Counter:
        if not a:
            return Counter({b: 1})
        if not b:
            return Counter({a: 1})
        out: Counter = Counter()
        for w, m in rec(a[1:], b).items():
            out[(a[0],) + w] += m
        for w, m in rec(a, b[1:]).items():
            out[(b[0],) + w] += m
        return out

    return rec(left, right)
