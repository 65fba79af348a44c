"""Lyndon words and log-signature coordinates.

A Lyndon word is strictly smaller (lexicographically) than all of its
proper rotations.  The bracketed expansions of the Lyndon words of length
<= L form a basis of the free Lie algebra truncated at L, so the series
logarithm of any signature has a unique coordinate vector over them.
Tuples compare exactly in the required lexicographic order, with a proper
prefix sorting before its extensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .tensor import TruncatedTensorSeries, Word, as_word, tensor_log


def is_lyndon(word: Sequence[int]) -> bool:
    """True when the word is strictly smaller than every proper rotation."""
    w = as_word(word)
    if len(w) == 0:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def standard_factorization(word: Sequence[int]) -> tuple[Word, Word]:
    """Split a Lyndon word w = u.v at its lexicographically smallest proper suffix.

    Both factors are again Lyndon and u < v.
    """
    w = as_word(word)
    if len(w) < 2:
        raise ValueError(f"factorization needs length >= 2, got {w}")
    if not is_lyndon(w):
        raise ValueError(f"{w} is not a Lyndon word")
    split = min(range(1, len(w)), key=lambda i: w[i:])
    return w[:split], w[split:]


@lru_cache(maxsize=None)
def bracket_expansion(word: Word) -> dict[Word, float]:
    """Tensor coefficients of the right-bracketing of a Lyndon word.

    Single letters map to themselves; otherwise the standard factorization
    w = u.v expands recursively as expansion(u) expansion(v) minus
    expansion(v) expansion(u).  The result has coefficient exactly 1 on w
    itself and support only on permutations of w's letters that are >= w.
    """
    w = as_word(word)
    if len(w) == 0:
        raise ValueError("empty word has no bracket expansion")
    if len(w) == 1:
        return {w: 1.0}
    u, v = standard_factorization(w)
    left, right = bracket_expansion(u), bracket_expansion(v)
    out: dict[Word, float] = {}
    for wu, cu in left.items():
        for wv, cv in right.items():
            out[wu + wv] = out.get(wu + wv, 0.0) + cu * cv
            out[wv + wu] = out.get(wv + wu, 0.0) - cu * cv
    return {k: c for k, c in out.items() if c != 0.0}


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    result, m = 1, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def log_sig_dimension(dim: int, depth: int) -> int:
    """Number of Lyndon words of length <= depth (necklace-counting formula)."""
    if dim < 1 or depth < 1:
        raise ValueError(f"need dim >= 1 and depth >= 1, got dim={dim}, depth={depth}")
    total = 0
    for k in range(1, depth + 1):
        divisor_sum = sum(_mobius(m) * dim ** (k // m) for m in range(1, k + 1) if k % m == 0)
        total += divisor_sum // k
    return total


@dataclass(frozen=True)
class LyndonBasis:
    """All Lyndon words of length <= depth with their bracket expansions.

    Words are ordered by length, then lexicographically, which is the
    coordinate order of log signatures.
    """

    dim: int
    depth: int
    words: tuple[Word, ...]
    expansions: tuple[dict[Word, float], ...]

    def factorization(self, word: Sequence[int]) -> tuple[Word, Word]:
        return standard_factorization(word)


def lyndon_words(dim: int, depth: int) -> LyndonBasis:
    """Enumerate the Lyndon basis by brute rotation filtering.

    Every word of each length is generated and kept when minimal among its
    rotations; at the scales this library targets the filter is cheap and
    doubles as its own correctness argument.
    """
    if dim < 1 or depth < 1:
        raise ValueError(f"need dim >= 1 and depth >= 1, got dim={dim}, depth={depth}")
    found: list[Word] = []
    for k in range(1, depth + 1):
        found.extend(w for w in product(range(1, dim + 1), repeat=k) if is_lyndon(w))
    return LyndonBasis(
        dim=dim,
        depth=depth,
        words=tuple(found),
        expansions=tuple(bracket_expansion(w) for w in found),
    )


@dataclass(frozen=True)
class LogSignature:
    """Coordinates of a log signature over a Lyndon basis."""

    basis: LyndonBasis
    coords: np.ndarray

    def __getitem__(self, word: Sequence[int]) -> float:
        w = as_word(word)
        return float(self.coords[self.basis.words.index(w)])


def log_signature_coords(
    sig: TruncatedTensorSeries, basis: LyndonBasis | None = None, residual_tol: float = 1e-9
) -> LogSignature:
    """Project the series logarithm of a signature onto Lyndon coordinates.

    Works level by level: each expansion has coefficient 1 on its own word
    and support only on lexicographically larger anagrams, so taking the
    Lyndon words in increasing order peels the coordinates off directly.
    The residual after removing all Lyndon contributions of a level must
    vanish; a non-vanishing residual means the input series is not
    group-like and is reported as an error.
    """
    if sig.depth < 1:
        raise ValueError(f"log-signature coordinates need depth >= 1, got {sig.depth}")
    if abs(sig[()] - 1.0) > 1e-12:
        raise ValueError(f"signature must have empty-word coefficient 1, got {sig[()]}")
    if basis is None:
        basis = lyndon_words(sig.dim, sig.depth)
    elif basis.dim != sig.dim or basis.depth != sig.depth:
        raise ValueError("basis does not match the signature's dim/depth")
    log_series = tensor_log(sig)
    residual = [lev.copy() for lev in log_series.levels]
    coords = np.zeros(len(basis.words))
    pos = 0
    for k in range(1, sig.depth + 1):
        for w, expansion in zip(basis.words, basis.expansions):
            if len(w) != k:
                continue
            c = residual[k][_level_offset(w, sig.dim)]
            coords[pos] = c
            pos += 1
            if c != 0.0:
                for word, coef in expansion.items():
                    residual[k][_level_offset(word, sig.dim)] -= c * coef
        worst = float(np.max(np.abs(residual[k]))) if residual[k].size else 0.0
        if worst > residual_tol:
            raise ValueError(
                f"input series is not group-like: level-{k} residual {worst:.3e} "
                f"exceeds {residual_tol:.1e}"
            )
    return LogSignature(basis=basis, coords=coords)


def _level_offset(word: Word, dim: int) -> int:
    idx = 0
    for letter in word:
        idx = idx * dim + (letter - 1)
    return idx
