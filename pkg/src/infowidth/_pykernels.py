"""Reference kernels in numpy; used when the compiled extension is unavailable.

Classes are batches of rows: ``classes[t]`` holds the integer encodings of the
``k`` functions of class ``t`` (bit ``i`` of an encoding is the value at point
``i + 1``).  Rows are assumed to have distinct entries.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

BACKEND = "python"


def point_subsets(n: int, d: int) -> np.ndarray:
    """All ``d``-subsets of the ``n`` points as rows of 0-based bit positions."""
    combos = list(itertools.combinations(range(n), d))
    if not combos:
        return np.zeros((0, d), dtype=np.int64)
    return np.asarray(combos, dtype=np.int64).reshape(len(combos), d)


def _patterns(classes: np.ndarray, positions: np.ndarray) -> np.ndarray:
    pat = np.zeros(classes.shape, dtype=np.int64)
    for q, pos in enumerate(positions):
        pat |= ((classes >> int(pos)) & 1) << q
    return pat


def _full_trace(pat: np.ndarray, d: int) -> np.ndarray:
    width = 1 << d
    if width <= 63:
        seen = np.bitwise_or.reduce(np.left_shift(np.int64(1), pat), axis=1)
        return seen == (np.int64(1) << width) - 1
    srt = np.sort(pat, axis=1)
    distinct = 1 + np.count_nonzero(np.diff(srt, axis=1), axis=1)
    return distinct == width


def shatters_any(classes: np.ndarray, n: int, d: int) -> np.ndarray:
    """Per row: does some set of ``d`` points receive all ``2**d`` patterns?"""
    classes = np.ascontiguousarray(classes, dtype=np.int64)
    rows, k = classes.shape
    out = np.zeros(rows, dtype=bool)
    if d == 0:
        out[:] = k >= 1
        return out
    if d > n or k < (1 << d):
        return out
    for positions in point_subsets(n, d):
        pending = ~out
        if not pending.any():
            break
        out[pending] = _full_trace(_patterns(classes[pending], positions), d)
    return out


def vc_dims(classes: np.ndarray, n: int) -> np.ndarray:
    """VC dimension per row.

    Shattered sets are closed under taking subsets, so the search climbs
    ``d = 1, 2, ...`` and a row stops at the first size with no shattered set.
    """
    classes = np.ascontiguousarray(classes, dtype=np.int64)
    rows, k = classes.shape
    out = np.zeros(rows, dtype=np.int64)
    alive = np.arange(rows)
    top = min(n, int(math.floor(math.log2(k)))) if k else 0
    for d in range(1, top + 1):
        if alive.size == 0:
            break
        hit = shatters_any(classes[alive], n, d)
        alive = alive[hit]
        out[alive] = d
    return out


def l_dims(classes: np.ndarray, n: int) -> np.ndarray:
    classes = np.ascontiguousarray(classes, dtype=np.int64)
    full = (1 << n) - 1
    ones = np.bitwise_and.reduce(classes, axis=1)
    zeros = np.bitwise_and.reduce(~classes & full, axis=1)
    agree = ones | zeros
    return np.array([int(v).bit_count() for v in agree], dtype=np.int64)


def enumerate_dims(n: int) -> tuple[np.ndarray, np.ndarray]:
    """VC and L dimension of every class, indexed by member bitmask.

    Index 0 (the empty class) is reported as ``-1`` in both arrays.
    """
    nfunc = 1 << n
    nclass = 1 << nfunc
    funcs = np.arange(nfunc, dtype=np.int64)
    vc = np.zeros(nclass, dtype=np.int8)
    ld = np.zeros(nclass, dtype=np.int8)
    for emask in range(1 << n):
        positions = [i for i in range(n) if emask >> i & 1]
        size = len(positions)
        restr = np.zeros(nfunc, dtype=np.int64)
        for q, pos in enumerate(positions):
            restr |= ((funcs >> pos) & 1) << q
        trace = np.zeros(nclass, dtype=np.uint64)
        for j in range(nfunc):
            lo = 1 << j
            trace[lo : 2 * lo] = trace[:lo] | np.uint64(1 << int(restr[j]))
        full = np.uint64((1 << (1 << size)) - 1)
        shattered = trace == full
        vc[shattered] = np.maximum(vc[shattered], size)
        single = (trace != 0) & ((trace & (trace - np.uint64(1))) == 0)
        ld[single] = np.maximum(ld[single], size)
    vc[0] = -1
    ld[0] = -1
    return vc, ld
