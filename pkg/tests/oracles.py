"""Independent, deliberately naive reference implementations used by the tests.

Nothing here imports the package: classes are Python sets of tuples, the VC
and L dimensions are found by scanning every point subset, and measures are
computed with exact rationals and mpmath.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import mpmath

mpmath.mp.dps = 40


def all_functions(n):
    """Every function [n] -> {0,1} as a tuple of values at points 1..n."""
    return list(itertools.product((0, 1), repeat=n))[::1]


def code_of(values):
    return sum(v << i for i, v in enumerate(values))


def naive_vc(cls, n):
    best = 0
    for d in range(1, n + 1):
        for pts in itertools.combinations(range(n), d):
            patterns = {tuple(f[p] for p in pts) for f in cls}
            if len(patterns) == 2**d:
                best = d
    return best


def naive_l(cls, n):
    best = 0
    for d in range(1, n + 1):
        for pts in itertools.combinations(range(n), d):
            patterns = {tuple(f[p] for p in pts) for f in cls}
            if len(patterns) == 1:
                best = d
    return best


def all_classes(n):
    funcs = all_functions(n)
    for size in range(1, len(funcs) + 1):
        yield from itertools.combinations(funcs, size)


def naive_counts(n, predicate):
    """Class-size profile of the classes on [n] that satisfy ``predicate``."""
    counts = {}
    for cls in all_classes(n):
        if predicate(cls):
            counts[len(cls)] = counts.get(len(cls), 0) + 1
    return counts


def measures_from_counts(ny, counts):
    """(I, H, l) from a size profile, evaluated at 40 significant digits."""
    total = sum(counts.values())
    h = mpmath.fsum(mpmath.mpf(c) / total * mpmath.log(k, 2) for k, c in counts.items())
    info = mpmath.log(ny, 2) - h
    ell = mpmath.log(mpmath.mpf(2) ** ny / total, 2)
    return float(info), float(h), float(ell)


def density(counts):
    total = sum(counts.values())
    return {k: Fraction(c, total) for k, c in counts.items()}


def brute_width(ny, m):
    """Max over every m-member property of log2 ny - mean log2 |member|."""
    logs = [mpmath.log(len(s), 2) for k in range(1, ny + 1) for s in itertools.combinations(range(ny), k)]
    best = None
    for combo in itertools.combinations(logs, m):
        value = mpmath.log(ny, 2) - mpmath.fsum(combo) / m
        if best is None or value > best:
            best = value
    return float(best)


def greedy_width(ny, m):
    """Width from the smallest-first filling argument, in mpmath."""
    left, acc, k = m, mpmath.mpf(0), 1
    while left:
        take = min(left, int(mpmath.binomial(ny, k)))
        acc += take * mpmath.log(k, 2)
        left -= take
        k += 1
    return mpmath.log(ny, 2) - acc / m
