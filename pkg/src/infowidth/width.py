"""Information width ``I*(l)``, its optimal witness, ``kappa*`` and efficiency.

``I*(l)`` is the largest whole-space information conveyed by any property whose
description complexity is ``l``.  The maximizer packs its ``m = |Z| 2**-l``
members into the smallest nonempty subsets: every subset of size below a
threshold ``r(l)``, topped up with subsets of size ``r(l)``.

Two backends evaluate the closed form:

``exact``
    Python integers for the binomial counts; only the final ratios are rounded.
    Cost grows with ``r(l)``, fine for spaces of a few thousand objects.
``logdomain``
    Binomial probabilities ``C(N, k) / 2**N`` in natural-log form (saddle point
    expansion) summed over the window of terms that can matter.  Handles target
    spaces of size ``2**30``.

Brute-force oracles enumerate every property of a tiny space.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bigcount import (
    LN2,
    bits_to_fraction,
    ln_binom_pmf_half,
    ln_binom_pmf_half_scalar,
    log2_ratio,
    logsumexp,
)
from .errors import DomainError, OutOfRangeError, UndefinedValueError
from .measures import (
    WHOLE_SPACE,
    PropertyCollection,
    description_complexity,
    information,
    info_between_sets,
)

EXACT = "exact"
LOGDOMAIN = "logdomain"
AUTO = "auto"
BACKENDS = (EXACT, LOGDOMAIN, AUTO)

# AUTO switches to the log domain above this many target objects
EXACT_LIMIT = 4096

# ln(1e-40): window terms below this (relative to the normalizer) are dropped
_LN_CUT = -92.0
# tighter window for the cumulative sums that only locate r(l)
_LN_CUT_SEARCH = -45.0
# relative slack in the r(l) comparison; makes exact ties robust to rounding
_TIE_RTOL = 1e-12

BRUTE_FORCE_LIMIT = 4
PROVIDER_LIMIT = 3


def min_description_bits(space_size: int) -> float:
    """Smallest achievable ``l``: all ``2**N - 1`` nonempty subsets, as a float."""
    return -math.log1p(-(2.0 ** -space_size)) / LN2


@dataclass(frozen=True)
class WidthQuery:
    """A point at which to evaluate the width.

    Give either ``l`` (bits, real) or ``members`` (``|Z_x|``, exact integer).
    """

    space_size: int
    l: float | None = None
    members: int | None = None
    backend: str = AUTO

    def __post_init__(self):
        if self.space_size < 1:
            raise DomainError("target space must be nonempty")
        if (self.l is None) == (self.members is None):
            raise DomainError("give exactly one of l or members")
        if self.backend not in BACKENDS:
            raise DomainError(f"unknown backend {self.backend!r}")
        if self.members is not None:
            if not 1 <= self.members <= (1 << self.space_size) - 1:
                raise OutOfRangeError(
                    f"member count {self.members} outside [1, 2**{self.space_size} - 1]"
                )
        else:
            l = float(self.l)
            lo = min_description_bits(self.space_size)
            # log2(|Z| / (|Z| - 1)) written directly can land an ulp below lo
            if not math.isfinite(l) or l > self.space_size or l < lo * (1.0 - _TIE_RTOL):
                raise OutOfRangeError(
                    f"l = {l} outside [{min_description_bits(self.space_size)}, {self.space_size}]"
                )

    @property
    def bits(self) -> float:
        if self.l is not None:
            return max(float(self.l), min_description_bits(self.space_size))
        return log2_ratio(1 << self.space_size, self.members)

    def resolved_backend(self) -> str:
        if self.backend != AUTO:
            return self.backend
        return EXACT if self.space_size <= EXACT_LIMIT else LOGDOMAIN


@dataclass(frozen=True)
class WidthResult:
    width_bits: float
    threshold: int
    backend: str
    accuracy: float
    l: float


def _query(space_size, l, members, backend) -> WidthQuery:
    if isinstance(space_size, WidthQuery):
        return space_size
    return WidthQuery(int(space_size), l=l, members=members, backend=backend)


# --- exact backend ------------------------------------------------------------


def _exact_members(q: WidthQuery) -> Fraction:
    ambient = 1 << q.space_size
    if q.members is not None:
        return Fraction(q.members)
    m = ambient * bits_to_fraction(-float(q.l))
    # 2**-l is rounded to a double; keep m inside the achievable range
    return min(max(m, Fraction(1)), Fraction(ambient - 1))


def _exact_threshold(n: int, m: Fraction) -> tuple[int, int]:
    """``(r, S_{r-1})`` with exact cumulative binomial sums."""
    total, term = 0, 1
    for a in range(1, n + 1):
        term = term * (n - a + 1) // a
        if total + term >= m:
            return a, total
        total += term
    raise OutOfRangeError("member count exceeds the nonempty subsets")


def _exact_width(q: WidthQuery) -> WidthResult:
    n = q.space_size
    m = _exact_members(q)
    r, below = _exact_threshold(n, m)
    terms = []
    term = n  # C(n, 1)
    for k in range(2, r):
        term = term * (n - k + 1) // k
        terms.append(float(Fraction(term) / m) * math.log2(k))
    if r > 1:
        terms.append(float((m - below) / m) * math.log2(r))
    width = math.log2(n) - math.fsum(terms)
    return WidthResult(width, r, EXACT, 4 * np.finfo(float).eps * max(1.0, math.log2(n)), q.bits)


# --- log-domain backend ---------------------------------------------------------


def _lower_cut(n: int, hi: int, ln_floor: float) -> int:
    """Smallest ``k`` in ``[0, hi]`` with ``ln pmf(k) >= ln_floor``; ``hi <= n/2``.

    The binomial pmf is nondecreasing on ``[0, n/2]``.
    """
    if ln_binom_pmf_half_scalar(n, 0) >= ln_floor:
        return 0
    if ln_binom_pmf_half_scalar(n, hi) < ln_floor:
        return hi
    lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ln_binom_pmf_half_scalar(n, mid) >= ln_floor:
            hi = mid
        else:
            lo = mid
    return hi


def _ln_lower_sum(n: int, upto: int) -> float:
    """``ln(sum_{k=0}^{upto} C(n,k)/2**n)`` for ``upto <= n/2``."""
    top = ln_binom_pmf_half_scalar(n, upto)
    lo = _lower_cut(n, upto, top + _LN_CUT_SEARCH)
    return logsumexp(ln_binom_pmf_half(n, np.arange(lo, upto + 1)))


@functools.lru_cache(maxsize=8192)
def log2_cumulative_fraction(n: int, a: int) -> float:
    """``log2(sum_{i=1}^{a} C(n, i) / 2**n)``, accurate even when close to zero."""
    if a < 1:
        return -math.inf
    if a >= n:
        return math.log1p(-(2.0 ** -n)) / LN2
    if 2 * a <= n:
        ln_with_empty = _ln_lower_sum(n, a)
        ln_empty = -n * LN2
        # remove the k = 0 term
        gap = ln_empty - ln_with_empty
        return (ln_with_empty + math.log1p(-math.exp(gap))) / LN2 if gap < 0 else -math.inf
    # upper tail sum_{i>a} C(n,i) = sum_{j<=n-a-1} C(n,j), plus the empty set
    ln_tail = _ln_lower_sum(n, n - a - 1)
    ln_missing = np.logaddexp(ln_tail, -n * LN2)
    return math.log1p(-math.exp(ln_missing)) / LN2


def _log_threshold(n: int, l: float) -> int:
    goal = -l * (1.0 + _TIE_RTOL)
    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi) // 2
        if log2_cumulative_fraction(n, mid) >= goal:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _log_width(q: WidthQuery) -> WidthResult:
    n = q.space_size
    l = q.bits
    r = _log_threshold(n, l)
    if r == 1:
        return WidthResult(math.log2(n), 1, LOGDOMAIN, 1e-12, l)
    shift = l * LN2  # weights are C(n,k) / m = pmf(k) * 2**l
    top = r - 1
    if 2 * top <= n:
        lo = _lower_cut(n, top, _LN_CUT - shift)
        hi = top
    else:
        lo = _lower_cut(n, n // 2, _LN_CUT - shift)
        hi = min(top, n - lo)
    lo = max(lo, 1)
    ks = np.arange(lo, hi + 1)
    weights = np.exp(ln_binom_pmf_half(n, ks) + shift)
    mass = math.fsum(weights.tolist())
    body = math.fsum((weights * np.log2(ks)).tolist())
    rest = max(0.0, 1.0 - mass)
    width = math.log2(n) - (body + rest * math.log2(r))
    return WidthResult(width, r, LOGDOMAIN, 1e-12 * max(1.0, math.log2(n)), l)


# --- public API ---------------------------------------------------------------


def threshold_r(space_size, l: float | None = None, *, members: int | None = None, backend: str = AUTO) -> int:
    """Smallest ``a`` with ``sum_{i=1}^{a} C(N, i) >= |Z| 2**-l``."""
    q = _query(space_size, l, members, backend)
    if q.resolved_backend() == EXACT:
        return _exact_threshold(q.space_size, _exact_members(q))[0]
    return _log_threshold(q.space_size, q.bits)


def info_width(space_size, l: float | None = None, *, members: int | None = None, backend: str = AUTO) -> WidthResult:
    """Evaluate ``I*(l)`` on a target space of ``space_size`` objects."""
    q = _query(space_size, l, members, backend)
    if q.resolved_backend() == EXACT:
        return _exact_width(q)
    return _log_width(q)


def optimal_property(space_size: int, members: int) -> PropertyCollection:
    """Profiled witness attaining ``I*`` for an integral member count."""
    if isinstance(members, float) and not members.is_integer():
        raise DomainError("the optimal witness needs an integral member count")
    members = int(members)
    q = WidthQuery(space_size, members=members, backend=EXACT)
    r, below = _exact_threshold(q.space_size, Fraction(members))
    counts = {k: math.comb(space_size, k) for k in range(1, r)}
    counts[r] = members - below
    return PropertyCollection.profiled(space_size, counts)


def kappa_star(space_size, l: float | None = None, *, members: int | None = None, backend: str = AUTO) -> float:
    """Per-bit cost of maximal information, ``l / I*(l)``."""
    res = info_width(space_size, l, members=members, backend=backend)
    if res.width_bits <= 0.0:
        raise UndefinedValueError("kappa* is undefined where the width is zero")
    return res.l / res.width_bits


def efficiency(x: PropertyCollection, backend: str = AUTO) -> float:
    """``I(x:Y) / I*(l(x))``."""
    info = information(x)
    if info <= 0.0:
        raise UndefinedValueError("efficiency is undefined for a property conveying no information")
    res = info_width(x.space.size, members=x.size, backend=backend)
    return info / res.width_bits


# --- oracles --------------------------------------------------------------------


def _nonempty_subsets(space_size: int) -> list[tuple[int, ...]]:
    elems = range(space_size)
    return [c for k in range(1, space_size + 1) for c in itertools.combinations(elems, k)]


def brute_force_width(space_size: int, members: int) -> float:
    """Maximum of ``I(x:Y)`` over every property with ``members`` member subsets."""
    if space_size > BRUTE_FORCE_LIMIT:
        raise DomainError(f"brute force limited to spaces of size <= {BRUTE_FORCE_LIMIT}")
    subsets = _nonempty_subsets(space_size)
    if not 1 <= members <= len(subsets):
        raise OutOfRangeError(f"member count {members} outside [1, {len(subsets)}]")
    logs = [math.log2(len(s)) for s in subsets]
    best = -math.inf
    for combo in itertools.combinations(range(len(subsets)), members):
        value = math.log2(space_size) - math.fsum(logs[i] for i in combo) / members
        if value > best:
            best = value
    return best


def provider_width_bruteforce(space_size: int, members: int) -> float:
    """Provider's width: max over properties of the min over informative targets."""
    if space_size > PROVIDER_LIMIT:
        raise DomainError(f"provider width limited to spaces of size <= {PROVIDER_LIMIT}")
    subsets = [frozenset(s) for s in _nonempty_subsets(space_size)]
    if not 1 <= members <= len(subsets):
        raise OutOfRangeError(f"member count {members} outside [1, {len(subsets)}]")
    best = -math.inf
    for combo in itertools.combinations(subsets, members):
        worst = math.inf
        for target in subsets:
            if all(target.isdisjoint(z) for z in combo):
                continue
            value = math.fsum(info_between_sets(target, z) for z in combo) / members
            worst = min(worst, value)
        best = max(best, worst)
    return best


def width_for(x: PropertyCollection, backend: str = AUTO) -> WidthResult:
    """``I*`` at the description complexity of ``x``."""
    return info_width(x.space.size, members=x.size, backend=backend)


__all__ = [
    "AUTO",
    "EXACT",
    "LOGDOMAIN",
    "WHOLE_SPACE",
    "WidthQuery",
    "WidthResult",
    "brute_force_width",
    "description_complexity",
    "efficiency",
    "info_width",
    "kappa_star",
    "log2_cumulative_fraction",
    "min_description_bits",
    "optimal_property",
    "provider_width_bruteforce",
    "threshold_r",
    "width_for",
]
