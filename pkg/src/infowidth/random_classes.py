"""Random function classes and Monte Carlo estimates of property statistics.

Every draw comes from a PCG64 stream keyed by ``(seed, stream, shard)``.
Trials are cut into fixed-size shards before any work is distributed, so the
estimates are identical for any number of worker threads.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .bigcount import LN2, ln_binom_pmf_half
from .classes import (
    ExpDecay,
    FunctionClass,
    Identity,
    PropertySpec,
    _check_n,
    satisfies_batch,
)
from .errors import DomainError, InfeasibleSamplingError, UnsupportedMethodError
from .measures import InfoReport
from .width import info_width, min_description_bits

ALGORITHM = "PCG64"
SHARD_TRIALS = 8192
BINOMIAL_MAX_N = 20
MC_REPORT_MAX_N = 16
RETRY_CAP = 10**6
MIN_ACCEPTANCE = 1e-9
# k values whose prior weight C(N,k)/2^N is this many nats below the peak are skipped
_LN_WEIGHT_CUT = -60.0
# rows of random sort keys materialized at once
_KEY_BUDGET = 1 << 22


@dataclass(frozen=True)
class RngHandle:
    """Seedable, splittable generator description."""

    seed: int
    stream: int = 0
    algorithm: str = ALGORITHM

    def __post_init__(self):
        if self.algorithm != ALGORITHM:
            raise DomainError(f"only {ALGORITHM} streams are supported")
        if self.seed < 0 or self.stream < 0:
            raise DomainError("seed and stream must be nonnegative")

    def generator(self, shard: int = 0) -> np.random.Generator:
        seq = np.random.SeedSequence(self.seed, spawn_key=(self.stream, shard))
        return np.random.Generator(np.random.PCG64(seq))

    def substream(self, stream: int) -> "RngHandle":
        return RngHandle(self.seed, stream, self.algorithm)


def _gen(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngHandle):
        return rng.generator()
    if rng is None or isinstance(rng, (int, np.integer)):
        return RngHandle(int(rng or 0)).generator()
    raise DomainError(f"cannot use {rng!r} as a random generator")


@dataclass(frozen=True)
class McEstimate:
    """Point estimate with its standard error ``sample std / sqrt(trials)``."""

    estimate: float
    stderr: float
    trials: int
    seed: int

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError("an estimate needs at least one trial")

    def to_dict(self) -> dict:
        return {"estimate": self.estimate, "stderr": self.stderr, "trials": self.trials, "seed": self.seed}

    def within(self, value: float, k: float = 3.0, floor: float = 0.0) -> bool:
        return abs(self.estimate - value) <= k * self.stderr + floor


def resolve_threads(threads: int | None) -> int:
    """``threads`` if given, else ``INFOWIDTH_THREADS``, else 1."""
    if threads is None:
        env = os.environ.get("INFOWIDTH_THREADS", "").strip()
        threads = int(env) if env else 1
    if threads < 1:
        raise DomainError(f"thread count must be positive, got {threads}")
    return threads


def _shards(trials: int) -> list[tuple[int, int]]:
    return [(i, min(SHARD_TRIALS, trials - i * SHARD_TRIALS)) for i in range((trials + SHARD_TRIALS - 1) // SHARD_TRIALS)]


def _run_shards(fn, trials: int, threads: int | None) -> list:
    shards = _shards(trials)
    workers = resolve_threads(threads)
    if workers == 1 or len(shards) == 1:
        return [fn(i, size) for i, size in shards]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda s: fn(*s), shards))


# --- samplers -----------------------------------------------------------------------


def sample_class_binomial(n: int, p: float, rng=None) -> FunctionClass:
    """Include each of the ``2**n`` functions independently with probability ``p``."""
    n = _check_n(n)
    if n > BINOMIAL_MAX_N:
        raise DomainError(f"binomial sampling is limited to n <= {BINOMIAL_MAX_N}")
    if not 0.0 < p < 1.0:
        raise DomainError(f"inclusion probability must lie in (0, 1), got {p}")
    keep = _gen(rng).random(1 << n) < p
    return FunctionClass(n, np.flatnonzero(keep).tolist())


def _check_k(n: int, k: int) -> None:
    if not 1 <= k <= 1 << n:
        raise DomainError(f"class size k={k} outside [1, 2**{n}]")


def sample_class_uniform_k(n: int, k: int, rng=None) -> FunctionClass:
    """A uniformly random class of exactly ``k`` functions."""
    n = _check_n(n)
    _check_k(n, k)
    picks = _gen(rng).choice(1 << n, size=k, replace=False)
    return FunctionClass(n, picks.tolist())


def batch_uniform_k(n: int, k: int, count: int, rng=None) -> np.ndarray:
    """``count`` independent uniform ``k``-classes as rows of encodings."""
    n = _check_n(n)
    _check_k(n, k)
    gen = _gen(rng)
    nf = 1 << n
    if k == nf:
        return np.tile(np.arange(nf, dtype=np.int64), (count, 1))
    out = np.empty((count, k), dtype=np.int64)
    if nf <= 4096:
        rows = max(1, _KEY_BUDGET // nf)
        for start in range(0, count, rows):
            stop = min(count, start + rows)
            keys = gen.random((stop - start, nf))
            out[start:stop] = np.argpartition(keys, k - 1, axis=1)[:, :k] if k < nf else keys.argsort(axis=1)
        return out
    for i in range(count):
        out[i] = gen.choice(nf, size=k, replace=False)
    return out


def acceptance_probability(n: int, k: int) -> float:
    """Chance that a random ``n x k`` binary matrix has distinct columns."""
    nf = 1 << n
    if k > nf:
        return 0.0
    return math.exp(math.fsum(math.log1p(-i / nf) for i in range(1, k)))


def _random_columns(gen: np.random.Generator, n: int, k: int, count: int) -> np.ndarray:
    bits = gen.integers(0, 2, size=(count, n, k), dtype=np.int64)
    weights = (np.int64(1) << np.arange(n, dtype=np.int64)).reshape(1, n, 1)
    return (bits * weights).sum(axis=1)


def _distinct_rows(cols: np.ndarray) -> np.ndarray:
    srt = np.sort(cols, axis=1)
    return (np.diff(srt, axis=1) != 0).all(axis=1)


def sample_simple_matrix(n: int, k: int, rng=None, retry_cap: int = RETRY_CAP) -> tuple[FunctionClass, int]:
    """Draw random ``n x k`` binary matrices until the columns are distinct.

    Returns the class of columns and the number of matrices drawn.
    """
    n = _check_n(n)
    _check_k(n, k)
    accept = acceptance_probability(n, k)
    if accept < MIN_ACCEPTANCE:
        raise InfeasibleSamplingError(
            f"acceptance rate {accept:.3g} for n={n}, k={k} is below {MIN_ACCEPTANCE:g}"
        )
    gen = _gen(rng)
    for attempt in range(1, retry_cap + 1):
        cols = _random_columns(gen, n, k, 1)[0]
        if np.unique(cols).size == k:
            return FunctionClass(n, cols.tolist()), attempt
    raise InfeasibleSamplingError(f"no simple matrix after {retry_cap} draws (n={n}, k={k})")


def simple_matrix_acceptance(n: int, k: int, trials: int, seed: int = 0, threads: int | None = None) -> McEstimate:
    """Empirical acceptance rate of the simple-matrix device."""
    n = _check_n(n)
    _check_k(n, k)
    handle = RngHandle(seed, stream=1)

    def shard(i: int, size: int) -> int:
        cols = _random_columns(handle.generator(i), n, k, size)
        return int(_distinct_rows(cols).sum())

    hits = sum(_run_shards(shard, trials, threads))
    return _bernoulli_estimate(hits, trials, seed)


def _bernoulli_estimate(hits: int, trials: int, seed: int) -> McEstimate:
    p = hits / trials
    sd = math.sqrt(p * (1.0 - p) * trials / (trials - 1)) if trials > 1 else 0.0
    return McEstimate(p, sd / math.sqrt(trials), trials, seed)


# --- property probabilities -------------------------------------------------------------


def _predicate(spec: PropertySpec) -> None:
    if isinstance(spec, ExpDecay):
        raise UnsupportedMethodError("an ExpDecay property cannot be sampled as a predicate")


def _property_hits(n: int, k: int, spec: PropertySpec, trials: int, handle: RngHandle, threads) -> int:
    def shard(i: int, size: int) -> int:
        batch = batch_uniform_k(n, k, size, handle.generator(i))
        return int(satisfies_batch(batch, n, spec).sum())

    return sum(_run_shards(shard, trials, threads))


def mc_property_prob(
    n: int, k: int, spec: PropertySpec, trials: int, seed: int = 0, threads: int | None = None
) -> McEstimate:
    """Fraction of uniform ``k``-classes on ``[n]`` that satisfy ``spec``."""
    n = _check_n(n)
    _check_k(n, k)
    _predicate(spec)
    if trials < 1:
        raise DomainError("need at least one trial")
    hits = _property_hits(n, k, spec, trials, RngHandle(seed, stream=1000 + k), threads)
    return _bernoulli_estimate(hits, trials, seed)


def _k_window(n: int) -> np.ndarray:
    nf = 1 << n
    ks = np.arange(1, nf + 1)
    lw = ln_binom_pmf_half(nf, ks)
    return ks[lw >= lw.max() + _LN_WEIGHT_CUT]


def mc_info_report(
    n: int, spec: PropertySpec, trials: int = 100_000, seed: int = 0, threads: int | None = None
) -> InfoReport:
    """Estimate I, H, l (and derived cost/efficiency) of a class property.

    For each class size ``k`` the satisfaction rate is estimated from
    ``trials`` uniform ``k``-classes and weighted by ``C(2**n, k) / 2**(2**n)``
    in log space.  Standard errors come from the delta method.
    """
    n = _check_n(n)
    if n > MC_REPORT_MAX_N:
        raise DomainError(f"Monte Carlo reports are limited to n <= {MC_REPORT_MAX_N}")
    _predicate(spec)
    if isinstance(spec, Identity):
        return _identity_mc(n, spec, trials, seed)
    nf = 1 << n
    ks = _k_window(n)
    est = np.array([mc_property_prob(n, int(k), spec, trials, seed, threads).estimate for k in ks])
    if not est.any():
        raise InfeasibleSamplingError(f"no sampled class satisfied {spec!r}; cannot estimate its measures")
    var = est * (1.0 - est) / trials
    lnc = ln_binom_pmf_half(nf, ks)
    live = est > 0
    ln_w = np.full(ks.size, -np.inf)
    ln_w[live] = lnc[live] + np.log(est[live])
    top = ln_w.max()
    w = np.exp(ln_w - top)
    total = math.fsum(w.tolist())
    ln_prob = top + math.log(total)
    ell = -ln_prob / LN2
    omega = w / total
    logk = np.log2(ks.astype(np.float64))
    h = math.fsum((omega * logk).tolist())
    info = n - h
    # delta method: derivatives are c_k / S times a factor
    scale = np.exp(lnc - ln_prob)
    var_ell = math.fsum((scale**2 * var).tolist()) / LN2**2
    var_h = math.fsum((scale**2 * (logk - h) ** 2 * var).tolist())
    se_ell, se_h = math.sqrt(var_ell), math.sqrt(var_h)
    kappa = eta = None
    stderr = {"I": se_h, "H": se_h, "l": se_ell}
    if info > 0.0:
        kappa = ell / info
        stderr["kappa"] = kappa * math.hypot(se_ell / ell if ell else 0.0, se_h / info)
        if min_description_bits(nf) <= ell <= nf:
            eta = info / info_width(nf, l=ell).width_bits
    return InfoReport(
        information_bits=info,
        conditional_entropy_bits=h,
        description_bits=ell,
        cost=kappa,
        efficiency=eta,
        method="mc",
        stderr=stderr,
    )


def _identity_mc(n: int, spec: Identity, trials: int, seed: int) -> InfoReport:
    # The property has a single member, so nothing is random.
    from .classes import report_from_collection
    from .measures import PropertyCollection

    if spec.cls.n != n:
        raise DomainError("identity class lives on a different domain")
    x = PropertyCollection.profiled(1 << n, {len(spec.cls): 1})
    rep = report_from_collection(x, "mc")
    return InfoReport(
        information_bits=rep.information_bits,
        conditional_entropy_bits=rep.conditional_entropy_bits,
        description_bits=rep.description_bits,
        cost=rep.cost,
        efficiency=rep.efficiency,
        method="mc",
        stderr={"I": 0.0, "H": 0.0, "l": 0.0},
    )


# --- statistical validation ---------------------------------------------------------------


def class_frequencies(classes: np.ndarray, n: int) -> dict[int, int]:
    """Histogram of sampled classes keyed by member bitmask."""
    masks = np.bitwise_or.reduce(np.left_shift(np.int64(1), classes), axis=1)
    keys, counts = np.unique(masks, return_counts=True)
    return {int(key): int(c) for key, c in zip(keys, counts)}


def uniformity_pvalue(n: int, k: int, counts: dict[int, int]) -> float:
    """Chi-square p-value of ``counts`` against the uniform law on all ``k``-classes."""
    total_classes = math.comb(1 << n, k)
    observed = np.zeros(total_classes)
    observed[: len(counts)] = sorted(counts.values(), reverse=True)
    if total_classes == 1:
        return 1.0
    return float(stats.chisquare(observed).pvalue)


def simple_matrix_classes(n: int, k: int, count: int, seed: int = 0) -> np.ndarray:
    """``count`` accepted simple-matrix draws (vectorized rejection)."""
    gen = RngHandle(seed, stream=2).generator()
    accept = acceptance_probability(n, k)
    if accept < MIN_ACCEPTANCE:
        raise InfeasibleSamplingError(f"acceptance rate {accept:.3g} is below {MIN_ACCEPTANCE:g}")
    out = []
    have = draws = 0
    while have < count:
        batch = max(64, int((count - have) / accept * 1.2))
        cols = _random_columns(gen, n, k, batch)
        draws += batch
        ok = cols[_distinct_rows(cols)]
        out.append(ok)
        have += ok.shape[0]
        if draws > RETRY_CAP * count:
            raise InfeasibleSamplingError("simple-matrix sampling exceeded its draw budget")
    return np.concatenate(out)[:count]


def two_sample_pvalue(a: dict[int, int], b: dict[int, int]) -> float:
    """Chi-square homogeneity p-value for two class histograms."""
    keys = sorted(set(a) | set(b))
    table = np.array([[a.get(key, 0) for key in keys], [b.get(key, 0) for key in keys]])
    if table.shape[1] < 2:
        return 1.0
    return float(stats.chi2_contingency(table).pvalue)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def validation_suite(trials: int = 100_000, seed: int = 0, threads: int | None = None) -> list[CheckResult]:
    """Sampler and threshold checks at 3 standard errors / 1% chi-square level."""
    out: list[CheckResult] = []

    def band(name: str, est: McEstimate, target: float) -> None:
        ok = est.within(target)
        out.append(CheckResult(name, ok, f"estimate {est.estimate:.6f} +- {est.stderr:.2g}, expected {target:.6f}"))

    band("acceptance n=2 k=2", simple_matrix_acceptance(2, 2, trials, seed, threads), acceptance_probability(2, 2))
    band("acceptance n=2 k=4", simple_matrix_acceptance(2, 4, trials, seed, threads), acceptance_probability(2, 4))
    for n, k in ((2, 2), (2, 3), (3, 2)):
        direct = batch_uniform_k(n, k, trials, RngHandle(seed, stream=3).generator())
        fd = class_frequencies(direct, n)
        fs = class_frequencies(simple_matrix_classes(n, k, trials, seed), n)
        pu = uniformity_pvalue(n, k, fd)
        pt = two_sample_pvalue(fd, fs)
        out.append(CheckResult(f"uniform k-sampler n={n} k={k}", pu > 0.01, f"chi-square p = {pu:.4f}"))
        out.append(CheckResult(f"simple matrix vs direct n={n} k={k}", pt > 0.01, f"chi-square p = {pt:.4f}"))
    from .classes import Ld, VdC

    p1 = mc_property_prob(10, 1, Ld(2), trials, seed, threads)
    p10 = mc_property_prob(10, 10, Ld(2), trials, seed, threads)
    q3 = mc_property_prob(10, 3, VdC(2), min(trials, 10_000), seed, threads)
    q64 = mc_property_prob(10, 64, VdC(2), min(trials, 10_000), seed, threads)
    out.append(CheckResult("L_2 at k=1 (n=10)", p1.estimate == 1.0, f"estimate {p1.estimate}"))
    out.append(CheckResult("L_2 at k=10 (n=10)", p10.estimate < 0.01, f"estimate {p10.estimate}"))
    out.append(CheckResult("VC>=2 at k=3 (n=10)", q3.estimate == 0.0, f"estimate {q3.estimate}"))
    out.append(CheckResult("VC>=2 at k=64 (n=10)", q64.estimate >= 0.9, f"estimate {q64.estimate}"))
    return out


__all__ = [
    "ALGORITHM",
    "CheckResult",
    "McEstimate",
    "RngHandle",
    "acceptance_probability",
    "batch_uniform_k",
    "class_frequencies",
    "mc_info_report",
    "mc_property_prob",
    "resolve_threads",
    "sample_class_binomial",
    "sample_class_uniform_k",
    "sample_simple_matrix",
    "simple_matrix_acceptance",
    "simple_matrix_classes",
    "two_sample_pvalue",
    "uniformity_pvalue",
    "validation_suite",
]
