"""Closed-form large-``n`` estimates for trace-based class properties.

Every evaluator returns bits.  The normal-approximation corrections come out
of expansions of the natural logarithm (``ln(1 + u) ~ u``); they pass through
:func:`_nats_to_bits` so that the whole result is in base 2.

Premises such as ``n < d 2**d`` are enforced when ``check=True`` (the
default).  With ``check=False`` the formula is evaluated anyway, which is how
the figure grids reach points outside the regime the estimates were derived
for.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import log_ndtr, ndtr

from .bigcount import LN2
from .errors import DomainError, PreconditionWarning, UndefinedValueError
from .measures import InfoReport, complement_complexity
from .width import info_width, min_description_bits

_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def _nats_to_bits(x: float) -> float:
    return x / LN2


# --- standard normal -------------------------------------------------------------


def std_normal_pdf(x: float) -> float:
    """``phi(x) = exp(-x**2 / 2) / sqrt(2 pi)``."""
    return math.exp(-0.5 * x * x - _LN_SQRT_2PI)


def log_std_normal_pdf(x: float) -> float:
    return -0.5 * x * x - _LN_SQRT_2PI


def std_normal_cdf(x: float) -> float:
    """``Phi(x)``; the lower tail is computed directly, not as ``1 - Phi(-x)``."""
    return float(ndtr(x))


def log_std_normal_cdf(x: float) -> float:
    """``ln Phi(x)``, finite far into the lower tail."""
    return float(log_ndtr(x))


# --- helpers -----------------------------------------------------------------------


def _num(name: str, v: float) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float, np.integer, np.floating)):
        raise DomainError(f"{name} must be a real number, got {v!r}")
    v = float(v)
    if not math.isfinite(v):
        raise DomainError(f"{name} must be finite, got {v}")
    return v


def _flag(check: bool, ok: bool, message: str, *, hard: bool = True) -> None:
    """Raise (``check`` and ``hard``) or warn when a premise fails."""
    if ok:
        return
    if check and hard:
        raise DomainError(message)
    warnings.warn(message, PreconditionWarning, stacklevel=3)


def _check_nd(n: float, d: float) -> tuple[float, float]:
    n = _num("n", n)
    d = _num("d", d)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if d < 1:
        raise DomainError(f"d must be >= 1, got {d}")
    return n, d


def _exp2_neg(x: float) -> float:
    """``2**-x`` for ``x >= 0``, flushing to zero instead of overflowing."""
    return 0.0 if x > 1100.0 else 2.0**-x


def _pow_one_minus(p: float, count: float) -> float:
    """``(1 - p)**count`` without losing small ``p``."""
    return math.exp(count * math.log1p(-p))


@dataclass(frozen=True)
class IntervalBits:
    """A closed interval of bit values."""

    low: float
    high: float

    def __post_init__(self):
        if self.low > self.high:
            raise DomainError(f"interval low {self.low} exceeds high {self.high}")

    @property
    def mid(self) -> float:
        return 0.5 * (self.low + self.high)

    @property
    def width(self) -> float:
        return self.high - self.low

    def __contains__(self, value: float) -> bool:
        return self.low <= value <= self.high


@dataclass(frozen=True)
class NormalParams:
    """Binomial ``(N, p)`` moments and the standardized offsets built from them."""

    n: float
    p: float
    mu: float
    sigma: float

    @classmethod
    def of(cls, n: float, p: float) -> "NormalParams":
        big_n = 2.0**n
        return cls(n=n, p=p, mu=big_n * p, sigma=math.sqrt(big_n * p * (1.0 - p)))

    def z(self, x: float) -> float:
        """``(mu - x) / sigma``."""
        return (self.mu - x) / self.sigma


# --- the L_d property ---------------------------------------------------------------


def ld_info(n: float, d: float, *, check: bool = True) -> float:
    """Information of knowing the class has ``L(G) >= d``."""
    n, d = _check_nd(n, d)
    _flag(check, d < n, f"L_d estimate needs d < n (n={n}, d={d})")
    a = 2.0 * (1.0 + 2.0**d) * 2.0 ** (-(n + d) / 2.0) - 2.0 ** ((n - d) / 2.0)
    lead = std_normal_cdf(-a) * (n - math.log2(1.0 + 2.0**d))
    corr = _nats_to_bits(2.0 ** (-(n - d) / 2.0) * std_normal_pdf(a))
    # 1 - (2^d / (1 + 2^d))^(2^n)
    denom = -math.expm1(2.0**n * math.log1p(-1.0 / (1.0 + 2.0**d)))
    return n - (lead + corr) / denom


def ld_complexity(n: float, d: float, *, check: bool = True) -> IntervalBits:
    """Description length of ``L_d`` over the unknown constant ``c`` in ``[1, d]``."""
    n, d = _check_nd(n, d)
    _flag(check, d < n, f"L_d estimate needs d < n (n={n}, d={d})")
    base = 2.0**n * (2.0**d / (1.0 + 2.0**d)) - d
    return IntervalBits(base - d * math.log2(n), base - math.log2(n))


# --- VC(G) >= d -------------------------------------------------------------------------


def _vdc_a(n: float, d: float) -> float:
    return (2.0**n - 2.0 ** (d + 1.0)) * 2.0 ** (-n / 2.0)


def vdc_info(n: float, d: float, *, check: bool = True) -> float:
    """Information of knowing the class has ``VC(G) >= d`` (close to one bit)."""
    n, d = _check_nd(n, d)
    _flag(check, d < n, f"VC^c_d estimate needs d < n (n={n}, d={d})")
    if n <= 1:
        raise DomainError("the VC^c_d estimate needs n > 1")
    a = _vdc_a(n, d)
    cdf = std_normal_cdf(a)
    tail = 2.0 ** (-n / 2.0) * std_normal_pdf(a)
    num = (n - 1.0) * (cdf + tail * (1.0 + a * a / ((n - 1.0) * 2.0**n)))
    den = cdf + tail
    if den == 0.0:
        raise UndefinedValueError(f"VC^c_d estimate degenerates at n={n}, d={d}")
    return n - num / den


def _log2_mass(n: float, a: float) -> float:
    """``log2(2**n Phi(a) + 2**(n/2) phi(a))`` without underflow."""
    first = log_std_normal_cdf(a) + n * LN2
    second = log_std_normal_pdf(a) + 0.5 * n * LN2
    return float(np.logaddexp(first, second)) / LN2


def vdc_complexity(n: float, d: float, *, check: bool = True) -> float:
    """Description length of ``VC(G) >= d``; the estimate assumes ``d > log2 n``."""
    n, d = _check_nd(n, d)
    _flag(check, d > math.log2(n), f"VC^c_d length assumes d > log2 n (n={n}, d={d})", hard=False)
    a = _vdc_a(n, d)
    return d * (2.0**d + 1.0) + math.log2(d) - _log2_mass(n, a) - math.log2(n) + 1.0


# --- VC(G) < d, optionally with a labeled sample ---------------------------------------


def _sample_p(m: float) -> float:
    gamma = 2.0**-m
    return gamma / (1.0 + gamma)


def _check_vd(
    n: float, d: float, m: float, check: bool, *, hard: bool = True
) -> tuple[float, float, float]:
    n, d = _check_nd(n, d)
    m = _num("m", m)
    if m < 0:
        raise DomainError(f"sample size must be >= 0, got {m}")
    _flag(check, m < n, f"sample size must satisfy m < n (n={n}, m={m})")
    _flag(check, n < d * 2.0**d, f"V_d estimates need n < d 2^d (n={n}, d={d})", hard=hard)
    return n, d, m


def _vd_entropy(n: float, d: float, m: float) -> float:
    """Conditional entropy of ``V_d(S_m)`` in bits; ``m = 0`` gives ``V_d``."""
    p = _sample_p(m)
    big_n = 2.0**n
    prm = NormalParams.of(n, p)
    a = prm.z(2.0**d)
    b = prm.z(2.0)
    s = std_normal_cdf(a) * prm.mu + std_normal_pdf(a) * prm.sigma
    r = (n - m) / (d * 2.0**d)
    beta = _exp2_neg(d * 2.0**d)
    denom = 1.0 - _pow_one_minus(p, big_n) - r * s * beta
    if denom == 0.0:
        raise UndefinedValueError(f"V_d estimate degenerates at n={n}, d={d}, m={m}")
    corr = std_normal_pdf(b) * math.sqrt((1.0 - p) / p) / (math.sqrt(big_n) * denom)
    return n + math.log2(p) + _nats_to_bits(corr)


def vd_info(n: float, d: float, *, check: bool = True) -> float:
    """Information of knowing the class has ``VC(G) < d`` (close to one bit)."""
    n, d, _ = _check_vd(n, d, 0.0, check)
    return n - _vd_entropy(n, d, 0.0)


def vd_complexity(n: float, d: float, *, check: bool = True) -> float:
    """Description length of ``VC(G) < d``: the complement of :func:`vdc_complexity`."""
    return complement_complexity(vdc_complexity(n, d, check=check))


def vdsm_info(n: float, d: float, m: float, *, check: bool = True) -> float:
    """Information of ``VC(G) < d`` together with ``m`` labeled points."""
    n, d, m = _check_vd(n, d, m, check)
    return n - _vd_entropy(n, d, m)


def vdsm_complexity(n: float, d: float, m: float, *, check: bool = True) -> float:
    """Description length of ``VC(G) < d`` with ``m`` labeled points.

    Outside ``n < d 2**d`` the value is still returned, with a warning.
    """
    n, d, m = _check_vd(n, d, m, check, hard=False)
    p = _sample_p(m)
    prm = NormalParams.of(n, p)
    a = prm.z(2.0**d)
    lead = 2.0**n * (1.0 + math.log2(1.0 - p))
    q_scale = (n - m) / d * _exp2_neg(d * (1.0 + 2.0**d))
    q_mass = std_normal_cdf(a) * 2.0 ** (n - m) + std_normal_pdf(a) * 2.0 ** ((n - m) / 2.0)
    return lead + q_scale * q_mass + _pow_one_minus(p, 2.0**n)


def vdsm_complexity_remark(n: float, d: float, m: float) -> float:
    """Leading-order simplification ``2**n (1 + (n-m)/(d 2**(d(1+2**d)+m)) + log2(1-p))``."""
    n, d = _check_nd(n, d)
    p = _sample_p(m)
    return 2.0**n * (1.0 + (n - m) / d * _exp2_neg(d * (1.0 + 2.0**d) + m) + math.log2(1.0 - p))


# --- exponentially decaying property --------------------------------------------------


def _check_alpha(alpha: float) -> float:
    alpha = _num("alpha", alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    return alpha


def expdecay_info(n: float, alpha: float) -> float:
    """Information of a property with ``P*_{n,k} = c alpha**k`` at finite ``n``."""
    n = _num("n", n)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    alpha = _check_alpha(alpha)
    p = alpha / (1.0 + alpha)
    prm = NormalParams.of(n, p)
    a = -prm.z(2.0)
    lead = std_normal_cdf(-a) * (n + math.log2(p))
    corr = _nats_to_bits(std_normal_pdf(a) / math.sqrt(alpha * 2.0**n))
    denom = -math.expm1(-(2.0**n) * math.log1p(alpha))
    return n - (lead + corr) / denom


def expdecay_limit(alpha: float) -> float:
    """Large-``n`` value ``log2(1 + 1/alpha)``."""
    alpha = _check_alpha(alpha)
    return math.log2(1.0 + 1.0 / alpha)


def expdecay_complement_info(alpha: float | None = None) -> float:
    """Large-``n`` information of the complement property: one bit for every ``alpha``."""
    if alpha is not None:
        _check_alpha(alpha)
    return 1.0


# --- identity property ---------------------------------------------------------------


def identity_report(n: int, g_size: float) -> InfoReport:
    """Closed forms for the property satisfied only by one class of size ``g_size``."""
    n_val = _num("n", n)
    g = _num("g_size", g_size)
    if n_val < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not 1.0 <= g <= 2.0**n_val:
        raise DomainError(f"class size {g} outside [1, 2**{n}]")
    h = math.log2(g)
    info = n_val - h
    ell = 2.0**n_val
    positive = info > 0.0
    return InfoReport(
        information_bits=info,
        conditional_entropy_bits=h,
        description_bits=ell,
        cost=ell / info if positive else None,
        efficiency=info / n_val if positive else None,
        method="closed_form",
    )


# --- efficiency against the width --------------------------------------------------------


def efficiency_at(n: int, info: float, ell: float) -> float:
    """``info / I*(ell)`` in the space of functions on ``[n]`` (width of ``2**n`` points)."""
    if info <= 0.0:
        raise UndefinedValueError("efficiency is undefined for zero information")
    space = 1 << int(n)
    lo = min_description_bits(space)
    if not lo <= ell <= space:
        raise DomainError(f"description length {ell} outside the achievable range [{lo}, {space}]")
    return info / info_width(space, l=ell).width_bits


def asymptotic_report(n: int, spec, *, check: bool = True) -> InfoReport:
    """InfoReport assembled from the closed forms for ``spec``."""
    from .classes import ExpDecay, Identity, Ld, Vd, VdC, VdSample

    if isinstance(spec, Identity):
        if spec.cls.n != n:
            raise DomainError("identity class lives on a different domain")
        return identity_report(n, len(spec.cls))
    interval = None
    if isinstance(spec, Ld):
        info = ld_info(n, spec.d, check=check)
        interval = ld_complexity(n, spec.d, check=check)
        ell = None
    elif isinstance(spec, VdC):
        info = vdc_info(n, spec.d, check=check)
        ell = vdc_complexity(n, spec.d, check=check)
    elif isinstance(spec, Vd):
        info = vd_info(n, spec.d, check=check)
        ell = vd_complexity(n, spec.d, check=check)
    elif isinstance(spec, VdSample):
        m = len(spec.sample)
        info = vdsm_info(n, spec.d, m, check=check)
        ell = vdsm_complexity(n, spec.d, m, check=check)
    elif isinstance(spec, ExpDecay):
        info = expdecay_info(n, spec.alpha)
        ell = None
    else:
        raise DomainError(f"no closed form for {spec!r}")
    kappa = eta = None
    if ell is not None and info > 0.0:
        kappa = ell / info
        try:
            eta = efficiency_at(n, info, ell)
        except DomainError:
            eta = None
    return InfoReport(
        information_bits=info,
        conditional_entropy_bits=n - info,
        description_bits=ell,
        cost=kappa,
        efficiency=eta,
        method="asym",
        description_interval=(interval.low, interval.high) if interval else None,
    )


__all__ = [
    "IntervalBits",
    "NormalParams",
    "asymptotic_report",
    "efficiency_at",
    "expdecay_complement_info",
    "expdecay_info",
    "expdecay_limit",
    "identity_report",
    "ld_complexity",
    "ld_info",
    "log_std_normal_cdf",
    "log_std_normal_pdf",
    "std_normal_cdf",
    "std_normal_pdf",
    "vd_complexity",
    "vd_info",
    "vdc_complexity",
    "vdc_info",
    "vdsm_complexity",
    "vdsm_complexity_remark",
    "vdsm_info",
]
