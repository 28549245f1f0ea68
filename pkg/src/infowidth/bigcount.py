"""Arbitrary-precision counts and their base-2 logarithms.

Counts such as the number of classes of binary functions on ``[n]`` are of
order ``2**(2**n)``.  They are held as Python integers; everything that turns
them into bits goes through the helpers here so precision is handled in one
place.

The binomial log-pmf uses Loader's saddle-point expansion, which stays accurate
to a few ulps for ``N`` in the billions where ``gammaln`` differences lose
six or seven digits.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

LN2 = math.log(2.0)
_LN_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# log2(int) via math.log2 is correctly rounded up to this size; beyond it we
# keep a 64-bit leading window.
_DIRECT_BITS = 1000


def log2_int(value: int) -> float:
    """Base-2 logarithm of a positive integer of any size."""
    if value <= 0:
        raise ValueError(f"log2 of non-positive count {value}")
    bits = value.bit_length()
    if bits <= _DIRECT_BITS:
        return math.log2(value)
    shift = bits - 64
    return shift + math.log2(value >> shift)


def log2_ratio(num: int | Fraction, den: int | Fraction) -> float:
    """``log2(num / den)`` for positive exact numbers without cancellation.

    When the ratio is close to one the logarithm is taken through ``log1p`` of
    the exactly computed relative difference.
    """
    num = Fraction(num)
    den = Fraction(den)
    if num <= 0 or den <= 0:
        raise ValueError("log2_ratio needs positive arguments")
    if den / 2 <= num <= den * 2:
        return math.log1p(float((num - den) / den)) / LN2
    return _log2_frac(num) - _log2_frac(den)


def _log2_frac(q: Fraction) -> float:
    return log2_int(q.numerator) - log2_int(q.denominator)


def bits_to_fraction(bits: float) -> Fraction:
    """Exact rational value of ``2**bits`` for the float ``bits``.

    Only the fractional part of ``bits`` is rounded (through ``2.0**-frac``);
    the integral part is applied exactly.
    """
    whole = math.floor(bits)
    frac = bits - whole
    base = Fraction(2) ** whole
    if frac == 0.0:
        return base
    return base * Fraction(2.0**frac)


def binom_cumulative(n: int, upto: int) -> int:
    """``sum(C(n, i) for i in 1..upto)`` as an exact integer."""
    total = 0
    term = 1
    for i in range(1, upto + 1):
        term = term * (n - i + 1) // i
        total += term
    return total


# --- Loader's saddle-point binomial -----------------------------------------

_S0 = 1.0 / 12
_S1 = 1.0 / 360
_S2 = 1.0 / 1260
_S3 = 1.0 / 1680
_S4 = 1.0 / 1188


def _stirlerr_small(k: int) -> float:
    # ln(k!) - ln(sqrt(2 pi k) (k/e)^k); lgamma is exact enough for k <= 15.
    if k == 0:
        return 0.0
    return math.lgamma(k + 1.0) - (k + 0.5) * math.log(k) + k - _LN_SQRT_2PI


_STIRLERR_TABLE = np.array([_stirlerr_small(k) for k in range(16)])


def stirlerr(k: np.ndarray) -> np.ndarray:
    """Error of Stirling's formula for ``ln(k!)``, elementwise for integer ``k``."""
    k = np.asarray(k, dtype=np.float64)
    out = np.empty_like(k)
    small = k <= 15
    if np.any(small):
        out[small] = _STIRLERR_TABLE[k[small].astype(np.int64)]
    big = ~small
    if np.any(big):
        kb = k[big]
        nn = kb * kb
        series = np.where(
            kb > 500,
            (_S0 - _S1 / nn) / kb,
            np.where(
                kb > 80,
                (_S0 - (_S1 - _S2 / nn) / nn) / kb,
                np.where(
                    kb > 35,
                    (_S0 - (_S1 - (_S2 - _S3 / nn) / nn) / nn) / kb,
                    (_S0 - (_S1 - (_S2 - (_S3 - _S4 / nn) / nn) / nn) / nn) / kb,
                ),
            ),
        )
        out[big] = series
    return out


def bd0(x: np.ndarray, mean: np.ndarray | float) -> np.ndarray:
    """Deviance term ``x ln(x/mean) + mean - x`` computed without cancellation."""
    x = np.asarray(x, dtype=np.float64)
    mean = np.broadcast_to(np.asarray(mean, dtype=np.float64), x.shape)
    out = np.empty_like(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        near = np.abs(x - mean) < 0.1 * (x + mean)
        far = ~near
        if np.any(far):
            xf, mf = x[far], mean[far]
            out[far] = np.where(xf > 0, xf * np.log(xf / mf), 0.0) + mf - xf
    if np.any(near):
        xn, mn = x[near], mean[near]
        v = (xn - mn) / (xn + mn)
        s = (xn - mn) * v
        ej = 2.0 * xn * v
        v2 = v * v
        # |v| < 0.1 so 20 terms are far past double precision.
        for j in range(1, 20):
            ej = ej * v2
            s = s + ej / (2 * j + 1)
        out[near] = s
    return out


def ln_binom_pmf_half(n: int, k: np.ndarray | int) -> np.ndarray:
    """Natural log of ``C(n, k) / 2**n``, elementwise in ``k``."""
    k = np.atleast_1d(np.asarray(k, dtype=np.float64))
    nf = float(n)
    out = np.empty_like(k)
    edge = (k == 0) | (k == nf)
    out[edge] = -nf * LN2
    inner = ~edge
    if np.any(inner):
        ki = k[inner]
        half = nf / 2.0
        lc = (
            stirlerr(np.array([nf]))[0]
            - stirlerr(ki)
            - stirlerr(nf - ki)
            - bd0(ki, half)
            - bd0(nf - ki, half)
        )
        lf = 2.0 * _LN_SQRT_2PI + np.log(ki) + np.log1p(-ki / nf)
        out[inner] = lc - 0.5 * lf
    return out


def _stirlerr_scalar(k: float) -> float:
    if k <= 15:
        return float(_STIRLERR_TABLE[int(k)])
    nn = k * k
    if k > 500:
        return (_S0 - _S1 / nn) / k
    if k > 80:
        return (_S0 - (_S1 - _S2 / nn) / nn) / k
    if k > 35:
        return (_S0 - (_S1 - (_S2 - _S3 / nn) / nn) / nn) / k
    return (_S0 - (_S1 - (_S2 - (_S3 - _S4 / nn) / nn) / nn) / nn) / k


def _bd0_scalar(x: float, mean: float) -> float:
    if abs(x - mean) < 0.1 * (x + mean):
        v = (x - mean) / (x + mean)
        s = (x - mean) * v
        ej = 2.0 * x * v
        v2 = v * v
        for j in range(1, 40):
            ej *= v2
            s1 = s + ej / (2 * j + 1)
            if s1 == s:
                return s1
            s = s1
        return s
    return (x * math.log(x / mean) if x > 0 else 0.0) + mean - x


def ln_binom_pmf_half_scalar(n: int, k: int) -> float:
    """Scalar twin of :func:`ln_binom_pmf_half` without numpy overhead."""
    if k == 0 or k == n:
        return -n * LN2
    nf, kf = float(n), float(k)
    half = nf / 2.0
    lc = (
        _stirlerr_scalar(nf)
        - _stirlerr_scalar(kf)
        - _stirlerr_scalar(nf - kf)
        - _bd0_scalar(kf, half)
        - _bd0_scalar(nf - kf, half)
    )
    lf = 2.0 * _LN_SQRT_2PI + math.log(kf) + math.log1p(-kf / nf)
    return lc - 0.5 * lf


def logsumexp(values: np.ndarray) -> float:
    """Compensated ``ln(sum(exp(values)))``."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return -math.inf
    top = float(values.max())
    if top == -math.inf:
        return -math.inf
    return top + math.log(math.fsum(np.exp(values - top).tolist()))
