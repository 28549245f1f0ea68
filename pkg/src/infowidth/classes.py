"""Binary functions on ``[n]``, their classes, traces and trace-based properties.

A function ``f: [n] -> {0, 1}`` is stored as the integer ``sum f(i) 2**(i-1)``;
a class is a sorted tuple of such encodings.  Points are 1-based in every
public interface.  Inside the target space ``F`` (size ``2**n``) the function
with encoding ``e`` is element ``e``.
"""

from __future__ import annotations

import json
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError, UnsupportedMethodError
from .measures import (
    InfoReport,
    PropertyCollection,
    TargetSpace,
    conditional_entropy,
    description_complexity,
    information,
)
from .width import info_width

MAX_N = 24
ENUM_LIMIT = 4

EXACT = "exact"
MONTE_CARLO = "mc"
ASYMPTOTIC = "asym"
METHODS = (EXACT, MONTE_CARLO, ASYMPTOTIC)


def _check_n(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"domain size must be an integer, got {n!r}")
    n = int(n)
    if not 1 <= n <= MAX_N:
        raise DomainError(f"domain size n={n} outside [1, {MAX_N}]")
    return n


@dataclass(frozen=True)
class FuncDomain:
    """The domain ``[n] = {1, ..., n}``."""

    n: int

    def __post_init__(self):
        object.__setattr__(self, "n", _check_n(self.n))

    @property
    def function_count(self) -> int:
        return 1 << self.n

    def target_space(self) -> TargetSpace:
        return TargetSpace(1 << self.n)


def encode(values: str | Sequence[int]) -> int:
    """Encode ``f(1) f(2) ... f(n)`` (a bit string or sequence) as an integer."""
    bits = [int(ch) for ch in values] if isinstance(values, str) else [int(v) for v in values]
    if any(b not in (0, 1) for b in bits):
        raise DomainError("function values must be 0 or 1")
    return sum(b << i for i, b in enumerate(bits))


def decode(code: int, n: int) -> str:
    """Inverse of :func:`encode`, as a bit string ``f(1)...f(n)``."""
    return "".join(str(code >> i & 1) for i in range(n))


class FunctionClass:
    """A set ``G`` of binary functions on ``[n]``."""

    __slots__ = ("n", "members")

    def __init__(self, n: int, members: Iterable[int]):
        n = _check_n(n)
        codes = []
        for m in members:
            if isinstance(m, str):
                if len(m) != n:
                    raise DomainError(f"bit string {m!r} does not have length {n}")
                m = encode(m)
            if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
                raise DomainError(f"function encoding must be an integer, got {m!r}")
            codes.append(int(m))
        uniq = sorted(set(codes))
        if len(uniq) != len(codes):
            raise DomainError("function class has repeated members")
        if uniq and not (0 <= uniq[0] and uniq[-1] < 1 << n):
            raise DomainError(f"encodings must lie in [0, 2**{n})")
        self.n = n
        self.members = tuple(uniq)

    @classmethod
    def full(cls, n: int) -> "FunctionClass":
        return cls(n, range(1 << _check_n(n)))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "FunctionClass":
        """Class whose member set is the bitmask ``mask`` over encodings."""
        return cls(n, [e for e in range(1 << n) if mask >> e & 1])

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, code: int) -> bool:
        return code in self.members

    def __eq__(self, other):
        if not isinstance(other, FunctionClass):
            return NotImplemented
        return self.n == other.n and self.members == other.members

    def __hash__(self):
        return hash((self.n, self.members))

    def __repr__(self):
        return f"FunctionClass(n={self.n}, members={list(self.members)})"

    def as_array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64).reshape(1, -1)

    def mask(self) -> int:
        return sum(1 << e for e in self.members)

    def to_dict(self) -> dict:
        return {"n": self.n, "class": list(self.members)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "FunctionClass":
        if not isinstance(data, Mapping):
            raise DomainError("class JSON must be an object with keys 'n' and 'class'")
        for key in ("n", "class"):
            if key not in data:
                raise DomainError(f"class JSON: missing key {key!r}")
        if not isinstance(data["class"], list):
            raise DomainError("class JSON: 'class' must be a list of integer encodings")
        return cls(data["n"], data["class"])

    @classmethod
    def from_json(cls, text: str) -> "FunctionClass":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class LabeledSample:
    """Labeled points ``(xi, zeta)`` with 1-based ``xi``; duplicates must agree."""

    pairs: tuple[tuple[int, int], ...]

    def __init__(self, pairs: Iterable[Sequence[int]]):
        seen: dict[int, int] = {}
        for pair in pairs:
            if len(pair) != 2:
                raise DomainError(f"sample entry {pair!r} is not a (point, label) pair")
            point, label = pair
            if isinstance(point, bool) or not isinstance(point, int) or point < 1:
                raise DomainError(f"sample point {point!r} must be a positive integer")
            if label not in (0, 1) or isinstance(label, bool):
                raise DomainError(f"sample label {label!r} must be 0 or 1")
            if seen.get(point, label) != label:
                raise DomainError(f"point {point} carries conflicting labels")
            seen[point] = label
        object.__setattr__(self, "pairs", tuple(sorted(seen.items())))

    def __len__(self) -> int:
        return len(self.pairs)

    def check(self, n: int) -> None:
        if self.pairs and self.pairs[-1][0] > n:
            raise DomainError(f"sample point {self.pairs[-1][0]} outside [1, {n}]")

    def masks(self) -> tuple[int, int]:
        """``(care, want)``: ``f`` is consistent iff ``f & care == want``."""
        care = want = 0
        for point, label in self.pairs:
            care |= 1 << (point - 1)
            want |= label << (point - 1)
        return care, want

    def consistent(self, code: int) -> bool:
        care, want = self.masks()
        return code & care == want

    def to_dict(self) -> dict:
        return {"sample": [list(p) for p in self.pairs]}

    @classmethod
    def from_dict(cls, data) -> "LabeledSample":
        if isinstance(data, Mapping):
            if "sample" not in data:
                raise DomainError("sample JSON: missing key 'sample'")
            data = data["sample"]
        if not isinstance(data, list):
            raise DomainError("sample JSON must be a list of [point, label] pairs")
        return cls(data)

    @classmethod
    def from_json(cls, text: str) -> "LabeledSample":
        return cls.from_dict(json.loads(text))


# --- property specifications ----------------------------------------------------


def _check_d(d: float) -> float:
    if not (isinstance(d, (int, float, np.integer, np.floating)) and not isinstance(d, bool)):
        raise DomainError(f"dimension parameter must be a number, got {d!r}")
    if not (math.isfinite(d) and d >= 1):
        raise DomainError(f"dimension parameter must be >= 1, got {d}")
    return d


@dataclass(frozen=True)
class Ld:
    """``L(G) >= d``: all members agree on some ``d`` points."""

    d: float

    def __post_init__(self):
        _check_d(self.d)


@dataclass(frozen=True)
class Vd:
    """``VC(G) < d``."""

    d: float

    def __post_init__(self):
        _check_d(self.d)


@dataclass(frozen=True)
class VdC:
    """``VC(G) >= d``, the complement of :class:`Vd`."""

    d: float

    def __post_init__(self):
        _check_d(self.d)


@dataclass(frozen=True)
class VdSample:
    """``VC(G) < d`` and every member agrees with the labeled sample."""

    d: float
    sample: LabeledSample

    def __post_init__(self):
        _check_d(self.d)


@dataclass(frozen=True)
class Identity:
    """Satisfied by exactly one class ``G``."""

    cls: FunctionClass

    def __post_init__(self):
        if len(self.cls) == 0:
            raise DomainError("identity property needs a nonempty class")


@dataclass(frozen=True)
class ExpDecay:
    """Property known only through ``P*_{n,k} = c alpha**k``; not a predicate."""

    alpha: float
    c: float = field(default=1.0)

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.c > 0.0:
            raise DomainError(f"c must be positive, got {self.c}")


PropertySpec = Ld | Vd | VdC | VdSample | Identity | ExpDecay
PREDICATES = (Ld, Vd, VdC, VdSample, Identity)


def predicate_d(d: float) -> int:
    """Integer threshold used by predicates (real values are floored)."""
    return int(math.floor(d))


# --- single-class operations --------------------------------------------------------


def trace(g: FunctionClass, e: Iterable[int]) -> frozenset[int]:
    """Restrictions of the members of ``g`` to the 1-based point set ``e``.

    A restriction is encoded with bit ``q`` holding the value at the ``q``-th
    smallest point of ``e``.
    """
    points = sorted(set(e))
    if points and not (1 <= points[0] and points[-1] <= g.n):
        raise DomainError(f"trace points must lie in [1, {g.n}]")
    out = set()
    for f in g.members:
        r = 0
        for q, p in enumerate(points):
            r |= (f >> (p - 1) & 1) << q
        out.add(r)
    if not g.members:
        return frozenset()
    return frozenset(out)


def _nonempty(g: FunctionClass) -> None:
    if len(g) == 0:
        raise DomainError("dimension of an empty class is undefined")


def vc_dimension(g: FunctionClass) -> int:
    """Largest ``|E|`` whose trace is all of ``{0,1}^E``."""
    _nonempty(g)
    return int(kernels.vc_dims(g.as_array(), g.n)[0])


def l_dimension(g: FunctionClass) -> int:
    """Largest ``|E|`` on which every member takes the same values."""
    _nonempty(g)
    return int(kernels.l_dims(g.as_array(), g.n)[0])


def has_vc_at_least(g: FunctionClass, d: int) -> bool:
    """``VC(g) >= d`` without computing the full dimension."""
    _nonempty(g)
    if d <= 0:
        return True
    return bool(kernels.shatters_any(g.as_array(), g.n, d)[0])


def satisfies(g: FunctionClass, spec: PropertySpec) -> bool:
    """Evaluate a predicate property on one class."""
    _nonempty(g)
    if isinstance(spec, ExpDecay):
        raise UnsupportedMethodError("an ExpDecay property is a distribution, not a predicate")
    if isinstance(spec, Identity):
        return g == spec.cls
    d = predicate_d(spec.d)
    if isinstance(spec, Ld):
        return l_dimension(g) >= d
    if isinstance(spec, VdC):
        return has_vc_at_least(g, d)
    if isinstance(spec, Vd):
        return not has_vc_at_least(g, d)
    if isinstance(spec, VdSample):
        spec.sample.check(g.n)
        return all(spec.sample.consistent(f) for f in g.members) and not has_vc_at_least(g, d)
    raise UnsupportedMethodError(f"unknown property {spec!r}")


def satisfies_batch(classes: np.ndarray, n: int, spec: PropertySpec) -> np.ndarray:
    """Vectorized :func:`satisfies` over rows of encodings (same ``k`` per row)."""
    classes = np.ascontiguousarray(classes, dtype=np.int64)
    if isinstance(spec, ExpDecay):
        raise UnsupportedMethodError("an ExpDecay property is a distribution, not a predicate")
    if isinstance(spec, Identity):
        target = np.asarray(spec.cls.members, dtype=np.int64)
        if classes.shape[1] != target.size or spec.cls.n != n:
            return np.zeros(classes.shape[0], dtype=bool)
        return (np.sort(classes, axis=1) == target).all(axis=1)
    d = predicate_d(spec.d)
    if isinstance(spec, Ld):
        return kernels.l_dims(classes, n) >= d
    if isinstance(spec, VdC):
        return kernels.shatters_any(classes, n, d)
    if isinstance(spec, Vd):
        return ~kernels.shatters_any(classes, n, d)
    if isinstance(spec, VdSample):
        spec.sample.check(n)
        care, want = spec.sample.masks()
        ok = ((classes & care) == want).all(axis=1)
        out = np.zeros(classes.shape[0], dtype=bool)
        if ok.any():
            out[ok] = ~kernels.shatters_any(classes[ok], n, d)
        return out
    raise UnsupportedMethodError(f"unknown property {spec!r}")


# --- exhaustive enumeration ---------------------------------------------------------


_DIMS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _dims(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _DIMS_CACHE:
        _DIMS_CACHE[n] = kernels.enumerate_dims(n)
    return _DIMS_CACHE[n]


def property_masks(n: int, spec: PropertySpec) -> np.ndarray:
    """Bitmasks (over encodings) of every nonempty class on ``[n]`` with the property."""
    n = _check_n(n)
    if n > ENUM_LIMIT:
        raise DomainError(f"exhaustive enumeration is limited to n <= {ENUM_LIMIT}")
    if isinstance(spec, ExpDecay):
        raise UnsupportedMethodError("an ExpDecay property cannot be enumerated")
    if isinstance(spec, Identity):
        if spec.cls.n != n:
            raise DomainError("identity class lives on a different domain")
        return np.array([spec.cls.mask()], dtype=np.int64)
    vc, ld = _dims(n)
    idx = np.arange(vc.size, dtype=np.int64)
    d = predicate_d(spec.d)
    if isinstance(spec, Ld):
        keep = ld >= d
    elif isinstance(spec, VdC):
        keep = vc >= d
    elif isinstance(spec, Vd):
        keep = (vc >= 0) & (vc < d)
    elif isinstance(spec, VdSample):
        spec.sample.check(n)
        allowed = sum(1 << e for e in range(1 << n) if spec.sample.consistent(e))
        keep = (vc >= 0) & (vc < d) & ((idx & ~allowed) == 0)
    else:
        raise UnsupportedMethodError(f"unknown property {spec!r}")
    keep[0] = False
    return idx[keep]


def enumerate_property(n: int, spec: PropertySpec) -> PropertyCollection:
    """Every nonempty class on ``[n]`` with the property, as an explicit collection."""
    masks = property_masks(n, spec)
    if masks.size == 0:
        raise DomainError(f"no class on [{n}] satisfies {spec!r}")
    nf = 1 << n
    subsets = [[e for e in range(nf) if int(m) >> e & 1] for m in masks]
    return PropertyCollection.explicit(nf, subsets)


def enumerate_counts(n: int, spec: PropertySpec) -> PropertyCollection:
    """Cardinality profile of :func:`enumerate_property` without listing members."""
    masks = property_masks(n, spec)
    if masks.size == 0:
        raise DomainError(f"no class on [{n}] satisfies {spec!r}")
    sizes = np.array([int(m).bit_count() for m in masks])
    counts = {int(k): int(c) for k, c in zip(*np.unique(sizes, return_counts=True))}
    return PropertyCollection.profiled(1 << n, counts)


# --- reports ----------------------------------------------------------------------


def report_from_collection(x: PropertyCollection, method: str = EXACT) -> InfoReport:
    """Assemble I, H, l, cost and efficiency for a property collection."""
    info = information(x)
    ell = description_complexity(x)
    kappa = ell / info if info > 0 else None
    eta = None
    if info > 0:
        eta = info / info_width(x.space.size, members=x.size).width_bits
    return InfoReport(
        information_bits=info,
        conditional_entropy_bits=conditional_entropy(x),
        description_bits=ell,
        cost=kappa,
        efficiency=eta,
        method=method,
    )


IDENTITY_EXACT_LIMIT = 16


def property_report(
    n: int,
    spec: PropertySpec,
    method: str = EXACT,
    *,
    trials: int = 100_000,
    seed: int = 0,
    threads: int | None = None,
    check: bool = True,
) -> InfoReport:
    """InfoReport for a property of classes on ``[n]`` by the chosen method.

    ``exact`` enumerates every class (``n <= 4``; the identity property is
    handled for ``n <= 16`` since its collection has a single member).
    ``mc`` estimates through uniform fixed-size sampling and ``asym`` uses the
    closed-form evaluators.
    """
    n = _check_n(n)
    if method not in METHODS:
        raise UnsupportedMethodError(f"unknown method {method!r}; choose from {METHODS}")
    if method == EXACT:
        if isinstance(spec, ExpDecay):
            raise UnsupportedMethodError("no exact evaluation exists for an ExpDecay property")
        if isinstance(spec, Identity):
            if n > IDENTITY_EXACT_LIMIT:
                raise UnsupportedMethodError(
                    f"exact identity reports are limited to n <= {IDENTITY_EXACT_LIMIT}"
                )
            if spec.cls.n != n:
                raise DomainError("identity class lives on a different domain")
            x = PropertyCollection.profiled(1 << n, {len(spec.cls): 1})
            return report_from_collection(x, EXACT)
        if n > ENUM_LIMIT:
            raise UnsupportedMethodError(f"exact enumeration is limited to n <= {ENUM_LIMIT}")
        return report_from_collection(enumerate_counts(n, spec), EXACT)
    if method == MONTE_CARLO:
        from .random_classes import mc_info_report

        return mc_info_report(n, spec, trials=trials, seed=seed, threads=threads)
    from . import asymptotics

    return asymptotics.asymptotic_report(n, spec, check=check)


__all__ = [
    "ASYMPTOTIC",
    "EXACT",
    "ENUM_LIMIT",
    "ExpDecay",
    "FuncDomain",
    "FunctionClass",
    "Identity",
    "LabeledSample",
    "Ld",
    "MONTE_CARLO",
    "PropertySpec",
    "Vd",
    "VdC",
    "VdSample",
    "decode",
    "encode",
    "enumerate_counts",
    "enumerate_property",
    "has_vc_at_least",
    "l_dimension",
    "predicate_d",
    "property_masks",
    "property_report",
    "report_from_collection",
    "satisfies",
    "satisfies_batch",
    "trace",
    "vc_dimension",
]
