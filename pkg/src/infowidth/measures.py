"""Combinatorial entropy, information, description complexity and cost.

A property ``x`` is a collection ``Z_x`` of nonempty subsets of a finite target
space ``Y``.  It can be given explicitly (the member subsets themselves) or as a
cardinality profile (how many members have each size), which is all the
whole-space measures need and the only feasible form once counts reach
``2**(2**n)``.  Both forms go through the same profile arithmetic, so they agree
exactly.

All logarithms are base 2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .bigcount import LN2, log2_ratio
from .errors import DomainError, UndefinedValueError, UnsupportedRepresentationError


@dataclass(frozen=True)
class TargetSpace:
    """Finite target space ``Y`` of ``size`` objects indexed ``0..size-1``."""

    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise DomainError(f"target space must be nonempty, got size {self.size}")
        if self.labels is not None and len(self.labels) != self.size:
            raise DomainError("labels must name every element of the space")

    @property
    def ambient(self) -> int:
        """``|Z| = 2**size``, the number of subsets of the space."""
        return 1 << self.size


@dataclass(frozen=True, order=True)
class TargetSubset:
    """A nonempty subset of the target space, stored as sorted indices."""

    members: tuple[int, ...]

    def __init__(self, members: Iterable[int]):
        uniq = tuple(sorted(set(int(m) for m in members)))
        if not uniq:
            raise DomainError("target subsets must be nonempty")
        if uniq[0] < 0:
            raise DomainError(f"negative element index {uniq[0]}")
        object.__setattr__(self, "members", uniq)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)


class _Whole:
    """Sentinel for the acquirer's perspective (target set = whole space)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "WHOLE_SPACE"


WHOLE_SPACE = _Whole()


def _as_space(space: TargetSpace | int) -> TargetSpace:
    return space if isinstance(space, TargetSpace) else TargetSpace(int(space))


class PropertyCollection:
    """A property ``x`` realized by its member collection ``Z_x``.

    Use :meth:`explicit` or :meth:`profiled` to construct one.
    """

    __slots__ = ("space", "_subsets", "_counts", "_total")

    def __init__(self, space, subsets=None, counts=None):
        self.space = _as_space(space)
        self._subsets: tuple[TargetSubset, ...] | None = subsets
        self._counts: dict[int, int] = counts
        self._total: int = sum(counts.values())

    @classmethod
    def explicit(
        cls, space: TargetSpace | int, subsets: Iterable[TargetSubset | Iterable[int]]
    ) -> "PropertyCollection":
        space = _as_space(space)
        members: list[TargetSubset] = []
        seen: set[TargetSubset] = set()
        for raw in subsets:
            sub = raw if isinstance(raw, TargetSubset) else TargetSubset(raw)
            if sub.members[-1] >= space.size:
                raise DomainError(
                    f"element {sub.members[-1]} outside target space of size {space.size}"
                )
            if sub in seen:
                raise DomainError(f"duplicate member subset {list(sub.members)}")
            seen.add(sub)
            members.append(sub)
        if not members:
            raise DomainError("a property needs at least one member subset")
        counts: dict[int, int] = {}
        for sub in members:
            counts[len(sub)] = counts.get(len(sub), 0) + 1
        return cls(space, tuple(members), counts)

    @classmethod
    def profiled(
        cls, space: TargetSpace | int, counts: Mapping[int, int]
    ) -> "PropertyCollection":
        space = _as_space(space)
        clean: dict[int, int] = {}
        for k, c in counts.items():
            k, c = int(k), int(c)
            if not 1 <= k <= space.size:
                raise DomainError(f"cardinality {k} outside [1, {space.size}]")
            if c < 0:
                raise DomainError(f"negative count {c} for cardinality {k}")
            if c > math.comb(space.size, k):
                raise DomainError(
                    f"count {c} exceeds C({space.size}, {k}) = {math.comb(space.size, k)}"
                )
            if c:
                clean[k] = c
        if not clean:
            raise DomainError("a property needs at least one member subset")
        return cls(space, None, dict(sorted(clean.items())))

    @property
    def is_explicit(self) -> bool:
        return self._subsets is not None

    @property
    def subsets(self) -> tuple[TargetSubset, ...]:
        if self._subsets is None:
            raise UnsupportedRepresentationError(
                "profiled collection has no explicit member list"
            )
        return self._subsets

    @property
    def counts(self) -> dict[int, int]:
        """Members per cardinality, ``{k: count}`` with zero counts omitted."""
        return dict(self._counts)

    @property
    def size(self) -> int:
        """``|Z_x|``."""
        return self._total

    @property
    def ambient(self) -> int:
        return self.space.ambient

    def to_profiled(self) -> "PropertyCollection":
        return PropertyCollection(self.space, None, dict(self._counts))

    def complement(self) -> "PropertyCollection":
        """The property whose members are the nonempty subsets not in this one."""
        if self._subsets is not None:
            raise UnsupportedRepresentationError(
                "complement is only formed on profiled collections"
            )
        n = self.space.size
        counts = {k: math.comb(n, k) - self._counts.get(k, 0) for k in range(1, n + 1)}
        return PropertyCollection.profiled(self.space, counts)

    def __eq__(self, other):
        if not isinstance(other, PropertyCollection):
            return NotImplemented
        if self.space.size != other.space.size:
            return False
        if self.is_explicit and other.is_explicit:
            return set(self._subsets) == set(other._subsets)
        return self._counts == other._counts

    def __repr__(self):
        kind = "explicit" if self.is_explicit else "profiled"
        return f"PropertyCollection({kind}, ny={self.space.size}, members={self._total})"

    # JSON ------------------------------------------------------------------

    def to_dict(self) -> dict:
        if self.is_explicit:
            return {
                "ny": self.space.size,
                "subsets": [list(s.members) for s in self._subsets],
            }
        return {
            "ny": self.space.size,
            "counts": {str(k): str(c) for k, c in self._counts.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> "PropertyCollection":
        if not isinstance(data, Mapping):
            raise DomainError("property JSON must be an object")
        if "ny" not in data:
            raise DomainError("property JSON: missing key 'ny'")
        ny = data["ny"]
        if not isinstance(ny, int) or isinstance(ny, bool):
            raise DomainError("property JSON: 'ny' must be an integer")
        has_sub, has_cnt = "subsets" in data, "counts" in data
        if has_sub == has_cnt:
            raise DomainError("property JSON: give exactly one of 'subsets' or 'counts'")
        if has_sub:
            subs = data["subsets"]
            if not isinstance(subs, list):
                raise DomainError("property JSON: 'subsets' must be a list")
            for i, s in enumerate(subs):
                if not isinstance(s, list) or not all(
                    isinstance(v, int) and not isinstance(v, bool) for v in s
                ):
                    raise DomainError(
                        f"property JSON: subsets[{i}] must be a list of integers"
                    )
            return cls.explicit(ny, subs)
        counts = data["counts"]
        if not isinstance(counts, Mapping):
            raise DomainError("property JSON: 'counts' must be an object")
        parsed = {}
        for k, v in counts.items():
            try:
                parsed[int(k)] = int(v)
            except (TypeError, ValueError):
                raise DomainError(
                    f"property JSON: counts[{k!r}] must be a decimal integer"
                ) from None
        return cls.profiled(ny, parsed)

    @classmethod
    def from_json(cls, text: str) -> "PropertyCollection":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class InfoReport:
    """Information measures of one property under one evaluation method.

    ``description_bits`` is ``None`` when only an interval is known
    (``description_interval``); ``cost`` and ``efficiency`` are ``None`` when
    undefined.  ``stderr`` holds Monte Carlo standard errors keyed like
    :meth:`to_dict`.
    """

    information_bits: float
    conditional_entropy_bits: float
    description_bits: float | None
    cost: float | None = None
    efficiency: float | None = None
    method: str = "exact"
    description_interval: tuple[float, float] | None = None
    stderr: dict[str, float] | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        out = {
            "I": self.information_bits,
            "H": self.conditional_entropy_bits,
            "l": self.description_bits,
            "kappa": self.cost,
            "eta": self.efficiency,
            "method": self.method,
        }
        if self.description_interval is not None:
            out["l_interval"] = list(self.description_interval)
        if self.stderr is not None:
            out["stderr"] = dict(self.stderr)
        return out


# --- measures ---------------------------------------------------------------


def entropy(space: TargetSpace | int) -> float:
    """``H(Y) = log2 |Y|``."""
    return math.log2(_as_space(space).size)


def info_between_sets(a: TargetSubset | Iterable[int], b: TargetSubset | Iterable[int]) -> float:
    """``2 log2|a u b| - log2|a| - log2|b|``; zero iff ``a == b``."""
    sa = a.as_set() if isinstance(a, TargetSubset) else frozenset(a)
    sb = b.as_set() if isinstance(b, TargetSubset) else frozenset(b)
    if not sa or not sb:
        raise DomainError("information between sets needs two nonempty sets")
    union = len(sa | sb)
    if union == len(sa) == len(sb):
        return 0.0
    # single log of an exact integer ratio keeps the symmetric case exact
    return log2_ratio(union * union, len(sa) * len(sb))


def is_informative(x: PropertyCollection, target: TargetSubset | Iterable[int]) -> bool:
    """True when some member of ``x`` intersects ``target``."""
    tset = target.as_set() if isinstance(target, TargetSubset) else frozenset(target)
    return any(not tset.isdisjoint(s.members) for s in x.subsets)


def density(x: PropertyCollection) -> dict[int, Fraction]:
    """Normalized cardinality density ``omega_x(k)`` as exact fractions."""
    total = x.size
    return {k: Fraction(c, total) for k, c in x.counts.items()}


def conditional_entropy(x: PropertyCollection) -> float:
    """``H(Y|x)``: mean of ``log2 |Y_z|`` over the members of ``x``."""
    total = x.size
    terms = [float(Fraction(c, total)) * math.log2(k) for k, c in x.counts.items() if k > 1]
    return math.fsum(terms)


def information(x: PropertyCollection, target=WHOLE_SPACE) -> float:
    """Information conveyed by ``x`` about a target in ``target``.

    With the default target (the whole space) this is ``log2|Y| - H(Y|x)``.
    For an explicit target set the per-member set information is averaged over
    every member of ``x``; a non-informative ``x`` conveys zero.
    """
    if target is WHOLE_SPACE:
        return entropy(x.space) - conditional_entropy(x)
    if not x.is_explicit:
        raise UnsupportedRepresentationError(
            "information about an explicit target set needs an explicit property"
        )
    tset = target if isinstance(target, TargetSubset) else TargetSubset(target)
    if tset.members[-1] >= x.space.size:
        raise DomainError("target set has elements outside the target space")
    if not is_informative(x, tset):
        return 0.0
    return math.fsum(info_between_sets(tset, s) for s in x.subsets) / x.size


def description_complexity(x: PropertyCollection | int, space: TargetSpace | int | None = None) -> float:
    """``l(x) = log2(|Z| / |Z_x|)`` with ``|Z| = 2**|Y|``.

    Accepts a collection, or a member count together with the space.
    """
    if isinstance(x, PropertyCollection):
        members, ny = x.size, x.space.size
    else:
        if space is None:
            raise DomainError("a bare member count needs the target space")
        members, ny = int(x), _as_space(space).size
    if members < 1:
        raise DomainError("description complexity of an empty collection")
    if members >= 1 << ny:
        raise DomainError(f"{members} members exceed the {(1 << ny) - 1} nonempty subsets")
    return log2_ratio(1 << ny, members)


def complement_complexity(bits: float) -> float:
    """Description complexity of the complementary property, ``-log2(1 - 2**-l)``."""
    if not bits > 0:
        raise DomainError(f"complement complexity needs l > 0, got {bits}")
    return -math.log1p(-(2.0 ** -bits)) / LN2


def cost(x: PropertyCollection, target=WHOLE_SPACE) -> float:
    """Description bits per bit of conveyed information, ``l(x) / I(x:target)``."""
    info = information(x, target)
    if info <= 0.0:
        raise UndefinedValueError("cost is undefined for a property conveying no information")
    return description_complexity(x) / info


def read_targets(data) -> TargetSubset:
    """Parse a target set from ``[1, 2]`` or ``{"target": [1, 2]}``."""
    if isinstance(data, Mapping):
        if "target" not in data:
            raise DomainError("target JSON: missing key 'target'")
        data = data["target"]
    if not isinstance(data, Sequence) or isinstance(data, (str, bytes)):
        raise DomainError("target JSON must be a list of element indices")
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in data):
        raise DomainError("target JSON entries must be integers")
    return TargetSubset(data)
