"""Finite multisets over an abelian group, their subset sums, and the two
sign-flip equivalences that subset sums cannot distinguish.

``subset_sums`` builds the multiset of all 2^|A| subset totals by convolving,
one distinct element at a time, with the binomial weights of (1 + t^a)^mult.
Counts are exact arbitrary-precision integers; a 24-element multiset already
produces multiplicities around 2^24.

``sim_check`` decides whether A' arises from A by negating some subset
(equivalent to matching counts on every pair class {x, -x}), and
``sim0_check`` refines this to flips whose negated subset sums to zero,
returning a witness subset when one exists.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

from .errors import (
    DomainError,
    GroupMismatchError,
    NotASubsetError,
    ResourceCapError,
)
from .groups import GroupElement, GroupSpec

__all__ = [
    "DEFAULT_SUBSET_SUMS_CAP",
    "Multiset",
    "Sim0Witness",
    "sim_check",
    "sim0_check",
]

DEFAULT_SUBSET_SUMS_CAP = 24


def _coerce(group: GroupSpec, value) -> GroupElement:
    if isinstance(value, GroupElement):
        if value.group != group:
            raise GroupMismatchError(f"element {value!r} is not in {group}")
        return value
    if isinstance(value, (tuple, list)):
        return group.element(value)
    if isinstance(value, int) and len(group.moduli) == 1:
        return group.element((value,))
    raise DomainError(f"cannot interpret {value!r} as an element of {group}")


class Multiset:
    """Immutable multiplicity map from group elements to positive integers."""

    __slots__ = ("group", "_mult", "_hash")

    def __init__(self, group: GroupSpec, counts: Mapping | Iterable | None = None):
        store: dict[GroupElement, int] = {}
        if counts:
            pairs = counts.items() if isinstance(counts, Mapping) else counts
            for x, m in pairs:
                x = _coerce(group, x)
                m = int(m)
                if m < 0:
                    raise DomainError(f"negative multiplicity {m} for {x}")
                if m:
                    store[x] = store.get(x, 0) + m
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "_mult", store)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Multiset is immutable")

    @classmethod
    def empty(cls, group: GroupSpec) -> Multiset:
        return cls(group)

    @classmethod
    def from_elements(cls, group: GroupSpec, elements: Iterable) -> Multiset:
        return cls(group, ((x, 1) for x in elements))

    # -- basic queries -------------------------------------------------

    @property
    def cardinality(self) -> int:
        return sum(self._mult.values())

    def multiplicity(self, x) -> int:
        return self._mult.get(_coerce(self.group, x), 0)

    def support(self) -> list[GroupElement]:
        return sorted(self._mult, key=lambda e: e.coords)

    def items(self) -> list[tuple[GroupElement, int]]:
        return [(x, self._mult[x]) for x in self.support()]

    def __iter__(self) -> Iterator[tuple[GroupElement, int]]:
        return iter(self.items())

    def __contains__(self, x) -> bool:
        return self.multiplicity(x) >= 1

    def is_empty(self) -> bool:
        return not self._mult

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            return NotImplemented
        return self.group == other.group and self._mult == other._mult

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.group.moduli, frozenset(self._mult.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        inner = ", ".join(
            str(x) if m == 1 else f"{x}:{m}" for x, m in self.items()
        )
        return "{" + inner + "}"

    def _require_same_group(self, other: Multiset) -> None:
        if self.group != other.group:
            raise GroupMismatchError(
                f"multisets over {self.group} and {other.group} cannot be combined"
            )

    def is_subset_of(self, other: Multiset) -> bool:
        self._require_same_group(other)
        return all(m <= other._mult.get(x, 0) for x, m in self._mult.items())

    # -- multiset calculus ----------------------------------------------

    def union(self, other: Multiset) -> Multiset:
        """Multiplicities add, so |A u B| = |A| + |B|."""
        self._require_same_group(other)
        counts = dict(self._mult)
        for x, m in other._mult.items():
            counts[x] = counts.get(x, 0) + m
        return Multiset(self.group, counts)

    def difference(self, other: Multiset) -> Multiset:
        """Pointwise subtraction; requires other to be a subset of self."""
        self._require_same_group(other)
        counts = dict(self._mult)
        for x, m in other._mult.items():
            have = counts.get(x, 0)
            if m > have:
                raise NotASubsetError(
                    f"element {x} has multiplicity {m} > {have}", element=x
                )
            if m == have:
                del counts[x]
            else:
                counts[x] = have - m
        return Multiset(self.group, counts)

    def pushforward(
        self, f: Callable[[GroupElement], GroupElement], target: GroupSpec | None = None
    ) -> Multiset:
        """Image multiset; multiplicities of merged fibers add, so the
        cardinality is preserved."""
        counts: dict[GroupElement, int] = {}
        for x, m in self._mult.items():
            y = f(x)
            counts[y] = counts.get(y, 0) + m
        if target is None:
            target = next(iter(counts)).group if counts else self.group
        return Multiset(target, counts)

    def negate(self) -> Multiset:
        return self.pushforward(lambda x: -x)

    def scale(self, k: int) -> Multiset:
        return self.pushforward(lambda x: k * x)

    def shift(self, g: GroupElement) -> Multiset:
        """Translate every element by g."""
        if g.group != self.group:
            raise GroupMismatchError("shift element lives in the wrong group")
        return self.pushforward(lambda x: x + g)

    def total(self) -> GroupElement:
        """Sum of all elements counted with multiplicity."""
        acc = self.group.zero()
        for x, m in self._mult.items():
            acc = acc + m * x
        return acc

    def convolve(self, other: Multiset) -> Multiset:
        """Sumset with multiplicity: count of z is sum over x+y=z of products."""
        self._require_same_group(other)
        counts: dict[GroupElement, int] = {}
        for x, mx in self._mult.items():
            for y, my in other._mult.items():
                z = x + y
                counts[z] = counts.get(z, 0) + mx * my
        return Multiset(self.group, counts)

    def subset_sums(self, cap: int = DEFAULT_SUBSET_SUMS_CAP) -> Multiset:
        """The multiset of all 2^|A| subset totals.

        Convolves {0} with the binomial expansion of (1 + t^a)^m for every
        distinct element a of multiplicity m, which keeps the work
        proportional to the number of distinct sums rather than 2^|A|.
        """
        size = self.cardinality
        if size > cap:
            raise ResourceCapError(
                f"subset sums of a {size}-element multiset exceeds cap {cap}"
            )
        acc = {self.group.zero(): 1}
        for a, m in self.items():
            binoms = [math.comb(m, i) for i in range(m + 1)]
            multiples = [self.group.zero()]
            for _ in range(m):
                multiples.append(multiples[-1] + a)
            nxt: dict[GroupElement, int] = {}
            for y, c in acc.items():
                for i, w in enumerate(binoms):
                    z = y + multiples[i]
                    nxt[z] = nxt.get(z, 0) + c * w
            acc = nxt
        return Multiset(self.group, acc)

    # -- serialization ---------------------------------------------------

    def to_obj(self) -> dict:
        return {
            "group": self.group.to_obj(),
            "elements": [[x.to_obj(), m] for x, m in self.items()],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> Multiset:
        group = GroupSpec.from_obj(obj.get("group", {}))
        pairs = [(group.element(coords), m) for coords, m in obj.get("elements", [])]
        return cls(group, pairs)

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> Multiset:
        return cls.from_obj(json.loads(text))


@dataclass(frozen=True)
class Sim0Witness:
    """A zero-sum subset whose sign flip carries one multiset to the other."""

    flip_set: Multiset
    sum_check: GroupElement


def sim_check(a: Multiset, b: Multiset) -> bool:
    """Decide whether b arises from a by negating some subset.

    Flipping signs inside a pair class {x, -x} cannot change the combined
    count of the class, and that condition is also sufficient: the excess of
    a over b on one side of every pair is exactly what must be flipped.
    """
    a._require_same_group(b)
    for x in set(a._mult) | set(b._mult):
        if a.multiplicity(x) + a.multiplicity(-x) != b.multiplicity(x) + b.multiplicity(-x):
            return False
    return True


def sim0_check(a: Multiset, b: Multiset) -> tuple[bool, Sim0Witness | None]:
    """Decide flip equivalence with a zero-sum flip set, with witness.

    On every pair class {x, -x} with x != -x the flip count of x minus that
    of -x is forced, and flipping a canceling pair {x, -x} together adds
    nothing to the flip sum, so the pair classes contribute a fixed base sum.
    Self-negative elements (2x = 0) are invisible to the multiset but free to
    include in the flip set; including one copy adds x, a second copy cancels
    it.  So it suffices to search over subsets of the distinct self-negative
    support elements, a set bounded by the 2-torsion of the group.
    """
    if not sim_check(a, b):
        return False, None
    zero = a.group.zero()
    forced: dict[GroupElement, int] = {}
    base = zero
    for x in a.support():
        if x == -x:
            continue
        excess = a.multiplicity(x) - b.multiplicity(x)
        if excess > 0:
            forced[x] = excess
            base = base + excess * x
    frees = [x for x in a.support() if x == -x and not x.is_zero()]
    target = -base
    for r in range(len(frees) + 1):
        for combo in itertools.combinations(frees, r):
            s = zero
            for x in combo:
                s = s + x
            if s == target:
                counts = dict(forced)
                for x in combo:
                    counts[x] = 1
                flip = Multiset(a.group, counts)
                return True, Sim0Witness(flip_set=flip, sum_check=flip.total())
    return False, None
