"""Finitely generated abelian groups as explicit products of cyclic factors.

A group is described by a tuple of moduli: entry ``m >= 1`` stands for the
integers mod m, entry ``0`` for an infinite cyclic factor.  Elements are
coordinate vectors, kept canonically reduced into [0, m) on every finite
factor, so that value equality and hashing are well defined.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DomainError, GroupMismatchError

__all__ = ["GroupSpec", "GroupElement", "cyclic"]


@dataclass(frozen=True)
class GroupSpec:
    """Z/m1 x Z/m2 x ...; a modulus of 0 marks a copy of Z."""

    moduli: tuple[int, ...]

    def __init__(self, moduli: Sequence[int]):
        mods = tuple(int(m) for m in moduli)
        if any(m < 0 for m in mods):
            raise DomainError(f"moduli must be nonnegative, got {mods}")
        object.__setattr__(self, "moduli", mods)

    def __str__(self) -> str:
        if not self.moduli:
            return "0"
        return " x ".join("Z" if m == 0 else f"Z/{m}" for m in self.moduli)

    def is_finite(self) -> bool:
        return all(m >= 1 for m in self.moduli)

    def size(self) -> int:
        """Number of elements; finite groups only."""
        if not self.is_finite():
            raise DomainError(f"{self} is infinite")
        return math.prod(self.moduli)

    def exponent(self) -> int:
        """lcm of all element orders; finite groups only."""
        if not self.is_finite():
            raise DomainError(f"{self} is infinite")
        return math.lcm(*self.moduli) if self.moduli else 1

    def has_two_torsion(self) -> bool:
        """True when some element has order 2, i.e. some finite modulus is even."""
        return any(m > 0 and m % 2 == 0 for m in self.moduli)

    def zero(self) -> GroupElement:
        return GroupElement((0,) * len(self.moduli), self)

    def element(self, coords: Sequence[int]) -> GroupElement:
        """Build an element, reducing each coordinate into canonical range."""
        coords = tuple(int(c) for c in coords)
        if len(coords) != len(self.moduli):
            raise DomainError(
                f"expected {len(self.moduli)} coordinates, got {len(coords)}"
            )
        canon = tuple(c % m if m else c for c, m in zip(coords, self.moduli))
        return GroupElement(canon, self)

    def iter_elements(self) -> Iterator[GroupElement]:
        """All elements in lexicographic coordinate order; finite groups only."""
        if not self.is_finite():
            raise DomainError(f"cannot enumerate the infinite group {self}")
        for coords in itertools.product(*(range(m) for m in self.moduli)):
            yield GroupElement(coords, self)

    def to_obj(self) -> dict:
        return {"moduli": list(self.moduli)}

    @classmethod
    def from_obj(cls, obj: dict) -> GroupSpec:
        if not isinstance(obj, dict) or "moduli" not in obj:
            raise DomainError("group object must be {'moduli': [...]}")
        return cls(obj["moduli"])


def cyclic(n: int) -> GroupSpec:
    """The cyclic group Z/nZ (or Z when n == 0)."""
    return GroupSpec((n,))


@dataclass(frozen=True)
class GroupElement:
    coords: tuple[int, ...]
    group: GroupSpec

    def __post_init__(self):
        for c, m in zip(self.coords, self.group.moduli):
            if m and not 0 <= c < m:
                raise DomainError(f"coordinate {c} out of range for modulus {m}")

    def __str__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ", ".join(map(str, self.coords)) + ")"

    def __repr__(self) -> str:
        return f"<{self} in {self.group}>"

    def _require_same_group(self, other: GroupElement) -> None:
        if self.group != other.group:
            raise GroupMismatchError(
                f"elements of {self.group} and {other.group} cannot be combined"
            )

    def __add__(self, other: GroupElement) -> GroupElement:
        self._require_same_group(other)
        return self.group.element(
            tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> GroupElement:
        return self.group.element(tuple(-c for c in self.coords))

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def scale(self, k: int) -> GroupElement:
        return self.group.element(tuple(k * c for c in self.coords))

    def __rmul__(self, k: int) -> GroupElement:
        if not isinstance(k, int):
            return NotImplemented
        return self.scale(k)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def order(self) -> int | None:
        """Least k >= 1 with k*x = 0, or None when x has infinite order."""
        k = 1
        for c, m in zip(self.coords, self.group.moduli):
            if m == 0:
                if c != 0:
                    return None
            elif c:
                k = math.lcm(k, m // math.gcd(c, m))
        return k

    def to_obj(self) -> list[int]:
        return list(self.coords)
