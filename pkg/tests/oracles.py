"""Independent brute-force oracles used by the tests.

Everything here is deliberately naive: direct enumeration with no shortcuts,
so the production paths can be checked against first principles.
"""
from __future__ import annotations

import itertools

from fsrecon.groups import GroupElement, GroupSpec
from fsrecon.multisets import Multiset


def expand(ms: Multiset) -> list[GroupElement]:
    """Flatten a multiset into an explicit element list."""
    out = []
    for x, m in ms.items():
        out.extend([x] * m)
    return out


def fs_bruteforce(ms: Multiset) -> Multiset:
    """Subset sums by direct enumeration of all 2^|A| subsets."""
    elements = expand(ms)
    zero = ms.group.zero()
    sums = []
    for mask in range(2 ** len(elements)):
        acc = zero
        for i, x in enumerate(elements):
            if mask >> i & 1:
                acc = acc + x
        sums.append(acc)
    return Multiset.from_elements(ms.group, sums)


def iter_submultisets(ms: Multiset):
    """All sub-multisets, as (Multiset, total_sum) pairs."""
    items = ms.items()
    ranges = [range(m + 1) for _, m in items]
    zero = ms.group.zero()
    for counts in itertools.product(*ranges):
        sub = Multiset(ms.group, {x: c for (x, _), c in zip(items, counts) if c})
        total = zero
        for (x, _), c in zip(items, counts):
            total = total + c * x
        yield sub, total


def flip(ms: Multiset, sub: Multiset) -> Multiset:
    """Negate the elements of sub inside ms: (ms \\ sub) u (-sub)."""
    return ms.difference(sub).union(sub.negate())


def sim_oracle(a: Multiset, b: Multiset) -> bool:
    return any(flip(a, sub) == b for sub, _ in iter_submultisets(a))


def sim0_oracle(a: Multiset, b: Multiset) -> bool:
    return any(
        total.is_zero() and flip(a, sub) == b for sub, total in iter_submultisets(a)
    )


def order_oracle(x: GroupElement, cap: int = 10_000) -> int | None:
    acc = x
    for k in range(1, cap + 1):
        if acc.is_zero():
            return k
        acc = acc + x
    return None


def all_small_groups(max_size: int) -> list[GroupSpec]:
    """Every factorization of every size <= max_size into cyclic factors
    (>= 2), one GroupSpec per nondecreasing factor tuple."""
    shapes = {()}
    out = []
    for size in range(1, max_size + 1):
        for shape in _factorizations(size):
            if shape not in shapes:
                shapes.add(shape)
                out.append(GroupSpec(shape))
    out.append(GroupSpec(()))
    return out


def _factorizations(n: int, smallest: int = 2) -> list[tuple[int, ...]]:
    if n == 1:
        return [()]
    out = []
    for f in range(smallest, n + 1):
        if n % f == 0:
            out.extend([(f,) + rest for rest in _factorizations(n // f, f)])
    return out
