"""Discrete Radon transform on (Z/nZ)^d with an exact closed-form inverse.

A homomorphism to Z/nZ is represented by its coefficient vector; the
transform tabulates the fiber sums Rf(hom, c) over all homomorphisms and
residues.  The inverse reads back, for each point x, only the slices through
x: f(x) is the weighted sum of Rf(hom, hom(x)) with a rational weight per
homomorphism that depends only on which primes divide all of its values.

No floating point is used anywhere.  Rationals at the boundary are reduced
to a common denominator and the integer cores run either in pure Python or
through numpy int64 kernels (with overflow bounds checked up front; the
arbitrary-precision object path takes over when a bound would not fit).
The transform is not surjective, so ``invert`` does not validate its input;
``mass_consistent`` is the explicit sanity check, and the character-sum
route ``fourier_invert_at_zero`` provides an independent second inverse.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

from .cyclo import CycloElement
from .errors import DomainError
from .ofs import divisors, prime_factors, totient

__all__ = [
    "Hom",
    "iter_homs",
    "iter_point_tuples",
    "FunctionTable",
    "RadonImage",
    "prime_divides_hom",
    "inversion_weight",
    "forward",
    "invert",
    "verify_inverting",
    "product_lift",
    "fourier_invert_at_zero",
    "random_table",
]

_NUMPY_MIN_POINTS = 200
_PSIX_CACHE_MAX_ELEMS = 25_000_000
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class Hom:
    """A homomorphism (Z/nZ)^d -> Z/nZ, x |-> sum(coeffs * x) mod n."""

    n: int
    d: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.d:
            raise DomainError(f"expected {self.d} coefficients")
        if any(not 0 <= a < self.n for a in self.coeffs):
            raise DomainError(f"coefficients must lie in [0, {self.n})")

    @classmethod
    def reduced(cls, n: int, d: int, coeffs: Iterable[int]) -> Hom:
        return cls(n, d, tuple(a % n for a in coeffs))

    def apply(self, coords: Iterable[int]) -> int:
        return sum(a * x for a, x in zip(self.coeffs, coords)) % self.n

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)


def iter_point_tuples(n: int, d: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(n), repeat=d)


def iter_homs(n: int, d: int) -> Iterator[Hom]:
    for coeffs in iter_point_tuples(n, d):
        yield Hom(n, d, coeffs)


def prime_divides_hom(p: int, hom: Hom) -> bool:
    """True when the prime p | n divides every value of the homomorphism;
    the image is generated by the coefficients, so this is p | gcd."""
    if hom.n % p != 0:
        raise DomainError(f"{p} does not divide the modulus {hom.n}")
    g = math.gcd(math.gcd(*hom.coeffs), hom.n)
    return g % p == 0


def inversion_weight(hom: Hom) -> Fraction:
    """The closed-form inverting weight: product of (1 - p^(d-1)) over the
    primes dividing the homomorphism, divided by n^(d-1) phi(n)."""
    n, d = hom.n, hom.d
    g = math.gcd(math.gcd(*hom.coeffs), n)
    num = 1
    for p in prime_factors(n):
        if g % p == 0:
            num *= 1 - p ** (d - 1)
    return Fraction(num, n ** (d - 1) * totient(n))


# -- tables ------------------------------------------------------------------


def _fraction_from_str(text: str) -> Fraction:
    return Fraction(text)


def _fraction_to_str(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


class FunctionTable:
    """A complete exact-rational table on the points of (Z/nZ)^d."""

    __slots__ = ("n", "d", "values")

    def __init__(self, n: int, d: int, values: Mapping[tuple, Fraction]):
        if len(values) != n**d:
            raise DomainError(
                f"table has {len(values)} entries, expected {n}^{d} = {n ** d}"
            )
        canon: dict[tuple, Fraction] = {}
        for key, v in values.items():
            key = tuple(int(c) for c in key)
            if len(key) != d or any(not 0 <= c < n for c in key):
                raise DomainError(f"bad point {key} for (Z/{n})^{d}")
            canon[key] = v if type(v) is Fraction else Fraction(v)
        self.n = n
        self.d = d
        self.values = canon

    @classmethod
    def _trusted(cls, n: int, d: int, values: dict[tuple, Fraction]) -> FunctionTable:
        """Internal constructor for complete, already-canonical tables."""
        table = cls.__new__(cls)
        table.n = n
        table.d = d
        table.values = values
        return table

    def value(self, point) -> Fraction:
        return self.values[tuple(point)]

    def total(self) -> Fraction:
        return sum(self.values.values(), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return (self.n, self.d) == (other.n, other.d) and self.values == other.values

    def __repr__(self) -> str:
        return f"FunctionTable(n={self.n}, d={self.d}, {len(self.values)} points)"

    @classmethod
    def delta(cls, n: int, d: int, at: tuple | None = None) -> FunctionTable:
        at = tuple(at) if at is not None else (0,) * d
        vals = {x: Fraction(1 if x == at else 0) for x in iter_point_tuples(n, d)}
        return cls(n, d, vals)

    @classmethod
    def constant(cls, n: int, d: int, value) -> FunctionTable:
        return cls(n, d, {x: Fraction(value) for x in iter_point_tuples(n, d)})

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "values": [
                [list(x), _fraction_to_str(self.values[x])]
                for x in iter_point_tuples(self.n, self.d)
            ],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> FunctionTable:
        n, d = int(obj["n"]), int(obj["d"])
        vals = {tuple(k): _fraction_from_str(v) for k, v in obj["values"]}
        return cls(n, d, vals)

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> FunctionTable:
        return cls.from_obj(json.loads(text))


def random_table(
    n: int,
    d: int,
    rng,
    numerator_bound: int = 99,
    denominators: tuple[int, ...] = (1, 2, 3, 4, 6, 8),
) -> FunctionTable:
    """Random rational table; the default denominators keep the integer fast
    path inside int64 for every modulus in the supported range."""
    vals = {
        x: Fraction(rng.randint(-numerator_bound, numerator_bound), rng.choice(denominators))
        for x in iter_point_tuples(n, d)
    }
    return FunctionTable._trusted(n, d, vals)


class RadonImage:
    """Exact table of fiber sums, indexed by (homomorphism, residue).

    Stored as one flat integer array over a common denominator so that large
    tables stay cheap; `value` hands out normalized Fractions.
    """

    __slots__ = ("n", "d", "_nums", "_den")

    def __init__(self, n: int, d: int, nums: list[int], den: int):
        if den <= 0:
            raise DomainError("denominator must be positive")
        if len(nums) != n**d * n:
            raise DomainError("image table has the wrong size")
        self.n = n
        self.d = d
        self._nums = nums
        self._den = den

    def _hom_index(self, coeffs: Iterable[int]) -> int:
        idx = 0
        for a in coeffs:
            if not 0 <= a < self.n:
                raise DomainError(f"coefficient {a} out of range")
            idx = idx * self.n + a
        return idx

    def value(self, coeffs, c: int) -> Fraction:
        return Fraction(self._nums[self._hom_index(coeffs) * self.n + c % self.n], self._den)

    def mass_by_hom(self) -> list[Fraction]:
        n = self.n
        return [
            Fraction(sum(self._nums[i * n : (i + 1) * n]), self._den)
            for i in range(n**self.d)
        ]

    def mass_consistent(self) -> bool:
        """Every homomorphism must see the same total mass."""
        masses = self.mass_by_hom()
        return all(m == masses[0] for m in masses)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RadonImage):
            return NotImplemented
        if (self.n, self.d) != (other.n, other.d):
            return False
        a, b = self._den, other._den
        return all(x * b == y * a for x, y in zip(self._nums, other._nums))

    def __repr__(self) -> str:
        return f"RadonImage(n={self.n}, d={self.d})"

    def iter_entries(self) -> Iterator[tuple[tuple[int, ...], int, Fraction]]:
        i = 0
        for coeffs in iter_point_tuples(self.n, self.d):
            for c in range(self.n):
                yield coeffs, c, Fraction(self._nums[i], self._den)
                i += 1

    @classmethod
    def from_entries(cls, n: int, d: int, entries: Mapping) -> RadonImage:
        """Build from a {(coeffs, c): value} mapping; missing entries are 0."""
        fracs = {k: Fraction(v) for k, v in entries.items()}
        den = math.lcm(*(fr.denominator for fr in fracs.values())) if fracs else 1
        nums = [0] * (n**d * n)
        for (coeffs, c), fr in fracs.items():
            idx = 0
            for a in coeffs:
                idx = idx * n + a % n
            nums[idx * n + c % n] = fr.numerator * (den // fr.denominator)
        return cls(n, d, nums, den)

    def perturbed(self, coeffs, c: int, delta) -> RadonImage:
        entries = {(co, cc): v for co, cc, v in self.iter_entries()}
        key = (tuple(coeffs), c % self.n)
        entries[key] = entries[key] + Fraction(delta)
        return RadonImage.from_entries(self.n, self.d, entries)

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "entries": [
                [list(coeffs), c, _fraction_to_str(v)]
                for coeffs, c, v in self.iter_entries()
            ],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> RadonImage:
        n, d = int(obj["n"]), int(obj["d"])
        entries = {
            (tuple(coeffs), int(c)): _fraction_from_str(v)
            for coeffs, c, v in obj["entries"]
        }
        return cls.from_entries(n, d, entries)

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> RadonImage:
        return cls.from_obj(json.loads(text))


# -- integer kernels ----------------------------------------------------------

_psix_cache: dict[tuple[int, int], np.ndarray] = {}


def _points_array(n: int, d: int) -> np.ndarray:
    return np.array(list(iter_point_tuples(n, d)), dtype=np.int64).reshape(n**d, d)


def _psix_rows(n: int, d: int, block: int = 512) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (start, rows) blocks of the matrix hom(x) over homs x points."""
    key = (n, d)
    big = n**d
    cached = _psix_cache.get(key)
    if cached is not None:
        yield 0, cached
        return
    pts = _points_array(n, d)
    if big * big <= _PSIX_CACHE_MAX_ELEMS:
        full = np.empty((big, big), dtype=np.uint16)
        for start in range(0, big, block):
            stop = min(start + block, big)
            full[start:stop] = (pts[start:stop] @ pts.T) % n
        _psix_cache.clear()
        _psix_cache[key] = full
        yield 0, full
        return
    for start in range(0, big, block):
        stop = min(start + block, big)
        yield start, ((pts[start:stop] @ pts.T) % n).astype(np.uint16)


def _common_ints(fracs: Iterable[Fraction]) -> tuple[list[int], int]:
    fracs = list(fracs)
    den = math.lcm(*(fr.denominator for fr in fracs)) if fracs else 1
    return [fr.numerator * (den // fr.denominator) for fr in fracs], den


def _forward_python(n: int, d: int, nums: list[int]) -> list[int]:
    pts = list(iter_point_tuples(n, d))
    out = [0] * (len(pts) * n)
    for i, h in enumerate(pts):
        base = i * n
        for j, x in enumerate(pts):
            c = sum(a * b for a, b in zip(h, x)) % n
            out[base + c] += nums[j]
    return out


def _forward_numpy(n: int, d: int, nums: list[int], exact_object: bool) -> list[int]:
    big = n**d
    dtype = object if exact_object else np.int64
    fnum = np.array(nums, dtype=dtype)
    out = np.zeros((big, n), dtype=dtype)
    for start, rows in _psix_rows(n, d):
        for r in range(rows.shape[0]):
            np.add.at(out[start + r], rows[r], fnum)
    return out.reshape(-1).tolist() if not exact_object else list(out.reshape(-1))


def forward(f: FunctionTable) -> RadonImage:
    """Tabulate all fiber sums of f; exact."""
    n, d = f.n, f.d
    big = n**d
    nums, den = _common_ints(f.values[x] for x in iter_point_tuples(n, d))
    if big < _NUMPY_MIN_POINTS:
        flat = _forward_python(n, d, nums)
    else:
        unsafe = sum(abs(v) for v in nums) >= _INT64_SAFE
        flat = _forward_numpy(n, d, nums, exact_object=unsafe)
    return RadonImage(n, d, flat, den)


def _weight_ints(weights, n: int, d: int) -> tuple[list[int], int]:
    if weights is None or weights is inversion_weight:
        return _builtin_weight_ints(n, d)
    return _common_ints(Fraction(weights(h)) for h in iter_homs(n, d))


@lru_cache(maxsize=32)
def _builtin_weight_ints(n: int, d: int) -> tuple[list[int], int]:
    """Closed-form weights as integers over n^(d-1) phi(n); the numerator
    depends only on gcd(coeffs, n), so it is a divisor lookup."""
    primes = prime_factors(n)
    by_divisor = {}
    for g in divisors(n):
        num = 1
        for p in primes:
            if g % p == 0:
                num *= 1 - p ** (d - 1)
        by_divisor[g] = num
    nums = [
        by_divisor[math.gcd(math.gcd(*coeffs), n)]
        for coeffs in iter_point_tuples(n, d)
    ]
    return nums, n ** (d - 1) * totient(n)


def invert(img: RadonImage, weights: Callable[[Hom], Fraction] | None = None) -> FunctionTable:
    """Reconstruct the table from its image: f(x) is the weighted sum of the
    slices Rf(hom, hom(x)).  The input is trusted to be a genuine image."""
    n, d = img.n, img.d
    big = n**d
    wnums, wden = _weight_ints(weights, n, d)
    den = img._den * wden
    if big < _NUMPY_MIN_POINTS:
        pts = list(iter_point_tuples(n, d))
        acc = [0] * big
        for i, h in enumerate(pts):
            w = wnums[i]
            if not w:
                continue
            base = i * n
            for j, x in enumerate(pts):
                c = sum(a * b for a, b in zip(h, x)) % n
                acc[j] += w * img._nums[base + c]
        raw = acc
    else:
        max_r = max(map(abs, img._nums), default=0)
        bound = sum(abs(w) for w in wnums) * max_r
        exact_object = bound >= _INT64_SAFE
        dtype = object if exact_object else np.int64
        rmat = np.array(img._nums, dtype=dtype).reshape(big, n)
        warr = np.array(wnums, dtype=dtype)
        acc = np.zeros(big, dtype=dtype)
        for start, rows in _psix_rows(n, d):
            for r in range(rows.shape[0]):
                w = warr[start + r]
                if w:
                    acc += w * rmat[start + r][rows[r]]
        raw = acc.tolist() if not exact_object else list(acc)
    values = {
        x: Fraction(raw[j], den) for j, x in enumerate(iter_point_tuples(n, d))
    }
    return FunctionTable._trusted(n, d, values)


def _verify_roll(n: int, d: int, wnums: list[int], den: int, exact_object: bool) -> bool:
    """Backprojection by cyclic shifts: after one pass per axis, slot c of
    U[x] holds the sum of weights over homs with hom(x) = -c, so slot 0 is
    the criterion sum.  Cost n^(d+2) per axis, all integer."""
    dtype = object if exact_object else np.int64
    lam = np.array(wnums, dtype=dtype).reshape((n,) * d)
    shape = (n,) * d + (n,)
    u = np.zeros(shape, dtype=dtype)
    u[..., 0] = lam
    for axis in range(d):
        um = np.moveaxis(u, axis, 0)
        v = np.zeros(shape, dtype=dtype)
        vm = np.moveaxis(v, axis, 0)
        for x in range(n):
            acc = np.zeros(um.shape[1:], dtype=dtype)
            for p in range(n):
                s = (-(x * p)) % n
                acc += np.roll(um[p], s, axis=-1) if s else um[p]
            vm[x] = acc
        u = v
    flat = u[..., 0].reshape(-1)
    if flat[0] != den:
        return False
    return not any(bool(v) for v in flat[1:]) if exact_object else not flat[1:].any()


def verify_inverting(weights: Callable[[Hom], Fraction], n: int, d: int) -> bool:
    """Check the inverting-function criterion exactly: for every point x the
    weights of the homomorphisms vanishing at x must sum to 1 at x = 0 and
    to 0 elsewhere."""
    big = n**d
    wnums, den = _weight_ints(weights, n, d)
    if big < _NUMPY_MIN_POINTS:
        pts = list(iter_point_tuples(n, d))
        sums = [0] * big
        for i, h in enumerate(pts):
            w = wnums[i]
            if not w:
                continue
            for j, x in enumerate(pts):
                if sum(a * b for a, b in zip(h, x)) % n == 0:
                    sums[j] += w
        return sums[0] == den and all(v == 0 for v in sums[1:])
    exact_object = sum(abs(w) for w in wnums) >= _INT64_SAFE
    if big * big <= 100_000_000:
        warr = np.array(wnums, dtype=object if exact_object else np.int64)
        sums = np.zeros(big, dtype=object if exact_object else np.int64)
        for start, rows in _psix_rows(n, d):
            sums += warr[start : start + rows.shape[0]] @ (rows == 0)
        if sums[0] != den:
            return False
        return not any(bool(v) for v in sums[1:]) if exact_object else not sums[1:].any()
    return _verify_roll(n, d, wnums, den, exact_object)


def product_lift(
    weights_m: Callable[[Hom], Fraction],
    weights_n: Callable[[Hom], Fraction],
    m: int,
    n: int,
    d: int,
) -> Callable[[Hom], Fraction]:
    """Combine inverting weights for coprime moduli m and n into weights for
    m*n by reducing the coefficient vector mod each factor."""
    if math.gcd(m, n) != 1:
        raise DomainError(f"moduli {m} and {n} are not coprime")

    def lifted(hom: Hom) -> Fraction:
        if hom.n != m * n or hom.d != d:
            raise DomainError(f"expected a homomorphism for (Z/{m * n})^{d}")
        part_m = weights_m(Hom.reduced(m, d, hom.coeffs))
        part_n = weights_n(Hom.reduced(n, d, hom.coeffs))
        return Fraction(part_m) * Fraction(part_n)

    return lifted


def fourier_invert_at_zero(img: RadonImage) -> Fraction:
    """Second, independent inverse at the origin: the character sum
    sum_c w^(-c) Rf(hom, c) over all homomorphisms and residues, evaluated
    exactly in the n-th cyclotomic field and divided by n^d.  A nonrational
    outcome means the input was not a genuine transform image."""
    n, d = img.n, img.d
    big = n**d
    residue_totals = [0] * n
    nums = img._nums
    for i in range(big):
        base = i * n
        for c in range(n):
            residue_totals[c] += nums[base + c]
    poly = [0] * n
    for c in range(n):
        poly[(n - c) % n] += residue_totals[c]
    elem = CycloElement.from_poly(n, poly)
    if not elem.is_rational():
        raise DomainError("character sum is irrational: not a transform image")
    return elem.rational_value() / (img._den * n**d)
