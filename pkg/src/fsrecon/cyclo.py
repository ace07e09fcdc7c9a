"""Exact arithmetic in cyclotomic fields and the unit-relation checks that
underpin subset-sums reconstruction over odd cyclic groups.

Elements are residues modulo the n-th cyclotomic polynomial, so equality of
canonical coefficient vectors is equality in the field (reducing mod t^n - 1
instead would introduce zero divisors).  The units of interest are 1 + w^j
for a primitive n-th root of unity w; a "unit word" is a formal integer
exponent vector on those generators, evaluated as an exact fraction with the
negative exponents collected in the denominator (no inverses are ever
computed in the ring; equality goes through cross-multiplication).

The rank checks at the bottom certify, for odd n:

* the distribution relations among the generators,
* that the per-divisor projection map hits a full-rank sublattice of the
  product of the relation quotients (certified by one exact rank equality;
  the inductive construction behind that fact is not reproduced here),
* that the explicit antisymmetric lattice of flip vectors has rank (n-1)/2
  and sits inside the kernel of every divisor evaluation,
* numerically, via the logarithmic embedding, that the generators span a
  multiplicative group of rank phi(n)/2 (advisory check, floating point).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, ResourceCapError
from .linalg import rational_rank
from .ofs import divisors, is_member, prime_factors, totient

__all__ = [
    "cyclotomic_poly",
    "CycloElement",
    "CycloFraction",
    "UnitWord",
    "unit_word_eval",
    "verify_distribution",
    "fold_exponents",
    "distribution_relation_vector",
    "kernel_test",
    "unit_signature",
    "sim0_lattice_member",
    "sim0_lattice_basis",
    "projection_surjectivity_check",
    "kernel_rank_check",
    "unit_group_rank_numeric",
]


# -- integer polynomial helpers (dense, low-to-high coefficients) -----------


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_div_exact(num: Sequence, den: Sequence) -> tuple:
    """Exact division of integer polynomials with monic divisor."""
    num = list(num)
    dd = len(den) - 1
    assert den[-1] == 1, "divisor must be monic"
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        q = num[i]
        if q:
            quot[i - dd] = q
            for j, c in enumerate(den):
                num[i - dd + j] -= q * c
    if any(num):
        raise ArithmeticError("division was not exact")
    return tuple(quot)


def _poly_mod(coeffs: list, mod: Sequence) -> list:
    dd = len(mod) - 1
    for i in range(len(coeffs) - 1, dd - 1, -1):
        q = coeffs[i]
        if q:
            coeffs[i] = 0
            for j in range(dd):
                coeffs[i - dd + j] -= q * mod[j]
    return coeffs[:dd]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, low to high.

    Computed as (t^n - 1) / product of the lower cyclotomics, by exact
    integer division.
    """
    if n < 1:
        raise DomainError(f"conductor must be positive, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    den: list = [1]
    for d in divisors(n)[:-1]:
        den = _poly_mul(den, cyclotomic_poly(d))
    return _poly_div_exact(num, den)


class CycloElement:
    """A residue mod the n-th cyclotomic polynomial, i.e. an element of the
    n-th cyclotomic field in canonical coordinates (degree < phi(n))."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: tuple):
        self.n = n
        self.coeffs = coeffs

    @classmethod
    def from_poly(cls, n: int, coeffs: Sequence) -> CycloElement:
        deg = totient(n)
        reduced = _poly_mod(list(coeffs), cyclotomic_poly(n))
        reduced += [0] * (deg - len(reduced))
        return cls(n, tuple(reduced))

    @classmethod
    def rational(cls, n: int, value) -> CycloElement:
        return cls.from_poly(n, [value])

    @classmethod
    def root_power(cls, n: int, j: int) -> CycloElement:
        """The power w^j of the primitive n-th root w."""
        j %= n
        return cls.from_poly(n, [0] * j + [1])

    @classmethod
    def one_plus_root(cls, n: int, j: int) -> CycloElement:
        j %= n
        coeffs = [0] * (j + 1)
        coeffs[0] += 1
        coeffs[j] += 1
        return cls.from_poly(n, coeffs)

    def _check(self, other: CycloElement) -> None:
        if self.n != other.n:
            raise DomainError(f"mixing conductors {self.n} and {other.n}")

    def __add__(self, other: CycloElement) -> CycloElement:
        self._check(other)
        return CycloElement(
            self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: CycloElement) -> CycloElement:
        self._check(other)
        return CycloElement(
            self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> CycloElement:
        return CycloElement(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, other: CycloElement) -> CycloElement:
        self._check(other)
        return CycloElement.from_poly(self.n, _poly_mul(self.coeffs, other.coeffs))

    def __pow__(self, e: int) -> CycloElement:
        if e < 0:
            raise DomainError("negative powers need CycloFraction")
        result = CycloElement.rational(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self.n == other.n and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(Fraction(c) for c in self.coeffs)))

    def __repr__(self) -> str:
        return f"CycloElement({self.n}, {self.coeffs})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("element is not rational")
        return Fraction(self.coeffs[0])


@dataclass(frozen=True)
class CycloFraction:
    """Quotient of two field elements; equality by cross-multiplication."""

    numerator: CycloElement
    denominator: CycloElement

    def __post_init__(self):
        self.numerator._check(self.denominator)
        if self.denominator.is_zero():
            raise DomainError("zero denominator")

    def __mul__(self, other: CycloFraction) -> CycloFraction:
        return CycloFraction(
            self.numerator * other.numerator,
            self.denominator * other.denominator,
        )

    def inverse(self) -> CycloFraction:
        return CycloFraction(self.denominator, self.numerator)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloFraction):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def is_one(self) -> bool:
        return self.numerator == self.denominator


@dataclass(frozen=True)
class UnitWord:
    """Formal product of the generators (1 + w^j) with integer exponents,
    indices mod n."""

    n: int
    exponents: tuple[int, ...]

    def eval(self) -> CycloFraction:
        return unit_word_eval(self.n, self.exponents)


def unit_word_eval(d: int, exponents: Sequence[int]) -> CycloFraction:
    """Evaluate the product of (1 + w_d^j)^e_j exactly, negatives in the
    denominator.  d must be odd so that no factor vanishes."""
    if d % 2 == 0:
        raise DomainError(f"conductor must be odd (1 + w^(d/2) vanishes), got {d}")
    if len(exponents) != d:
        raise DomainError(f"expected {d} exponents, got {len(exponents)}")
    num = CycloElement.rational(d, 1)
    den = CycloElement.rational(d, 1)
    for j, e in enumerate(exponents):
        if e:
            g = CycloElement.one_plus_root(d, j) ** abs(e)
            if e > 0:
                num = num * g
            else:
                den = den * g
    return CycloFraction(num, den)


def verify_distribution(n: int, p: int, j: int) -> bool:
    """Check the distribution relation: the product of (1 + w^(j + k n/p))
    over k < p equals 1 + w^(j p), exactly in the field."""
    if n % 2 == 0 or n < 1:
        raise DomainError(f"n must be odd and positive, got {n}")
    if n % p != 0:
        raise DomainError(f"{p} does not divide {n}")
    if not 0 <= j < n // p:
        raise DomainError(f"index {j} out of range for n={n}, p={p}")
    step = n // p
    lhs = CycloElement.rational(n, 1)
    for k in range(p):
        lhs = lhs * CycloElement.one_plus_root(n, j + k * step)
    rhs = CycloElement.one_plus_root(n, j * p)
    return lhs == rhs


def fold_exponents(n: int, d: int, x: Sequence[int]) -> tuple[int, ...]:
    """Project a length-n exponent vector to length d | n by summing the
    entries in each residue class of indices mod d."""
    if n % d != 0:
        raise DomainError(f"{d} does not divide {n}")
    if len(x) != n:
        raise DomainError(f"expected {n} entries, got {len(x)}")
    out = [0] * d
    for i, v in enumerate(x):
        out[i % d] += v
    return tuple(out)


def distribution_relation_vector(d: int, p: int, j: int) -> tuple[int, ...]:
    """The exponent vector whose unit word the distribution relation kills:
    +1 at index j*p, -1 at each index j + k*d/p.  Entries sum to 1 - p."""
    if d % p != 0:
        raise DomainError(f"{p} does not divide {d}")
    if not 0 <= j < d // p:
        raise DomainError(f"index {j} out of range for d={d}, p={p}")
    v = [0] * d
    v[(j * p) % d] += 1
    for k in range(p):
        v[(j + k * (d // p)) % d] -= 1
    return tuple(v)


def kernel_test(n: int, x: Sequence[int]) -> bool:
    """True when the folded unit word evaluates to 1 for every divisor of n.

    For multiplicity-difference vectors this is exactly equality of subset
    sums of the underlying multisets.
    """
    if n % 2 == 0:
        raise DomainError(f"n must be odd, got {n}")
    for d in divisors(n):
        if not unit_word_eval(d, fold_exponents(n, d, x)).is_one():
            return False
    return True


def unit_signature(ms) -> tuple:
    """Canonical per-divisor product of the generators raised to the
    multiplicities of a multiset over odd Z/n.  Two multisets have equal
    signatures iff kernel_test accepts their multiplicity difference."""
    moduli = ms.group.moduli
    if len(moduli) != 1 or moduli[0] < 1 or moduli[0] % 2 == 0:
        raise DomainError("unit signatures need a multiset over odd Z/n")
    n = moduli[0]
    mu = [0] * n
    for x, m in ms.items():
        mu[x.coords[0]] = m
    sig = []
    for d in divisors(n):
        folded = fold_exponents(n, d, mu)
        acc = CycloElement.rational(d, 1)
        for j, e in enumerate(folded):
            if e:
                acc = acc * CycloElement.one_plus_root(d, j) ** e
        sig.append((d, acc.coeffs))
    return tuple(sig)


# -- the flip lattice and rank certificates ---------------------------------


def sim0_lattice_member(n: int, x: Sequence[int]) -> bool:
    """Membership in the lattice of zero-sum flip vectors: first entry 0,
    antisymmetric under j <-> n - j, and weighted sum of the first half
    divisible by n."""
    if n % 2 == 0 or len(x) != n:
        raise DomainError("need an odd n and a length-n vector")
    if x[0] != 0:
        return False
    half = (n - 1) // 2
    if any(x[j] + x[n - j] != 0 for j in range(1, half + 1)):
        return False
    return sum(j * x[j] for j in range(1, half + 1)) % n == 0


def sim0_lattice_basis(n: int) -> list[tuple[int, ...]]:
    """An explicit basis of the zero-sum flip lattice; (n-1)/2 vectors."""
    if n % 2 == 0 or n < 1:
        raise DomainError(f"n must be odd and positive, got {n}")
    half = (n - 1) // 2
    basis = []
    if half >= 1:
        v = [0] * n
        v[1], v[n - 1] = n, -n
        basis.append(tuple(v))
    for j in range(2, half + 1):
        v = [0] * n
        v[j], v[n - j] = 1, -1
        v[1] -= j
        v[n - 1] += j
        basis.append(tuple(v))
    return basis


def projection_surjectivity_check(n: int, cap: int = 45) -> dict:
    """Certify by exact rank that the per-divisor index-folding map covers,
    over the rationals, the whole product of divisor spaces modulo their
    distribution relations.

    The quotient by each relation space is realized by stacking the relation
    generators next to the image columns: the map is onto the quotient iff
    the stacked matrix has full row rank.
    """
    if n % 2 == 0 or n < 1:
        raise DomainError(f"n must be odd and positive, got {n}")
    if n > cap:
        raise ResourceCapError(f"surjectivity check capped at {cap}")
    divs = divisors(n)
    offsets = {}
    total = 0
    for d in divs:
        offsets[d] = total
        total += d
    image_cols = []
    for j in range(n):
        col = [0] * total
        for d in divs:
            col[offsets[d] + (j % d)] = 1
        image_cols.append(col)
    relation_cols = []
    for d in divs:
        for p in prime_factors(d):
            for j in range(d // p):
                rel = distribution_relation_vector(d, p, j)
                col = [0] * total
                for i, e in enumerate(rel):
                    col[offsets[d] + i] = e
                relation_cols.append(col)
    rank_stacked = rational_rank(image_cols + relation_cols)
    rank_relations = rational_rank(relation_cols) if relation_cols else 0
    rank = rank_stacked - rank_relations
    codomain_dim = total - rank_relations
    return {
        "n": n,
        "rank": rank,
        "codomain_dim": codomain_dim,
        "surjective": rank == codomain_dim,
    }


def kernel_rank_check(n: int) -> dict:
    """For a covered modulus n, check that the explicit flip lattice has the
    full kernel rank (n-1)/2 and really lies in the kernel of every divisor
    evaluation."""
    verdict = is_member(n)
    if not verdict.member:
        raise DomainError(
            f"kernel rank equals (n-1)/2 only for covered moduli; {n} is not one"
        )
    basis = sim0_lattice_basis(n)
    rank = rational_rank(basis) if basis else 0
    expected = (n - 1) // 2
    basis_ok = all(
        sim0_lattice_member(n, v) and kernel_test(n, v) for v in basis
    )
    return {
        "n": n,
        "lattice_rank": rank,
        "expected": expected,
        "consistent": rank == expected and basis_ok,
    }


def unit_group_rank_numeric(
    n: int,
    tolerance: float = 1e-8,
    precision_bits: int = 100,
    cap: int = 45,
) -> dict:
    """Advisory numeric check of the multiplicative rank of the generators
    1 + w^j via the logarithmic embedding.

    Builds log|sigma(1 + w^j)| over all embeddings sigma at the requested
    working precision and counts singular values above the tolerance.  The
    expected rank is phi(n)/2 for covered n >= 3 and 1 for n = 1.
    """
    from mpmath import mp

    if n % 2 == 0 or n < 1:
        raise DomainError(f"n must be odd and positive, got {n}")
    if n > cap:
        raise ResourceCapError(f"numeric rank check capped at {cap}")
    with mp.workprec(precision_bits):
        embeddings = [a for a in range(1, n + 1) if math.gcd(a, n) == 1]
        mat = mp.matrix(len(embeddings), n)
        for i, a in enumerate(embeddings):
            for j in range(n):
                # |1 + exp(2 pi i a j / n)| = 2 |cos(pi a j / n)|, never zero
                # for odd n.
                mat[i, j] = mp.log(2 * abs(mp.cospi(mp.mpf(a * j) / n)))
        singular = mp.svd_r(mat, compute_uv=False)
        numeric_rank = sum(1 for s in singular if s > tolerance)
    expected = 1 if n == 1 else totient(n) // 2
    return {
        "n": n,
        "numeric_rank": numeric_rank,
        "expected": expected,
        "consistent": numeric_rank == expected,
    }
