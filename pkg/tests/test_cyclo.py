import cmath
import math
import random
from fractions import Fraction

import pytest

from fsrecon.cyclo import (
    CycloElement,
    CycloFraction,
    UnitWord,
    cyclotomic_poly,
    distribution_relation_vector,
    fold_exponents,
    kernel_rank_check,
    kernel_test,
    projection_surjectivity_check,
    sim0_lattice_basis,
    sim0_lattice_member,
    unit_group_rank_numeric,
    unit_signature,
    unit_word_eval,
    verify_distribution,
)
from fsrecon.errors import DomainError
from fsrecon.groups import cyclic
from fsrecon.multisets import Multiset
from fsrecon.ofs import divisors, prime_factors, totient


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# -- cyclotomic polynomials ----------------------------------------------------


def test_cyclotomic_small():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(9) == (1, 0, 0, 1, 0, 0, 1)


def test_cyclotomic_product_is_t_power_minus_one():
    for n in range(1, 31):
        prod = [1]
        for d in divisors(n):
            prod = poly_mul(prod, list(cyclotomic_poly(d)))
        expected = [-1] + [0] * (n - 1) + [1]
        assert prod == expected, n


def test_cyclotomic_degree_is_totient():
    for n in range(1, 40):
        assert len(cyclotomic_poly(n)) == totient(n) + 1


# -- field arithmetic ------------------------------------------------------------


def test_root_relations():
    w = CycloElement.root_power(3, 1)
    one = CycloElement.rational(3, 1)
    assert w**3 == one
    assert one + w + w * w == CycloElement.rational(3, 0)


def test_minimal_polynomial_kills_root():
    for n in range(1, 21):
        w = CycloElement.root_power(n, 1)
        acc = CycloElement.rational(n, 0)
        for c in reversed(cyclotomic_poly(n)):
            acc = acc * w + CycloElement.rational(n, c)
        assert acc.is_zero(), n


def test_rational_detection():
    x = CycloElement.rational(9, Fraction(2, 3))
    assert x.is_rational() and x.rational_value() == Fraction(2, 3)
    assert not CycloElement.root_power(9, 2).is_rational()


def test_fraction_times_inverse_is_one():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.choice([3, 5, 9, 15])
        coeffs = [rng.randint(-4, 4) for _ in range(totient(n))]
        elem = CycloElement.from_poly(n, coeffs)
        if elem.is_zero():
            continue
        other = CycloElement.one_plus_root(n, rng.randrange(n))
        frac = CycloFraction(elem, other)
        assert (frac * frac.inverse()).is_one()


# -- distribution relations -------------------------------------------------------


def test_distribution_n3():
    # (1+1)(1+w)(1+w^2) = 2 over the cube roots of unity.
    assert verify_distribution(3, 3, 0)


def test_distribution_n9_example():
    assert verify_distribution(9, 3, 1)


def test_distribution_n15_all():
    for p in (3, 5):
        for j in range(15 // p):
            assert verify_distribution(15, p, j)


def test_distribution_all_small_odd():
    for n in range(3, 46, 2):
        for p in prime_factors(n):
            for j in range(n // p):
                assert verify_distribution(n, p, j), (n, p, j)


def test_distribution_rejects_even():
    with pytest.raises(DomainError):
        verify_distribution(6, 3, 0)


# -- exponent folding and unit words ----------------------------------------------


def test_fold_examples():
    e4 = [0] * 6
    e4[4] = 1
    assert fold_exponents(6, 3, e4) == (0, 1, 0)
    x = list(range(9))
    assert fold_exponents(9, 9, x) == tuple(x)
    assert fold_exponents(9, 3, [1] * 9) == (3, 3, 3)
    with pytest.raises(DomainError):
        fold_exponents(9, 4, [0] * 9)


def test_unit_word_empty_and_constants():
    assert unit_word_eval(3, (0, 0, 0)).is_one()
    # Over the trivial conductor the only generator is 1 + 1 = 2.
    val = unit_word_eval(1, (3,))
    assert val.numerator == CycloElement.rational(1, 8)
    assert val.denominator.is_one()


def test_unit_word_conjugate_generators_cancel():
    # (1 + w)(1 + w^2) = 1 for a primitive cube root.
    assert unit_word_eval(3, (0, 1, 1)).numerator.is_one()


def test_unit_word_rejects_even_conductor():
    with pytest.raises(DomainError):
        unit_word_eval(4, (0, 0, 0, 0))
    assert UnitWord(5, (0, 1, 0, 0, -1)).eval() is not None


def test_relation_vectors_in_kernel():
    for d in (3, 9, 15, 21):
        for p in prime_factors(d):
            for j in range(d // p):
                v = distribution_relation_vector(d, p, j)
                assert sum(v) == 1 - p
                assert unit_word_eval(d, v).is_one()


# -- the kernel test ---------------------------------------------------------------


def test_kernel_examples():
    assert kernel_test(5, (0, 0, 0, 0, 0))
    assert kernel_test(5, (0, 1, 2, -2, -1))
    assert not kernel_test(3, (0, 1, -1))


def test_kernel_rejects_even():
    with pytest.raises(DomainError):
        kernel_test(6, (0,) * 6)


def test_lattice_membership():
    assert sim0_lattice_member(5, (0, 0, 0, 0, 0))
    assert sim0_lattice_member(5, (0, 1, 2, -2, -1))
    assert not sim0_lattice_member(5, (1, 0, 0, 0, 0))
    assert not sim0_lattice_member(5, (0, 1, 2, -2, 0))
    assert not sim0_lattice_member(5, (0, 1, 1, -1, -1))  # weighted sum 3


def test_lattice_basis_properties():
    for n in (1, 3, 5, 9, 15):
        basis = sim0_lattice_basis(n)
        assert len(basis) == (n - 1) // 2
        for v in basis:
            assert sim0_lattice_member(n, v)
            assert kernel_test(n, v)


def test_lattice_vectors_kill_logs_numerically():
    """Floating cross-check: kernel vectors annihilate the log magnitudes of
    the generators at every divisor level."""
    for n in (9, 15):
        for x in sim0_lattice_basis(n):
            for d in divisors(n):
                folded = fold_exponents(n, d, x)
                total = sum(
                    e * math.log(abs(1 + cmath.exp(2j * cmath.pi * j / d)))
                    for j, e in enumerate(folded)
                    if e
                )
                assert abs(total) < 1e-9


# -- rank certificates ---------------------------------------------------------------


def test_surjectivity_reports():
    assert projection_surjectivity_check(1) == {
        "n": 1,
        "rank": 1,
        "codomain_dim": 1,
        "surjective": True,
    }
    for n in (3, 9, 15):
        rep = projection_surjectivity_check(n)
        assert rep["surjective"], rep


def test_kernel_rank_reports():
    assert kernel_rank_check(3)["lattice_rank"] == 1
    rep9 = kernel_rank_check(9)
    assert rep9["lattice_rank"] == 4 and rep9["consistent"]
    assert kernel_rank_check(15)["lattice_rank"] == 7
    with pytest.raises(DomainError):
        kernel_rank_check(17)


def test_unit_rank_numeric():
    assert unit_group_rank_numeric(1)["numeric_rank"] == 1
    for n in (7, 9):
        rep = unit_group_rank_numeric(n)
        assert rep["numeric_rank"] == totient(n) // 2 == rep["expected"]


# -- bridge to subset sums ------------------------------------------------------------


def random_multiset(group, rng, size):
    n = group.moduli[0]
    return Multiset.from_elements(group, (rng.randint(0, n - 1) for _ in range(size)))


def mu_difference(a, b, n):
    out = [0] * n
    for x, m in a.items():
        out[x.coords[0]] += m
    for x, m in b.items():
        out[x.coords[0]] -= m
    return tuple(out)


def test_kernel_test_matches_subset_sums_equality():
    rng = random.Random(12)
    group = cyclic(9)
    seen_equal = 0
    for _ in range(250):
        a = random_multiset(group, rng, rng.randint(0, 4))
        b = random_multiset(group, rng, rng.randint(0, 4))
        same = a.subset_sums() == b.subset_sums()
        assert same == kernel_test(9, mu_difference(a, b, 9))
        seen_equal += same
    assert seen_equal  # the sample includes genuinely equal pairs


def test_unit_signature_matches_kernel_test():
    rng = random.Random(13)
    group = cyclic(15)
    for _ in range(120):
        a = random_multiset(group, rng, rng.randint(0, 4))
        b = random_multiset(group, rng, rng.randint(0, 4))
        same_sig = unit_signature(a) == unit_signature(b)
        assert same_sig == kernel_test(15, mu_difference(a, b, 15))
