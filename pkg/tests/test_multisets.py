import random

import pytest

from fsrecon.errors import DomainError, NotASubsetError, ResourceCapError
from fsrecon.groups import GroupSpec, cyclic
from fsrecon.multisets import Multiset, sim0_check, sim_check
from oracles import (
    all_small_groups,
    fs_bruteforce,
    flip,
    iter_submultisets,
    sim0_oracle,
    sim_oracle,
)

Z = cyclic(0)
Z2 = cyclic(2)
Z3 = cyclic(3)
Z5 = cyclic(5)


def ms(group, *elements):
    return Multiset.from_elements(group, elements)


# -- multiset calculus --------------------------------------------------------


def test_union_adds_multiplicities():
    a, b = ms(Z, 1), ms(Z, 1, 2)
    u = a.union(b)
    assert u == Multiset(Z, {Z.element((1,)): 2, Z.element((2,)): 1})
    assert u.cardinality == a.cardinality + b.cardinality


def test_union_with_empty():
    a = ms(Z5, 1, 2, 2)
    assert a.union(Multiset.empty(Z5)) == a


def test_difference():
    assert ms(Z, 1, 1, 2).difference(ms(Z, 1)) == ms(Z, 1, 2)
    a = ms(Z5, 1, 2)
    assert a.difference(a) == Multiset.empty(Z5)


def test_difference_not_a_subset():
    with pytest.raises(NotASubsetError) as err:
        ms(Z5, 1, 2).difference(ms(Z5, 3))
    assert err.value.element == Z5.element((3,))


def test_pushforward():
    assert ms(Z5, 1, 2).negate() == ms(Z5, 4, 3)
    squash = ms(Z5, 1, 2, 4).pushforward(lambda x: Z5.zero())
    assert squash == Multiset(Z5, {Z5.zero(): 3})
    doubled = ms(Z5, 1, 3).pushforward(lambda x: 2 * x)
    assert doubled == ms(Z5, 2, 1)


def test_pushforward_preserves_cardinality():
    rng = random.Random(4)
    a = Multiset.from_elements(Z5, (rng.randint(0, 4) for _ in range(9)))
    assert a.pushforward(lambda x: 2 * x).cardinality == a.cardinality


def test_shift():
    assert ms(Z3, 0, 1).shift(Z3.element((1,))) == ms(Z3, 1, 2)
    a = ms(Z3, 0, 2, 2)
    assert a.shift(Z3.zero()) == a
    assert ms(Z2, 0, 0, 1, 1).shift(Z2.element((1,))) == ms(Z2, 1, 1, 0, 0)


# -- subset sums ---------------------------------------------------------------


def test_subset_sums_over_z():
    assert ms(Z, 1, 2).subset_sums() == ms(Z, 0, 1, 2, 3)


def test_subset_sums_z2_collision():
    # The classic degenerate pair: {0,1} and {1,1} have the same subset sums.
    assert ms(Z2, 0, 1).subset_sums() == ms(Z2, 0, 0, 1, 1)
    assert ms(Z2, 1, 1).subset_sums() == ms(Z2, 0, 0, 1, 1)


def test_subset_sums_repeated_element():
    a = ms(Z3, 1, 1)
    assert a.subset_sums() == fs_bruteforce(a) == ms(Z3, 0, 1, 1, 2)


def test_subset_sums_cardinality_and_oracle():
    rng = random.Random(5)
    g = GroupSpec((4, 3))
    for _ in range(20):
        size = rng.randint(0, 5)
        a = Multiset.from_elements(
            g, ((rng.randint(0, 3), rng.randint(0, 2)) for _ in range(size))
        )
        fs = a.subset_sums()
        assert fs.cardinality == 2**size
        assert fs == fs_bruteforce(a)


def test_subset_sums_recursion():
    rng = random.Random(6)
    for _ in range(20):
        a = Multiset.from_elements(Z5, (rng.randint(0, 4) for _ in range(4)))
        x = Z5.element((rng.randint(0, 4),))
        bigger = a.union(Multiset.from_elements(Z5, [x]))
        fs = a.subset_sums()
        assert bigger.subset_sums() == fs.union(fs.shift(x))


def test_subset_sums_cap():
    a = Multiset(Z, {Z.element((1,)): 30})
    with pytest.raises(ResourceCapError):
        a.subset_sums()
    a.subset_sums(cap=30)


# -- flip equivalences ---------------------------------------------------------


def test_sim_examples():
    assert sim_check(ms(Z5, 1, 2), ms(Z5, 1, 3))  # 3 = -2
    assert not sim_check(ms(Z2, 0, 1), ms(Z2, 1, 1))
    a = ms(Z5, 1, 1, 2)
    assert sim_check(a, a)


def test_sim0_trivial_on_equal():
    ok, witness = sim0_check(ms(Z5, 1, 4), ms(Z5, 4, 1))
    assert ok and witness.flip_set.is_empty() and witness.sum_check.is_zero()


def test_sim0_forced_flip_fails():
    # Flipping both 1 and 2 is forced but the flip sum is 3, not 0.
    ok, witness = sim0_check(ms(Z5, 1, 2), ms(Z5, 4, 3))
    assert not ok and witness is None
    assert not sim0_oracle(ms(Z5, 1, 2), ms(Z5, 4, 3))


def test_sim0_z2_pair():
    ok, _ = sim0_check(ms(Z2, 0, 1), ms(Z2, 1, 1))
    assert not ok


def test_sim0_witness_is_valid():
    rng = random.Random(7)
    g = cyclic(9)
    for _ in range(200):
        a = Multiset.from_elements(g, (rng.randint(0, 8) for _ in range(4)))
        subs = [s for s, total in iter_submultisets(a) if total.is_zero()]
        b = flip(a, subs[rng.randrange(len(subs))])
        ok, witness = sim0_check(a, b)
        assert ok
        assert witness.flip_set.is_subset_of(a)
        assert witness.sum_check.is_zero()
        assert flip(a, witness.flip_set) == b


def test_sim_sim0_agree_with_exhaustive_oracle():
    """Positive side exhaustively (every flip of every small A), negative
    side on same-size non-flip pairs, over every abelian group of size <= 9."""
    rng = random.Random(8)
    for g in all_small_groups(9):
        if not g.is_finite():
            continue
        elements = list(g.iter_elements())
        for _ in range(60):
            size = rng.randint(0, 4)
            a = Multiset.from_elements(g, (rng.choice(elements) for _ in range(size)))
            for sub, total in iter_submultisets(a):
                b = flip(a, sub)
                assert sim_check(a, b)
                ok, witness = sim0_check(a, b)
                assert ok == sim0_oracle(a, b)
                if ok:
                    assert flip(a, witness.flip_set) == b
                    assert witness.sum_check.is_zero()
            other = Multiset.from_elements(
                g, (rng.choice(elements) for _ in range(size))
            )
            assert sim_check(a, other) == sim_oracle(a, other)
            ok, _ = sim0_check(a, other)
            assert ok == sim0_oracle(a, other)


def test_flip_keeps_subset_sums_iff_zero_sum():
    """Zero-sum flips never change subset sums; general flips shift them by
    minus the flip total."""
    rng = random.Random(9)
    g = cyclic(7)
    for _ in range(100):
        a = Multiset.from_elements(g, (rng.randint(0, 6) for _ in range(4)))
        subs = list(iter_submultisets(a))
        sub, total = subs[rng.randrange(len(subs))]
        flipped = flip(a, sub)
        assert flipped.subset_sums() == a.subset_sums().shift(-total)
        if total.is_zero():
            assert flipped.subset_sums() == a.subset_sums()


def test_sim_plus_equal_fs_implies_sim0_without_two_torsion():
    rng = random.Random(10)
    for g in (Z3, Z5, cyclic(9)):
        n = g.moduli[0]
        for _ in range(150):
            a = Multiset.from_elements(g, (rng.randint(0, n - 1) for _ in range(3)))
            b = Multiset.from_elements(g, (rng.randint(0, n - 1) for _ in range(3)))
            if sim_check(a, b) and a.subset_sums() == b.subset_sums():
                ok, _ = sim0_check(a, b)
                assert ok


# -- serialization ---------------------------------------------------------------


def test_json_round_trip_and_stability():
    a = Multiset(GroupSpec((0, 4)), {(-3, 2): 5, (1, 0): 1, (-3, 1): 2})
    text = a.to_json()
    assert Multiset.from_json(text) == a
    assert text == (
        '{"group":{"moduli":[0,4]},'
        '"elements":[[[-3,1],2],[[-3,2],5],[[1,0],1]]}'
    )
    assert Multiset.from_json(text).to_json() == text


def test_rejects_wrong_group_elements():
    with pytest.raises(DomainError):
        Multiset(Z5, {Z3.element((1,)): 1})
