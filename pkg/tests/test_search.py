import random

import pytest

from fsrecon.counterexamples import build, z2_pair
from fsrecon.errors import DomainError, ResourceCapError
from fsrecon.groups import GroupSpec, cyclic
from fsrecon.multisets import Multiset, sim0_check
from fsrecon.search import (
    enumerate_multisets,
    fs_preimages,
    regularity_scan,
    verify_add_subset_sums,
)

Z2 = cyclic(2)
Z3 = cyclic(3)
Z5 = cyclic(5)
Z = cyclic(0)


def ms(group, *elements):
    return Multiset.from_elements(group, elements)


# -- enumeration ---------------------------------------------------------------


def test_enumerate_counts():
    assert len(list(enumerate_multisets(Z3, 2))) == 6  # C(3+2-1, 2)


def test_enumerate_z2_size2():
    got = list(enumerate_multisets(Z2, 2))
    assert got == [ms(Z2, 0, 0), ms(Z2, 0, 1), ms(Z2, 1, 1)]


def test_enumerate_bounded_z():
    got = list(enumerate_multisets(Z, 1, bound=1))
    assert got == [ms(Z, -1), ms(Z, 0), ms(Z, 1)]


def test_enumerate_infinite_needs_bound():
    with pytest.raises(DomainError):
        next(enumerate_multisets(Z, 1))


def test_enumerate_no_duplicates():
    seen = list(enumerate_multisets(GroupSpec((2, 3)), 3))
    assert len(seen) == len(set(seen))


# -- subset-sums inversion ---------------------------------------------------------


def test_preimages_z2_classic():
    classes = fs_preimages(ms(Z2, 0, 0, 1, 1))
    assert classes == [[ms(Z2, 0, 1)], [ms(Z2, 1, 1)]]


def test_preimages_over_z():
    classes = fs_preimages(ms(Z, 0, 1, 2, 3), bound=3)
    assert len(classes) == 1
    assert ms(Z, 1, 2) in classes[0]


def test_preimages_trivial():
    assert fs_preimages(Multiset(Z5, {Z5.zero(): 1})) == [[Multiset.empty(Z5)]]


def test_preimages_rejects_non_power_of_two():
    with pytest.raises(DomainError):
        fs_preimages(ms(Z5, 0, 1, 2))


def test_preimages_cap():
    huge = Multiset(Z5, {Z5.zero(): 2**25})
    with pytest.raises(ResourceCapError):
        fs_preimages(huge)


def test_preimages_contain_original_multiset():
    rng = random.Random(25)
    for _ in range(15):
        a = Multiset.from_elements(Z5, (rng.randint(0, 4) for _ in range(3)))
        classes = fs_preimages(a.subset_sums())
        assert any(a in cls for cls in classes)


def test_preimage_classes_are_sim0_consistent():
    rng = random.Random(26)
    a = Multiset.from_elements(cyclic(7), (rng.randint(0, 6) for _ in range(3)))
    classes = fs_preimages(a.subset_sums())
    for cls in classes:
        for other in cls:
            assert sim0_check(cls[0], other)[0]
    if len(classes) > 1:
        for other_cls in classes[1:]:
            assert not sim0_check(classes[0][0], other_cls[0])[0]


def test_pruning_matches_unpruned_search():
    rng = random.Random(27)
    for group in (Z5, Z2, cyclic(4)):
        n = group.moduli[0]
        for _ in range(8):
            a = Multiset.from_elements(group, (rng.randint(0, n - 1) for _ in range(3)))
            target = a.subset_sums()
            assert fs_preimages(target, prune=True) == fs_preimages(
                target, prune=False
            )


# -- regularity scans -----------------------------------------------------------------


def test_scan_z2_finds_classic_violation():
    report = regularity_scan(Z2, 2)
    assert report.exhaustive
    assert (ms(Z2, 0, 1), ms(Z2, 1, 1)) in report.violations
    assert report.min_violation_size() == 2


def test_scan_z5_clean():
    report = regularity_scan(Z5, 3)
    assert report.exhaustive and not report.violations


def test_scan_z3_with_z_factor_clean():
    report = regularity_scan(GroupSpec((3, 0)), 2, bound=1)
    assert not report.violations
    assert not report.exhaustive  # bounded evidence only


def test_scan_budget_marks_non_exhaustive():
    report = regularity_scan(Z5, 3, budget=10)
    assert not report.exhaustive
    assert report.checked == 10


def test_scan_accepts_targeted_pair():
    pair = build(17, "order")
    report = regularity_scan(cyclic(17), 2, extra_pairs=[(pair.a, pair.a_prime)])
    assert (pair.a, pair.a_prime) in report.violations


def test_scan_report_serialization():
    report = regularity_scan(Z2, 2)
    obj = report.to_obj()
    assert obj["group"] == {"moduli": [2]}
    assert obj["exhaustive"] is True
    assert obj["min_violation_size"] == 2
    assert len(obj["violations"]) == 1


def test_scan_ignores_non_violating_extra_pairs():
    report = regularity_scan(Z5, 1, extra_pairs=[(ms(Z5, 1), ms(Z5, 4))])
    assert not report.violations  # flip by the whole set, sum 1+4=0


# -- the translation-cancellation property ----------------------------------------------


def test_add_subset_sums_z9():
    assert verify_add_subset_sums(cyclic(9), trials=300, seed=0)


def test_add_subset_sums_rejects_two_torsion():
    with pytest.raises(DomainError):
        verify_add_subset_sums(Z2, trials=1)
    with pytest.raises(DomainError):
        verify_add_subset_sums(GroupSpec((3, 4)), trials=1)


def test_add_subset_sums_over_z():
    assert verify_add_subset_sums(Z, trials=100, seed=1, bound=2)


def test_empty_b_reduces_to_equality():
    a, a2 = ms(Z5, 1, 2), ms(Z5, 1, 3)
    fs_empty = Multiset.empty(Z5).subset_sums()
    assert a.convolve(fs_empty) == a
    assert a.convolve(fs_empty) != a2.convolve(fs_empty)
