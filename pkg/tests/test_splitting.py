import itertools

import pytest

from cycfact.core import ResidueSet, multiplicative_order
from cycfact.factorization import find_complements
from cycfact.splitting import (
    SplittingWitness,
    check_common_divisor_obstruction,
    discrete_log_set,
    generated_subgroup,
    is_nonsingular,
    is_splitting,
    multiplier_set,
    nonsingular_reduction_check,
    prefix_multiplier_family,
    search_splitting_sets,
    splits_subgroup,
    subgroup_restriction_check,
    tightness_construction,
)

R = ResidueSet.of


def brute_splitting_sets(M, g):
    if (g - 1) % len(M):
        return []
    out = []
    for S in itertools.combinations(range(1, g), (g - 1) // len(M)):
        prods = [m * s % g for s in S for m in M]
        if 0 not in prods and len(set(prods)) == g - 1:
            out.append(R(g, S))
    return out


@pytest.mark.parametrize(
    "M, S, g, expected",
    [
        ([1, 2, 3, 4], [1], 5, True),
        ([1, 4], [1, 2], 5, True),
        ([1, 2], [1, 3], 5, False),
        ([1, -1], [1, 2], 5, True),
        ([1, 2], [0, 1], 5, False),
    ],
)
def test_is_splitting_examples(M, S, g, expected):
    assert is_splitting(M, R(g, S), g) is expected


def test_search_examples():
    # {2, 3} also splits: 2*2 = 4, 2*3 = 6 = 1.
    assert search_splitting_sets([1, 2], 5) == [R(5, [1, 4]), R(5, [2, 3])]
    assert R(9, [1, 3, 4, 7]) in search_splitting_sets([1, 2], 9)
    got = search_splitting_sets(list(range(1, 7)), 7)
    assert got[0] == R(7, [1])
    assert got == [R(7, [s]) for s in range(1, 7)]
    assert search_splitting_sets([1, 2, 3], 7) == brute_splitting_sets([1, 2, 3], 7)


def test_search_matches_brute_force():
    for g in range(2, 16):
        for size in (1, 2, 3):
            for M in itertools.combinations(range(1, g + 4), size):
                assert search_splitting_sets(M, g) == brute_splitting_sets(M, g), (M, g)


def test_witness_validates():
    SplittingWitness(5, (1, 4), R(5, [1, 2]))
    with pytest.raises(ValueError):
        SplittingWitness(5, (1, 2), R(5, [1, 3]))


def test_nonsingular_examples():
    assert is_nonsingular([1, 2], 9)
    assert not is_nonsingular([1, 3], 9)
    assert is_nonsingular([1, -1], 5)


def test_obstruction_examples():
    v = check_common_divisor_obstruction([1, 2, 4], 8)
    assert v.obstructed and v.blocking_prime == 2
    assert search_splitting_sets([1, 2, 4], 8) == []
    assert not check_common_divisor_obstruction([1, 2, 4], 9).obstructed
    v = check_common_divisor_obstruction([1, 3, 9], 21)
    assert v.blocking_prime == 3 and search_splitting_sets([1, 3, 9], 21) == []
    with pytest.raises(ValueError):
        check_common_divisor_obstruction([2, 4], 8)
    with pytest.raises(ValueError):
        check_common_divisor_obstruction([1], 8)


def test_nonsingular_reduction_examples():
    v = nonsingular_reduction_check([1, 2], 9)
    assert v.splits_group and v.splits_primes == {3: True} and v.agree
    assert nonsingular_reduction_check([1, 2], 5).agree
    v = nonsingular_reduction_check([1, 2, 3], 25)
    assert not v.splits_group and v.splits_primes == {5: False} and v.agree
    with pytest.raises(ValueError):
        nonsingular_reduction_check([1, 3], 9)


def test_subgroup_restriction_examples():
    v = subgroup_restriction_check([1, 4], 5)
    assert v.subgroup == R(5, [1, 4]) and v.splits_field and v.splits_subgroup
    v = subgroup_restriction_check([1, 2], 7)
    assert v.subgroup == R(7, [1, 2, 4]) and not v.splits_field and not v.splits_subgroup
    v = subgroup_restriction_check([1], 11)
    assert v.splits_field and v.splits_subgroup
    with pytest.raises(ValueError):
        subgroup_restriction_check([1, 7], 7)


def test_generated_subgroup():
    assert generated_subgroup([2], 7) == R(7, [1, 2, 4])
    assert generated_subgroup([3], 7) == R(7, range(1, 7))
    assert splits_subgroup([1, 4], 5, R(5, [1, 4])) == [R(5, [1])]


def test_discrete_log_examples():
    assert discrete_log_set([1, 4], 2, 5) == R(4, [0, 2])
    assert discrete_log_set([1, 2, 4], 2, 5) == R(4, [0, 1, 2])
    assert discrete_log_set([1, 3], 2, 5) == R(4, [0, 3])
    assert discrete_log_set([1, 3], 2, 7) is None
    with pytest.raises(ValueError):
        discrete_log_set([1], 5, 5)


def test_prefix_family_examples():
    assert prefix_multiplier_family(2, 3, 1, [2]) == (1, 2, 4)
    assert prefix_multiplier_family(2, 2, 1, [2]) == (1, 4)
    assert prefix_multiplier_family(3, 3, 1, [5]) == (1, 3, 243)
    with pytest.raises(ValueError):
        prefix_multiplier_family(2, 3, 1, [1])
    with pytest.raises(ValueError):
        prefix_multiplier_family(2, 3, 2, [5])
    with pytest.raises(ValueError):
        multiplier_set([0, 1])


@pytest.mark.parametrize("k, p, m", [(1, 5, 2), (1, 17, 3), (2, 17, 3), (1, 13, 2), (3, 13, 2)])
def test_tightness_construction(k, p, m):
    if multiplicative_order(m, p) % (4 * k):
        with pytest.raises(ValueError):
            tightness_construction(k, p, m)
        return
    rep = tightness_construction(k, p, m)
    assert rep.splits and not rep.exponents_crs and rep.confirms_tightness
    assert len(rep.M) * len(rep.S) == p - 1
    rep.witness()
    # the exponent set tiles Z_ord(m) as well
    assert find_complements(rep.exponents)


def test_tightness_first_instance():
    rep = tightness_construction(1, 5, 2)
    assert rep.M == (1, 4) and rep.S == R(5, [1, 2])
    assert rep.exponents == R(4, [0, 2])
    rep = tightness_construction(2, 17, 3)
    assert rep.M == tuple(sorted(pow(3, e, 17) for e in (0, 1, 4, 5)))
