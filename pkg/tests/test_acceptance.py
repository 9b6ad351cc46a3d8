"""Acceptance criteria, each at its stated tolerance.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import cmath
import random
import time
from math import comb

import pytest

from cycfact.characters import annihilator_inclusion, chi_sum, decompose_union, is_zero
from cycfact.core import ResidueSet, cyclic_subgroup, divisors
from cycfact.factorization import is_complete_residue_system, is_factorization
from cycfact.harness import (
    ScanSpec,
    scan_bridge,
    scan_conjecture_mainconj,
    scan_fac_equ,
    scan_k_replace,
    scan_pq_periodic,
    scan_prime_factor_lemmas,
    scan_swap_lemma,
    verify_counterexample,
    witnesses_from,
)
from cycfact.splitting import is_splitting, tightness_construction

R = ResidueSet.of


def _timed(fn, *args, budget):
    start = time.perf_counter()
    out = fn(*args)
    elapsed = time.perf_counter() - start
    assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
    return out


@pytest.fixture(scope="module")
def prefix_k2():
    return _timed(scan_conjecture_mainconj, ScanSpec("prefix_tail", (1, 60), (5, 7), (2, 2)), budget=300)


@pytest.fixture(scope="module")
def prefix_k1():
    return _timed(scan_conjecture_mainconj, ScanSpec("prefix_tail", (1, 60), (3, 8), (1, 1)), budget=120)


@pytest.fixture(scope="module")
def swap_scan():
    return _timed(scan_swap_lemma, ScanSpec("swap", (1, 48), (3, 7)), budget=120)


def test_criterion_01_prefix_k2(prefix_k2):
    """1: prefix_tail k=2, n in 5..7, omega <= 60 has no counterexample"""
    rep = prefix_k2
    assert rep.instances_checked > 0
    assert rep.counterexamples == []
    assert {r["omega"] for r in rep.instances} == {w for n in (5, 6, 7) for w in range(n, 61, n)}


def test_criterion_02_prefix_k1(prefix_k1):
    """2: k=1, n in 3..8, omega <= 60: every direct factor has tail n-1 mod n"""
    rep = prefix_k1
    assert rep.instances_checked > 0 and rep.direct_factor_count > 0
    assert rep.counterexamples == []
    for row in rep.instances:
        if "complement" in row:
            assert row["tail"][0] % row["n"] == row["n"] - 1


def test_criterion_03_swap(swap_scan):
    """3: swap family, n in 3..7, omega <= 48: j = i mod n for every direct factor"""
    rep = swap_scan
    assert rep.instances_checked > 0 and rep.direct_factor_count > 0
    assert rep.counterexamples == []
    for row in rep.instances:
        if "complement" in row:
            assert row["j"] % row["n"] == row["i"]


def test_criterion_04_tightness():
    """4: tightness construction k=1, p=5, m=2 and the omega=4 factorization"""
    rep = tightness_construction(1, 5, 2)
    assert rep.M == (1, 4)
    assert rep.S == R(5, [1, 2])
    assert is_splitting(rep.M, rep.S, 5)
    assert rep.exponents == R(4, [0, 2])
    assert not is_complete_residue_system(rep.exponents, 2)
    assert is_factorization(R(4, [0, 2]), R(4, [0, 1]))


def _naive_factorization(A, B, omega):
    counts = [0] * omega
    for a in A:
        for b in B:
            counts[(a + b) % omega] += 1
    return all(c == 1 for c in counts)


def _random_pair(rng):
    omega = rng.randint(1, 64)
    kind = rng.random()
    if kind < 0.4:
        n = rng.choice(divisors(omega))
        A = [(r + n * rng.randrange(omega // n)) % omega for r in range(n)]
        B = [(rng.randrange(omega) + b) % omega for b in cyclic_subgroup(n, omega)]
        if kind < 0.15:
            B[rng.randrange(len(B))] = rng.randrange(omega)
            B = list(set(B))
        return omega, sorted(set(A)), B
    A = rng.sample(range(omega), rng.randint(1, omega))
    B = rng.sample(range(omega), rng.randint(1, omega))
    return omega, A, B


def test_criterion_05_oracle_equivalence():
    """5: is_factorization agrees with a naive double loop on 1000 random pairs"""
    rng = random.Random(2024)
    agree = positives = 0
    for _ in range(1000):
        omega, A, B = _random_pair(rng)
        got = is_factorization(R(omega, A), R(omega, B))
        want = _naive_factorization(A, B, omega)
        agree += got == want
        positives += want
    assert agree == 1000
    assert 100 < positives < 900


def _random_char_case(rng):
    omega = rng.randint(1, 100)
    t = rng.randrange(omega)
    if rng.random() < 0.5:
        return omega, rng.sample(range(omega), rng.randint(1, omega)), t
    # unions of cosets of nontrivial subgroups give exact vanishing sums
    d = rng.choice(divisors(omega))
    H = list(cyclic_subgroup(d, omega))
    reps = rng.sample(range(d), rng.randint(1, d))
    return omega, sorted({(r + h) % omega for r in reps for h in H}), t


def test_criterion_06_exact_vs_float():
    """6: is_zero matches the floating point test on 10^4 random (A, t)"""
    rng = random.Random(7)
    agree = zeros = 0
    for _ in range(10_000):
        omega, A, t = _random_char_case(rng)
        exact = is_zero(chi_sum(R(omega, A), t))
        numeric = abs(sum(cmath.exp(2j * cmath.pi * t * a / omega) for a in A)) < 1e-9
        agree += exact == numeric
        zeros += exact
    assert agree == 10_000
    assert zeros > 1000


def test_criterion_07_fac_equ():
    """7: over Z_12 annihilator inclusion holds iff a coset decomposition exists"""
    rep = _timed(scan_fac_equ, 12, 6, budget=60)
    subgroups = len(divisors(12)) ** 2
    assert rep.instances_checked == subgroups * sum(comb(12, s) for s in range(1, 7))
    assert rep.counterexamples == []
    assert rep.summary["inclusion_true"] > 0 and rep.summary["inclusion_false"] > 0
    # spot check both directions directly
    H, K = R(12, [0, 6]), R(12, [0, 4, 8])
    A = R(12, [0, 6, 1, 5, 9])
    assert annihilator_inclusion(H, K, A) and decompose_union(H, K, A) is not None


def test_criterion_08_pq_periodic():
    """8: over Z_36 every 6-set annihilated by a faithful character is periodic"""
    rep = _timed(scan_pq_periodic, 36, budget=600)
    assert rep.instances_checked > 0
    assert rep.counterexamples == []
    assert rep.summary["annihilated"] > 0
    assert rep.summary["annihilated_periodic"] == rep.summary["annihilated"]


def test_criterion_09_prime_factor():
    """9: factorizations with omega <= 36 meeting the size hypotheses are residue systems"""
    rep = _timed(scan_prime_factor_lemmas, 36, budget=300)
    assert rep.summary["coprime_sizes"] > 0 and rep.summary["prime_factor_2"] > 0
    assert rep.counterexamples == []


def test_criterion_10_bridge():
    """10: for p <= 31 and n <= 6, M splits <m> iff its exponent set has a complement"""
    rep = _timed(scan_bridge, 31, 6, budget=120)
    assert rep.instances_checked > 0 and rep.direct_factor_count > 0
    assert rep.counterexamples == []


def test_criterion_11_k_replace(prefix_k2, prefix_k1, swap_scan):
    """11: dilating by k coprime to |A| keeps every factorization from criteria 1-3"""
    pairs = list(witnesses_from(prefix_k2, prefix_k1, swap_scan))
    assert len(pairs) == sum(r.direct_factor_count for r in (prefix_k2, prefix_k1, swap_scan))
    rep = _timed(scan_k_replace, pairs, budget=120)
    assert rep.instances_checked > 0
    assert rep.counterexamples == []


def test_tight_counterexample_reverifies():
    rep = scan_conjecture_mainconj(ScanSpec("prefix_tail", (4, 4), (2, 2), (1, 1), allow_tight=True))
    assert rep.counterexamples and all(verify_counterexample(c) for c in rep.counterexamples)
