import json

import pytest

from cycfact.core import ResidueSet
from cycfact.factorization import find_complements, is_factorization
from cycfact.harness import (
    ScanSpec,
    run_scan,
    scan_b_subgroup,
    scan_bridge,
    scan_common_divisor,
    scan_conjecture_mainconj,
    scan_cor_factor_integers,
    scan_fac_equ,
    scan_k_replace,
    scan_majority_prefix,
    scan_nonsingular_reduction,
    scan_periodicity_family,
    scan_residue_coverage,
    scan_subgroup_restriction,
    scan_swap_lemma,
    scan_theorem_mainthm,
    verify_counterexample,
    witnesses_from,
)

R = ResidueSet.of


def test_scan_spec_validation():
    with pytest.raises(ValueError):
        ScanSpec("nope", (1, 10), (3, 3))
    with pytest.raises(ValueError):
        ScanSpec("prefix_tail", (10, 1), (3, 3))
    with pytest.raises(ValueError):
        ScanSpec("prefix_tail", (1, 10), (2, 2), (1, 1))
    with pytest.raises(ValueError):
        ScanSpec("prefix_tail", (1, 10), (3, 3), filters=("bogus",))
    spec = ScanSpec("prefix_tail", (1, 10), (2, 5), (1, 2))
    assert spec.admits(5, 2) and not spec.admits(4, 2)
    ScanSpec("prefix_tail", (1, 10), (2, 2), allow_tight=True)


def test_mainconj_small_confirmed():
    rep = scan_conjecture_mainconj(ScanSpec("prefix_tail", (1, 30), (5, 5), (2, 2)))
    assert rep.instances_checked > 0 and rep.direct_factor_count > 0
    assert rep.counterexamples == [] and rep.verdict == "confirmed"
    for row in rep.instances:
        if "complement" in row:
            A = R(row["omega"], list(range(row["n"] - row["k"])) + row["tail"])
            assert is_factorization(A, R(row["omega"], row["complement"]))


def test_tight_family_is_refuted():
    rep = scan_conjecture_mainconj(ScanSpec("prefix_tail", (4, 4), (2, 2), (1, 1), allow_tight=True))
    assert rep.verdict == "refuted"
    cx = rep.counterexamples[0]
    assert cx["A"] == [0, 2] and cx["omega"] == 4 and cx["complement"] == [0, 1]
    assert all(verify_counterexample(c) for c in rep.counterexamples)


def test_verify_counterexample_rejects_fake():
    fake = {"A": [0, 1], "omega": 4, "complement": [0, 1], "kind": "factorization", "reason": "tail_congruence",
            "tail": [1], "expected_residues": [1]}
    assert not verify_counterexample(fake)


def test_scans_are_deterministic():
    spec = ScanSpec("prefix_tail", (1, 24), (3, 6), (1, 1))
    a = scan_conjecture_mainconj(spec).to_dict()
    b = scan_conjecture_mainconj(spec).to_dict()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_mainthm_examples():
    rep = scan_theorem_mainthm(ScanSpec("prefix_tail", (36, 36), (6, 6), (2, 2)))
    assert rep.instances_checked > 0 and rep.verdict == "confirmed"
    rep = scan_theorem_mainthm(ScanSpec("prefix_tail", (1, 24), (5, 5), (2, 2)))
    assert rep.verdict == "confirmed"


def test_swap_examples():
    rep = scan_swap_lemma(ScanSpec("swap", (10, 10), (5, 5)))
    rows = {(r["i"], r["j"]): r for r in rep.instances}
    assert rows[(2, 7)]["verdict"] == "confirmed"
    assert is_factorization(R(10, [0, 1, 3, 4, 7]), R(10, rows[(2, 7)]["complement"]))
    assert rows[(2, 8)]["verdict"] == "not_direct_factor"
    assert find_complements(R(10, [0, 1, 3, 4, 8])) == []
    assert rep.verdict == "confirmed"


def test_majority_prefix_is_exploratory():
    rep = scan_majority_prefix(ScanSpec("majority_prefix", (1, 16), (2, 4)))
    assert rep.verdict == "exploratory"
    sets = {(r["omega"], tuple(r["A"])) for r in rep.instances}
    assert (8, (0, 1, 2, 3)) in sets
    assert (8, (0, 1, 4, 5)) not in sets
    assert rep.summary["crs_holds"] + rep.summary["crs_fails"] == rep.direct_factor_count


def test_residue_coverage_runs():
    rep = run_scan(ScanSpec("arbitrary", (1, 16), (2, 4)), "residue_coverage")
    assert rep.verdict == "exploratory" and rep.instances_checked > 0


def test_periodicity_and_b_subgroup_small():
    rep = scan_periodicity_family(ScanSpec("arbitrary", (1, 16), (2, 8)))
    assert rep.verdict == "confirmed" and rep.instances_checked > 0
    rep = scan_b_subgroup(ScanSpec("prefix_tail", (1, 30), (3, 5), (1, 1)))
    assert rep.verdict == "confirmed"


def test_k_replace_on_scan_witnesses():
    rep = scan_conjecture_mainconj(ScanSpec("prefix_tail", (1, 30), (3, 6), (1, 2)))
    pairs = list(witnesses_from(rep))
    assert pairs
    assert scan_k_replace(pairs).verdict == "confirmed"


def test_small_property_scans():
    assert scan_fac_equ(omega=6, max_size=3).verdict == "confirmed"
    assert scan_bridge(max_p=13, max_n=4).verdict == "confirmed"
    assert scan_cor_factor_integers(max_p=13, max_n=4).verdict == "confirmed"
    assert scan_common_divisor(max_g=20, max_size=3).verdict == "confirmed"
    assert scan_nonsingular_reduction(max_g=15, max_size=2).verdict == "confirmed"
    assert scan_subgroup_restriction(max_p=13, max_size=2).verdict == "confirmed"


def test_run_scan_rejects_unknown_target():
    with pytest.raises(ValueError):
        run_scan(ScanSpec("swap", (1, 10), (3, 3)), "nope")
    with pytest.raises(ValueError):
        run_scan(ScanSpec("swap", (1, 10), (3, 3)), "mainconj")
