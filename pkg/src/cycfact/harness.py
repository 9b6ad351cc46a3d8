"""Exhaustive bounded scans over factorization and splitting families.

Every scan returns a :class:`ScanReport`. Counterexample records carry enough
data to be re-verified independently (see :func:`verify_counterexample`).
Instances are generated in a fixed order, so identical parameters produce
identical reports apart from ``elapsed``.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from math import ceil, gcd

import numpy as np

from .characters import (
    _power_table,
    annihilator_inclusion,
    chi_sum,
    decompose_union,
    is_zero,
)
from .core import (
    ResidueSet,
    cyclic_subgroup,
    dilate,
    divisors,
    factorize_integer,
    is_prime,
    is_prime_power,
    multiplicative_order,
)
from .factorization import (
    canonical_complement,
    find_complements,
    is_complete_residue_system,
    is_factorization,
    stabilizer,
    verify_replacement_by_kA,
)
from .splitting import (
    check_common_divisor_obstruction,
    discrete_log_set,
    generated_subgroup,
    is_splitting,
    nonsingular_reduction_check,
    search_splitting_sets,
    splits,
    splits_subgroup,
    subgroup_restriction_check,
)

FAMILIES = ("prefix_tail", "swap", "majority_prefix", "arbitrary")
FILTERS = ("none", "mainthm_gcd_conditions", "coprime_sizes", "prime_power_order", "pq_order")


@dataclass(frozen=True)
class ScanSpec:
    family: str
    omega_range: tuple[int, int]
    n_range: tuple[int, int]
    k_range: tuple[int, int] = (1, 1)
    filters: tuple[str, ...] = ("none",)
    allow_tight: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        for name in ("omega_range", "n_range", "k_range"):
            lo, hi = getattr(self, name)
            if lo > hi or lo < 0:
                raise ValueError(f"{name} {lo}..{hi} is empty")
        for f in self.filters:
            if f not in FILTERS:
                raise ValueError(f"unknown filter {f!r}")
        if self.family == "prefix_tail":
            if self.k_range[0] < 1:
                raise ValueError("prefix_tail needs k >= 1")
            if not any(self.admits(n, k) for n in self.ns() for k in self.ks()):
                raise ValueError(
                    "prefix_tail needs some n >= 2k + 1"
                    + ("" if self.allow_tight else " (set allow_tight to admit n = 2k)")
                )

    def admits(self, n: int, k: int) -> bool:
        """Pairs (n, k) outside the family's size condition are skipped."""
        return n >= 2 * k + (0 if self.allow_tight else 1)

    def omegas(self) -> range:
        return range(max(1, self.omega_range[0]), self.omega_range[1] + 1)

    def ns(self) -> range:
        return range(self.n_range[0], self.n_range[1] + 1)

    def ks(self) -> range:
        return range(self.k_range[0], self.k_range[1] + 1)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "omega_range": list(self.omega_range),
            "n_range": list(self.n_range),
            "k_range": list(self.k_range),
            "filters": list(self.filters),
            "allow_tight": self.allow_tight,
        }


@dataclass
class ScanReport:
    name: str
    params: dict
    instances_checked: int = 0
    direct_factor_count: int = 0
    size_obstructed: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    instances: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    exploratory: bool = False
    elapsed: float = 0.0

    @property
    def verdict(self) -> str:
        if self.counterexamples:
            return "refuted"
        return "exploratory" if self.exploratory else "confirmed"

    def bump(self, key: str, by: int = 1) -> None:
        self.summary[key] = self.summary.get(key, 0) + by

    def to_dict(self, include_instances: bool = True, include_elapsed: bool = False) -> dict:
        out = {
            "scan": self.name,
            "params": self.params,
            "verdict": self.verdict,
            "instances_checked": self.instances_checked,
            "direct_factor_count": self.direct_factor_count,
            "size_obstructed": self.size_obstructed,
            "summary": dict(sorted(self.summary.items())),
            "counterexamples": self.counterexamples,
        }
        if include_instances:
            out["instances"] = self.instances
        if include_elapsed:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def _counterexample(A: ResidueSet, complement: ResidueSet | None, reason: str, kind="factorization", **extra) -> dict:
    rec = {
        "A": A.to_list(),
        "omega": A.omega,
        "complement": complement.to_list() if complement is not None else None,
        "kind": kind,
        "reason": reason,
    }
    rec.update(extra)
    return rec


def verify_counterexample(rec: dict) -> bool:
    """Re-check that a recorded counterexample really is one.

    Factorization records must still factorize and must still break the
    claim named in ``reason``; splitting records must still split.
    """
    omega = rec["omega"]
    A = ResidueSet.of(omega, rec["A"])
    if rec["kind"] == "factorization":
        B = ResidueSet.of(omega, rec["complement"])
        if not is_factorization(A, B):
            return False
        reason = rec["reason"]
        n = len(A)
        if reason in ("tail_congruence", "swap_congruence"):
            target = set(rec["expected_residues"])
            return {t % n for t in rec["tail"]} != target
        if reason == "periodic_direct_factor":
            return stabilizer(A).is_periodic and n < omega
        if reason == "no_periodic_factor":
            return not stabilizer(A).is_periodic and not stabilizer(B).is_periodic
        if reason == "not_coset_factorization":
            return not is_complete_residue_system(A, n) or B != cyclic_subgroup(n, omega)
        a_crs = is_complete_residue_system(A, len(A))
        b_crs = is_complete_residue_system(B, len(B))
        if reason == "coprime_not_crs":
            return not (a_crs and b_crs)
        if reason == "prime_factor_2":
            return not (a_crs or b_crs)
        if reason == "k_replace":
            return not is_factorization(dilate(A, rec["k"]), B)
        return True
    if rec["kind"] == "splitting" and rec.get("complement") is not None:
        return is_splitting(rec["A"], ResidueSet.of(omega, rec["complement"]), omega)
    return True


def _prefix_instances(n: int, k: int, omega: int):
    prefix = list(range(n - k))
    for tail in itertools.combinations(range(n - k, omega), k):
        yield tail, ResidueSet.of(omega, prefix + list(tail))


def _mainthm_ok(n: int, omega: int) -> bool:
    b = omega // n
    g = gcd(n, b)
    sig = factorize_integer(g)
    if sig.mu <= 1:
        return True
    return sig.mu == 2 and sig.nu == 2 and gcd(g, b // g) == 1


def _cell_filter(filters, n: int, omega: int) -> bool:
    b = omega // n
    for f in filters:
        if f == "mainthm_gcd_conditions" and not _mainthm_ok(n, omega):
            return False
        if f == "coprime_sizes" and gcd(n, b) != 1:
            return False
        if f == "prime_power_order" and not is_prime_power(omega):
            return False
        if f == "pq_order" and not _is_pe_q(omega):
            return False
    return True


def _is_pe_q(omega: int) -> bool:
    sig = factorize_integer(omega)
    return sig.mu == 2 and min(e for _, e in sig.factors) == 1


def _prefix_scan(spec: ScanSpec, name: str, filters) -> ScanReport:
    if spec.family != "prefix_tail":
        raise ValueError(f"{name} scans the prefix_tail family, got {spec.family}")
    start = time.perf_counter()
    rep = ScanReport(name, spec.to_dict())
    for n in spec.ns():
        for k in spec.ks():
            if not spec.admits(n, k):
                continue
            expected = set(range(n - k, n))
            for omega in spec.omegas():
                if omega < n:
                    continue
                if omega % n:
                    rep.size_obstructed += 1
                    continue
                if not _cell_filter(filters, n, omega):
                    rep.bump("filtered_cells")
                    continue
                for tail, A in _prefix_instances(n, k, omega):
                    rep.instances_checked += 1
                    found = find_complements(A, normalized_only=True, max_results=1)
                    congruent = {t % n for t in tail} == expected
                    row = {"omega": omega, "n": n, "k": k, "tail": list(tail)}
                    if not found:
                        row["verdict"] = "not_direct_factor"
                        if congruent:
                            # A would be a complete residue system and tile with <n>.
                            rep.counterexamples.append(
                                _counterexample(A, None, "equal_conj_reverse", kind="property", n=n, k=k, tail=list(tail))
                            )
                        rep.instances.append(row)
                        continue
                    B = found[0]
                    rep.direct_factor_count += 1
                    row["complement"] = B.to_list()
                    if not congruent:
                        row["verdict"] = "counterexample"
                        rep.counterexamples.append(
                            _counterexample(
                                A, B, "tail_congruence", n=n, k=k, tail=list(tail), expected_residues=sorted(expected)
                            )
                        )
                    else:
                        row["verdict"] = "confirmed"
                        if canonical_complement(A) is None:
                            rep.counterexamples.append(
                                _counterexample(A, B, "equal_conj_forward", kind="property", n=n, k=k, tail=list(tail))
                            )
                    if n < omega and n >= 2 * k + 1 and stabilizer(A).is_periodic:
                        rep.counterexamples.append(_counterexample(A, B, "periodic_direct_factor", n=n, k=k))
                    rep.instances.append(row)
    rep.elapsed = time.perf_counter() - start
    return rep


def scan_conjecture_mainconj(spec: ScanSpec) -> ScanReport:
    """Direct factors [0, n-k-1] + tail must have tail = {n-k, ..., n-1} mod n."""
    return _prefix_scan(spec, "mainconj", ())


def scan_theorem_mainthm(spec: ScanSpec) -> ScanReport:
    filters = tuple(f for f in spec.filters if f != "none") or ("mainthm_gcd_conditions",)
    return _prefix_scan(spec, "mainthm", filters)


def scan_swap_lemma(spec: ScanSpec) -> ScanReport:
    """A = [0, n-1] minus {i} plus {j}: a direct factor forces j = i mod n."""
    if spec.family != "swap":
        raise ValueError(f"swap scan needs the swap family, got {spec.family}")
    start = time.perf_counter()
    rep = ScanReport("swap", spec.to_dict())
    for n in spec.ns():
        if n < 3:
            continue
        for omega in spec.omegas():
            if omega <= n:
                continue
            if omega % n:
                rep.size_obstructed += 1
                continue
            for i in range(n):
                base = [x for x in range(n) if x != i]
                for j in range(n, omega):
                    A = ResidueSet.of(omega, base + [j])
                    rep.instances_checked += 1
                    found = find_complements(A, max_results=1)
                    row = {"omega": omega, "n": n, "i": i, "j": j}
                    if not found:
                        row["verdict"] = "not_direct_factor"
                    else:
                        rep.direct_factor_count += 1
                        B = found[0]
                        row["complement"] = B.to_list()
                        if j % n == i:
                            row["verdict"] = "confirmed"
                        else:
                            row["verdict"] = "counterexample"
                            rep.counterexamples.append(
                                _counterexample(
                                    A, B, "swap_congruence", n=n, i=i, j=j, tail=[j], expected_residues=[i]
                                )
                            )
                    rep.instances.append(row)
    rep.elapsed = time.perf_counter() - start
    return rep


def scan_majority_prefix(spec: ScanSpec) -> ScanReport:
    """Direct factors of size n meeting [0, n-1] in at least (n+1)/2 points: CRS mod n or not."""
    if spec.family != "majority_prefix":
        raise ValueError(f"majority scan needs the majority_prefix family, got {spec.family}")
    start = time.perf_counter()
    rep = ScanReport("majority_prefix", spec.to_dict(), exploratory=True)
    rep.summary.update(crs_holds=0, crs_fails=0)
    for n in spec.ns():
        if n < 1:
            continue
        threshold = ceil((n + 1) / 2)
        for omega in spec.omegas():
            if omega < n:
                continue
            if omega % n:
                rep.size_obstructed += 1
                continue
            outside = range(n, omega)
            for r in range(threshold, n + 1):
                for inner in itertools.combinations(range(n), r):
                    for outer in itertools.combinations(outside, n - r):
                        A = ResidueSet.of(omega, inner + outer)
                        rep.instances_checked += 1
                        found = find_complements(A, max_results=1)
                        if not found:
                            continue
                        rep.direct_factor_count += 1
                        crs = is_complete_residue_system(A, n)
                        rep.bump("crs_holds" if crs else "crs_fails")
                        rep.instances.append(
                            {
                                "omega": omega,
                                "n": n,
                                "A": A.to_list(),
                                "complement": found[0].to_list(),
                                "crs": crs,
                            }
                        )
    rep.elapsed = time.perf_counter() - start
    return rep


def scan_residue_coverage(spec: ScanSpec) -> ScanReport:
    """Generalized majority condition: A hits at least (n+1)/2 residue classes mod n.

    That count is the largest overlap of A with any complete residue system
    mod n. Normalized sets suffice: the condition, direct-factor status and
    the CRS property are all translation invariant.
    """
    if spec.family != "arbitrary":
        raise ValueError(f"coverage scan needs the arbitrary family, got {spec.family}")
    start = time.perf_counter()
    rep = ScanReport("residue_coverage", spec.to_dict(), exploratory=True)
    rep.summary.update(crs_holds=0, crs_fails=0, below_threshold=0)
    for n in spec.ns():
        if n < 1:
            continue
        for omega in spec.omegas():
            if omega < n:
                continue
            if omega % n:
                rep.size_obstructed += 1
                continue
            for rest in itertools.combinations(range(1, omega), n - 1):
                A = ResidueSet.of(omega, (0,) + rest)
                rep.instances_checked += 1
                found = find_complements(A, normalized_only=True, max_results=1)
                if not found:
                    continue
                rep.direct_factor_count += 1
                classes = len({a % n for a in A.members()})
                if 2 * classes < n + 1:
                    rep.bump("below_threshold")
                    continue
                crs = classes == n
                rep.bump("crs_holds" if crs else "crs_fails")
                if not crs:
                    rep.instances.append(
                        {"omega": omega, "n": n, "A": A.to_list(), "complement": found[0].to_list(), "classes": classes}
                    )
    rep.elapsed = time.perf_counter() - start
    return rep


def normalized_factorizations(omega: int, size: int):
    """Every (A, B) with Z_omega = A + B, 0 in A and B, |A| = size.

    The smaller factor is enumerated and its complements searched, so sizes
    above sqrt(omega) cost no more than their cofactors.
    """
    if omega % size:
        return
    other = omega // size
    small, swap = (size, False) if size <= other else (other, True)
    for rest in itertools.combinations(range(1, omega), small - 1):
        X = ResidueSet.of(omega, (0,) + rest)
        for Y in find_complements(X, normalized_only=True):
            yield (Y, X) if swap else (X, Y)


def _periodicity_lemmas(omega: int, a: int, b: int) -> list[str]:
    sig = factorize_integer(omega)

    def pp_or_pq(x: int) -> bool:
        s = factorize_integer(x)
        return s.mu <= 1 or (s.mu == 2 and s.nu == 2)

    out = []
    if pp_or_pq(a) and pp_or_pq(b):
        out.append("pp_or_pq_factors")
    if sig.mu <= 1 or factorize_integer(a).mu <= 1 or factorize_integer(b).mu <= 1:
        out.append("prime_power_factor")
    if _is_pe_q(omega):
        out.append("order_pe_q")
    if 2 <= sig.nu <= 4:
        out.append("nu_2_to_4")
    return out


def scan_periodicity_family(spec: ScanSpec) -> ScanReport:
    """Every factorization whose shape meets a periodicity lemma has a periodic factor.

    ``n_range`` bounds the order of the first factor.
    """
    start = time.perf_counter()
    rep = ScanReport("periodicity", spec.to_dict())
    filters = [f for f in spec.filters if f != "none"]
    for omega in spec.omegas():
        if omega < 2 or not all(_omega_shape(f, omega) for f in filters):
            continue
        for a in divisors(omega):
            if not spec.n_range[0] <= a <= spec.n_range[1]:
                continue
            b = omega // a
            lemmas = _periodicity_lemmas(omega, a, b)
            for A, B in normalized_factorizations(omega, a):
                rep.instances_checked += 1
                rep.direct_factor_count += 1
                if not lemmas:
                    rep.bump("no_hypothesis")
                    continue
                for lem in lemmas:
                    rep.bump(lem)
                if not (stabilizer(A).is_periodic or stabilizer(B).is_periodic):
                    rep.counterexamples.append(_counterexample(A, B, "no_periodic_factor", lemmas=lemmas))
    rep.elapsed = time.perf_counter() - start
    return rep


def _omega_shape(f: str, omega: int) -> bool:
    if f == "prime_power_order":
        return is_prime_power(omega)
    if f == "pq_order":
        return _is_pe_q(omega)
    return True


def scan_b_subgroup(spec: ScanSpec) -> ScanReport:
    """For qualifying normalized factorizations of the prefix family, B = <n> and A is CRS mod n."""
    if spec.family != "prefix_tail":
        raise ValueError(f"B-subgroup scan needs the prefix_tail family, got {spec.family}")
    start = time.perf_counter()
    rep = ScanReport("b_subgroup", spec.to_dict())
    for n in spec.ns():
        for k in spec.ks():
            if n < 2 * k + 1:
                continue
            for omega in spec.omegas():
                if omega < n:
                    continue
                if omega % n:
                    rep.size_obstructed += 1
                    continue
                nu_ok = 2 <= factorize_integer(omega).nu <= 4
                b = omega // n
                b_sig = factorize_integer(b)
                subgroup = cyclic_subgroup(n, omega)
                for tail, A in _prefix_instances(n, k, omega):
                    rep.instances_checked += 1
                    comps = find_complements(A, normalized_only=True)
                    if comps:
                        rep.direct_factor_count += 1
                    for B in comps:
                        pq_periodic = b_sig.mu == 2 and b_sig.nu == 2 and stabilizer(B).is_periodic
                        if not (nu_ok or b_sig.mu <= 1 or pq_periodic):
                            rep.bump("not_qualifying")
                            continue
                        rep.bump("qualifying")
                        if B != subgroup or not is_complete_residue_system(A, n):
                            rep.counterexamples.append(
                                _counterexample(A, B, "not_coset_factorization", n=n, k=k, tail=list(tail))
                            )
    rep.elapsed = time.perf_counter() - start
    return rep


def scan_prime_factor_lemmas(max_omega: int = 36) -> ScanReport:
    """Coprime factor sizes force both factors to be complete residue systems;
    sizes pm and pn over p^2 m n force one of them to be."""
    start = time.perf_counter()
    rep = ScanReport("prime_factor", {"max_omega": max_omega})
    for omega in range(1, max_omega + 1):
        for a in divisors(omega):
            b = omega // a
            if a > b:
                continue
            coprime = gcd(a, b) == 1
            two_sided = [
                p
                for p in factorize_integer(gcd(a, b)).primes
                if gcd(a // p, b // p) == 1 and (a // p * (b // p)) % p
            ]
            if not coprime and not two_sided:
                continue
            for A, B in normalized_factorizations(omega, a):
                rep.instances_checked += 1
                rep.direct_factor_count += 1
                if coprime:
                    rep.bump("coprime_sizes")
                    if not (is_complete_residue_system(A, a) and is_complete_residue_system(B, b)):
                        rep.counterexamples.append(_counterexample(A, B, "coprime_not_crs", A_mod=a))
                for p in two_sided:
                    rep.bump("prime_factor_2")
                    if not (is_complete_residue_system(A, a) or is_complete_residue_system(B, b)):
                        rep.counterexamples.append(_counterexample(A, B, "prime_factor_2", A_mod=a, p=p))
    rep.elapsed = time.perf_counter() - start
    return rep


def witnesses_from(*reports: ScanReport):
    """(A, B) pairs for every direct factor recorded in prefix or swap scans."""
    for rep in reports:
        for row in rep.instances:
            if "complement" not in row:
                continue
            omega = row["omega"]
            if "tail" in row and "i" not in row:
                n, k = row["n"], row["k"]
                A = ResidueSet.of(omega, list(range(n - k)) + row["tail"])
            elif "i" in row:
                n = row["n"]
                A = ResidueSet.of(omega, [x for x in range(n) if x != row["i"]] + [row["j"]])
            else:
                A = ResidueSet.of(omega, row["A"])
            yield A, ResidueSet.of(omega, row["complement"])


def scan_k_replace(pairs) -> ScanReport:
    """Dilating a factor by any k coprime to its size keeps the factorization."""
    from .factorization import FactorizationWitness

    start = time.perf_counter()
    rep = ScanReport("k_replace", {})
    for A, B in pairs:
        w = FactorizationWitness(A.omega, A, B)
        rep.direct_factor_count += 1
        for k in range(1, A.omega + 1):
            if gcd(k, len(A)) != 1:
                continue
            rep.instances_checked += 1
            if not verify_replacement_by_kA(w, k):
                rep.counterexamples.append(_counterexample(A, B, "k_replace", k=k))
    rep.elapsed = time.perf_counter() - start
    return rep


def scan_fac_equ(omega: int = 12, max_size: int = 6) -> ScanReport:
    """Annihilator inclusion for subgroups H, K agrees with a coset decomposition of A."""
    start = time.perf_counter()
    rep = ScanReport("fac_equ", {"omega": omega, "max_size": max_size})
    subgroups = [cyclic_subgroup(omega // d, omega) for d in divisors(omega)]
    for size in range(1, max_size + 1):
        for members in itertools.combinations(range(omega), size):
            A = ResidueSet.of(omega, members)
            for H in subgroups:
                for K in subgroups:
                    rep.instances_checked += 1
                    inc = annihilator_inclusion(H, K, A)
                    dec = decompose_union(H, K, A)
                    rep.bump("inclusion_true" if inc else "inclusion_false")
                    if dec is not None:
                        E, F = dec
                        ok = len(H) * len(E) + len(K) * len(F) == len(A)
                        if not ok:
                            rep.counterexamples.append(
                                _counterexample(A, None, "bad_decomposition", kind="property", H=H.to_list(), K=K.to_list())
                            )
                    if inc != (dec is not None):
                        rep.counterexamples.append(
                            _counterexample(
                                A,
                                None,
                                "fac_equ_mismatch",
                                kind="property",
                                H=H.to_list(),
                                K=K.to_list(),
                                inclusion=inc,
                            )
                        )
    rep.elapsed = time.perf_counter() - start
    return rep


def scan_pq_periodic(omega: int = 36, sample_check: int = 2000) -> ScanReport:
    """Sets of size pq annihilated by a faithful character are periodic.

    Sets are taken up to translation (0 in B); translation scales every
    character value by a root of unity and preserves the stabilizer. The
    character values are reduced with the same exact table ``is_zero`` uses,
    vectorized over all sets; ``sample_check`` sets are re-decided through
    ``is_zero`` directly.
    """
    sig = factorize_integer(omega)
    if sig.mu != 2:
        raise ValueError(f"{omega} is not of the form p^e q^f")
    p, q = sig.primes
    size = p * q
    start = time.perf_counter()
    rep = ScanReport("pq_periodic", {"omega": omega, "size": size})
    combos = np.array(list(itertools.combinations(range(1, omega), size - 1)), dtype=np.int64)
    combos = np.hstack([np.zeros((len(combos), 1), dtype=np.int64), combos])
    table = np.array(_power_table(omega), dtype=np.int64)
    units = [t for t in range(1, omega) if gcd(t, omega) == 1]
    annihilated = np.zeros(len(combos), dtype=bool)
    for t in units:
        vals = table[(combos * t) % omega].sum(axis=1)
        annihilated |= ~vals.any(axis=1)
    rep.instances_checked = len(combos)
    rep.summary["annihilated"] = int(annihilated.sum())
    step = max(1, len(combos) // sample_check) if sample_check else 0
    for idx in range(len(combos)):
        hit = bool(annihilated[idx])
        if not hit and not (step and idx % step == 0):
            continue
        B = ResidueSet.of(omega, combos[idx].tolist())
        exact = any(is_zero(chi_sum(B, t)) for t in units)
        if exact != hit:
            rep.counterexamples.append(_counterexample(B, None, "zero_test_mismatch", kind="property"))
            continue
        rep.bump("exact_rechecked")
        if hit:
            if stabilizer(B).is_periodic:
                rep.bump("annihilated_periodic")
            else:
                rep.counterexamples.append(_counterexample(B, None, "annihilated_not_periodic", kind="property"))
    rep.elapsed = time.perf_counter() - start
    return rep


def _primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if is_prime(p)]


def scan_bridge(max_p: int = 31, max_n: int = 6) -> ScanReport:
    """M splits <m> in Z_p^* iff the exponent set of M has a complement in Z_ord(m).

    Also checks both directions of the splitting form of the equality
    conjecture for G = Z_p when n >= 2k + 1.
    """
    start = time.perf_counter()
    rep = ScanReport("bridge", {"max_p": max_p, "max_n": max_n})
    for p in _primes_upto(max_p):
        for m in range(2, p):
            omega = multiplicative_order(m, p)
            H = generated_subgroup([m], p)
            for n in range(2, min(max_n, omega) + 1):
                for k in range(1, n // 2 + 1):
                    for tail in itertools.combinations(range(n - k, omega), k):
                        exps = list(range(n - k)) + list(tail)
                        M = sorted(pow(m, e, p) for e in exps)
                        A = discrete_log_set(M, m, p)
                        rep.instances_checked += 1
                        split_side = bool(splits_subgroup(M, p, H))
                        comps = find_complements(A, normalized_only=True, max_results=1)
                        if split_side:
                            rep.direct_factor_count += 1
                        if split_side != bool(comps):
                            rep.counterexamples.append(
                                _counterexample(
                                    A, None, "bridge_mismatch", kind="property", p=p, m=m, M=M, splits=split_side
                                )
                            )
                        if n >= 2 * k + 1:
                            rep.bump("conjecture_instances")
                            congruent = {t % n for t in tail} == set(range(n - k, n))
                            predicted = congruent and omega % n == 0
                            if splits(M, p) != predicted:
                                rep.counterexamples.append(
                                    _counterexample(
                                        A, None, "equal_conj_splitting", kind="property", p=p, m=m, M=M, tail=list(tail)
                                    )
                                )
    rep.elapsed = time.perf_counter() - start
    return rep


def scan_cor_factor_integers(max_p: int = 31, max_n: int = 5) -> ScanReport:
    """If M = {1, m^i1, ...} splits Z_p, |M| = n and gcd(ord_p(m)/n, n) = 1,
    the exponents are a complete residue system mod n.

    One generator per subgroup of Z_p^* is used: M ranges over all subsets
    of that subgroup containing 1, so other generators only relabel exponents.
    """
    start = time.perf_counter()
    rep = ScanReport("cor_factor_integers", {"max_p": max_p, "max_n": max_n})
    for p in _primes_upto(max_p):
        seen = set()
        for m in range(2, p):
            H = generated_subgroup([m], p)
            if H.bits in seen:
                continue
            seen.add(H.bits)
            omega = len(H)
            powers = [pow(m, e, p) for e in range(omega)]
            for n in range(2, min(max_n, omega) + 1):
                if omega % n or gcd(omega // n, n) != 1:
                    continue
                for rest in itertools.combinations(range(1, omega), n - 1):
                    M = [1] + [powers[e] for e in rest]
                    rep.instances_checked += 1
                    if not splits(M, p):
                        continue
                    rep.direct_factor_count += 1
                    A = ResidueSet.of(omega, (0,) + rest)
                    if not is_complete_residue_system(A, n):
                        rep.counterexamples.append(_counterexample(A, None, "exponents_not_crs", kind="property", p=p, m=m, M=M))
    rep.elapsed = time.perf_counter() - start
    return rep


def scan_common_divisor(max_g: int = 50, max_size: int = 3) -> ScanReport:
    """When a prime divides every multiplier but 1 and the group order, nothing splits."""
    start = time.perf_counter()
    rep = ScanReport("common_divisor", {"max_g": max_g, "max_size": max_size})
    for g in range(2, max_g + 1):
        for q in factorize_integer(g).primes:
            multiples = range(q, g, q)
            for r in range(1, max_size):
                for rest in itertools.combinations(multiples, r):
                    M = (1,) + rest
                    verdict = check_common_divisor_obstruction(M, g)
                    if not verdict.obstructed:
                        continue
                    rep.instances_checked += 1
                    found = search_splitting_sets(M, g, max_results=1)
                    if found:
                        rep.counterexamples.append(
                            {
                                "A": list(M),
                                "omega": g,
                                "complement": found[0].to_list(),
                                "kind": "splitting",
                                "reason": "obstructed_but_splits",
                            }
                        )
    rep.elapsed = time.perf_counter() - start
    return rep


def scan_nonsingular_reduction(max_g: int = 30, max_size: int = 3) -> ScanReport:
    """M splits Z_g nonsingularly iff M splits Z_p for every prime p | g.

    Multiplying M by a unit preserves splitting on both sides, so M is
    taken to contain 1.
    """
    start = time.perf_counter()
    rep = ScanReport("nonsingular_reduction", {"max_g": max_g, "max_size": max_size})
    for g in range(3, max_g + 1):
        units = [u for u in range(2, g) if gcd(u, g) == 1]
        for r in range(1, max_size):
            for rest in itertools.combinations(units, r):
                M = (1,) + rest
                rep.instances_checked += 1
                v = nonsingular_reduction_check(M, g)
                if v.splits_group:
                    rep.direct_factor_count += 1
                if not v.agree:
                    rep.counterexamples.append(
                        {"A": list(M), "omega": g, "complement": None, "kind": "splitting", "reason": "reduction_mismatch",
                         "per_prime": {str(k): val for k, val in v.splits_primes.items()}, "splits_group": v.splits_group}
                    )
    rep.elapsed = time.perf_counter() - start
    return rep


def scan_subgroup_restriction(max_p: int = 31, max_size: int = 3) -> ScanReport:
    """M splits Z_p iff M splits the subgroup it generates."""
    start = time.perf_counter()
    rep = ScanReport("subgroup_restriction", {"max_p": max_p, "max_size": max_size})
    for p in _primes_upto(max_p):
        for r in range(0, max_size):
            for rest in itertools.combinations(range(2, p), r):
                M = (1,) + rest
                rep.instances_checked += 1
                v = subgroup_restriction_check(M, p)
                if v.splits_field:
                    rep.direct_factor_count += 1
                if not v.agree:
                    rep.counterexamples.append(
                        {"A": list(M), "omega": p, "complement": None, "kind": "splitting", "reason": "restriction_mismatch"}
                    )
    rep.elapsed = time.perf_counter() - start
    return rep


SCANS = {
    "mainconj": scan_conjecture_mainconj,
    "mainthm": scan_theorem_mainthm,
    "swap": scan_swap_lemma,
    "majority": scan_majority_prefix,
    "residue_coverage": scan_residue_coverage,
    "periodicity": scan_periodicity_family,
    "b_subgroup": scan_b_subgroup,
}

DEFAULT_TARGET = {
    "prefix_tail": "mainconj",
    "swap": "swap",
    "majority_prefix": "majority",
    "arbitrary": "periodicity",
}


def run_scan(spec: ScanSpec, target: str | None = None) -> ScanReport:
    target = target or DEFAULT_TARGET[spec.family]
    if target not in SCANS:
        raise ValueError(f"unknown scan target {target!r}")
    return SCANS[target](spec)
