"""Factorizations Z_omega = A + B: decision, complement search, periodicity."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .core import (
    BoundExceeded,
    ResidueSet,
    cyclic_subgroup,
    dilate,
    divisors,
    rotate_bits,
    same_modulus,
)

SEARCH_LIMIT = 256


@dataclass(frozen=True)
class SumsetProfile:
    multiplicity: tuple[int, ...]

    def first_defect(self) -> int | None:
        """Smallest element whose multiplicity is not exactly one."""
        for g, c in enumerate(self.multiplicity):
            if c != 1:
                return g
        return None


@dataclass(frozen=True)
class FactorizationWitness:
    omega: int
    A: ResidueSet
    B: ResidueSet

    def __post_init__(self):
        if not is_factorization(self.A, self.B) or self.A.omega != self.omega:
            raise ValueError(f"{self.A} + {self.B} is not a factorization of Z_{self.omega}")


@dataclass(frozen=True)
class PeriodicityReport:
    stabilizer: ResidueSet
    is_periodic: bool
    coset_reps: ResidueSet


def _check_nonempty(*sets: ResidueSet) -> None:
    for s in sets:
        if not s:
            raise ValueError("factor sets must be nonempty")


def sumset_profile(A: ResidueSet, B: ResidueSet) -> SumsetProfile:
    omega = same_modulus(A, B)
    _check_nonempty(A, B)
    ind_b = np.zeros(omega, dtype=np.int64)
    ind_b[list(B.members())] = 1
    out = np.zeros(omega, dtype=np.int64)
    for a in A.members():
        out += np.roll(ind_b, a)
    return SumsetProfile(tuple(int(c) for c in out))


def is_factorization(A: ResidueSet, B: ResidueSet) -> bool:
    omega = same_modulus(A, B)
    _check_nonempty(A, B)
    if len(A) * len(B) != omega:
        return False
    covered = 0
    for b in B.members():
        t = rotate_bits(A.bits, b, omega)
        if covered & t:
            return False
        covered |= t
    return True


def factorization_witness(A: ResidueSet, B: ResidueSet) -> FactorizationWitness | None:
    return FactorizationWitness(A.omega, A, B) if is_factorization(A, B) else None


def is_complete_residue_system(A: ResidueSet, n: int) -> bool:
    if len(A) != n:
        raise ValueError(f"set has {len(A)} elements, expected {n}")
    return len({a % n for a in A.members()}) == n


def stabilizer(A: ResidueSet) -> PeriodicityReport:
    _check_nonempty(A)
    omega = A.omega
    # The stabilizer is <d> for the least divisor d of omega fixing A.
    for d in divisors(omega):
        if rotate_bits(A.bits, d, omega) == A.bits:
            break
    stab = cyclic_subgroup(d, omega)
    reps = ResidueSet(omega, A.bits & ((1 << d) - 1))
    return PeriodicityReport(stab, len(stab) > 1, reps)


def find_complements(
    A: ResidueSet,
    normalized_only: bool = False,
    max_results: int | None = None,
    limit: int = SEARCH_LIMIT,
) -> list[ResidueSet]:
    """All B with A + B a factorization of Z_omega.

    Exact-cover backtracking: the smallest uncovered element g must be hit as
    a + b for exactly one a, so branch over b = g - a. With ``max_results``
    the search stops after that many hits; the returned list is always sorted
    by members.
    """
    _check_nonempty(A)
    omega = A.omega
    if omega > limit:
        raise BoundExceeded(f"complement search over Z_{omega} exceeds limit {limit}")
    if omega % len(A):
        return []
    full = (1 << omega) - 1
    shifts = [rotate_bits(A.bits, b, omega) for b in range(omega)]
    a_members = A.members()
    found: list[int] = []
    cap = max_results if max_results is not None else -1

    def search(covered: int, chosen: int) -> bool:
        if covered == full:
            found.append(chosen)
            return len(found) == cap
        free = ~covered & full
        g = (free & -free).bit_length() - 1
        for a in a_members:
            b = (g - a) % omega
            t = shifts[b]
            if not t & covered and search(covered | t, chosen | (1 << b)):
                return True
        return False

    if cap != 0:
        if normalized_only:
            search(A.bits, 1)
        else:
            search(0, 0)
    return sorted((ResidueSet(omega, b) for b in found), key=ResidueSet.members)


def is_direct_factor(A: ResidueSet, limit: int = SEARCH_LIMIT) -> bool:
    return bool(find_complements(A, normalized_only=True, max_results=1, limit=limit))


def verify_replacement_by_kA(w: FactorizationWitness, k: int) -> bool:
    if gcd(k, len(w.A)) != 1:
        raise ValueError(f"k={k} is not coprime to |A|={len(w.A)}")
    return is_factorization(dilate(w.A, k), w.B)


def canonical_complement(A: ResidueSet) -> ResidueSet | None:
    n = len(A)
    if n == 0 or A.omega % n or not is_complete_residue_system(A, n):
        return None
    B = cyclic_subgroup(n, A.omega)
    if not is_factorization(A, B):
        raise AssertionError(f"complete residue system {A} does not tile with <{n}>")
    return B
