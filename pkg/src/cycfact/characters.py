"""Exact character sums over Z_omega.

A character of Z_omega is indexed by t in [0, omega) and sends g to
zeta^(t*g), zeta a primitive omega-th root of unity. Sums of such values are
held as integer coefficient vectors and tested for zero by divisibility by a
cyclotomic polynomial, never by floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd

from .core import (
    BoundExceeded,
    PrimeSignature,
    ResidueSet,
    cyclic_subgroup,
    divisors,
    is_subgroup,
    rotate_bits,
    same_modulus,
)
from .factorization import stabilizer

CYCLOTOMIC_LIMIT = 10**5
DECOMPOSE_LIMIT = 96
_TABLE_LIMIT = 512

Poly = tuple[int, ...]  # constant term first


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _mul(p: Poly, q: Poly) -> Poly:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return tuple(out)


def _divmod_monic(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder of num by a monic den, exact over Z."""
    r = list(num)
    dd = len(den) - 1
    if len(r) <= dd:
        return (), tuple(_trim(r))
    q = [0] * (len(r) - dd)
    for i in range(len(r) - 1, dd - 1, -1):
        c = r[i]
        if c:
            q[i - dd] = c
            for j in range(dd + 1):
                r[i - dd + j] -= c * den[j]
    return tuple(_trim(q)), tuple(_trim(r[:dd]))


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> Poly:
    if d < 1:
        raise ValueError(f"cyclotomic index must be positive, got {d}")
    if d > CYCLOTOMIC_LIMIT:
        raise BoundExceeded(f"cyclotomic index {d} exceeds {CYCLOTOMIC_LIMIT}")
    num: Poly = (-1,) + (0,) * (d - 1) + (1,)
    den = reduce(_mul, (cyclotomic_polynomial(e) for e in divisors(d) if e < d), (1,))
    q, r = _divmod_monic(num, den)
    assert not r, f"x^{d} - 1 not divisible by proper cyclotomic factors"
    return q


@lru_cache(maxsize=None)
def _power_table(d: int) -> tuple[tuple[int, ...], ...]:
    """Coefficient vectors of y^j mod Phi_d(y) for j in [0, d)."""
    phi = cyclotomic_polynomial(d)
    deg = len(phi) - 1
    rows = []
    cur = [1] + [0] * (deg - 1)
    for _ in range(d):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


@dataclass(frozen=True)
class CycloElement:
    """The value sum(coeffs[j] * zeta^j) for zeta a primitive omega-th root of unity.

    The representation is not canonical: many coefficient vectors share a value.
    """

    omega: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.omega:
            raise ValueError("coefficient vector must have length omega")

    def __sub__(self, other: "CycloElement") -> "CycloElement":
        if other.omega != self.omega:
            raise ValueError("cannot subtract elements of different cyclotomic fields")
        return CycloElement(self.omega, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def order(self) -> int:
        """Order of the root of unity the support actually lives on."""
        g = self.omega
        for j, c in enumerate(self.coeffs):
            if c:
                g = gcd(g, j)
        return self.omega // g

    def complex(self) -> complex:
        import cmath

        return sum(c * cmath.exp(2j * cmath.pi * j / self.omega) for j, c in enumerate(self.coeffs) if c)


def reduce_mod_cyclotomic(coeffs: dict[int, int] | list[int], d: int) -> tuple[int, ...]:
    """Remainder of sum(c_j y^j) modulo Phi_d, exponents taken mod d."""
    items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
    if d <= _TABLE_LIMIT:
        table = _power_table(d)
        acc = [0] * len(table[0])
        for j, c in items:
            if c:
                for i, v in enumerate(table[j % d]):
                    if v:
                        acc[i] += c * v
        return tuple(acc)
    collapsed = [0] * d
    for j, c in items:
        collapsed[j % d] += c
    _, r = _divmod_monic(tuple(collapsed), cyclotomic_polynomial(d))
    deg = len(cyclotomic_polynomial(d)) - 1
    return tuple(r) + (0,) * (deg - len(r))


def is_zero(x: CycloElement) -> bool:
    d = x.order()
    step = x.omega // d
    collapsed = {j // step: c for j, c in enumerate(x.coeffs) if c}
    if not collapsed:
        return True
    return not any(reduce_mod_cyclotomic(collapsed, d))


def values_equal(x: CycloElement, y: CycloElement) -> bool:
    return is_zero(x - y)


def chi_sum(A: ResidueSet, t: int) -> CycloElement:
    omega = A.omega
    coeffs = [0] * omega
    for a in A.members():
        coeffs[t * a % omega] += 1
    return CycloElement(omega, tuple(coeffs))


@lru_cache(maxsize=8192)
def annihilator(A: ResidueSet) -> frozenset[int]:
    if not A:
        raise ValueError("annihilator of the empty set is every character")
    return frozenset(t for t in range(A.omega) if is_zero(chi_sum(A, t)))


def kernel(t: int, omega: int) -> ResidueSet:
    return cyclic_subgroup(omega // gcd(t, omega), omega)


def _require_subgroups(*sets: ResidueSet) -> None:
    for H in sets:
        if not is_subgroup(H):
            raise ValueError(f"{H} is not a subgroup")


def annihilator_inclusion(H: ResidueSet, K: ResidueSet, A: ResidueSet) -> bool:
    same_modulus(H, K, A)
    _require_subgroups(H, K)
    return annihilator(H) & annihilator(K) <= annihilator(A)


def decompose_union(
    H: ResidueSet, K: ResidueSet, A: ResidueSet, limit: int = DECOMPOSE_LIMIT
) -> tuple[ResidueSet, ResidueSet] | None:
    """Find E, F with A the disjoint union of the direct sums H + E and K + F.

    Each smallest uncovered element of A must start either a whole H-coset
    or a whole K-coset inside A; H-cosets are tried first, so the result is
    the first decomposition in that order.
    """
    omega = same_modulus(H, K, A)
    _require_subgroups(H, K)
    if omega > limit:
        raise BoundExceeded(f"decomposition search over Z_{omega} exceeds limit {limit}")

    def search(rest: int, e: int, f: int) -> tuple[int, int] | None:
        if not rest:
            return e, f
        x = (rest & -rest).bit_length() - 1
        for sub, to_e in ((H.bits, True), (K.bits, False)):
            coset = rotate_bits(sub, x, omega)
            if coset & rest == coset:
                hit = search(rest & ~coset, e | (1 << x) if to_e else e, f if to_e else f | (1 << x))
                if hit:
                    return hit
        return None

    hit = search(A.bits, 0, 0)
    if hit is None:
        return None
    return ResidueSet(omega, hit[0]), ResidueSet(omega, hit[1])


@dataclass(frozen=True)
class PqVerdict:
    faithful_annihilators: tuple[int, ...]
    periodic: bool

    @property
    def annihilated(self) -> bool:
        return bool(self.faithful_annihilators)

    @property
    def holds(self) -> bool:
        return not self.annihilated or self.periodic


def pq_periodicity_check(B: ResidueSet, sig: PrimeSignature) -> PqVerdict:
    if sig.mu != 2 or sig.value != B.omega:
        raise ValueError(f"Z_{B.omega} is not of order p^e q^f for signature {sig.factors}")
    p, q = sig.primes
    if len(B) != p * q:
        raise ValueError(f"|B|={len(B)} but pq={p * q}")
    faithful = tuple(t for t in range(1, B.omega) if gcd(t, B.omega) == 1 and is_zero(chi_sum(B, t)))
    return PqVerdict(faithful, stabilizer(B).is_periodic)
