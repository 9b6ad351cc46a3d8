"""Splittings G \\ {0} = M S of Z_g by an integer multiplier set M."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .core import (
    BoundExceeded,
    ResidueSet,
    check_modulus,
    factorize_integer,
    multiplicative_order,
)
from .factorization import is_complete_residue_system

SPLIT_LIMIT = 10**4


def multiplier_set(values) -> tuple[int, ...]:
    raw = list(values)
    vals = sorted(set(raw))
    if len(vals) != len(raw):
        raise ValueError("multiplier set has duplicate values")
    if not vals:
        raise ValueError("multiplier set must be nonempty")
    if 0 in vals:
        raise ValueError("0 cannot be a multiplier")
    return tuple(vals)


@dataclass(frozen=True)
class SplittingWitness:
    g_mod: int
    M: tuple[int, ...]
    S: ResidueSet

    def __post_init__(self):
        if not is_splitting(self.M, self.S, self.g_mod):
            raise ValueError(f"{self.M} x {self.S} is not a splitting of Z_{self.g_mod}")


def is_splitting(M, S: ResidueSet, g_mod: int) -> bool:
    check_modulus(g_mod)
    if S.omega != g_mod:
        raise ValueError(f"splitting set lives in Z_{S.omega}, not Z_{g_mod}")
    covered = 0
    for s in S.members():
        if s == 0:
            return False
        for m in M:
            v = m * s % g_mod
            if v == 0 or covered >> v & 1:
                return False
            covered |= 1 << v
    return covered == (1 << g_mod) - 2


def _split_search(M, g_mod: int, universe: int, max_results: int | None) -> list[ResidueSet]:
    """All S inside ``universe`` (a bitmask) with M*S covering it exactly once."""
    size = universe.bit_count()
    if size % len(M):
        return []
    residues = [m % g_mod for m in M]
    images: dict[int, int] = {}
    preimages: dict[int, list[int]] = {}
    for s in range(1, g_mod):
        if not universe >> s & 1:
            continue
        mask = 0
        for m in residues:
            mask |= 1 << (m * s % g_mod)
        if mask.bit_count() == len(residues) and mask & universe == mask:
            images[s] = mask
            for m in residues:
                preimages.setdefault(m * s % g_mod, []).append(s)
    found: list[int] = []
    cap = max_results if max_results is not None else -1

    def search(covered: int, chosen: int) -> bool:
        free = universe & ~covered
        if not free:
            found.append(chosen)
            return len(found) == cap
        g = (free & -free).bit_length() - 1
        for s in preimages.get(g, ()):
            img = images[s]
            if not img & covered and search(covered | img, chosen | (1 << s)):
                return True
        return False

    if cap != 0:
        search(0, 0)
    return sorted((ResidueSet(g_mod, b) for b in found), key=ResidueSet.members)


def search_splitting_sets(
    M, g_mod: int, max_results: int | None = None, limit: int = SPLIT_LIMIT
) -> list[ResidueSet]:
    """Splitting sets of Z_g_mod for M; empty when |M| does not divide g_mod - 1."""
    check_modulus(g_mod)
    if g_mod > limit:
        raise BoundExceeded(f"splitting search over Z_{g_mod} exceeds limit {limit}")
    return _split_search(M, g_mod, (1 << g_mod) - 2, max_results)


def splits(M, g_mod: int, limit: int = SPLIT_LIMIT) -> bool:
    return bool(search_splitting_sets(M, g_mod, max_results=1, limit=limit))


def generated_subgroup(M, p: int) -> ResidueSet:
    """Multiplicative closure of M inside Z_p^*."""
    elems = {1}
    frontier = [1]
    gens = {m % p for m in M}
    while frontier:
        x = frontier.pop()
        for m in gens:
            y = x * m % p
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return ResidueSet.of(p, elems)


def splits_subgroup(M, p: int, H: ResidueSet, max_results: int | None = 1) -> list[ResidueSet]:
    """Splitting sets S inside the multiplicative subgroup H with H = M S."""
    return _split_search(M, p, H.bits, max_results)


def is_nonsingular(M, g_mod: int) -> bool:
    return all(gcd(m, g_mod) == 1 for m in M)


@dataclass(frozen=True)
class ObstructionVerdict:
    common_primes: tuple[int, ...]
    blocking_prime: int | None

    @property
    def obstructed(self) -> bool:
        return self.blocking_prime is not None


def check_common_divisor_obstruction(M, g_mod: int) -> ObstructionVerdict:
    if 1 not in M or len(M) < 2:
        raise ValueError("obstruction test needs 1 in M and |M| > 1")
    common = 0
    for m in M:
        if m != 1:
            common = gcd(common, m)
    primes = factorize_integer(abs(common)).primes if common else ()
    blocking = next((q for q in primes if g_mod % q == 0), None)
    return ObstructionVerdict(primes, blocking)


@dataclass(frozen=True)
class ReductionVerdict:
    splits_group: bool
    splits_primes: dict[int, bool] = field(hash=False)

    @property
    def agree(self) -> bool:
        return self.splits_group == all(self.splits_primes.values())


def nonsingular_reduction_check(M, g_mod: int, limit: int = SPLIT_LIMIT) -> ReductionVerdict:
    if not is_nonsingular(M, g_mod):
        raise ValueError(f"{M} is singular for Z_{g_mod}")
    whole = splits(M, g_mod, limit)
    per_prime = {p: splits(M, p, limit) for p in factorize_integer(g_mod).primes}
    return ReductionVerdict(whole, per_prime)


@dataclass(frozen=True)
class RestrictionVerdict:
    subgroup: ResidueSet
    splits_field: bool
    splits_subgroup: bool

    @property
    def agree(self) -> bool:
        return self.splits_field == self.splits_subgroup


def subgroup_restriction_check(M, p: int, limit: int = SPLIT_LIMIT) -> RestrictionVerdict:
    if any(m % p == 0 for m in M):
        raise ValueError(f"some multiplier vanishes mod {p}")
    H = generated_subgroup(M, p)
    return RestrictionVerdict(H, splits(M, p, limit), bool(splits_subgroup(M, p, H)))


def discrete_log_set(M, m: int, p: int) -> ResidueSet | None:
    """Exponents {e : m^e = x mod p} for x in M, as a subset of Z_ord(m).

    None if some element of M is not a power of m. Elements congruent mod p
    collapse to one exponent.
    """
    if gcd(m, p) != 1:
        raise ValueError(f"{m} is not a unit mod {p}")
    omega = multiplicative_order(m, p)
    logs = {}
    x = 1
    for e in range(omega):
        logs[x] = e
        x = x * m % p
    exps = []
    for v in M:
        e = logs.get(v % p)
        if e is None:
            return None
        exps.append(e)
    return ResidueSet.of(omega, exps)


def prefix_exponents(n: int, k: int, tail) -> list[int]:
    tail = list(tail)
    if len(tail) != k:
        raise ValueError(f"tail has {len(tail)} exponents, expected k={k}")
    if not 0 <= k < n:
        raise ValueError(f"need 0 <= k < n, got n={n}, k={k}")
    return list(range(n - k)) + tail


def prefix_multiplier_family(m: int, n: int, k: int, tail) -> tuple[int, ...]:
    """{1, m, ..., m^(n-k-1)} together with m^i for i in tail."""
    if m < 2:
        raise ValueError("base must be at least 2")
    return multiplier_set([m**e for e in prefix_exponents(n, k, tail)])


@dataclass(frozen=True)
class TightnessReport:
    k: int
    p: int
    m: int
    M: tuple[int, ...]
    S: ResidueSet
    exponents: ResidueSet
    splits: bool
    exponents_crs: bool

    @property
    def confirms_tightness(self) -> bool:
        return self.splits and not self.exponents_crs

    def witness(self) -> SplittingWitness:
        return SplittingWitness(self.p, self.M, self.S)


def coset_representatives(H: ResidueSet, p: int) -> list[int]:
    """Least element of each coset of the multiplicative subgroup H in Z_p^*."""
    seen = 0
    reps = []
    for a in range(1, p):
        if not seen >> a & 1:
            reps.append(a)
            for h in H.members():
                seen |= 1 << (a * h % p)
    return reps


def tightness_construction(k: int, p: int, m: int) -> TightnessReport:
    """The n = 2k multiplier set whose exponents miss the expected residues mod n."""
    if k < 1:
        raise ValueError("k must be positive")
    order = multiplicative_order(m, p)
    if order % (4 * k):
        raise ValueError(f"4k={4 * k} does not divide ord_{p}({m})={order}")
    n = 2 * k
    exps = prefix_exponents(n, k, range(n, n + k))
    M = multiplier_set({pow(m, e, p) for e in exps})
    core = {pow(m, 4 * k * j, p) for j in range(order // (4 * k))}
    shifted = {x * pow(m, k, p) % p for x in core}
    gen = generated_subgroup([m], p)
    S = ResidueSet.of(p, {a * x % p for a in coset_representatives(gen, p) for x in core | shifted})
    A = ResidueSet.of(order, exps)
    return TightnessReport(
        k=k,
        p=p,
        m=m,
        M=M,
        S=S,
        exponents=A,
        splits=is_splitting(M, S, p),
        exponents_crs=is_complete_residue_system(A, n) if len(A) == n else False,
    )
