"""Residue sets in Z_omega and the elementary number theory around them.

A :class:`ResidueSet` stores its members as the bits of a Python integer, so
translation is a rotation and disjointness is a single ``&``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable, Iterator

VERIFY_LIMIT = 1 << 20


class ModulusMismatch(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


def check_modulus(omega: int, limit: int = VERIFY_LIMIT) -> int:
    if not isinstance(omega, int) or omega < 1:
        raise ValueError(f"modulus must be a positive integer, got {omega!r}")
    if omega > limit:
        raise BoundExceeded(f"modulus {omega} exceeds limit {limit}")
    return omega


@dataclass(frozen=True)
class ResidueSet:
    """A subset of Z_omega; bit g of ``bits`` is set iff g is a member."""

    omega: int
    bits: int

    def __post_init__(self):
        check_modulus(self.omega)
        if self.bits < 0 or self.bits >> self.omega:
            raise ValueError("bits outside [0, omega)")

    @classmethod
    def of(cls, omega: int, members: Iterable[int] = ()) -> "ResidueSet":
        bits = 0
        for m in members:
            bits |= 1 << (m % omega)
        return cls(omega, bits)

    @classmethod
    def full(cls, omega: int) -> "ResidueSet":
        return cls(omega, (1 << omega) - 1)

    @classmethod
    def interval(cls, omega: int, lo: int, hi: int) -> "ResidueSet":
        """The image of the integer interval [lo, hi] in Z_omega."""
        return cls.of(omega, range(lo, hi + 1))

    def members(self) -> tuple[int, ...]:
        out = []
        b, i = self.bits, 0
        while b:
            if b & 1:
                out.append(i)
            b >>= 1
            i += 1
        return tuple(out)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, g: int) -> bool:
        return bool(self.bits >> (g % self.omega) & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def min(self) -> int:
        if not self.bits:
            raise ValueError("empty residue set has no minimum")
        return (self.bits & -self.bits).bit_length() - 1

    def union(self, other: "ResidueSet") -> "ResidueSet":
        same_modulus(self, other)
        return ResidueSet(self.omega, self.bits | other.bits)

    def isdisjoint(self, other: "ResidueSet") -> bool:
        same_modulus(self, other)
        return not self.bits & other.bits

    def to_list(self) -> list[int]:
        return list(self.members())

    def __repr__(self) -> str:
        return f"ResidueSet({self.omega}, {set(self.members()) or '{}'})"


def same_modulus(*sets: ResidueSet) -> int:
    omega = sets[0].omega
    for s in sets[1:]:
        if s.omega != omega:
            raise ModulusMismatch(f"moduli differ: {omega} vs {s.omega}")
    return omega


def rotate_bits(bits: int, g: int, omega: int) -> int:
    g %= omega
    if not g:
        return bits
    full = (1 << omega) - 1
    return ((bits << g) | (bits >> (omega - g))) & full


@dataclass(frozen=True)
class PrimeSignature:
    factors: tuple[tuple[int, int], ...]

    @property
    def mu(self) -> int:
        """Number of distinct prime divisors."""
        return len(self.factors)

    @property
    def nu(self) -> int:
        """Number of prime divisors counted with multiplicity."""
        return sum(e for _, e in self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


def factorize_integer(n: int) -> PrimeSignature:
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append((n, 1))
    return PrimeSignature(tuple(factors))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, isqrt(n) + 1))


def is_prime_power(n: int) -> bool:
    """True for p^e with e >= 1 (1 itself is excluded)."""
    return factorize_integer(n).mu == 1


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def multiplicative_order(g: int, n: int) -> int:
    if n < 2:
        raise ValueError("modulus must be at least 2")
    g %= n
    if gcd(g, n) != 1:
        raise ValueError(f"{g} is not a unit mod {n}")
    x, l = g, 1
    while x != 1:
        x = x * g % n
        l += 1
    return l


def cyclic_subgroup(d: int, omega: int) -> ResidueSet:
    check_modulus(omega)
    step = gcd(d, omega)  # <d> = <gcd(d, omega)>
    return ResidueSet.of(omega, range(0, omega, step))


def is_subgroup(H: ResidueSet) -> bool:
    size = len(H)
    return size > 0 and H.omega % size == 0 and H == cyclic_subgroup(H.omega // size, H.omega)


def translate(A: ResidueSet, g: int) -> ResidueSet:
    return ResidueSet(A.omega, rotate_bits(A.bits, g, A.omega))


def dilate(A: ResidueSet, k: int) -> ResidueSet:
    return ResidueSet.of(A.omega, (k * a for a in A.members()))


def normalize(A: ResidueSet) -> ResidueSet:
    if not A:
        raise ValueError("cannot normalize the empty set")
    return translate(A, -A.min())


_ITEM = re.compile(r"^(-?\d+)(?:\.\.(-?\d+))?$")


def parse_int_list(text: str) -> list[int]:
    """Parse a set literal such as ``0..2,8,9`` into its integers, in order.

    Ranges are inclusive. Duplicates and descending ranges are rejected.
    """
    cleaned = re.sub(r"\s+", "", text)
    if not cleaned:
        return []
    out: list[int] = []
    seen: set[int] = set()
    for item in cleaned.split(","):
        m = _ITEM.match(item)
        if not m:
            raise ValueError(f"malformed set item {item!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) is not None else lo
        if lo > hi:
            raise ValueError(f"range {item!r} has lower bound above upper bound")
        for v in range(lo, hi + 1):
            if v in seen:
                raise ValueError(f"duplicate element {v}")
            seen.add(v)
            out.append(v)
    return out


def parse_residue_set(text: str, omega: int) -> ResidueSet:
    values = parse_int_list(text)
    reduced = {v % omega for v in values}
    if len(reduced) != len(values):
        raise ValueError(f"elements of {text!r} collide modulo {omega}")
    return ResidueSet.of(omega, reduced)


def format_set(values: Iterable[int]) -> str:
    """Inverse of :func:`parse_int_list`, compressing runs into ranges."""
    vals = sorted(values)
    parts = []
    i = 0
    while i < len(vals):
        j = i
        while j + 1 < len(vals) and vals[j + 1] == vals[j] + 1:
            j += 1
        parts.append(str(vals[i]) if j == i else f"{vals[i]}..{vals[j]}")
        i = j + 1
    return ",".join(parts)
