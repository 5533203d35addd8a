"""Exact modular arithmetic: residues, units, CRT, and coprimality partitions.

All moduli are arbitrary-precision Python ints and representatives are
always the least nonnegative residue.  Z/1Z is the one-point ring whose
single element 0 counts as a unit (its own inverse), so that conductor-1
characters are well defined downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotAUnit, NotCoprime

__all__ = [
    "Residue",
    "UnitResidue",
    "reduce",
    "inverse_mod",
    "crt_split",
    "crt_combine",
    "units_of",
    "partition_range",
    "is_prime",
    "divisors",
]


@dataclass(frozen=True)
class Residue:
    """An element of Z/nZ stored by its least nonnegative representative."""

    modulus: int
    value: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be a positive integer")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"{self.value} is not reduced modulo {self.modulus}")

    def _require_same_modulus(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise ValueError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}"
            )

    def __add__(self, other: "Residue") -> "Residue":
        self._require_same_modulus(other)
        return Residue(self.modulus, (self.value + other.value) % self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._require_same_modulus(other)
        return Residue(self.modulus, (self.value - other.value) % self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._require_same_modulus(other)
        return Residue(self.modulus, (self.value * other.value) % self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(self.modulus, (-self.value) % self.modulus)

    def is_unit(self) -> bool:
        return math.gcd(self.value, self.modulus) == 1

    def __repr__(self):
        return f"{self.value} mod {self.modulus}"


@dataclass(frozen=True)
class UnitResidue:
    """A residue certified coprime to its modulus."""

    residue: Residue

    def __post_init__(self):
        if not self.residue.is_unit():
            raise NotAUnit(
                f"{self.residue.value} is not a unit modulo {self.residue.modulus}"
            )

    @property
    def value(self) -> int:
        return self.residue.value

    @property
    def modulus(self) -> int:
        return self.residue.modulus

    def __mul__(self, other: "UnitResidue") -> "UnitResidue":
        return UnitResidue(self.residue * other.residue)

    def inverse(self) -> "UnitResidue":
        return inverse_mod(self.value, self.modulus)

    def __repr__(self):
        return f"{self.value} mod {self.modulus} (unit)"


def reduce(n: int, x: int) -> Residue:
    """Reduce the integer x modulo n, n >= 1."""
    if n < 1:
        raise ValueError("modulus must be a positive integer")
    return Residue(n, x % n)


def inverse_mod(c: int, n: int) -> UnitResidue:
    """The unit b with c*b = 1 (mod n).  Raises NotAUnit if gcd(c, n) != 1."""
    if n < 1:
        raise ValueError("modulus must be a positive integer")
    try:
        b = pow(c, -1, n)
    except ValueError as exc:
        raise NotAUnit(f"{c} is not invertible modulo {n}") from exc
    return UnitResidue(Residue(n, b))


def crt_split(d: int, q: int, x: Residue) -> tuple[Residue, Residue]:
    """Split x mod d*q into its components mod d and mod q (d, q coprime)."""
    if math.gcd(d, q) != 1:
        raise NotCoprime(f"gcd({d}, {q}) != 1")
    if x.modulus != d * q:
        raise ValueError(f"expected a residue mod {d * q}, got mod {x.modulus}")
    return reduce(d, x.value), reduce(q, x.value)


def crt_combine(d: int, q: int, a, b) -> Residue:
    """The residue mod d*q congruent to a mod d and b mod q (d, q coprime).

    a and b may be Residues or plain ints.
    """
    if math.gcd(d, q) != 1:
        raise NotCoprime(f"gcd({d}, {q}) != 1")
    av = a.value if isinstance(a, Residue) else int(a) % d
    bv = b.value if isinstance(b, Residue) else int(b) % q
    if isinstance(a, Residue) and a.modulus != d:
        raise ValueError(f"first component has modulus {a.modulus}, expected {d}")
    if isinstance(b, Residue) and b.modulus != q:
        raise ValueError(f"second component has modulus {b.modulus}, expected {q}")
    # x = a + d*t with t chosen so x = b mod q; pow(d, -1, 1) == 0 covers q == 1
    t = ((bv - av) * pow(d, -1, q)) % q if q > 1 else 0
    return Residue(d * q, (av + d * t) % (d * q))


def units_of(n: int) -> list[UnitResidue]:
    """All units of Z/nZ in increasing representative order (length phi(n))."""
    if n < 1:
        raise ValueError("modulus must be a positive integer")
    return [
        UnitResidue(Residue(n, a)) for a in range(n) if math.gcd(a, n) == 1
    ]


def partition_range(d: int, p: int, x: int) -> tuple[list[int], list[int]]:
    """Split [0, d*p^x) into representatives coprime to d*p and the rest."""
    if math.gcd(d, p) != 1:
        raise NotCoprime(f"gcd({d}, {p}) != 1")
    dp = d * p
    units, nonunits = [], []
    for a in range(d * p**x):
        (units if math.gcd(a, dp) == 1 else nonunits).append(a)
    return units, nonunits


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test, adequate at desk scale."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def divisors(n: int) -> list[int]:
    """Positive divisors of n in increasing order."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f != n // f:
                large.append(n // f)
        f += 1
    return small + large[::-1]
