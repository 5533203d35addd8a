"""The Bernoulli measure E_c on Z/dZ x Z_p and locally constant integration.

The clopen basis of the space is indexed by residues a mod d*p^n (the
product view is reachable through the CRT).  Fixing an auxiliary c >= 2
with gcd(c, dp) = 1, the measure of the level-n basic clopen set at a is

    E_c(n, a) = {A / D} - c * {(c^(-1) A mod D) / D} + (c - 1)/2

with D = d*p^n (the modulus of the level itself), A the least
representative of a, and c^(-1) an integer inverse of c mod D.  The
first two terms combine to an integer, so E_c takes values in
Z + (c-1)/2 and in particular is p-integral for odd p.  Its load-bearing
property is distribution compatibility: the sum of level-(n+1) values
over the p lifts of a equals the level-n value exactly, for every
admissible c.  Two rival readings of the formula are rejected by that
very property and kept only as documentation: shifting the denominator
one level down (D = d*p^(n+1)) breaks compatibility for most c (for
example p=5, d=1, c=3, m=1), and dividing by c inside the fractional
part instead of multiplying by an integer inverse collapses the value to
the constant (c-1)/2, whose refined sum picks up a factor p.

Cylinder (locally constant) functions are total value tables at a level;
applying the measure to one is a finite sum, and refining the level does
not change the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import LevelOrder, NotCoprime
from .modarith import Residue, is_prime, partition_range
from .padic import DEFAULT_RELPREC, PadicNum, rational_valuation

__all__ = [
    "BernoulliParams",
    "ClopenSet",
    "CylinderFunction",
    "char_fn",
    "cylinder_decompose",
    "equi_class",
    "bernoulli_distribution",
    "bernoulli_distribution_div_by_c",
    "distribution_refine_sum",
    "measure_apply",
    "extend_by_zero",
    "units_cylinder",
    "norm_bound_check",
]


@dataclass(frozen=True)
class BernoulliParams:
    """The data (p, d, c): odd prime, tame level, and auxiliary integer."""

    p: int
    d: int
    c: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValueError("p must be an odd prime")
        if self.d < 1:
            raise ValueError("d must be a positive integer")
        if math.gcd(self.d, self.p) != 1:
            raise NotCoprime(f"gcd(d={self.d}, p={self.p}) != 1")
        if self.c < 2:
            raise ValueError("c must be >= 2")
        if math.gcd(self.c, self.d * self.p) != 1:
            raise NotCoprime(f"gcd(c={self.c}, dp={self.d * self.p}) != 1")


@dataclass(frozen=True)
class ClopenSet:
    """The basic clopen set at level n: the fiber over base in Z/(d*p^n)Z."""

    d: int
    p: int
    level: int
    base: Residue

    def __post_init__(self):
        if self.base.modulus != self.d * self.p**self.level:
            raise ValueError(
                f"base modulus {self.base.modulus} != {self.d}*{self.p}^{self.level}"
            )


class CylinderFunction:
    """A locally constant function given by a total value table at a level."""

    def __init__(self, d: int, p: int, level: int, values: dict):
        self.d = d
        self.p = p
        self.level = level
        size = d * p**level
        self.values = {}
        for a in range(size):
            if a not in values:
                raise ValueError(f"value table is missing residue {a} mod {size}")
            self.values[a] = values[a]

    @property
    def modulus(self) -> int:
        return self.d * self.p**self.level

    def refine_level(self, level: int) -> "CylinderFunction":
        """Represent the same function on the finer quotient at `level`."""
        if level < self.level:
            raise LevelOrder(f"cannot refine from level {self.level} down to {level}")
        size = self.d * self.p**level
        vals = {b: self.values[b % self.modulus] for b in range(size)}
        return CylinderFunction(self.d, self.p, level, vals)

    def __add__(self, other: "CylinderFunction") -> "CylinderFunction":
        if (self.d, self.p) != (other.d, other.p):
            raise ValueError("cylinder functions live on different spaces")
        lev = max(self.level, other.level)
        f, g = self.refine_level(lev), other.refine_level(lev)
        return CylinderFunction(
            self.d, self.p, lev, {a: f.values[a] + g.values[a] for a in f.values}
        )

    def scale(self, coeff: PadicNum) -> "CylinderFunction":
        return CylinderFunction(
            self.d, self.p, self.level, {a: coeff * v for a, v in self.values.items()}
        )

    def sup_norm(self) -> Fraction:
        """Sup of the p-adic norms of the table entries (exact rational)."""
        return max(v.norm() for v in self.values.values())

    def __repr__(self):
        return f"CylinderFunction(d={self.d}, p={self.p}, level={self.level})"


def char_fn(clopen: ClopenSet, relprec: int = DEFAULT_RELPREC) -> CylinderFunction:
    """Characteristic function of a basic clopen set: 1 on it, 0 elsewhere."""
    p = clopen.p
    one = PadicNum.one(p, relprec)
    zero = PadicNum.exact_zero(p)
    size = clopen.d * p**clopen.level
    return CylinderFunction(
        clopen.d, p, clopen.level,
        {a: (one if a == clopen.base.value else zero) for a in range(size)},
    )


def cylinder_decompose(f: CylinderFunction):
    """Write f as sum of f(a) * char_fn(U_a) over the level's clopen basis."""
    mod = f.modulus
    return [
        (f.values[a], ClopenSet(f.d, f.p, f.level, Residue(mod, a)))
        for a in range(mod)
    ]


def equi_class(d: int, p: int, n: int, m: int, a: Residue) -> list[Residue]:
    """Residues mod d*p^m reducing to a mod d*p^n (an arithmetic progression)."""
    if m < n:
        raise LevelOrder(f"target level {m} is below source level {n}")
    if a.modulus != d * p**n:
        raise ValueError(f"residue has modulus {a.modulus}, expected {d * p**n}")
    step = d * p**n
    mod = d * p**m
    return [Residue(mod, a.value + t * step) for t in range(p ** (m - n))]


def _fract(x: Fraction) -> Fraction:
    return x - math.floor(x)


def bernoulli_distribution(params: BernoulliParams, n: int, a) -> Fraction:
    """E_c(n, a) as an exact rational (integer-inverse form, D = d*p^n)."""
    p, d, c = params.p, params.d, params.c
    D = d * p**n
    A = a.value if isinstance(a, Residue) else int(a) % D
    if D == 1:
        return Fraction(c - 1, 2)
    cinv = pow(c, -1, D)
    return (
        _fract(Fraction(A, D))
        - c * _fract(Fraction((cinv * A) % D, D))
        + Fraction(c - 1, 2)
    )


def bernoulli_distribution_div_by_c(params: BernoulliParams, n: int, a) -> Fraction:
    """Diagnostic variant dividing by c inside the fractional part.

    Violates distribution compatibility (the value collapses to the
    constant (c-1)/2, so the refined sum picks up a factor p); kept only
    to document that the integer-inverse form above is the right reading.
    """
    p, d, c = params.p, params.d, params.c
    D = d * p**n
    A = a.value if isinstance(a, Residue) else int(a) % D
    return (
        _fract(Fraction(A, D))
        - c * _fract(Fraction(A, c * D))
        + Fraction(c - 1, 2)
    )


def distribution_refine_sum(params: BernoulliParams, m: int, x,
                            dist=bernoulli_distribution) -> Fraction:
    """Sum of level-(m+1) measure values over the p lifts of x.

    Equals dist(params, m, x) exactly for the genuine distribution.
    """
    d, p = params.d, params.p
    if not isinstance(x, Residue):
        x = Residue(d * p**m, int(x) % (d * p**m))
    return sum(
        (dist(params, m + 1, y) for y in equi_class(d, p, m, m + 1, x)),
        Fraction(0),
    )


def measure_apply(params: BernoulliParams, f: CylinderFunction,
                  relprec: int = DEFAULT_RELPREC) -> PadicNum:
    """Integrate a cylinder function: sum of f(a) * E_c(level, a) over the level.

    Refining f first gives the identical value (eventual constancy of the
    level sums), which is what makes the measure well defined.
    """
    if (f.d, f.p) != (params.d, params.p):
        raise ValueError("cylinder function does not match the measure parameters")
    p = params.p
    acc = PadicNum.exact_zero(p)
    for a, v in f.values.items():
        if v.is_exact_zero():
            continue
        w = PadicNum.from_rational(p, bernoulli_distribution(params, f.level, a), relprec)
        acc = acc + v * w
    return acc


def units_cylinder(d: int, p: int, level: int, unit_values: dict) -> CylinderFunction:
    """Build a total table from values given on the units, zero elsewhere."""
    zero = PadicNum.exact_zero(p)
    units, nonunits = partition_range(d, p, level)
    vals = {a: unit_values[a] for a in units}
    vals.update({a: zero for a in nonunits})
    return CylinderFunction(d, p, level, vals)


def extend_by_zero(f: CylinderFunction) -> CylinderFunction:
    """Keep f on the units of the space, exact zero off them."""
    units, nonunits = partition_range(f.d, f.p, f.level)
    zero = PadicNum.exact_zero(f.p)
    vals = {a: f.values[a] for a in units}
    vals.update({a: zero for a in nonunits})
    return CylinderFunction(f.d, f.p, f.level, vals)


def norm_bound_check(params: BernoulliParams, f: CylinderFunction,
                     relprec: int = DEFAULT_RELPREC):
    """Check the measure bound ||E_c(f)|| <= K * ||f||.

    K = 1 + ||c|| + ||(c-1)/2|| with exact rational p-adic norms.
    Returns (lhs, rhs, ok).
    """
    p = params.p

    def pnorm(q) -> Fraction:
        v = rational_valuation(p, q)
        if v == math.inf:
            return Fraction(0)
        return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))

    lhs = measure_apply(params, f, relprec).norm()
    K = 1 + pnorm(params.c) + pnorm(Fraction(params.c - 1, 2))
    rhs = K * f.sup_norm()
    return lhs, rhs, lhs <= rhs
