"""Exact rational Bernoulli numbers and Bernoulli polynomials.

Two sign conventions coexist classically; both are provided.
bernoulli_prime gives B'_n with B'_1 = +1/2 through the recurrence

    B'_n = 1 - sum_{k=0}^{n-1} C(n, k) * B'_k / (n - k + 1)

and bernoulli gives B_n = (-1)^n * B'_n, matching the generating
function t / (e^t - 1), so B_1 = -1/2.  The polynomials are

    B_n(X) = sum_{i=0}^{n} C(n, i) * B_i * X^(n-i).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

__all__ = [
    "bernoulli_prime",
    "bernoulli",
    "RationalPolynomial",
    "bernoulli_poly",
    "bernoulli_poly_eval",
    "warm_cache",
]

_BPRIME = [Fraction(1)]  # B'_0, extended on demand


def warm_cache(bound: int = 64) -> None:
    """Precompute B'_n for n <= bound (they are reused heavily downstream)."""
    bernoulli_prime(bound)


def bernoulli_prime(n: int) -> Fraction:
    """B'_n (convention B'_1 = +1/2), exact and memoized."""
    if n < 0:
        raise ValueError("n must be >= 0")
    while len(_BPRIME) <= n:
        m = len(_BPRIME)
        acc = Fraction(1)
        for k in range(m):
            acc -= comb(m, k) * _BPRIME[k] / (m - k + 1)
        _BPRIME.append(acc)
    return _BPRIME[n]


def bernoulli(n: int) -> Fraction:
    """B_n (convention B_1 = -1/2)."""
    return (-1) ** n * bernoulli_prime(n)


@dataclass(frozen=True)
class RationalPolynomial:
    """A polynomial with exact rational coefficients, coeffs[i] on X^i."""

    coeffs: tuple

    @staticmethod
    def make(cs) -> "RationalPolynomial":
        cs = [Fraction(c) for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        return RationalPolynomial(tuple(cs))

    @staticmethod
    def monomial(n: int, c=1) -> "RationalPolynomial":
        return RationalPolynomial.make([0] * n + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, q) -> Fraction:
        q = Fraction(q)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        cs = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            cs[i] += c
        for i, c in enumerate(other.coeffs):
            cs[i] += c
        return RationalPolynomial.make(cs)

    def scale(self, r) -> "RationalPolynomial":
        r = Fraction(r)
        return RationalPolynomial.make([r * c for c in self.coeffs])

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"({c})*X^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(parts)


_BPOLY: dict[int, RationalPolynomial] = {}


def bernoulli_poly(n: int) -> RationalPolynomial:
    """The degree-n Bernoulli polynomial B_n(X), monic with exact coefficients."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n not in _BPOLY:
        cs = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            cs[n - i] = comb(n, i) * bernoulli(i)
        _BPOLY[n] = RationalPolynomial.make(cs)
    return _BPOLY[n]


def bernoulli_poly_eval(n: int, q) -> Fraction:
    """Exact value of B_n at a rational point."""
    return bernoulli_poly(n).eval(q)
