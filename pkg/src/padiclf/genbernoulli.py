"""Generalized Bernoulli numbers B_(m,chi) and their finite-level limit checks.

For a character chi with associated primitive character chi0 of
conductor f and any positive multiple F of f,

    B_(m,chi) = F^(m-1) * sum_{a=1}^{F} chi0(a mod f) * B_m(a / F)

independently of F (the conductor-f extension by zero of chi0 is used
inside the sum, so terms at gcd(a, f) > 1 vanish).  The sum is exposed
both as an exact rational coefficient vector keyed by the mod-p value
labels, and embedded into Q_p.

The finite-level checks: the truncated twisted power mean

    (1/(d p^j)) * sum_{a < d p^j, gcd(a, dp) = 1} chi omega^(-k)(a) * a^k

approaches (1 - chi omega^(-k)(p) p^(k-1)) * B_(k, chi omega^(-k)) as j
grows, and the bare unit power sum with exponent k - 1 approaches 0;
both are computed at a given level so valuation growth can be observed.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .bernoulli import bernoulli_poly_eval
from .dirichlet import DirichletCharacter, char_power, make_teich_char, teichmuller_int
from .errors import NotMultipleOfConductor
from .padic import PadicNum

__all__ = [
    "omega_inverse_exponent",
    "chi_omega_minus_k",
    "general_bernoulli_coeffs",
    "general_bernoulli",
    "general_bernoulli_via_multiple",
    "general_bernoulli_exact",
    "twisted_mean_truncation",
    "twisted_mean_limit",
    "unit_power_sum",
    "level_decompose",
]


def level_decompose(level: int, p: int) -> tuple[int, int]:
    """Write level = d * p^m with gcd(d, p) = 1; returns (d, m)."""
    m = 0
    while level % p == 0:
        level //= p
        m += 1
    return level, m


def omega_inverse_exponent(p: int, k: int) -> int:
    """The exponent e with omega^(-k) = omega^e, using omega's order p - 1."""
    return (p - 1 - (k % (p - 1))) % (p - 1)


def chi_omega_minus_k(chi: DirichletCharacter, k: int) -> DirichletCharacter:
    """The primitive character attached to chi * omega^(-k)."""
    p = chi.p
    om = char_power(make_teich_char(p, chi.relprec), omega_inverse_exponent(p, k))
    return chi * om


def general_bernoulli_coeffs(chi: DirichletCharacter, m: int, F: int | None = None) -> dict:
    """Exact rational coefficients of B_(m,chi) grouped by value label.

    Returns {t: c_t} with B_(m,chi) = sum_t omega(t) * c_t, where
    c_t = F^(m-1) * sum of B_m(a/F) over 1 <= a <= F whose primitive
    character value has label t.  Zero coefficients are dropped, so the
    dict is independent of the multiple F chosen.
    """
    chi0 = chi.associated_primitive()
    f = chi0.level
    if F is None:
        F = f
    if F < 1 or F % f:
        raise NotMultipleOfConductor(f"{F} is not a positive multiple of the conductor {f}")
    coeffs: dict[int, Fraction] = {}
    for a in range(1, F + 1):
        r = a % f
        if f > 1 and math.gcd(r, f) != 1:
            continue
        t = chi0.label(r)
        coeffs[t] = coeffs.get(t, Fraction(0)) + bernoulli_poly_eval(m, Fraction(a, F))
    scale = Fraction(F) ** (m - 1)
    return {t: scale * c for t, c in coeffs.items() if c != 0}


def _embed_label_sum(p: int, coeffs: dict, relprec: int) -> PadicNum:
    """Embed sum_t c_t * omega(t) keeping the full relative precision.

    Denominators are cleared first so the roots of unity are combined in
    one integer window; a term-by-term embedding would shed a digit for
    every power of p in a coefficient denominator.
    """
    if not coeffs:
        return PadicNum.exact_zero(p)
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    vden = 0
    odd_part = den
    while odd_part % p == 0:
        odd_part //= p
        vden += 1
    window = relprec + vden
    mod = p**window
    total = 0
    for t, c in sorted(coeffs.items()):
        total = (total + int(c * den) * teichmuller_int(p, t, window)) % mod
    s = PadicNum.from_int_mod(p, total, window)
    return s * PadicNum.from_rational(p, Fraction(1, den), window)


def general_bernoulli(chi: DirichletCharacter, m: int,
                      relprec: int | None = None) -> PadicNum:
    """B_(m,chi) as a p-adic number (conductor-length sum)."""
    n = relprec if relprec is not None else chi.relprec
    return _embed_label_sum(chi.p, general_bernoulli_coeffs(chi, m), n)


def general_bernoulli_via_multiple(chi: DirichletCharacter, m: int, F: int,
                                   relprec: int | None = None) -> PadicNum:
    """B_(m,chi) computed over a multiple F of the conductor; equal to
    general_bernoulli(chi, m) exactly."""
    n = relprec if relprec is not None else chi.relprec
    return _embed_label_sum(chi.p, general_bernoulli_coeffs(chi, m, F), n)


def general_bernoulli_exact(chi: DirichletCharacter, m: int,
                            F: int | None = None):
    """B_(m,chi) as an exact Fraction when all values are +-1, else None."""
    coeffs = general_bernoulli_coeffs(chi, m, F)
    p = chi.p
    acc = Fraction(0)
    for t, c in coeffs.items():
        if t % p == 1:
            acc += c
        elif t % p == p - 1:
            acc -= c
        else:
            return None
    return acc


def _twist_preconditions(chi: DirichletCharacter, k: int, j: int):
    p = chi.p
    d, m = level_decompose(chi.level, p)
    if m < 1:
        raise ValueError(f"character level {chi.level} is not divisible by p={p}")
    if not chi.is_even():
        raise ValueError("an even character is required")
    if k < 1:
        raise ValueError("the twist exponent k must be >= 1")
    if j < 1:
        raise ValueError("the level j must be >= 1")
    return d, m


def _twisted_unit_sum(chi: DirichletCharacter, k: int, j: int, exponent: int,
                      relprec: int) -> PadicNum:
    """sum over units a of d*p^j of chi omega^(-k)(a) * a^exponent, mod p^relprec."""
    p = chi.p
    d, _ = level_decompose(chi.level, p)
    psi = chi_omega_minus_k(chi, k)
    q = psi.level
    P = p**relprec
    labels = psi.labels
    omega_of = {t: teichmuller_int(p, t, relprec) for t in set(labels.values())}
    dp = d * p
    total = 0
    for a in range(d * p**j):
        if math.gcd(a, dp) != 1:
            continue
        total += omega_of[labels[a % q]] * pow(a, exponent, P)
    return PadicNum.from_int_mod(p, total, relprec)


def twisted_mean_truncation(chi: DirichletCharacter, k: int, j: int,
                            relprec: int | None = None) -> PadicNum:
    """The level-j mean (1/(d p^j)) * sum_{units a < d p^j} chi omega^(-k)(a) a^k.

    The 1/(d p^j) factor costs j digits of absolute precision, so callers
    should supply relprec at least j plus the valuation they intend to
    resolve.
    """
    n = relprec if relprec is not None else chi.relprec
    p = chi.p
    d, _ = _twist_preconditions(chi, k, j)
    s = _twisted_unit_sum(chi, k, j, k, n)
    return s * PadicNum.from_rational(p, Fraction(1, d * p**j), n)


def twisted_mean_limit(chi: DirichletCharacter, k: int,
                       relprec: int | None = None) -> PadicNum:
    """The limit target (1 - chi omega^(-k)(p) p^(k-1)) * B_(k, chi omega^(-k))."""
    n = relprec if relprec is not None else chi.relprec
    p = chi.p
    _twist_preconditions(chi, k, 1)
    psi = chi_omega_minus_k(chi, k)
    euler = PadicNum.one(p, n) - psi.asso_eval(p % psi.level, n) * PadicNum.from_rational(
        p, p ** (k - 1), n
    )
    return euler * general_bernoulli(psi, k, n)


def unit_power_sum(chi: DirichletCharacter, k: int, j: int,
                   relprec: int | None = None) -> PadicNum:
    """sum over units a of d*p^j of chi omega^(-k)(a) * a^(k-1); tends to 0 in j.

    Odd k makes chi omega^(-k) odd (for even chi) and is rejected.
    """
    n = relprec if relprec is not None else chi.relprec
    _twist_preconditions(chi, k, j)
    if k % 2:
        raise ValueError("k must be even (parity mismatch otherwise)")
    return _twisted_unit_sum(chi, k, j, k - 1, n)
