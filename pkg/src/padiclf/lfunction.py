"""The p-adic L-function as a Riemann-sum integral against the Bernoulli measure.

For an even character chi of level d*p^m (m >= 1, d dividing the
conductor) the integrand over the unit space is chi omega^(-1)(a) times
the integer-power weight <a>^k, where <a> = omega^(-1)(a) * a is the
principal-unit part of a.  The level-j Riemann sum is

    S_j = sum over units a mod d*p^j of integrand(a) * E_c(j, a)

and the L-value is the stabilizing limit of the S_j.  Its interpolation
property at negative integers is checked against the closed form

    (1/n) * (1 - chi(c) <c>^n) * (1 - chi omega^(-n)(p) p^(n-1))
         * B_(n, chi omega^(-n))

computed through the generalized Bernoulli module; the weight on the
integral side is <a>^(n-1) while the absorbed c-factor uses exponent n,
an off-by-one that is mirrored deliberately.  Because sign conventions
for the measure differ across the classical literature, the verifier
measures both nu(L - R) and nu(L + R), accepts exactly one of them, and
the bundled suite insists on a single sign across all cases.

Convergence policy: the sum at level j+1 is compared with level j.  An
increment that cancels at its full tracked precision (the locally
constant case stabilizes this way) ends the iteration at once; otherwise
two consecutive increments of valuation >= the target are required,
since a single small increment can alias in an ultrametric sum.  Both
paths also require the level floor j >= m + 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .dirichlet import DirichletCharacter, teichmuller_int
from .errors import InsufficientPrecision, LevelTooLow, NotCoprime
from .genbernoulli import chi_omega_minus_k, general_bernoulli, level_decompose
from .measure import BernoulliParams
from .modarith import UnitResidue, is_prime
from .padic import PadicNum

__all__ = [
    "Weight",
    "LpParams",
    "EvalReport",
    "VerifyReport",
    "principal_unit_power",
    "weight_eval",
    "integrand_eval",
    "riemann_sum",
    "p_adic_L",
    "special_value_closed_form",
    "verify_interpolation",
]


@dataclass(frozen=True)
class Weight:
    """The weight a -> <a>^k on p-adic units (trivial on the tame part)."""

    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("weight exponent must be >= 0")


@dataclass
class LpParams:
    """Everything an L-value evaluation needs, validated up front."""

    p: int
    d: int
    c: int
    m: int
    chi: DirichletCharacter
    relprec: int = 8
    j_min: int = 1
    j_max: int = 7
    target_valuation: int = 4

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValueError("p must be an odd prime")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if math.gcd(self.d, self.p) != 1:
            raise NotCoprime(f"gcd(d={self.d}, p={self.p}) != 1")
        if self.c < 2 or math.gcd(self.c, self.d * self.p) != 1:
            raise NotCoprime(f"c={self.c} must be >= 2 and coprime to dp")
        if self.chi.p != self.p:
            raise ValueError("character lives over a different prime")
        if self.chi.level != self.d * self.p**self.m:
            raise ValueError(
                f"character level {self.chi.level} != d*p^m = {self.d * self.p ** self.m}"
            )
        if not self.chi.is_even():
            raise ValueError("chi must be even")
        if self.chi.conductor() % self.d:
            raise ValueError("d must divide the conductor of chi")
        if self.j_max < self.m:
            raise ValueError(f"j_max={self.j_max} is below the character level m={self.m}")
        self._chi_omega_inv = None

    @property
    def bernoulli_params(self) -> BernoulliParams:
        return BernoulliParams(self.p, self.d, self.c)

    @property
    def chi_omega_inv(self) -> DirichletCharacter:
        """The primitive character attached to chi * omega^(-1), cached."""
        if self._chi_omega_inv is None:
            self._chi_omega_inv = chi_omega_minus_k(self.chi, 1)
        return self._chi_omega_inv


@dataclass
class EvalReport:
    """Outcome of an L-value iteration."""

    value: PadicNum
    level_used: int
    converged: bool
    tail_valuation: int | None

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "level_used": self.level_used,
            "converged": self.converged,
            "tail_valuation": self.tail_valuation,
        }


@dataclass
class VerifyReport:
    """Outcome of one interpolation check at a negative integer."""

    lhs: PadicNum
    rhs: PadicNum
    sign: str | None
    valuation_of_difference: int | None
    passed: bool
    converged: bool = True
    level_used: int | None = None
    valuation_minus: int | None = field(default=None, repr=False)
    valuation_plus: int | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "sign": self.sign,
            "valuation_of_difference": self.valuation_of_difference,
            "pass": self.passed,
        }


def principal_unit_power(p: int, lift: int, k: int, relprec: int) -> PadicNum:
    """<lift>^k = (omega^(-1)(lift) * lift)^k for an integer lift coprime to p."""
    if math.gcd(lift, p) != 1:
        raise NotCoprime(f"{lift} is not a p-adic unit for p={p}")
    P = p**relprec
    t = teichmuller_int(p, lift % p, relprec)
    base = lift * pow(t, -1, P) % P
    return PadicNum.from_unit(p, 0, pow(base, k, P), relprec)


def weight_eval(p: int, w: Weight, a: UnitResidue, relprec: int) -> PadicNum:
    """Evaluate <a>^k at the least representative of a unit residue mod d*p^j.

    The result lies in 1 + pZ_p, so it is 1 whenever k = 0.
    """
    return principal_unit_power(p, a.value, w.k, relprec)


def integrand_eval(params: LpParams, w: Weight, a: UnitResidue) -> PadicNum:
    """chi omega^(-1)(a) * <a>^k at a unit a mod d*p^j, j >= m."""
    p = params.p
    d, j = level_decompose(a.modulus, p)
    if d != params.d or j < params.m:
        raise LevelTooLow(
            f"unit modulus {a.modulus} is not d*p^j with j >= m={params.m}"
        )
    psi = params.chi_omega_inv
    chi_val = psi.asso_eval(a.value % psi.level, params.relprec)
    return chi_val * principal_unit_power(p, a.value, w.k, params.relprec)


def riemann_sum(params: LpParams, w: Weight, j: int) -> PadicNum:
    """The level-j sum of integrand(a) * E_c(j, a) over units a mod d*p^j.

    Every term is p-integral (E_c lands in Z + (c-1)/2 and the integrand
    is a unit times a root of unity), so the sum is accumulated as a
    single integer mod p^relprec; the result is exact at that absolute
    precision.
    """
    if j < params.m:
        raise LevelTooLow(f"integration level {j} is below the character level {params.m}")
    p, d, c, N = params.p, params.d, params.c, params.relprec
    P = p**N
    psi = params.chi_omega_inv
    q = psi.level
    psi_label = psi.labels
    omega_of = {t: teichmuller_int(p, t, N) for t in set(psi_label.values())}
    teich_inv = {
        r: pow(teichmuller_int(p, r, N), -1, P) for r in range(1, p)
    }
    D = d * p**j
    cinv = pow(c, -1, D)
    inv2 = pow(2, -1, P)
    dp = d * p
    k = w.k
    total = 0
    for a in range(d * p**j):
        if math.gcd(a, dp) != 1:
            continue
        chi_u = omega_of[psi_label[a % q]]
        wt_u = pow(a * teich_inv[a % p] % P, k, P)
        # E_c(j, a) = I + (c-1)/2 with I an exact integer
        big_i = (a - c * ((cinv * a) % D)) // D
        e_u = (2 * big_i + c - 1) * inv2 % P
        total = (total + chi_u * wt_u % P * e_u) % P
    return PadicNum.from_int_mod(p, total, N)


def p_adic_L(params: LpParams, w: Weight) -> EvalReport:
    """Iterate the Riemann sums until they stabilize (see module docstring)."""
    T = params.target_valuation
    if params.relprec < T + 1:
        raise InsufficientPrecision(
            f"relprec={params.relprec} cannot certify increments of valuation {T}"
        )
    start = max(params.j_min, params.m)
    if start > params.j_max:
        raise ValueError(f"empty level range: start {start} > j_max {params.j_max}")
    floor = params.m + 1
    prev = None
    prev_inc_ok = False
    value = None
    level_used = start
    tail = None
    converged = False
    for j in range(start, params.j_max + 1):
        s = riemann_sum(params, w, j)
        if prev is not None:
            inc = s - prev
            if inc.is_exact_zero():
                tail = None
                stabilized = True
                inc_ok = True
            else:
                tail = inc.valuation()
                stabilized = inc.is_zero_at_precision() and tail >= T
                inc_ok = tail >= T
            if j >= floor and (stabilized or (inc_ok and prev_inc_ok)):
                value, level_used, converged = s, j, True
                break
            prev_inc_ok = inc_ok
        prev = s
        value, level_used = s, j
    return EvalReport(value=value, level_used=level_used, converged=converged,
                      tail_valuation=tail)


def special_value_closed_form(params: LpParams, n: int,
                              relprec: int | None = None) -> PadicNum:
    """The closed-form target at the weight-(n-1) evaluation, n >= 1:

    (1/n)(1 - chi(c) <c>^n)(1 - chi omega^(-n)(p) p^(n-1)) B_(n, chi omega^(-n)).

    The Euler-type factor at p uses the extension by zero, so it
    degenerates to 1 when p divides the twisted conductor.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    N = relprec if relprec is not None else params.relprec
    p, c = params.p, params.c
    chi = params.chi
    psi = chi_omega_minus_k(chi, n)
    one = PadicNum.one(p, N)
    c_factor = one - chi.value(c % chi.level, N) * principal_unit_power(p, c, n, N)
    p_factor = one - psi.asso_eval(p % psi.level, N) * PadicNum.from_rational(
        p, p ** (n - 1), N
    )
    return (
        PadicNum.from_rational(p, Fraction(1, n), N)
        * c_factor
        * p_factor
        * general_bernoulli(psi, n, N)
    )


def _certified_valuation(diff: PadicNum, threshold: int):
    """(valuation lower bound, certified >= threshold) for a difference."""
    if diff.is_exact_zero():
        return None, True
    v = diff.valuation()
    return v, v >= threshold


def verify_interpolation(params: LpParams, n: int,
                         threshold: int | None = None) -> VerifyReport:
    """Compare the integral at weight n-1 with the closed form at n (n >= 2).

    Exactly one of L - R, L + R must reach the threshold valuation; the
    winning sign is reported so a caller can pin it across a whole suite.
    A non-converged integral propagates as a failed report.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    T = threshold if threshold is not None else params.target_valuation
    report = p_adic_L(params, Weight(n - 1))
    rhs = special_value_closed_form(params, n)
    if not report.converged:
        return VerifyReport(
            lhs=report.value, rhs=rhs, sign=None, valuation_of_difference=None,
            passed=False, converged=False, level_used=report.level_used,
        )
    lhs = report.value
    v_minus, ok_minus = _certified_valuation(lhs - rhs, T)
    v_plus, ok_plus = _certified_valuation(lhs + rhs, T)
    if ok_minus == ok_plus:
        sign, vdiff, passed = None, None, False
    elif ok_minus:
        sign, vdiff, passed = "+", v_minus, True
    else:
        sign, vdiff, passed = "-", v_plus, True
    return VerifyReport(
        lhs=lhs, rhs=rhs, sign=sign, valuation_of_difference=vdiff,
        passed=passed, converged=True, level_used=report.level_used,
        valuation_minus=v_minus, valuation_plus=v_plus,
    )
