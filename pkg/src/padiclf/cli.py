"""Command-line front end.

stdout carries exactly one JSON document per invocation; anything
human-oriented goes to stderr.  Exit codes: 0 success or verification
pass, 1 verification failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction

from . import suite as suite_mod
from .bernoulli import bernoulli, bernoulli_poly
from .dirichlet import parse_character_spec
from .errors import PadicLFError
from .genbernoulli import general_bernoulli, general_bernoulli_exact
from .lfunction import LpParams, Weight, p_adic_L, verify_interpolation
from .measure import (
    BernoulliParams,
    bernoulli_distribution,
    distribution_refine_sum,
    norm_bound_check,
)
from .modarith import is_prime
from .suite import random_cylinder

USAGE_ERROR = 2


def _emit(obj) -> None:
    json.dump(obj, sys.stdout)
    sys.stdout.write("\n")


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _require_odd_prime(p: int) -> None:
    if not is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="padiclf",
        description="Exact p-adic L-values from Bernoulli-measure Riemann sums.",
    )
    top.add_argument("--prec", type=int, default=8, help="working relative precision")
    top.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    top.add_argument("--json", action="store_true", help="reserved; output is always JSON")
    sub = top.add_subparsers(dest="command", required=True)

    q = sub.add_parser("bernoulli", help="exact Bernoulli number and polynomial")
    q.add_argument("--n", type=int, required=True)

    g = sub.add_parser("genbernoulli", help="generalized Bernoulli number")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--char", required=True, help='"triv" | "omega^<k>" | "table:<path>"')
    g.add_argument("--n", type=int, required=True)

    ci = sub.add_parser("char-info", help="level, conductor, parity of a character")
    ci.add_argument("--p", type=int, required=True)
    ci.add_argument("--char", required=True)

    mc = sub.add_parser("measure-check", help="distribution and boundedness sweeps")
    mc.add_argument("--p", type=int, required=True)
    mc.add_argument("--d", type=int, required=True)
    mc.add_argument("--c", type=int, required=True)
    mc.add_argument("--max-level", type=int, default=3)

    lp = sub.add_parser("lp-eval", help="evaluate the p-adic L-function at a weight")
    for name, req, default in (("--p", True, None), ("--d", True, None),
                               ("--m", True, None), ("--c", True, None),
                               ("--weight-k", True, None), ("--jmax", False, 7),
                               ("--jmin", False, None), ("--target", False, 4)):
        lp.add_argument(name, type=int, required=req, default=default)
    lp.add_argument("--char", required=True)
    lp.add_argument("--prec", type=int, dest="prec_override", default=None,
                    help="override the global precision")

    vf = sub.add_parser("verify", help="check interpolation at a negative integer")
    for name, req, default in (("--p", True, None), ("--d", True, None),
                               ("--m", True, None), ("--c", True, None),
                               ("--n", True, None), ("--jmax", False, 7),
                               ("--jmin", False, None), ("--target", False, 4)):
        vf.add_argument(name, type=int, required=req, default=default)
    vf.add_argument("--char", required=True)
    vf.add_argument("--prec", type=int, dest="prec_override", default=None)

    st = sub.add_parser("suite", help="run the bundled verification suite")
    st.add_argument("--profile", choices=("fast", "full"), default="fast")
    return top


def _make_lp_params(args, prec: int) -> LpParams:
    _require_odd_prime(args.p)
    if math.gcd(args.d, args.p) != 1:
        raise ValueError("d must be coprime to p")
    if args.m < 1:
        raise ValueError("m must be >= 1")
    level = args.d * args.p**args.m
    chi = parse_character_spec(args.char, args.p, level=level, relprec=prec)
    if level % chi.level:
        raise ValueError(
            f"character level {chi.level} does not divide d*p^m = {level}"
        )
    chi = chi.change_level(level)
    if not chi.is_even():
        raise ValueError("chi must be even for the interpolation machinery")
    j_min = args.jmin if args.jmin is not None else args.m
    return LpParams(p=args.p, d=args.d, c=args.c, m=args.m, chi=chi,
                    relprec=prec, j_min=j_min, j_max=args.jmax,
                    target_valuation=args.target)


def _cmd_bernoulli(args) -> int:
    if args.n < 0:
        raise ValueError("n must be >= 0")
    poly = bernoulli_poly(args.n)
    _emit({
        "n": args.n,
        "value": _frac_str(bernoulli(args.n)),
        "poly": [_frac_str(c) for c in poly.coeffs],
    })
    return 0


def _cmd_genbernoulli(args, prec: int) -> int:
    _require_odd_prime(args.p)
    if args.n < 0:
        raise ValueError("n must be >= 0")
    chi = parse_character_spec(args.char, args.p, relprec=prec)
    value = general_bernoulli(chi, args.n, prec)
    exact = general_bernoulli_exact(chi, args.n)
    _emit({
        "p": args.p,
        "char": args.char,
        "n": args.n,
        "value": value.to_json(),
        "exact": _frac_str(exact) if exact is not None else None,
    })
    return 0


def _cmd_char_info(args, prec: int) -> int:
    _require_odd_prime(args.p)
    chi = parse_character_spec(args.char, args.p, relprec=prec)
    _emit({
        "p": chi.p,
        "level": chi.level,
        "conductor": chi.conductor(),
        "is_primitive": chi.is_primitive(),
        "parity": chi.parity(),
        "order": chi.order(),
        "table": chi.to_json()["entries"],
    })
    return 0


def _cmd_measure_check(args, prec: int, seed: int) -> int:
    params = BernoulliParams(args.p, args.d, args.c)
    counterexamples = []
    for m in range(args.max_level + 1):
        for x in range(args.d * args.p**m):
            coarse = bernoulli_distribution(params, m, x)
            fine = distribution_refine_sum(params, m, x)
            if coarse != fine:
                counterexamples.append({
                    "kind": "compatibility", "level": m, "x": x,
                    "coarse": _frac_str(coarse), "refined_sum": _frac_str(fine),
                })
    rng = random.Random(seed)
    for i in range(100):
        f = random_cylinder(rng, args.p, args.d,
                            rng.randint(0, min(args.max_level, 3)), prec)
        lhs, rhs, ok = norm_bound_check(params, f, prec)
        if not ok:
            counterexamples.append({
                "kind": "boundedness", "sample": i,
                "lhs": _frac_str(lhs), "rhs": _frac_str(rhs),
            })
    _emit({
        "p": args.p, "d": args.d, "c": args.c, "max_level": args.max_level,
        "pass": not counterexamples,
        "counterexamples": counterexamples,
    })
    return 0 if not counterexamples else 1


def _cmd_lp_eval(args, prec: int) -> int:
    params = _make_lp_params(args, prec)
    if args.weight_k < 0:
        raise ValueError("weight exponent must be >= 0")
    report = p_adic_L(params, Weight(args.weight_k))
    _emit(report.to_json())
    return 0


def _cmd_verify(args, prec: int) -> int:
    params = _make_lp_params(args, prec)
    report = verify_interpolation(params, args.n)
    _emit(report.to_json())
    return 0 if report.passed else 1


def _cmd_suite(args, seed: int) -> int:
    results = suite_mod.run_profile(args.profile, seed)
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] criterion {r.number}: {r.name}",
              file=sys.stderr)
    _emit({
        "profile": args.profile,
        "seed": seed,
        "pass": all(r.passed for r in results),
        "results": [r.to_json() for r in results],
    })
    return 0 if all(r.passed for r in results) else 1


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    prec = getattr(args, "prec_override", None)
    if prec is None:
        prec = args.prec
    if prec < 1:
        print("error: --prec must be >= 1", file=sys.stderr)
        return USAGE_ERROR
    seed = args.seed
    try:
        if args.command == "bernoulli":
            return _cmd_bernoulli(args)
        if args.command == "genbernoulli":
            return _cmd_genbernoulli(args, prec)
        if args.command == "char-info":
            return _cmd_char_info(args, prec)
        if args.command == "measure-check":
            return _cmd_measure_check(args, prec, seed)
        if args.command == "lp-eval":
            return _cmd_lp_eval(args, prec)
        if args.command == "verify":
            return _cmd_verify(args, prec)
        if args.command == "suite":
            return _cmd_suite(args, seed)
        raise ValueError(f"unknown command {args.command!r}")
    except (PadicLFError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
