import math
import random
from fractions import Fraction

import pytest

from padiclf.errors import LevelOrder, NotCoprime
from padiclf.measure import (
    BernoulliParams,
    ClopenSet,
    CylinderFunction,
    bernoulli_distribution,
    bernoulli_distribution_div_by_c,
    char_fn,
    cylinder_decompose,
    distribution_refine_sum,
    equi_class,
    extend_by_zero,
    measure_apply,
    norm_bound_check,
    units_cylinder,
)
from padiclf.modarith import Residue, partition_range
from padiclf.padic import PadicNum, eq_mod

P312 = BernoulliParams(3, 1, 2)


def random_cylinder(rng, p, d, level, relprec=8):
    vals = {}
    for a in range(d * p**level):
        if rng.random() < 0.15:
            vals[a] = PadicNum.exact_zero(p)
        else:
            vals[a] = PadicNum.from_rational(
                p, Fraction(rng.randint(-200, 200), rng.randint(1, 40)), relprec
            )
    return CylinderFunction(d, p, level, vals)


def tracked_equal(x, y):
    common = min(x.abs_precision, y.abs_precision)
    if common == math.inf:
        return x.is_exact_zero() and y.is_exact_zero()
    if not eq_mod(x, y, common):
        return False
    if x.is_nonzero() and y.is_nonzero():
        return x.valuation() == y.valuation()
    return True


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            BernoulliParams(4, 1, 3)
        with pytest.raises(ValueError):
            BernoulliParams(2, 1, 3)
        with pytest.raises(NotCoprime):
            BernoulliParams(5, 10, 3)
        with pytest.raises(NotCoprime):
            BernoulliParams(5, 2, 5)
        with pytest.raises(ValueError):
            BernoulliParams(5, 1, 1)


class TestDistribution:
    def test_examples(self):
        assert bernoulli_distribution(P312, 3, 0) == Fraction(1, 2)
        assert bernoulli_distribution(P312, 1, 1) == Fraction(-1, 2)
        assert bernoulli_distribution(P312, 2, 4) == Fraction(1, 2)

    def test_half_integrality(self):
        # E_c lands in Z + (c-1)/2, hence is p-integral for odd p
        for p, d, c in ((3, 1, 2), (5, 2, 3), (7, 1, 10)):
            params = BernoulliParams(p, d, c)
            for n in range(3):
                for x in range(d * p**n):
                    v = bernoulli_distribution(params, n, x)
                    assert (2 * v).denominator == 1
                    assert v.denominator % p != 0

    def test_refine_sum_example(self):
        assert distribution_refine_sum(P312, 1, 1) == Fraction(-1, 2)

    def test_refine_sum_exhaustive(self):
        for p in (3, 5):
            for d in (1, 2):
                if math.gcd(d, p) != 1:
                    continue
                for c in (2, 3):
                    if math.gcd(c, d * p) != 1:
                        continue
                    params = BernoulliParams(p, d, c)
                    for m in range(4):
                        for x in range(d * p**m):
                            assert distribution_refine_sum(params, m, x) == \
                                bernoulli_distribution(params, m, x)

    def test_division_variant_fails_compatibility(self):
        bad = distribution_refine_sum(P312, 1, 1,
                                      dist=bernoulli_distribution_div_by_c)
        good = bernoulli_distribution_div_by_c(P312, 1, 1)
        assert bad != good
        # the variant collapses to the constant (c-1)/2
        assert good == Fraction(1, 2) and bad == Fraction(3, 2)

    def test_shifted_denominator_fails_compatibility(self):
        # the one-level-down denominator reading is not a distribution
        params = BernoulliParams(5, 1, 3)

        def shifted(pr, n, a):
            D = pr.d * pr.p ** (n + 1)
            A = a.value if isinstance(a, Residue) else int(a) % (pr.d * pr.p**n)
            cinv = pow(pr.c, -1, D)
            return (Fraction(A, D) - pr.c * Fraction((cinv * A) % D, D)
                    + Fraction(pr.c - 1, 2))

        mismatches = [
            x for x in range(5)
            if distribution_refine_sum(params, 1, x, dist=shifted) != shifted(params, 1, x)
        ]
        assert mismatches


class TestEquiClass:
    def test_examples(self):
        assert [r.value for r in equi_class(1, 3, 1, 2, Residue(3, 1))] == [1, 4, 7]
        assert equi_class(1, 3, 2, 2, Residue(9, 5)) == [Residue(9, 5)]

    def test_partition(self):
        all_fine = []
        for a in range(9):
            all_fine += [r.value for r in equi_class(1, 3, 2, 3, Residue(9, a))]
        assert sorted(all_fine) == list(range(27))

    def test_level_order(self):
        with pytest.raises(LevelOrder):
            equi_class(1, 3, 2, 1, Residue(9, 0))


class TestCylinders:
    def test_char_fn_table(self):
        f = char_fn(ClopenSet(1, 3, 1, Residue(3, 0)), 8)
        assert f.values[0].unit == 1
        assert f.values[1].is_exact_zero() and f.values[2].is_exact_zero()

    def test_char_fn_level_zero_constant(self):
        f = char_fn(ClopenSet(1, 3, 0, Residue(1, 0)), 8)
        assert list(f.values) == [0] and f.values[0].unit == 1

    def test_refine_is_constant_on_fibers(self):
        f = char_fn(ClopenSet(1, 3, 1, Residue(3, 1)), 8)
        g = f.refine_level(2)
        ones = [b for b in range(9) if g.values[b].is_nonzero()]
        assert ones == [1, 4, 7]

    def test_total_table_required(self):
        with pytest.raises(ValueError, match="missing"):
            CylinderFunction(1, 3, 1, {0: PadicNum.one(3, 4)})

    def test_decompose_recombine_all_levels_up_to_two(self):
        rng = random.Random(7)
        for level in (0, 1, 2):
            for _ in range(5):
                f = random_cylinder(rng, 3, 1, level)
                acc = None
                for coeff, clopen in cylinder_decompose(f):
                    term = char_fn(clopen, 8).scale(coeff)
                    acc = term if acc is None else acc + term
                for a in range(3**level):
                    x, y = acc.values[a], f.values[a]
                    if y.is_exact_zero():
                        assert not x.is_nonzero()
                    else:
                        assert tracked_equal(x, y)

    def test_char_fn_decomposes_to_itself(self):
        U = ClopenSet(1, 5, 1, Residue(5, 2))
        pairs = [(c, cl) for c, cl in cylinder_decompose(char_fn(U, 8))
                 if c.is_nonzero()]
        assert len(pairs) == 1 and pairs[0][1] == U


class TestMeasureApply:
    def test_char_fn_gives_distribution_value(self):
        for a in range(3):
            f = char_fn(ClopenSet(1, 3, 1, Residue(3, a)), 8)
            v = measure_apply(P312, f, 8)
            target = PadicNum.from_rational(3, bernoulli_distribution(P312, 1, a), 8)
            assert tracked_equal(v, target)

    def test_zero_function(self):
        f = CylinderFunction(1, 3, 1, {a: PadicNum.exact_zero(3) for a in range(3)})
        assert measure_apply(P312, f, 8).is_exact_zero()

    def test_refinement_invariance(self):
        rng = random.Random(3)
        for _ in range(20):
            f = random_cylinder(rng, 3, 1, rng.randint(0, 2))
            base = measure_apply(P312, f, 8)
            for extra in (1, 2):
                assert tracked_equal(base, measure_apply(P312, f.refine_level(f.level + extra), 8))

    def test_linearity(self):
        rng = random.Random(11)
        params = BernoulliParams(5, 1, 3)
        for _ in range(10):
            f = random_cylinder(rng, 5, 1, 1)
            g = random_cylinder(rng, 5, 1, 1)
            alpha = PadicNum.from_rational(5, Fraction(rng.randint(1, 50), rng.randint(1, 9)), 8)
            lhs = measure_apply(params, f.scale(alpha) + g, 8)
            rhs = alpha * measure_apply(params, f, 8) + measure_apply(params, g, 8)
            common = min(lhs.abs_precision, rhs.abs_precision)
            assert eq_mod(lhs, rhs, common)


class TestExtendByZero:
    def test_example(self):
        one = PadicNum.one(3, 8)
        f = units_cylinder(1, 3, 1, {1: one, 2: one})
        assert f.values[0].is_exact_zero()
        assert f.values[1].unit == 1 and f.values[2].unit == 1

    def test_idempotent(self):
        one = PadicNum.one(3, 8)
        f = units_cylinder(1, 3, 1, {1: one, 2: one})
        g = extend_by_zero(f)
        assert all((g.values[a] == f.values[a]) for a in range(3))

    def test_support_is_unit_partition(self):
        rng = random.Random(5)
        f = extend_by_zero(random_cylinder(rng, 5, 2, 1))
        units, nonunits = partition_range(2, 5, 1)
        for a in nonunits:
            assert f.values[a].is_exact_zero()


class TestNormBound:
    def test_char_fn_example(self):
        lhs, rhs, ok = norm_bound_check(P312, char_fn(ClopenSet(1, 3, 1, Residue(3, 1)), 8))
        assert ok and lhs == 1 and rhs == 3

    def test_zero_function(self):
        f = CylinderFunction(1, 3, 1, {a: PadicNum.exact_zero(3) for a in range(3)})
        lhs, rhs, ok = norm_bound_check(P312, f)
        assert ok and lhs == 0

    def test_randomized_sweep(self):
        rng = random.Random(0)
        for p, d, c in ((3, 1, 2), (5, 2, 3), (7, 1, 3)):
            params = BernoulliParams(p, d, c)
            for _ in range(50):
                f = random_cylinder(rng, p, d, rng.randint(0, 2))
                lhs, rhs, ok = norm_bound_check(params, f)
                assert ok, (p, d, c, lhs, rhs)

    def test_bound_constant(self):
        # K = 1 + |c| + |(c-1)/2| as exact rationals
        params = BernoulliParams(5, 1, 6)  # c-1 = 5 has valuation 1
        f = char_fn(ClopenSet(1, 5, 1, Residue(5, 1)), 8)
        _, rhs, _ = norm_bound_check(params, f)
        assert rhs == 1 + 1 + Fraction(1, 5)
