import json
import math

import pytest

from padiclf.dirichlet import (
    DirichletCharacter,
    char_power,
    decompose_coprime,
    load_table_character,
    make_teich_char,
    parse_character_spec,
    teichmuller,
    teichmuller_int,
    trivial_character,
)
from padiclf.errors import NotAUnit, NotCoprime, NotDivisible, UnsupportedOrder
from padiclf.modarith import units_of
from padiclf.suite import conductor_bruteforce


def teich_root_oracle(p, a, N):
    """Brute-force oracle: the unique (p-1)-st root of unity = a mod p."""
    mod = p**N
    roots = [x for x in range(1, mod)
             if pow(x, p - 1, mod) == 1 and x % p == a % p]
    assert len(roots) == 1
    return roots[0]


class TestTeichmuller:
    def test_examples(self):
        assert teichmuller(5, 1, 4).unit == 1
        assert teichmuller_int(5, 2, 3) == 57
        assert teichmuller_int(5, 4, 3) == 5**3 - 1

    def test_against_root_oracle(self):
        for p in (3, 5, 7):
            for a in range(1, p):
                assert teichmuller_int(p, a, 3) == teich_root_oracle(p, a, 3)

    def test_defining_properties(self):
        for p in (3, 5, 7, 11):
            mod = p**8
            for a in range(1, p):
                w = teichmuller_int(p, a, 8)
                assert w % p == a
                assert pow(w, p - 1, mod) == 1

    def test_minus_one(self):
        for p in (3, 5, 7, 11):
            assert teichmuller_int(p, p - 1, 6) == p**6 - 1

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            teichmuller_int(2, 1, 4)
        with pytest.raises(ValueError):
            teichmuller_int(6, 1, 4)
        with pytest.raises(NotAUnit):
            teichmuller_int(5, 10, 4)


class TestConstruction:
    def test_teich_char_tables(self):
        om5 = make_teich_char(5, 3)
        assert {a: v.unit for a, v in om5.table.items()} == {1: 1, 2: 57, 3: 68, 4: 124}
        om3 = make_teich_char(3, 4)
        assert {a: v.unit for a, v in om3.table.items()} == {1: 1, 2: 3**4 - 1}

    def test_values_are_roots_of_unity(self):
        for chi in (make_teich_char(7, 5), trivial_character(7, 10),
                    DirichletCharacter(5, 8, {1: 1, 3: 4, 5: 4, 7: 1})):
            mod = chi.p**chi.relprec
            for v in chi.table.values():
                assert pow(v.unit, chi.p - 1, mod) == 1

    def test_missing_entry_rejected(self):
        with pytest.raises(ValueError, match="missing"):
            DirichletCharacter(5, 5, {1: 1, 2: 2, 3: 3})

    def test_nonunit_key_rejected(self):
        with pytest.raises(ValueError, match="non-unit"):
            DirichletCharacter(5, 4, {1: 1, 2: 1, 3: 1})

    def test_identity_must_map_to_one(self):
        with pytest.raises(ValueError, match="does not send 1 to 1"):
            DirichletCharacter(5, 5, {1: 2, 2: 4, 3: 3, 4: 1})

    def test_unsupported_order(self):
        # 3 has order 6 in (Z/7Z)^x but the label 2 has order 4 in mu_4 at
        # p=5; no character can realize that assignment
        with pytest.raises(UnsupportedOrder):
            DirichletCharacter(5, 7, {1: 1, 2: 1, 3: 2, 4: 1, 5: 1, 6: 1})

    def test_non_multiplicative_names_pair(self):
        with pytest.raises(ValueError, match=r"pair \("):
            DirichletCharacter(5, 8, {1: 1, 3: 4, 5: 4, 7: 4})

    def test_level_one(self):
        chi = trivial_character(5, 1)
        assert chi.asso_eval(0).unit == 1
        assert chi.conductor() == 1
        assert chi.is_even()


class TestAssoEval:
    def test_unit_value(self):
        om5 = make_teich_char(5, 3)
        assert om5.asso_eval(2).unit == 57

    def test_nonunit_is_exact_zero(self):
        om5 = make_teich_char(5, 3)
        assert om5.asso_eval(0).is_exact_zero()
        assert trivial_character(5, 6).asso_eval(3).is_exact_zero()

    def test_precision_override(self):
        om5 = make_teich_char(5, 3)
        assert om5.asso_eval(2, relprec=5).relprec == 5


class TestLevelChange:
    def test_trivial_extension(self):
        assert trivial_character(5, 1).change_level(6) == trivial_character(5, 6)

    def test_quadratic_extension_example(self):
        quad3 = DirichletCharacter(5, 3, {1: 1, 2: 4})
        q9 = quad3.change_level(9)
        signs = {a: (1 if q9.label(a) == 1 else -1) for a in (1, 2, 4, 5, 7, 8)}
        assert signs == {1: 1, 2: -1, 4: 1, 5: -1, 7: 1, 8: -1}

    def test_identity_change(self):
        om = make_teich_char(5)
        assert om.change_level(5) == om

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            make_teich_char(5).change_level(7)


class TestConductor:
    def test_examples(self):
        assert trivial_character(5, 12).conductor() == 1
        quad9 = DirichletCharacter(5, 3, {1: 1, 2: 4}).change_level(9)
        assert quad9.conductor() == 3
        assert make_teich_char(5).conductor() == 5

    def test_factors_through(self):
        quad9 = DirichletCharacter(5, 3, {1: 1, 2: 4}).change_level(9)
        assert trivial_character(5, 12).factors_through(1)
        assert quad9.factors_through(3)
        assert not make_teich_char(5).factors_through(1)
        with pytest.raises(NotDivisible):
            quad9.factors_through(2)

    def test_against_bruteforce_small_levels(self):
        chars = []
        for p in (3, 5, 7):
            for k in range(p - 1):
                chi = char_power(make_teich_char(p), k)
                chars.append(chi)
                if chi.level * 6 <= 100:
                    chars.append(chi.change_level(chi.level * 6))
        chars.append(DirichletCharacter(5, 8, {1: 1, 3: 4, 5: 4, 7: 1}))
        for chi in chars:
            assert chi.conductor() == conductor_bruteforce(chi)

    def test_change_level_preserves_conductor(self):
        quad3 = DirichletCharacter(5, 3, {1: 1, 2: 4})
        for m in (3, 6, 15, 21, 60, 99, 198):
            assert quad3.change_level(m).conductor() == 3

    def test_primitive_round_trip(self):
        quad9 = DirichletCharacter(5, 3, {1: 1, 2: 4}).change_level(9)
        prim = quad9.associated_primitive()
        assert prim == DirichletCharacter(5, 3, {1: 1, 2: 4})
        assert prim.is_primitive()
        assert prim.change_level(9) == quad9
        assert trivial_character(5, 12).associated_primitive() == trivial_character(5, 1)
        om = make_teich_char(5)
        assert om.associated_primitive() == om


class TestMultiplication:
    def test_omega_power_arithmetic(self):
        om = make_teich_char(5)
        assert char_power(om, 2) * char_power(om, 3) == om
        assert (om * char_power(om, 3)).level == 1
        quad3 = DirichletCharacter(5, 3, {1: 1, 2: 4})
        assert quad3 * trivial_character(5, 1) == quad3

    def test_commutative_at_table_level(self):
        om = make_teich_char(5)
        quad3 = DirichletCharacter(5, 3, {1: 1, 2: 4})
        a, b = quad3 * om, om * quad3
        assert a.level == b.level and a == b

    def test_omega_power_orders(self):
        for p in (3, 5, 7):
            om = make_teich_char(p)
            assert char_power(om, p - 1) == trivial_character(p, p)
            for k in range(p - 1):
                chi = char_power(om, k)
                assert chi.conductor() == (1 if k % (p - 1) == 0 else p)

    def test_associativity_spot_check(self):
        om = make_teich_char(5)
        a, b, c = om, char_power(om, 2), char_power(om, 3)
        assert (a * b) * c == a * (b * c)


class TestParity:
    def test_examples(self):
        assert make_teich_char(5).parity() == "odd"
        assert char_power(make_teich_char(5), 2).parity() == "even"
        assert trivial_character(5, 1).parity() == "even"
        assert trivial_character(5, 2).parity() == "even"

    def test_every_character_even_or_odd(self):
        for p in (3, 5, 7):
            for k in range(p - 1):
                chi = char_power(make_teich_char(p), k)
                assert chi.is_even() != chi.is_odd()
                assert chi.is_odd() == (k % 2 == 1)


class TestDecompose:
    def test_examples(self):
        t15 = trivial_character(5, 15)
        assert decompose_coprime(t15, 3, 5) == (trivial_character(5, 3),
                                                trivial_character(5, 5))
        quad3 = DirichletCharacter(5, 3, {1: 1, 2: 4})
        c1, c2 = decompose_coprime(quad3.change_level(15), 3, 5)
        assert c1 == quad3 and c2 == trivial_character(5, 5)
        c1, c2 = decompose_coprime(make_teich_char(5), 1, 5)
        assert c1.level == 1 and c2 == make_teich_char(5)

    def test_product_recovers_character(self):
        om = make_teich_char(5)
        quad3 = DirichletCharacter(5, 3, {1: 1, 2: 4})
        chi = DirichletCharacter(5, 15, {
            u.value: (quad3.label(u.value % 3) * om.label(u.value % 5)) % 5
            for u in units_of(15)
        })
        c1, c2 = decompose_coprime(chi, 3, 5)
        assert c1.change_level(15) * c2.change_level(15) == chi.associated_primitive()
        # first factor is primitive when its level divides the conductor
        assert chi.conductor() == 15 and c1.is_primitive()

    def test_not_coprime(self):
        with pytest.raises(NotCoprime):
            decompose_coprime(trivial_character(5, 9), 3, 3)


class TestSpecsAndTables:
    def test_parse_specs(self):
        assert parse_character_spec("triv", 5) == trivial_character(5, 1)
        assert parse_character_spec("triv", 5, level=15) == trivial_character(5, 15)
        assert parse_character_spec("omega^2", 5) == char_power(make_teich_char(5), 2)
        with pytest.raises(ValueError):
            parse_character_spec("omega^x", 5)
        with pytest.raises(ValueError):
            parse_character_spec("nonsense", 5)

    def test_table_round_trip(self, tmp_path):
        quad8 = DirichletCharacter(5, 8, {1: 1, 3: 4, 5: 4, 7: 1})
        path = tmp_path / "chi.json"
        path.write_text(json.dumps(quad8.to_json()))
        loaded = load_table_character(str(path))
        assert loaded == quad8

    def test_table_validation_error(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(
            {"p": 5, "modulus": 8, "entries": {"1": 1, "3": 4, "5": 4, "7": 4}}
        ))
        with pytest.raises(ValueError, match=r"pair \("):
            load_table_character(str(path))

    def test_table_via_spec(self, tmp_path):
        path = tmp_path / "chi.json"
        path.write_text(json.dumps(
            {"p": 5, "modulus": 3, "entries": {"1": 1, "2": 4}}
        ))
        chi = parse_character_spec(f"table:{path}", 5)
        assert chi.conductor() == 3 and chi.is_odd()
        with pytest.raises(ValueError, match="over p="):
            parse_character_spec(f"table:{path}", 7)


def test_multiplicativity_invariant_on_all_paths():
    # construction, power, level change, and product keep tables multiplicative
    for chi in (make_teich_char(7, 4),
                char_power(make_teich_char(7, 4), 3).change_level(21),
                make_teich_char(5) * DirichletCharacter(5, 3, {1: 1, 2: 4})):
        units = [u.value for u in units_of(chi.level)]
        for a in units:
            for b in units:
                lhs = chi.label(a) * chi.label(b) % chi.p
                assert lhs == chi.label(a * b % chi.level)
