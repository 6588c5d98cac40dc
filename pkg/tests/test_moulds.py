"""Mould algebra: product group laws, composition, exp/log, predicates.

Random moulds are built from fixed-seed rationals so failures reproduce.
Alternal inputs are manufactured from letter-supported moulds (alternal for
trivial reasons) and their product brackets; the bracket-closure fact is
itself asserted separately.
"""

import json
import random
from fractions import Fraction

import pytest

from resurgence.errors import CarrierEscapeError, TruncationError
from resurgence.moulds import (
    Mould,
    comp_inverse,
    exp_scale_mould,
    identity_mould,
    is_alternal,
    is_alternel,
    is_symmetral,
    is_symmetrel,
    mould_exp,
    mould_from_json,
    mould_log,
    mould_to_json,
    passage_mould,
    unit_mould,
)
from resurgence.scalars import ExactScalar, GaussianRational
from resurgence.words import EMPTY, Alphabet, Word

S = ExactScalar.from_rational
AB = Alphabet([1, 2])
CLOSURE = Alphabet(list(range(1, 9)))


def random_mould(alphabet, max_length, rng, empty_value=0):
    entries = {EMPTY: S(empty_value)}
    for w in alphabet.words(max_length, min_length=1):
        entries[w] = S(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    return Mould(alphabet, max_length, entries=entries)


def random_alternal(alphabet, max_length, rng):
    """A random alternal mould: a combination of letter-supported moulds and
    one product bracket (letter-supported moulds are alternal because every
    shuffle of two nonempty words has length at least two)."""

    def letters_only():
        entries = {
            Word((a,)): S(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
            for a in alphabet
        }
        return Mould(alphabet, max_length, entries=entries)

    m1, m2, m3 = letters_only(), letters_only(), letters_only()
    bracket = m1 * m2 - m2 * m1
    deep = (m1 * bracket - bracket * m1).scale(Fraction(rng.randint(-2, 2), 3))
    return m2 + bracket.scale(Fraction(rng.randint(-2, 2), 2)) + deep + m3


class TestProductGroup:
    def test_unit_laws(self):
        rng = random.Random(1)
        m = random_mould(AB, 3, rng, empty_value=2)
        one = unit_mould(AB)
        assert (one * m).same_entries(m)
        assert (m * one).same_entries(m)

    def test_associativity(self):
        rng = random.Random(2)
        a = random_mould(AB, 3, rng, empty_value=1)
        b = random_mould(AB, 3, rng, empty_value=-1)
        c = random_mould(AB, 3, rng, empty_value=2)
        assert ((a * b) * c).same_entries(a * (b * c))

    def test_product_formula_by_hand(self):
        # length-2 expansion of (M*N)^(1,2)
        rng = random.Random(3)
        m = random_mould(AB, 2, rng, empty_value=1)
        n = random_mould(AB, 2, rng, empty_value=2)
        w = Word((1, 2))
        expect = (
            m[EMPTY] * n[w]
            + m[Word((1,))] * n[Word((2,))]
            + m[w] * n[EMPTY]
        )
        assert (m * n)[w] == expect

    def test_mult_inverse_two_sided(self):
        rng = random.Random(4)
        m = random_mould(AB, 4, rng, empty_value=3)
        inv = m.mult_inverse()
        one = unit_mould(AB).materialize(AB, 4)
        assert (m * inv).same_entries(one)
        assert (inv * m).same_entries(one)

    def test_exp_log_bijection(self):
        rng = random.Random(5)
        m = random_mould(AB, 4, rng, empty_value=0)
        assert mould_log(mould_exp(m)).same_entries(m)
        g = random_mould(AB, 4, rng, empty_value=1)
        assert mould_exp(mould_log(g)).same_entries(g)

    def test_exp_scale_group(self):
        # Exp_w * Exp_w' = Exp_{w+w'}, and w = 1/2, -1/2 cancel to the unit
        half = exp_scale_mould(Fraction(1, 2)).materialize(AB, 4)
        neg = exp_scale_mould(Fraction(-1, 2)).materialize(AB, 4)
        one = unit_mould(AB).materialize(AB, 4)
        assert (half * neg).same_entries(one)
        third = exp_scale_mould(Fraction(1, 3)).materialize(AB, 4)
        sixth = exp_scale_mould(Fraction(5, 6)).materialize(AB, 4)
        assert (half * third).same_entries(sixth)

    def test_log_of_exp_scale_is_scaled_identity(self):
        e = exp_scale_mould(2).materialize(AB, 4)
        want = identity_mould(AB).materialize(AB, 4).scale(2)
        assert mould_log(e).same_entries(want)


class TestComposition:
    def test_identity_is_two_sided_unit(self):
        rng = random.Random(6)
        u = random_mould(AB, 3, rng, empty_value=0)
        assert identity_mould().compose(u).same_entries(u)
        # M o I = M needs M's own alphabet on the inside
        m = random_mould(AB, 3, rng, empty_value=5)
        ident = identity_mould(AB).materialize(AB, 3)
        assert m.compose(ident).same_entries(m)

    def test_compose_formula_by_hand(self):
        rng = random.Random(7)
        m = random_mould(CLOSURE, 2, rng, empty_value=1)
        u = random_mould(AB, 2, rng, empty_value=0)
        w = Word((1, 2))
        expect = (
            m[Word((3,))] * u[w]
            + m[Word((1, 2))] * u[Word((1,))] * u[Word((2,))]
        )
        assert m.compose(u)[w] == expect

    def test_compose_associativity(self):
        rng = random.Random(8)
        outer = exp_scale_mould(Fraction(1, 2))
        mid = random_mould(CLOSURE, 3, rng, empty_value=0)
        inner = random_mould(AB, 3, rng, empty_value=0)
        left = outer.compose(mid).compose(inner)
        right = outer.compose(mid.compose(inner))
        assert left.same_entries(right)

    def test_carrier_escape(self):
        rng = random.Random(9)
        m = random_mould(AB, 3, rng, empty_value=1)  # alphabet {1,2} only
        u = random_mould(AB, 3, rng, empty_value=0)
        with pytest.raises(CarrierEscapeError):
            m.compose(u)  # needs entries at letter sums 3 and 4

    def test_comp_inverse_right_inverse(self):
        rng = random.Random(10)
        v = random_mould(CLOSURE, 3, rng, empty_value=0)
        # make all single-letter entries invertible
        for a in CLOSURE:
            v.entries[Word((a,))] = S(Fraction(rng.randint(1, 5)))
        w = comp_inverse(v, letters=[1, 2])
        ident = identity_mould(AB).materialize(AB, 3)
        assert v.compose(w).same_entries(ident)

    def test_comp_inverse_two_sided_on_sum_closed_alphabet(self):
        # the alphabet {0} is closed under addition, so both compositions
        # stay inside the truncation and the inverse is genuinely two-sided
        zero_alph = Alphabet([0])
        rng = random.Random(101)
        v = random_mould(zero_alph, 4, rng, empty_value=0)
        v.entries[Word((0,))] = S(Fraction(3, 2))
        w = comp_inverse(v)
        ident = identity_mould(zero_alph).materialize(zero_alph, 4)
        assert v.compose(w).same_entries(ident)
        assert w.compose(v).same_entries(ident)


class TestPredicates:
    def test_exp_scale_is_symmetral_not_alternal(self):
        e = exp_scale_mould(Fraction(2, 3)).materialize(AB, 4)
        assert is_symmetral(e)
        assert not is_alternal(e)

    def test_letter_supported_and_brackets_are_alternal(self):
        rng = random.Random(11)
        for _ in range(5):
            a = random_alternal(AB, 4, rng)
            assert is_alternal(a)

    def test_lie_closure_of_alternals(self):
        rng = random.Random(12)
        a = random_alternal(AB, 3, rng)
        b = random_alternal(AB, 3, rng)
        assert is_alternal(a * b - b * a)
        # and the plain product is not alternal in general
        prod = a * b
        assert not is_alternal(prod) or is_alternal(b * a)

    def test_group_closure_of_symmetrals(self):
        e1 = exp_scale_mould(Fraction(1, 2)).materialize(AB, 4)
        rng = random.Random(13)
        a = random_alternal(AB, 4, rng)
        e2 = mould_exp(a)  # exp of alternal is symmetral
        assert is_symmetral(e2)
        assert is_symmetral(e1 * e2)
        assert is_symmetral(e2.mult_inverse())

    def test_constant_sign_mould_is_symmetrel(self):
        # M^w = (-1)^(length w) satisfies the stuffle law; checked by hand
        # at depths (1,1), (1,2) and (2,2) and here by full enumeration.
        # Pairs are drawn from {1,...,4} so contractions stay within 1..8.
        entries = {
            w: S((-1) ** len(w)) for w in CLOSURE.words(4)
        }
        m = Mould(CLOSURE, 4, entries=entries)
        assert is_symmetrel(m, max_length=4, letters=[1, 2, 3, 4])
        assert not is_alternel(m, max_length=4, letters=[1, 2, 3, 4])

    def test_alternel_by_construction_depth_two(self):
        # A^(c) free, A^(a,b) = -(A^(a+b))/2 makes depth-two stuffles vanish
        entries = {}
        for c in CLOSURE:
            entries[Word((c,))] = S(Fraction(c, 2))
        for a in CLOSURE:
            for b in CLOSURE:
                if a + b <= 8:
                    entries[Word((a, b))] = S(Fraction(-(a + b), 4))
        m = Mould(CLOSURE, 2, entries=entries)
        assert is_alternel(m, max_length=2, letters=[1, 2, 3, 4])
        bad = Mould(CLOSURE, 2, entries={**entries, Word((1, 1)): S(7)})
        assert not is_alternel(bad, max_length=2, letters=[1, 2, 3, 4])


class TestPassageMould:
    def test_values_and_symmetrality(self):
        i = GaussianRational(0, 1)
        letters = [
            ExactScalar.from_rational(1),
            ExactScalar.from_rational(2),
            ExactScalar.from_gaussian(i),
        ]
        al = Alphabet(letters)
        p = passage_mould(al, -0.1, 1.7)  # sector holds arg 0 and arg pi/2
        one, two, im = letters[1 - 1], letters[2 - 1], letters[2]
        assert p[Word((one,))] == S(1)
        # two letters on the real ray: one run of length 2
        assert p[Word((one, two))] == S(Fraction(1, 2))
        # increasing argument: separate runs
        assert p[Word((one, im))] == S(1)
        # decreasing argument: zero
        assert p[Word((im, one))] == S(0)
        assert is_symmetral(p.materialize(al, 3))

    def test_sector_excludes(self):
        letters = [ExactScalar.from_rational(1),
                   ExactScalar.from_gaussian(GaussianRational(0, 1))]
        al = Alphabet(letters)
        # sector (0.1, 1.7]: the positive real ray (arg 0) is outside
        p = passage_mould(al, 0.1, 1.7)
        assert p[Word((letters[0],))] == S(0)
        assert p[Word((letters[1],))] == S(1)

    def test_three_letter_run_weight(self):
        letters = [ExactScalar.from_rational(k) for k in (1, 2, 3)]
        al = Alphabet(letters)
        p = passage_mould(al, -0.5, 0.5)
        w = Word((letters[0], letters[1], letters[2]))
        assert p[w] == S(Fraction(1, 6))


class TestStorage:
    def test_truncation_error(self):
        rng = random.Random(14)
        m = random_mould(AB, 2, rng)
        with pytest.raises(TruncationError):
            m[Word((1, 1, 1))]

    def test_foreign_letter_lookup(self):
        rng = random.Random(15)
        m = random_mould(AB, 2, rng)
        with pytest.raises(CarrierEscapeError):
            m[Word((7,))]

    def test_json_roundtrip_bit_exact(self):
        rng = random.Random(16)
        m = random_mould(AB, 3, rng, empty_value=1)
        m.entries[Word((1, 2))] = ExactScalar.tau(-2) * GaussianRational(
            Fraction(1, 3), Fraction(-2, 7)
        )
        data = json.loads(json.dumps(mould_to_json(m)))
        m2 = mould_from_json(data)
        assert m2.same_entries(m)
        assert m2.alphabet == m.alphabet
        assert m2.max_length == m.max_length

    def test_scalar_letter_json(self):
        al = Alphabet([ExactScalar.tau(), ExactScalar.from_rational(1)])
        entries = {Word(()): S(1),
                   Word((ExactScalar.tau(),)): ExactScalar.i_pi()}
        m = Mould(al, 1, entries=entries)
        m2 = mould_from_json(json.loads(json.dumps(mould_to_json(m))))
        assert m2.same_entries(m)
