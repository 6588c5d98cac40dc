"""Free algebra of operator symbols: contraction, Dynkin bracketing, the
exponential components and their modified Leibniz rule."""

import random
from fractions import Fraction
from math import factorial

from resurgence.freealg import (
    Derivation,
    FreeElement,
    Polynomial,
    apply_element,
    generator,
    lie_expand,
    mould_expand,
    stokes_components,
)
from resurgence.moulds import Mould, is_alternal
from resurgence.scalars import ExactScalar
from resurgence.words import Alphabet, Word

S = ExactScalar.from_rational
AB = Alphabet([1, 2])


def random_mould(alphabet, max_length, rng, empty_value=0):
    entries = {Word(()): S(empty_value)}
    for w in alphabet.words(max_length, min_length=1):
        entries[w] = S(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    return Mould(alphabet, max_length, entries=entries)


def random_alternal(alphabet, max_length, rng):
    def letters_only():
        entries = {
            Word((a,)): S(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
            for a in alphabet
        }
        return Mould(alphabet, max_length, entries=entries)

    m1, m2, m3 = letters_only(), letters_only(), letters_only()
    bracket = m1 * m2 - m2 * m1
    deep = (m3 * bracket - bracket * m3).scale(Fraction(rng.randint(-2, 2), 3))
    return m1 + bracket.scale(Fraction(rng.randint(-2, 2), 2)) + deep


class TestFreeElement:
    def test_product_and_bracket(self):
        x, y = generator("x"), generator("y")
        xy = x * y
        assert xy.terms == {Word(("x", "y")): S(1)}
        br = x.bracket(y)
        assert br.terms == {Word(("x", "y")): S(1), Word(("y", "x")): S(-1)}
        assert x.bracket(x).is_zero()

    def test_contraction_reverses_words(self):
        m = Mould(AB, 2, entries={Word((1, 2)): S(5)})
        e = mould_expand(m)
        assert e.terms == {Word((2, 1)): S(5)}

    @staticmethod
    def _upto(e, max_len):
        out = FreeElement()
        for r in range(max_len + 1):
            out = out + e.length_component(r)
        return out

    def test_anti_morphism(self):
        # contract(M * N) = contract(N) concat contract(M) up to the mould
        # truncation length (the free product creates longer words too)
        rng = random.Random(20)
        m = random_mould(AB, 3, rng, empty_value=0)
        n = random_mould(AB, 3, rng, empty_value=0)
        left = mould_expand(m * n)
        right = self._upto(mould_expand(n) * mould_expand(m), 3)
        assert left == right

    def test_anti_morphism_with_units(self):
        rng = random.Random(21)
        m = random_mould(AB, 3, rng, empty_value=1)
        n = random_mould(AB, 3, rng, empty_value=1)
        # split off the empty-word parts: contraction is linear, so the
        # boundary splittings M^w N^empty and M^empty N^w appear as scaled
        # copies of the bare expansions
        left = mould_expand(m * n)
        expect = self._upto(
            mould_expand(n) * mould_expand(m)
            + mould_expand(m).scale(n[Word(())])
            + mould_expand(n).scale(m[Word(())]),
            3,
        )
        assert left == expect


class TestDynkin:
    def test_bracket_word_orientation(self):
        m = Mould(AB, 2, entries={Word((1, 2)): S(1)})
        e = lie_expand(m)
        # (1/2) [b_2, b_1] = (1/2)(b_2 b_1 - b_1 b_2)
        assert e.terms == {
            Word((2, 1)): S(Fraction(1, 2)),
            Word((1, 2)): S(Fraction(-1, 2)),
        }

    def test_single_letters_pass_through(self):
        m = Mould(AB, 1, entries={Word((1,)): S(3), Word((2,)): S(-2)})
        assert lie_expand(m) == mould_expand(m)

    def test_dynkin_on_alternal_moulds(self):
        # the acceptance-grade statement, here on a couple of seeds
        rng = random.Random(22)
        for _ in range(6):
            m = random_alternal(AB, 3, rng)
            assert is_alternal(m)
            assert lie_expand(m) == mould_expand(m)

    def test_dynkin_fails_off_the_lie_part(self):
        # a symmetral-ish mould is not alternal and the identity must break
        m = Mould(AB, 2, entries={
            Word((1,)): S(1),
            Word((1, 1)): S(Fraction(1, 2)),
        })
        assert lie_expand(m) != mould_expand(m)


class TestStokesComponents:
    def test_frozen_weights_up_to_three(self):
        comp = stokes_components(3)
        assert comp[1].terms == {Word((1,)): S(1)}
        assert comp[2].terms == {
            Word((2,)): S(1),
            Word((1, 1)): S(Fraction(1, 2)),
        }
        assert comp[3].terms == {
            Word((3,)): S(1),
            Word((1, 2)): S(Fraction(1, 2)),
            Word((2, 1)): S(Fraction(1, 2)),
            Word((1, 1, 1)): S(Fraction(1, 6)),
        }

    def test_composition_coefficients_general(self):
        comp = stokes_components(5)
        for w, c in comp[5].terms.items():
            assert c == S(Fraction(1, factorial(len(w))))

    def _random_setup(self, rng, arity=3):
        # derivations D_j on polynomials in x_0..x_{arity-1}
        def rand_poly():
            p = Polynomial(arity)
            for _ in range(2):
                expo = tuple(rng.randint(0, 1) for _ in range(arity))
                p = p + Polynomial(arity, {expo: Fraction(rng.randint(-2, 2))})
            return p

        ops = {j: Derivation([rand_poly() for _ in range(arity)])
               for j in range(1, 5)}
        return ops, rand_poly

    def test_modified_leibniz_rule(self):
        # E_k(f g) = sum over i+j=k of E_i(f) E_j(g), E_0 = identity
        rng = random.Random(23)
        comp = stokes_components(4)
        for _ in range(3):
            ops, rand_poly = self._random_setup(rng)
            f, g = rand_poly(), rand_poly()
            for k in range(1, 5):
                left = apply_element(comp[k], ops, f * g)
                right = (
                    apply_element(comp[k], ops, f) * g
                    + f * apply_element(comp[k], ops, g)
                )
                for i in range(1, k):
                    right = right + (
                        apply_element(comp[i], ops, f)
                        * apply_element(comp[k - i], ops, g)
                    )
                assert left == right, f"weight {k}"

    def test_plain_derivation_leibniz(self):
        rng = random.Random(24)
        ops, rand_poly = self._random_setup(rng)
        f, g = rand_poly(), rand_poly()
        d = ops[1]
        assert d(f * g) == d(f) * g + f * d(g)


class TestPolynomial:
    def test_partial_derivative(self):
        x = Polynomial.variable(2, 0)
        y = Polynomial.variable(2, 1)
        p = x * x * y + y.scale(3)
        assert p.partial(0) == (x * y).scale(2)
        assert p.partial(1) == x * x + Polynomial.constant(2, 3)

    def test_apply_element_word_order(self):
        # word (a, b) applies b first
        x = Polynomial.variable(1, 0)
        double = lambda p: p.scale(2)
        square = lambda p: p * p
        e = FreeElement({Word(("d", "s")): S(1)})
        got = apply_element(e, {"d": double, "s": square}, x)
        assert got == (x * x).scale(2)
        e2 = FreeElement({Word(("s", "d")): S(1)})
        got2 = apply_element(e2, {"d": double, "s": square}, x)
        assert got2 == (x * x).scale(4)
