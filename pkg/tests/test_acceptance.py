"""Acceptance suite: the package's binding numeric and algebraic contracts.

One test per criterion.  Each test prints a single line

    criterion NN: PASS (elapsed, budget) description

(or the FAIL variant before the traceback), checks every value at its
stated tolerance, and enforces its wall-clock budget.  Run with

    pytest tests/test_acceptance.py -v -s

to see the per-criterion lines as they happen.  Exact means exact: those
comparisons are scalar equality in the symbolic ring, with no floating
point anywhere in the loop.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import mpmath

from resurgence.alien import (alien_derivation, alien_plus, euler_resurgent,
                              stirling_resurgent)
from resurgence.borelfun import (RationalBF, RationalFunction, euler_minor,
                                 power_minor, stirling_minor)
from resurgence.freealg import (Derivation, Polynomial, apply_element,
                                lie_expand, mould_expand, stokes_components)
from resurgence.hyperlog import (MonomialFamily, default_U, gu_resurgent,
                                 v_borel, v_mould, v_series)
from resurgence.laplace import RaySpec, hankel_laplace, laplace_ray, lateral_jump
from resurgence.moulds import (Mould, exp_scale_mould, identity_mould,
                               is_alternal, is_symmetral, mould_exp,
                               mould_log, unit_mould)
from resurgence.mzv import MzvIndex, verify_relation, wa_eval, ze_eval, ze_to_wa
from resurgence.scalars import ExactScalar
from resurgence.series import (borel, euler_series, predict_coefficients,
                               stirling_series)
from resurgence.words import EMPTY, Alphabet, Word

S = ExactScalar.from_rational
TAU = ExactScalar.tau()
AB = Alphabet([1, 2])


@contextmanager
def criterion(num, budget, description):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"criterion {num:2d}: FAIL {description}")
        raise
    elapsed = time.perf_counter() - start
    line = f"criterion {num:2d}: {{}} ({elapsed:.2f} s, budget {budget:g} s) " \
        + description
    if elapsed >= budget:
        print(line.format("FAIL"))
        raise AssertionError(
            f"criterion {num} exceeded its {budget:g} s budget "
            f"({elapsed:.2f} s)")
    print(line.format("PASS"))


def random_mould(alphabet, max_length, rng, empty_value=0):
    entries = {EMPTY: S(empty_value)}
    for w in alphabet.words(max_length, min_length=1):
        entries[w] = S(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    return Mould(alphabet, max_length, entries=entries)


def random_alternal(alphabet, max_length, rng):
    """Letter-supported moulds are alternal; brackets keep them so."""

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


def test_criterion_01_lattice_alien_derivatives():
    with criterion(1, 1.0, "lattice alien derivatives are exactly 1/r"):
        phi = stirling_resurgent()
        for r in (1, 2, 3):
            out = alien_derivation(phi, TAU * r)
            assert out.constant_term == S(Fraction(1, r))
            assert all(out.series[n].is_zero()
                       for n in range(1, out.series.order + 1))


def test_criterion_02_ray_sum_factorial_correction():
    with criterion(2, 5.0, "ray sum reproduces the factorial correction"):
        res = laplace_ray(stirling_minor(), 0,
                          RaySpec(0, 10, target_error=1e-10))
        with mpmath.workprec(120):
            target = (mpmath.log(mpmath.mpf(362880))
                      - mpmath.mpf("9.5") * mpmath.log(10)
                      + 10 - mpmath.log(2 * mpmath.pi) / 2)
            assert abs(res.value - target) < 1e-9


def test_criterion_03_lateral_jump_and_bridge():
    with criterion(3, 10.0, "lateral jump modulus matches the alien bridge"):
        pair = lateral_jump(euler_minor(), 0, float(mpmath.pi), 0.5, -3)
        delta_plus = alien_plus(euler_resurgent(), -1).constant_term
        assert delta_plus == TAU
        with mpmath.workprec(120):
            assert abs(abs(pair.jump) - 2 * mpmath.pi * mpmath.exp(-3)) < 1e-7
            predicted = mpmath.exp(-3) * abs(delta_plus.evaluate(120))
            assert abs(abs(pair.jump) - predicted) < 1e-7


def test_criterion_04_mould_algebra_suite():
    with criterion(4, 30.0, "mould algebra laws, exact to word length 4"):
        rng = random.Random(404)
        nilp = random_mould(AB, 4, rng, empty_value=0)
        grouplike = random_mould(AB, 4, rng, empty_value=1)
        assert mould_log(mould_exp(nilp)).same_entries(nilp)
        assert mould_exp(mould_log(grouplike)).same_entries(grouplike)

        m = random_mould(AB, 4, rng, empty_value=2)
        one = unit_mould(AB)
        assert (m * one).same_entries(m)
        assert (one * m).same_entries(m)

        u = random_mould(AB, 4, rng, empty_value=0)
        assert identity_mould().compose(u).same_entries(u)
        ident = identity_mould(AB).materialize(AB, 4)
        assert m.compose(ident).same_entries(m)

        half = exp_scale_mould(Fraction(1, 2)).materialize(AB, 4)
        neg = exp_scale_mould(Fraction(-1, 2)).materialize(AB, 4)
        assert (half * neg).same_entries(unit_mould(AB).materialize(AB, 4))

        a = random_alternal(AB, 4, rng)
        b = random_alternal(AB, 4, rng)
        assert is_alternal(a * b - b * a)
        e = mould_exp(a)
        assert is_symmetral(e)
        assert is_symmetral(half * e)
        assert is_symmetral(e.mult_inverse())


def test_criterion_05_dynkin_expansions_agree():
    with criterion(5, 10.0, "Lie and direct expansions agree on 25 alternals"):
        rng = random.Random(505)
        for _ in range(25):
            m = random_alternal(AB, 3, rng)
            assert is_alternal(m)
            assert lie_expand(m) == mould_expand(m)


def test_criterion_06_modified_leibniz():
    with criterion(6, 10.0, "graded components obey the modified product rule"):
        rng = random.Random(606)
        comp = stokes_components(4)
        arity = 3

        def rand_poly():
            p = Polynomial(arity)
            for _ in range(2):
                expo = tuple(rng.randint(0, 1) for _ in range(arity))
                p = p + Polynomial(arity, {expo: Fraction(rng.randint(-2, 2))})
            return p

        for _ in range(3):
            ops = {j: Derivation([rand_poly() for _ in range(arity)])
                   for j in range(1, 5)}
            f, g = rand_poly(), rand_poly()
            for k in range(1, 5):
                left = apply_element(comp[k], ops, f * g)
                right = (apply_element(comp[k], ops, f) * g
                         + f * apply_element(comp[k], ops, g))
                for i in range(1, k):
                    right = right + (apply_element(comp[i], ops, f)
                                     * apply_element(comp[k - i], ops, g))
                assert left == right, f"weight {k}"


def test_criterion_07_monomial_mould_symmetrality():
    with criterion(7, 10.0, "monomial mould is symmetral, series and shapes"):
        fam = MonomialFamily([1, 2], order=12)
        assert is_symmetral(v_mould(fam, 3))
        for w in [(1,), (2,), (1, 2), (2, 1), (1, 1), (2, 2)]:
            series_side = borel(v_series(fam, w))
            function_side = v_borel(fam, w).taylor(series_side.order)
            assert series_side == function_side


def test_criterion_08_prefix_rule():
    with criterion(8, 10.0, "alien action on normalized monomials deletes "
                            "the leading letter"):
        fam = MonomialFamily([1, 2], order=12)
        normalizer = default_U(fam)
        out = alien_derivation(gu_resurgent(fam, (1,), u=normalizer), 1)
        assert out.constant_term == S(1)
        assert all(out.series[k].is_zero()
                   for k in range(1, out.series.order + 1))
        assert alien_derivation(
            gu_resurgent(fam, (1,), u=normalizer), 2).is_zero()
        for w in [(1, 2), (2, 1), (1, 1), (2, 2)]:
            pair = gu_resurgent(fam, w, u=normalizer)
            out = alien_derivation(pair, w[0])
            tail = gu_resurgent(fam, (w[1],), u=normalizer)
            assert out.constant_term == tail.constant_term
            assert out.series.agrees_with(tail.series)


def test_criterion_09_mzv_relations():
    with criterion(9, 60.0, "nested-sum relations and the integral dictionary"):
        report = verify_relation(MzvIndex((2,)), MzvIndex((2,)),
                                 prec=80, modes=("stuffle", "shuffle"))
        assert report.ok
        with mpmath.workprec(120):
            target = mpmath.pi ** 4 / 36
            for check in report.checks:
                assert abs(check.value - target) < 1e-8
        a = ze_eval(MzvIndex((2, 1)), prec=80)
        b = ze_eval(MzvIndex((3,)), prec=80)
        assert abs(a.value - b.value) < 1e-9
        for s in [(2,), (3,), (4,), (2, 1), (2, 2), (3, 1), (2, 1, 1)]:
            idx = MzvIndex(s)
            sum_side = ze_eval(idx, prec=60)
            integral_side = wa_eval(ze_to_wa(idx), prec=60)
            assert abs(sum_side.value - integral_side.value) < 1e-6, s


def test_criterion_10_coefficient_asymptotics():
    with criterion(10, 1.0, "singularities predict coefficient growth"):
        preds = predict_coefficients([(S(-1), TAU)], range(0, 31))
        truth = euler_series(32)
        for n, p in zip(range(0, 31), preds):
            assert p == truth[n + 1], f"n = {n}"
        lattice = [(TAU, S(1)), (TAU * (-1), S(-1))]
        pred20 = predict_coefficients(lattice, [20])[0].evaluate(120)
        truth20 = stirling_series(21)[21].evaluate(120)
        assert abs((pred20 - truth20) / truth20) < 0.02


def test_criterion_11_hankel_identities():
    with criterion(11, 5.0, "Hankel contours reproduce pole and power data"):
        pole = RationalBF(RationalFunction.simple_pole(0, ExactScalar.tau(-1)))
        res = hankel_laplace(pole, 0, 3)
        assert abs(res.value - 1) < 1e-8
        root = hankel_laplace(power_minor("1/2"), 0, 2)
        with mpmath.workprec(80):
            assert abs(root.value - 1 / mpmath.sqrt(2)) < 1e-8
