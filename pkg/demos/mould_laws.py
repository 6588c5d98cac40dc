"""A tour of the exact mould layer.

Moulds are scalar-valued functions on words; their product is the
deconcatenation-dual convolution

    (M N)^w = sum over splittings w = u v of M^u N^v.

Everything below is exact arithmetic in the ring Q(i)[2 pi i, 1/(2 pi i)]:
no floats, so "equal" means equal.
"""

import random
from fractions import Fraction

from resurgence import (Alphabet, ExactScalar, Mould, Word, exp_scale_mould,
                        is_alternal, is_symmetral, lie_expand, mould_exp,
                        mould_expand, mould_log, unit_mould)

S = ExactScalar.from_rational
AB = Alphabet([1, 2])

# the one-parameter exponential family: Exp_w takes the value w^r / r!
# on every word of length r, and the parameter adds under the product
half = exp_scale_mould(Fraction(1, 2)).materialize(AB, 4)
other = exp_scale_mould(Fraction(-1, 2)).materialize(AB, 4)
unit = unit_mould(AB).materialize(AB, 4)
print("Exp_{1/2} * Exp_{-1/2} == unit:", (half * other).same_entries(unit))
print("Exp_{1/2} is symmetral:", is_symmetral(half))
print("value on the word (1, 2):", half[Word((1, 2))])

# exp and log are mutually inverse between moulds vanishing on the empty
# word and moulds taking 1 there
rng = random.Random(7)
entries = {
    w: S(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    for w in AB.words(4, min_length=1)
}
nilpotent = Mould(AB, 4, entries=entries)
print("log(exp(M)) == M:",
      mould_log(mould_exp(nilpotent)).same_entries(nilpotent))

# alternal moulds are the Lie-like elements: closed under bracket, and
# their two free-algebra expansions coincide word by word
letters = {Word((a,)): S(a) for a in AB}
m1 = Mould(AB, 3, entries=letters)
m2 = Mould(AB, 3, entries={Word((a,)): S(Fraction(1, a)) for a in AB})
bracket = m1 * m2 - m2 * m1
print("bracket of alternals is alternal:", is_alternal(bracket))
print("Lie expansion matches the direct expansion:",
      lie_expand(bracket) == mould_expand(bracket))

# symmetral moulds form the matching group
e = mould_exp(bracket.scale(Fraction(1, 2)))
print("exp(alternal) is symmetral:", is_symmetral(e))
print("products and inverses stay symmetral:",
      is_symmetral(half.materialize(AB, 3) * e)
      and is_symmetral(e.mult_inverse()))
