"""Truncated mould algebra over a finite alphabet.

A mould assigns a value to every word over an alphabet.  We store values for
all words up to a truncation length; asking beyond it raises
:class:`~resurgence.errors.TruncationError`.  Values live in any commutative
ring that supports ``+``, ``*``, integer/Fraction multiples, and an
``is_zero`` test: exact scalars for the core calculus, truncated series for
the monomial-valued moulds.

Operations
----------

* ``M * N`` is the mould product ``(M*N)^w = sum over w = a.b of M^a N^b``
  (noncommutative, associative, unit ``unit_mould``).
* ``M.compose(U)`` is mould composition,

      (M o U)^w = sum over w = w1...ws (consecutive nonempty blocks)
                  of M^(|w1|,...,|ws|) * U^w1 ... U^ws

  where ``|wi|`` is the sum of the block's letters.  The needed sums must be
  letters of ``M``'s alphabet, otherwise
  :class:`~resurgence.errors.CarrierEscapeError` is raised (the identity and
  other rule-backed moulds accept any letter).  ``identity_mould`` is the
  two-sided composition unit.
* ``mould_exp`` and ``mould_log`` are mutually inverse bijections between
  moulds vanishing on the empty word and moulds equal to 1 there.
* ``M.mult_inverse()`` and ``comp_inverse(V)`` solve for the group inverses
  order by order.

Symmetry predicates check the shuffle laws (alternal and symmetral) and the
stuffle laws (alternel and symmetrel) by exhaustive enumeration of word
pairs up to the truncation length.

Named moulds: ``unit_mould`` (1 on the empty word), ``identity_mould``
(1 on single letters), ``exp_scale_mould(w)`` with values w^r / r!, and
``passage_mould`` which is 1/(r1! ... rs!) on words whose arguments are
non-decreasing within a half-open sector and 0 otherwise (the ri are the
run lengths of letters sharing a ray; the predicate tests confirm it is
symmetral).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import CarrierEscapeError, TruncationError
from .scalars import ExactScalar
from .words import EMPTY, Alphabet, Word, shuffle, splittings, stuffle

__all__ = [
    "Mould",
    "unit_mould",
    "identity_mould",
    "exp_scale_mould",
    "passage_mould",
    "mould_exp",
    "mould_log",
    "comp_inverse",
    "is_alternal",
    "is_symmetral",
    "is_alternel",
    "is_symmetrel",
    "mould_to_json",
    "mould_from_json",
]


def _is_zero_value(v) -> bool:
    if hasattr(v, "is_zero"):
        return v.is_zero()
    return v == 0


def _scale(c, v):
    """Multiply a value by an integer or Fraction coefficient."""
    if c == 1:
        return v
    if isinstance(v, ExactScalar):
        return v * c
    return c * v


class Mould:
    """A mould: either a table of values for words up to ``max_length``
    (dict-backed), or a ``rule`` callable evaluated on demand (rule-backed,
    unbounded, accepts any letters).
    """

    def __init__(self, alphabet: Alphabet | None, max_length: int | None,
                 entries: dict | None = None, rule=None, zero=None):
        if (entries is None) == (rule is None):
            raise ValueError("provide exactly one of entries or rule")
        if entries is not None:
            if alphabet is None or max_length is None:
                raise ValueError("dict-backed moulds need alphabet and max_length")
        self.alphabet = alphabet
        self.max_length = max_length
        self.rule = rule
        self._zero = ExactScalar() if zero is None else zero
        if entries is not None:
            self.entries = {
                Word(w): v for w, v in entries.items() if not _is_zero_value(v)
            }
            self._cache = None
        else:
            self.entries = None
            self._cache = {}

    # -- lookup ---------------------------------------------------------------

    @property
    def zero(self):
        return self._zero

    def __getitem__(self, word):
        word = Word(word)
        if self.rule is not None:
            if word not in self._cache:
                self._cache[word] = self.rule(word)
            return self._cache[word]
        if len(word) > self.max_length:
            raise TruncationError(
                f"mould entry at length {len(word)} requested, stored up to "
                f"{self.max_length}",
                requested=len(word),
                stored=self.max_length,
            )
        for a in word:
            if a not in self.alphabet:
                raise CarrierEscapeError(
                    f"letter {a!r} is not in the mould's alphabet",
                    letter=str(a),
                )
        return self.entries.get(word, self._zero)

    def is_rule_backed(self) -> bool:
        return self.rule is not None

    def materialize(self, alphabet: Alphabet, max_length: int) -> "Mould":
        """Turn a rule-backed mould into a table over the given alphabet."""
        entries = {w: self[w] for w in alphabet.words(max_length)}
        return Mould(alphabet, max_length, entries=entries, zero=self._zero)

    def words(self):
        """Words of the stored support (dict-backed only), sorted."""
        if self.entries is None:
            raise ValueError("rule-backed mould has no finite support")
        return sorted(self.entries, key=lambda w: (len(w), tuple(map(repr, w))))

    # -- structural helpers -----------------------------------------------------

    def _binary_context(self, other: "Mould"):
        """Common (alphabet, max_length) for a binary operation."""
        if self.entries is not None and other.entries is not None:
            if self.alphabet != other.alphabet:
                raise ValueError("moulds have different alphabets")
            return self.alphabet, min(self.max_length, other.max_length)
        if self.entries is not None:
            return self.alphabet, self.max_length
        if other.entries is not None:
            return other.alphabet, other.max_length
        raise ValueError(
            "binary operations on two rule-backed moulds need materialize() first"
        )

    def same_entries(self, other: "Mould", max_length: int | None = None,
                     alphabet: Alphabet | None = None) -> bool:
        """Do both moulds agree on all words up to a common truncation?"""
        if alphabet is None:
            alphabet, upto = self._binary_context(other)
        else:
            upto = max_length
        if max_length is not None:
            upto = max_length
        return all(self[w] == other[w] for w in alphabet.words(upto))

    # -- pointwise operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Mould):
            return NotImplemented
        alphabet, L = self._binary_context(other)
        entries = {w: self[w] + other[w] for w in alphabet.words(L)}
        return Mould(alphabet, L, entries=entries, zero=self._zero)

    def __sub__(self, other):
        if not isinstance(other, Mould):
            return NotImplemented
        alphabet, L = self._binary_context(other)
        entries = {w: self[w] - other[w] for w in alphabet.words(L)}
        return Mould(alphabet, L, entries=entries, zero=self._zero)

    def scale(self, c) -> "Mould":
        """Pointwise multiple by a coefficient (integer, Fraction, scalar)."""
        if self.entries is None:
            rule = self.rule
            return Mould(self.alphabet, None, rule=lambda w: _scale(c, rule(w)),
                         zero=self._zero)
        entries = {w: _scale(c, v) for w, v in self.entries.items()}
        return Mould(self.alphabet, self.max_length, entries=entries,
                     zero=self._zero)

    # -- mould product -------------------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, Mould):
            return NotImplemented
        alphabet, L = self._binary_context(other)
        entries = {}
        for w in alphabet.words(L):
            acc = None
            for k in range(len(w) + 1):
                term = self[w[:k]] * other[w[k:]]
                acc = term if acc is None else acc + term
            entries[w] = acc
        return Mould(alphabet, L, entries=entries, zero=self._zero)

    def power(self, k: int) -> "Mould":
        """k-fold mould product; k = 0 gives the unit."""
        if k < 0:
            raise ValueError("negative mould powers go through mult_inverse")
        alphabet, L = (self.alphabet, self.max_length)
        if alphabet is None or L is None:
            raise ValueError("materialize a rule-backed mould before power()")
        out = unit_mould(alphabet).materialize(alphabet, L)
        base = self
        for _ in range(k):
            out = out * base
        return out

    def mult_inverse(self) -> "Mould":
        """Inverse for the mould product, solved order by order.

        Requires an invertible value on the empty word (for scalar values, a
        monomial)."""
        if self.entries is None:
            raise ValueError("materialize a rule-backed mould before inverting")
        one = _one_like(self._zero)
        inv_empty = one / self[EMPTY]
        entries = {EMPTY: inv_empty}
        for w in self.alphabet.words(self.max_length, min_length=1):
            acc = None
            for k in range(1, len(w) + 1):
                # split w = a.b with a nonempty; b is already solved
                term = self[w[:k]] * entries[w[k:]]
                acc = term if acc is None else acc + term
            entries[Word(w)] = _scale(-1, inv_empty * acc)
        return Mould(self.alphabet, self.max_length, entries=entries,
                     zero=self._zero)

    # -- composition -----------------------------------------------------------------

    def compose(self, inner: "Mould") -> "Mould":
        """Mould composition self o inner (see module docstring).

        The result lives over ``inner``'s alphabet.  Letter sums outside
        self's alphabet raise CarrierEscapeError, unless self is rule-backed
        (the identity mould accepts any letters, so I o U = U always works).
        """
        if inner.entries is None:
            raise ValueError("materialize the inner mould before composing")
        alphabet, L = inner.alphabet, inner.max_length
        if self.entries is not None and self.max_length < L:
            L = self.max_length
        entries = {EMPTY: self[EMPTY]}
        for w in alphabet.words(L, min_length=1):
            acc = None
            for blocks in splittings(w):
                prod = None
                for block in blocks:
                    v = inner[block]
                    if _is_zero_value(v):
                        prod = None
                        break
                    prod = v if prod is None else prod * v
                if prod is None:
                    continue
                sums = Word(alphabet.word_sum(b) for b in blocks)
                if self.entries is not None:
                    for s in sums:
                        if s not in self.alphabet:
                            raise CarrierEscapeError(
                                f"composition needs outer entry at letter {s!r},"
                                f" which is outside the alphabet",
                                letter=str(s),
                            )
                outer = self[sums]
                if _is_zero_value(outer):
                    continue
                term = outer * prod
                acc = term if acc is None else acc + term
            if acc is not None:
                entries[Word(w)] = acc
        return Mould(alphabet, L, entries=entries, zero=inner._zero)

    # -- misc -----------------------------------------------------------------------

    def __repr__(self):
        if self.entries is None:
            return "<Mould rule-backed>"
        n = len(self.entries)
        return (f"<Mould over {len(self.alphabet)} letters, length <= "
                f"{self.max_length}, {n} nonzero entries>")


def _one_like(zero):
    """A multiplicative unit in the same ring as the given zero value."""
    if isinstance(zero, ExactScalar):
        return ExactScalar.from_rational(1)
    return zero.one()


# -- named moulds ---------------------------------------------------------------------


def unit_mould(alphabet: Alphabet | None = None) -> Mould:
    """The product unit: 1 on the empty word, 0 elsewhere."""
    one = ExactScalar.from_rational(1)
    zero = ExactScalar()
    return Mould(alphabet, None, rule=lambda w: one if len(w) == 0 else zero)


def identity_mould(alphabet: Alphabet | None = None) -> Mould:
    """The composition identity: 1 on single-letter words, 0 elsewhere."""
    one = ExactScalar.from_rational(1)
    zero = ExactScalar()
    return Mould(alphabet, None, rule=lambda w: one if len(w) == 1 else zero)


def exp_scale_mould(w, alphabet: Alphabet | None = None) -> Mould:
    """The symmetral mould with value w^r / r! on words of length r."""
    w = ExactScalar.coerce(w) if not isinstance(w, ExactScalar) else w

    def rule(word):
        r = len(word)
        return w**r / math.factorial(r)

    return Mould(alphabet, None, rule=rule)


def passage_mould(alphabet: Alphabet, theta, theta_prime, prec: int = 80) -> Mould:
    """The sector-passage mould for the half-open sector theta < arg <= theta'.

    Nonzero exactly on words whose letters all have argument in the sector
    and appear with non-decreasing argument; the value is then
    1/(r1! ... rs!) where the ri are the lengths of the maximal runs of
    letters sharing a ray.  Letters must be exact scalars whose ray is
    exactly decidable (monomials without log factors); run boundaries use
    the exact same-ray test, only the sector bounds are compared numerically.
    """
    import mpmath

    letters = []
    for a in alphabet:
        if not isinstance(a, ExactScalar):
            a = ExactScalar.coerce(a)
        letters.append(a)
    with mpmath.workprec(prec):
        lo = mpmath.mpf(theta)
        hi = mpmath.mpf(theta_prime)
        tol = mpmath.mpf(2) ** (-prec // 2)
        in_sector = {}
        args = {}
        for a in letters:
            ang = a.arg(prec)
            # normalize into (lo, lo + 2*pi]
            twopi = 2 * mpmath.pi
            while ang <= lo:
                ang += twopi
            while ang > lo + twopi:
                ang -= twopi
            args[a] = ang
            in_sector[a] = (ang > lo + tol) and (ang <= hi + tol)

    def rule(word):
        zero = ExactScalar()
        scalars = [a if isinstance(a, ExactScalar) else ExactScalar.coerce(a)
                   for a in word]
        if not scalars:
            return ExactScalar.from_rational(1)
        for a in scalars:
            if a not in in_sector:
                raise CarrierEscapeError(
                    f"passage mould letter {a} outside the declared alphabet",
                    letter=str(a),
                )
            if not in_sector[a]:
                return zero
        runs = [1]
        for prev, cur in zip(scalars, scalars[1:]):
            if prev.same_ray(cur):
                runs[-1] += 1
            elif args[prev] < args[cur]:
                runs.append(1)
            else:
                return zero
        denom = 1
        for r in runs:
            denom *= math.factorial(r)
        return ExactScalar.from_rational(Fraction(1, denom))

    return Mould(Alphabet(letters), None, rule=rule)


# -- exponential and logarithm ----------------------------------------------------------


def mould_exp(m: Mould) -> Mould:
    """exp for the mould product; requires a zero value on the empty word."""
    if m.entries is None:
        raise ValueError("materialize a rule-backed mould before mould_exp")
    if not _is_zero_value(m[EMPTY]):
        raise ValueError("mould_exp needs value 0 on the empty word")
    L = m.max_length
    out = unit_mould(m.alphabet).materialize(m.alphabet, L)
    term = out
    for k in range(1, L + 1):
        term = term * m
        out = out + term.scale(Fraction(1, math.factorial(k)))
    return out


def mould_log(m: Mould) -> Mould:
    """log for the mould product; requires value 1 on the empty word."""
    if m.entries is None:
        raise ValueError("materialize a rule-backed mould before mould_log")
    one = _one_like(m.zero)
    if m[EMPTY] != one:
        raise ValueError("mould_log needs value 1 on the empty word")
    L = m.max_length
    rest = m - unit_mould(m.alphabet).materialize(m.alphabet, L)
    out = Mould(m.alphabet, L, entries={}, zero=m.zero)
    term = unit_mould(m.alphabet).materialize(m.alphabet, L)
    for k in range(1, L + 1):
        term = term * rest
        out = out + term.scale(Fraction((-1) ** (k + 1), k))
    return out


def comp_inverse(v: Mould, letters=None) -> Mould:
    """Inverse for mould composition, solved order by order.

    Requires value 0 on the empty word and invertible values on all
    single-letter words.  By default the result is supported on v's own
    alphabet; pass ``letters`` to solve over a sub-alphabet (needed when v's
    alphabet is a sum closure and only base letters make sense as inputs).
    """
    if v.entries is None:
        raise ValueError("materialize the mould before comp_inverse")
    if not _is_zero_value(v[EMPTY]):
        raise ValueError("comp_inverse needs value 0 on the empty word")
    support = Alphabet(letters) if letters is not None else v.alphabet
    L = v.max_length
    one = _one_like(v.zero)
    entries: dict[Word, object] = {}
    for w in support.words(L, min_length=1):
        if len(w) == 1:
            val = v[w]
            if _is_zero_value(val):
                raise ValueError(
                    f"comp_inverse needs an invertible entry at {tuple(w)!r}"
                )
            entries[w] = one / val
            continue
        total = v.alphabet.word_sum(w)
        if total not in v.alphabet:
            raise CarrierEscapeError(
                f"comp_inverse needs the outer mould at letter {total!r}, "
                f"which is outside the alphabet",
                letter=str(total),
            )
        head = v[Word((total,))]
        if _is_zero_value(head):
            raise ValueError(
                f"comp_inverse needs an invertible entry at ({total!r},)"
            )
        # (v o w_inv)^w = 0: isolate the single-block term
        acc = None
        for blocks in splittings(w):
            if len(blocks) == 1:
                continue
            prod = None
            for block in blocks:
                val = entries.get(Word(block))
                if val is None or _is_zero_value(val):
                    prod = None
                    break
                prod = val if prod is None else prod * val
            if prod is None:
                continue
            sums = Word(v.alphabet.word_sum(b) for b in blocks)
            outer = v[sums]
            if _is_zero_value(outer):
                continue
            term = outer * prod
            acc = term if acc is None else acc + term
        if acc is None:
            continue
        entries[Word(w)] = _scale(-1, acc / head)
    return Mould(support, L, entries=entries, zero=v.zero)


# -- symmetry predicates ------------------------------------------------------------------


def _pairs(alphabet: Alphabet, max_total: int):
    for la in range(1, max_total):
        for lb in range(1, max_total - la + 1):
            for a in alphabet.words(la, min_length=la):
                for b in alphabet.words(lb, min_length=lb):
                    yield a, b


def _pair_alphabet(m: Mould, letters):
    if letters is not None:
        return Alphabet(letters)
    return m.alphabet


def _combine(m: Mould, table: dict):
    acc = None
    for w, mult in table.items():
        v = _scale(mult, m[w])
        acc = v if acc is None else acc + v
    return m.zero if acc is None else acc


def is_alternal(m: Mould, max_length: int | None = None, letters=None) -> bool:
    """sum over shuffles vanishes for every pair of nonempty words.

    ``letters`` restricts the enumerated pairs to a sub-alphabet; useful when
    the mould's own alphabet is a sum closure.
    """
    L = max_length if max_length is not None else m.max_length
    return all(
        _is_zero_value(_combine(m, shuffle(a, b)))
        for a, b in _pairs(_pair_alphabet(m, letters), L)
    )


def is_symmetral(m: Mould, max_length: int | None = None, letters=None) -> bool:
    """sum over shuffles equals the product of the two values."""
    L = max_length if max_length is not None else m.max_length
    return all(
        _combine(m, shuffle(a, b)) == m[a] * m[b]
        for a, b in _pairs(_pair_alphabet(m, letters), L)
    )


def is_alternel(m: Mould, max_length: int | None = None, letters=None) -> bool:
    """sum over stuffles vanishes for every pair of nonempty words.

    Stuffle contractions must stay inside the mould's alphabet; restrict the
    enumerated ``letters`` so they do.
    """
    L = max_length if max_length is not None else m.max_length
    return all(
        _is_zero_value(_combine(m, stuffle(a, b)))
        for a, b in _pairs(_pair_alphabet(m, letters), L)
    )


def is_symmetrel(m: Mould, max_length: int | None = None, letters=None) -> bool:
    """sum over stuffles equals the product of the two values."""
    L = max_length if max_length is not None else m.max_length
    return all(
        _combine(m, stuffle(a, b)) == m[a] * m[b]
        for a, b in _pairs(_pair_alphabet(m, letters), L)
    )


# -- serialization ---------------------------------------------------------------------------


def _letter_to_json(a):
    if isinstance(a, int):
        return {"kind": "int", "value": a}
    if isinstance(a, ExactScalar):
        return {"kind": "scalar", "value": a.to_json()}
    if isinstance(a, tuple) and len(a) == 2:
        return {"kind": "indexed", "s": a[0], "eps": str(Fraction(a[1]))}
    raise TypeError(f"cannot serialize letter {a!r}")


def _letter_from_json(d):
    if d["kind"] == "int":
        return d["value"]
    if d["kind"] == "scalar":
        return ExactScalar.from_json(d["value"])
    if d["kind"] == "indexed":
        return (d["s"], Fraction(d["eps"]))
    raise ValueError(f"unknown letter kind {d['kind']!r}")


def mould_to_json(m: Mould) -> dict:
    """Bit-exact JSON form of a dict-backed mould with scalar values."""
    if m.entries is None:
        raise ValueError("rule-backed moulds have no finite JSON form")
    return {
        "alphabet": [_letter_to_json(a) for a in m.alphabet],
        "max_length": m.max_length,
        "entries": [
            {"word": [_letter_to_json(a) for a in w], "value": m.entries[w].to_json()}
            for w in m.words()
        ],
    }


def mould_from_json(data: dict) -> Mould:
    alphabet = Alphabet([_letter_from_json(d) for d in data["alphabet"]])
    entries = {
        Word(tuple(_letter_from_json(a) for a in item["word"])):
            ExactScalar.from_json(item["value"])
        for item in data["entries"]
    }
    return Mould(alphabet, data["max_length"], entries=entries)
