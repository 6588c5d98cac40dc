"""Representable Borel transforms: exact germs, branches, singularities.

The Borel plane objects the symbolic layer works with are built from a few
closed shapes, each carried exactly:

* :class:`RationalBF`: a rational function with factored denominator over a
  declared pole set (numerators and roots are exact scalars);
* :class:`LogPoleBF`: r_0(zeta) + sum of r_i(zeta) * log(1 - zeta/a_i), the
  shape produced by convolving simple poles, with an integer branch index
  per logarithm;
* :class:`StirlingBF`: the meromorphic minor zeta^-2 (zeta/2 coth(zeta/2) - 1)
  with its lattice of simple poles at 2*pi*i*k;
* :class:`DilogBF`: the dilogarithm minor with its loop monodromy at 1;
* :class:`PowerBF`: g(sigma) zeta^(sigma-1) (optionally times log zeta) for
  fractional-power monomials, evaluated in polar form so Hankel contours can
  track the argument continuously.

Branch bookkeeping follows one convention throughout the package: the
principal branch uses arg in (-pi, pi], a "+" detour passes *below* the
singular point (to the right when traveling outward), and a full
counterclockwise loop adds one to a log's branch integer k, the branch value
being  principal + 2*pi*i*k.  With that convention a "+" detour at a point
leaves k unchanged (the on-cut principal value is already the lower-side
limit continued through), while a "-" detour subtracts one.

``extract_singularity`` computes the simple-singularity data at a point
omega reached along a path: the polar weight a_0 and the log coefficient
chi with

    f(omega + xi) = a_0 / (2*pi*i*xi) + chi(xi) log(xi) / (2*pi*i) + F(xi),

where F is branch-dependent and never stored.  Exactness policy: a_0 and
chi come out in the scalar ring whenever the configuration is collinear
with rational ratios (the supported calculus); genuinely non-simple input
raises :class:`~resurgence.errors.NotSimpleError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import NotSimpleError, UnreachableBranchError
from .scalars import ExactScalar, GaussianRational
from .series import BorelSeries

__all__ = [
    "RationalFunction",
    "BorelFunction",
    "RationalBF",
    "LogPoleBF",
    "StirlingBF",
    "DilogBF",
    "PowerBF",
    "PathSpec",
    "SingularityData",
    "points_between",
    "continue_along",
    "continue_eval",
    "extract_singularity",
    "convolve",
    "euler_minor",
    "stirling_minor",
    "dilog_minor",
    "power_minor",
]


# -- exact univariate polynomial helpers (coefficient lists, index = power) --------


def _poly_trim(p):
    while p and p[-1].is_zero():
        p = p[:-1]
    return p


def _poly_divmod(num, den):
    """Exact polynomial division; the leading denominator coefficient must
    divide in the scalar ring (it is a monomial in every supported flow)."""
    den = _poly_trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    num = list(num)
    quot = [ExactScalar()] * max(0, len(num) - len(den) + 1)
    while True:
        num = _poly_trim(num)
        if len(num) < len(den):
            return _poly_trim(quot), num
        shift = len(num) - len(den)
        c = num[-1] / den[-1]
        quot[shift] = quot[shift] + c
        for i, d in enumerate(den):
            num[shift + i] = num[shift + i] - c * d


def _poly_add(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else ExactScalar()
        b = q[i] if i < len(q) else ExactScalar()
        out.append(a + b)
    return _poly_trim(out)


def _poly_scale(p, c):
    return _poly_trim([v * c for v in p])


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [ExactScalar() for _ in range(len(p) + len(q) - 1)]
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return _poly_trim(out)


def _poly_eval(p, x: ExactScalar) -> ExactScalar:
    acc = ExactScalar()
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_eval_numeric(p, x, prec: int):
    with mpmath.workprec(prec + 16):
        acc = mpmath.mpc(0)
        for c in reversed(p):
            acc = acc * x + c.evaluate(prec + 16)
        return acc


def _poly_shift(p, a: ExactScalar):
    """Coefficients of p(x + a) (recentring at a)."""
    out = [ExactScalar() for _ in p]
    for k, c in enumerate(p):
        if c.is_zero():
            continue
        # (x + a)^k = sum of C(k, j) a^(k-j) x^j
        for j in range(k + 1):
            out[j] = out[j] + c * math.comb(k, j) * a ** (k - j)
    return _poly_trim(out)


def _series_mul(p, q, order):
    out = [ExactScalar() for _ in range(order + 1)]
    for i, a in enumerate(p[: order + 1]):
        if a.is_zero():
            continue
        for j, b in enumerate(q[: order + 1 - i]):
            out[i + j] = out[i + j] + a * b
    return out


class RationalFunction:
    """num(zeta) / (lead * product over poles of (zeta - p)^m), all exact.

    The denominator stays factored over its declared pole set; that keeps
    residues and local expansions exact without polynomial factoring.
    """

    def __init__(self, num, poles=None, lead=1):
        self.num = _poly_trim([ExactScalar.coerce(c) if not isinstance(c, ExactScalar)
                               else c for c in num])
        clean = {}
        for p, m in (poles or {}).items():
            p = p if isinstance(p, ExactScalar) else ExactScalar.coerce(p)
            if m < 0:
                raise ValueError("pole multiplicities must be >= 0")
            if m:
                clean[p] = clean.get(p, 0) + m
        self.poles = clean
        self.lead = lead if isinstance(lead, ExactScalar) else ExactScalar.coerce(lead)
        if self.lead.is_zero():
            raise ZeroDivisionError("zero leading denominator coefficient")
        if not self.num:
            self.poles = {}
            self.lead = ExactScalar.from_rational(1)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls([])

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls([c])

    @classmethod
    def simple_pole(cls, p, residue=1) -> "RationalFunction":
        """residue / (zeta - p)."""
        return cls([residue], poles={p: 1})

    def is_zero(self) -> bool:
        return not self.num

    def denominator_poly(self):
        den = [self.lead]
        for p, m in self.poles.items():
            lin = [-(p if isinstance(p, ExactScalar) else ExactScalar.coerce(p)),
                   ExactScalar.from_rational(1)]
            for _ in range(m):
                den = _poly_mul(den, lin)
        return den

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        # common denominator: union of pole multiplicities
        poles = dict(self.poles)
        for p, m in other.poles.items():
            poles[p] = max(poles.get(p, 0), m)
        lead = self.lead * other.lead

        def lift(rf, cofactor):
            extra = [cofactor]
            for p, m in poles.items():
                need = m - rf.poles.get(p, 0)
                lin = [-p, ExactScalar.from_rational(1)]
                for _ in range(need):
                    extra = _poly_mul(extra, lin)
            return _poly_mul(rf.num, extra)

        num = _poly_add(lift(self, other.lead), lift(other, self.lead))
        return RationalFunction(num, poles=poles, lead=lead)

    def __neg__(self):
        return RationalFunction(_poly_scale(self.num, -1), poles=self.poles,
                                lead=self.lead)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        poles = dict(self.poles)
        for p, m in other.poles.items():
            poles[p] = poles.get(p, 0) + m
        return RationalFunction(
            _poly_mul(self.num, other.num), poles=poles,
            lead=self.lead * other.lead,
        )

    def scale(self, c) -> "RationalFunction":
        return RationalFunction(_poly_scale(self.num, c), poles=self.poles,
                                lead=self.lead)

    def divide_linear(self, p) -> "RationalFunction":
        """Divide by (zeta - p)."""
        poles = dict(self.poles)
        key = p if isinstance(p, ExactScalar) else ExactScalar.coerce(p)
        poles[key] = poles.get(key, 0) + 1
        return RationalFunction(self.num, poles=poles, lead=self.lead)

    # -- analysis -------------------------------------------------------------------

    def _reduced_at(self, p):
        """(numerator, multiplicity) at p after cancelling numerator zeros."""
        m = self.poles.get(p, 0)
        num = self.num
        while m > 0 and num and _poly_eval(num, p).is_zero():
            # divide num by (zeta - p) synthetically; the remainder is 0
            quotient = []
            carry = ExactScalar()
            for c in reversed(num):
                carry = carry * p + c
                quotient.append(carry)
            num = _poly_trim(list(reversed(quotient[:-1])))
            m -= 1
        return num, m

    def pole_order(self, p) -> int:
        p = p if isinstance(p, ExactScalar) else ExactScalar.coerce(p)
        return self._reduced_at(p)[1]

    def residue(self, p) -> ExactScalar:
        """Residue at a simple pole p (exact)."""
        p = p if isinstance(p, ExactScalar) else ExactScalar.coerce(p)
        num, m = self._reduced_at(p)
        if m > 1:
            raise NotSimpleError(f"pole at {p} has order > 1", point=str(p))
        if m == 0:
            return ExactScalar()
        denom = self.lead
        for q, mq in self.poles.items():
            if q != p:
                denom = denom * (p - q) ** mq
        return _poly_eval(num, p) / denom

    def exact_eval(self, x) -> ExactScalar:
        x = x if isinstance(x, ExactScalar) else ExactScalar.coerce(x)
        denom = self.lead
        for p, m in self.poles.items():
            diff = x - p
            if diff.is_zero():
                raise ZeroDivisionError(f"evaluation at pole {p}")
            denom = denom * diff**m
        return _poly_eval(self.num, x) / denom

    def numeric_eval(self, z, prec: int = 53):
        with mpmath.workprec(prec + 16):
            zv = mpmath.mpmathify(z)
            val = _poly_eval_numeric(self.num, zv, prec)
            den = self.lead.evaluate(prec + 16)
            for p, m in self.poles.items():
                den *= (zv - p.evaluate(prec + 16)) ** m
            out = val / den
        with mpmath.workprec(prec):
            return +out

    def taylor_at(self, center, order: int):
        """Exact Taylor coefficients at a regular point, as a list."""
        center = center if isinstance(center, ExactScalar) \
            else ExactScalar.coerce(center)
        num_local = _poly_shift(self.num, center)
        num_local += [ExactScalar()] * max(0, order + 1 - len(num_local))
        series = num_local[: order + 1]
        inv_lead = ExactScalar.from_rational(1) / self.lead
        series = [c * inv_lead for c in series]
        for p, m in self.poles.items():
            base = center - p
            if base.is_zero():
                raise ZeroDivisionError(f"Taylor expansion at the pole {p}")
            # 1/(xi + base)^m = base^-m * sum of C(-m, k) (xi/base)^k
            inv = []
            for k in range(order + 1):
                coeff = Fraction((-1) ** k * math.comb(m + k - 1, k))
                inv.append(base ** (-(m + k)) * coeff)
            series = _series_mul(series, inv, order)
        return series

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        left = _poly_mul(self.num, other.denominator_poly())
        right = _poly_mul(other.num, self.denominator_poly())
        return left == right

    def __repr__(self):
        if self.is_zero():
            return "<RationalFunction 0>"
        ps = ", ".join(f"{p}^{m}" if m > 1 else f"{p}"
                       for p, m in self.poles.items())
        return f"<RationalFunction deg {len(self.num) - 1} / poles [{ps}]>"


# -- path specifications -----------------------------------------------------------


@dataclass(frozen=True)
class PathSpec:
    """A continuation path: the straight segment from 0 toward ``target``,
    with one sign per singular point crossed strictly inside the segment
    ("+" passes below, "-" above), plus optional full loops (point, turns)
    appended at the end (positive turns are counterclockwise).
    """

    target: object
    signs: tuple = ()
    loops: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for s in self.signs:
            if s not in ("+", "-", 1, -1):
                raise ValueError(f"detour sign must be '+' or '-', got {s!r}")

    def sign_values(self):
        return tuple(1 if s in ("+", 1) else -1 for s in self.signs)


def _exact(x) -> ExactScalar:
    return x if isinstance(x, ExactScalar) else ExactScalar.coerce(x)


def _segment_ratio(point: ExactScalar, target: ExactScalar):
    """Exact ratio point/target when it is a rational in (0, 1), else None."""
    try:
        q = point / target
    except Exception:
        return None
    if not q.is_rational():
        return None
    r = q.as_fraction()
    if 0 < r < 1:
        return r
    return None


def _intermediate_points(singular, target):
    """Singular points strictly inside the segment (0, target), in order."""
    found = []
    for s in singular:
        r = _segment_ratio(_exact(s), _exact(target))
        if r is not None:
            found.append((r, _exact(s)))
    found.sort(key=lambda t: t[0])
    return [s for _, s in found]


# -- the Borel function variants ------------------------------------------------------


class BorelFunction:
    """Base class; see module docstring for the shared conventions."""

    def singular_points(self):
        raise NotImplementedError

    def numeric_eval(self, zeta, prec: int = 53):
        raise NotImplementedError

    def _with_branch_updates(self, passed_with_signs, loops):
        """Return a copy continued past the given (point, sign) list."""
        if passed_with_signs or loops:
            raise UnreachableBranchError(
                f"{type(self).__name__} carries no branch state for this path"
            )
        return self

    def taylor(self, order: int) -> BorelSeries:
        raise NotImplementedError


class RationalBF(BorelFunction):
    def __init__(self, rat: RationalFunction):
        self.rat = rat

    def singular_points(self):
        return [p for p in self.rat.poles if self.rat.pole_order(p) > 0]

    def numeric_eval(self, zeta, prec: int = 53):
        return self.rat.numeric_eval(zeta, prec)

    def _with_branch_updates(self, passed_with_signs, loops):
        # meromorphic: any detour choice yields the same germ
        return self

    def divide_linear(self, p) -> "RationalBF":
        return RationalBF(self.rat.divide_linear(p))

    def taylor(self, order: int) -> BorelSeries:
        return BorelSeries(0, self.rat.taylor_at(ExactScalar(), order))

    def __repr__(self):
        return f"<RationalBF {self.rat!r}>"


class LogPoleBF(BorelFunction):
    """r_0(zeta) + sum of r_i(zeta) * [Log(1 - zeta/a_i) + 2*pi*i*k_i]."""

    def __init__(self, rational_part: RationalFunction, log_terms):
        self.rational_part = rational_part
        terms = []
        seen = set()
        for item in log_terms:
            if len(item) == 2:
                a, r = item
                k = 0
            else:
                a, r, k = item
            a = _exact(a)
            if a.is_zero():
                raise ValueError("log branch point at the origin is not allowed")
            if a in seen:
                raise ValueError(f"duplicate log branch point {a}")
            seen.add(a)
            if not r.is_zero():
                terms.append((a, r, int(k)))
        self.log_terms = terms

    def singular_points(self):
        pts = {p for p in self.rational_part.poles
               if self.rational_part.pole_order(p) > 0}
        for a, r, _k in self.log_terms:
            pts.add(a)
            pts.update(p for p in r.poles if r.pole_order(p) > 0)
        return sorted(pts, key=lambda s: s.sort_key())

    def numeric_eval(self, zeta, prec: int = 53):
        with mpmath.workprec(prec + 16):
            zv = mpmath.mpmathify(zeta)
            total = self.rational_part.numeric_eval(zv, prec + 16)
            tau = 2 * mpmath.pi * mpmath.mpc(0, 1)
            for a, r, k in self.log_terms:
                av = a.evaluate(prec + 16)
                logval = mpmath.log(1 - zv / av) + k * tau
                total += r.numeric_eval(zv, prec + 16) * logval
        with mpmath.workprec(prec):
            return +total

    def log_value_at(self, a: ExactScalar, point: ExactScalar) -> ExactScalar:
        """Exact branch value of Log(1 - zeta/a) + 2*pi*i*k at an exact point.

        Supported when w = 1 - point/a is a nonzero rational: the value is
        log|w| (+ i*pi if w < 0) + 2*pi*i*k.  Other configurations are not
        representable in the scalar ring and raise ValueError.
        """
        for ai, r, k in self.log_terms:
            if ai == a:
                w = ExactScalar.from_rational(1) - point / ai
                if not w.is_rational() or w.is_zero():
                    raise ValueError(
                        f"branch value of log at {point} (base point {a}) is "
                        f"not representable in the scalar ring"
                    )
                q = w.as_fraction()
                if q > 0:
                    val = ExactScalar.log_rational(q)
                else:
                    val = ExactScalar.log_rational(-q) + ExactScalar.i_pi()
                return val + ExactScalar.tau() * k
        raise ValueError(f"no log term with branch point {a}")

    def _with_branch_updates(self, passed_with_signs, loops):
        ks = {a: k for a, _r, k in self.log_terms}
        for point, sign in passed_with_signs:
            if point in ks:
                # "+" (below) continues onto the principal on-cut branch,
                # "-" (above) drops one full turn
                if sign < 0:
                    ks[point] = ks[point] - 1
        for point, turns in loops:
            point = _exact(point)
            if point in ks:
                ks[point] = ks[point] + int(turns)
            elif point not in self.singular_points():
                raise UnreachableBranchError(
                    f"loop around {point}, which is not a singular point",
                    point=str(point),
                )
        return LogPoleBF(
            self.rational_part,
            [(a, r, ks[a]) for a, r, _k in self.log_terms],
        )

    def divide_linear(self, p) -> "LogPoleBF":
        return LogPoleBF(
            self.rational_part.divide_linear(p),
            [(a, r.divide_linear(p), k) for a, r, k in self.log_terms],
        )

    def taylor(self, order: int) -> BorelSeries:
        coeffs = self.rational_part.taylor_at(ExactScalar(), order)
        coeffs += [ExactScalar()] * (order + 1 - len(coeffs))
        for a, r, k in self.log_terms:
            # Log(1 - zeta/a) = - sum over m >= 1 of (zeta/a)^m / m
            logs = [ExactScalar.tau() * k]
            for m in range(1, order + 1):
                logs.append(a ** (-m) * Fraction(-1, m))
            rloc = r.taylor_at(ExactScalar(), order)
            prod = _series_mul(rloc, logs, order)
            coeffs = [c + p for c, p in zip(coeffs, prod)]
        return BorelSeries(0, coeffs)

    def __repr__(self):
        pts = ", ".join(f"{a}(k={k})" for a, _r, k in self.log_terms)
        return f"<LogPoleBF logs at [{pts}]>"


class StirlingBF(BorelFunction):
    """zeta^-2 (zeta/2 coth(zeta/2) - 1): simple poles at 2*pi*i*k, k != 0,
    with residue 1/(2*pi*i*k); single-valued.

    ``singular_points`` lists the first ``count`` conjugate pairs; paths
    whose targets sit farther out on the lattice than that must raise the
    count when building continuation data."""

    def singular_points(self, count: int = 8):
        tau = ExactScalar.tau()
        out = []
        for k in range(1, count + 1):
            out.append(tau * k)
            out.append(tau * (-k))
        return out

    def residue_at(self, k: int) -> ExactScalar:
        if k == 0:
            raise ValueError("the origin is a regular point")
        return ExactScalar.tau(-1) / k

    def numeric_eval(self, zeta, prec: int = 53):
        with mpmath.workprec(prec + 24):
            zv = mpmath.mpmathify(zeta)
            if abs(zv) < mpmath.mpf(1) / 2:
                # Taylor sum: sum of B_{2k+2} zeta^(2k) / (2k+2)!; the closed
                # form loses half its digits to cancellation near 0
                total = mpmath.mpc(0)
                power = mpmath.mpc(1)
                k = 0
                while True:
                    p, q = mpmath.bernfrac(2 * k + 2)
                    term = mpmath.mpf(int(p)) / int(q) / mpmath.factorial(2 * k + 2)
                    total += term * power
                    if abs(power) * abs(term) < mpmath.mpf(2) ** (-(prec + 24)) \
                            and k > 2:
                        break
                    power *= zv * zv
                    k += 1
                    if k > prec:
                        break
                out = total
            else:
                out = (zv / 2 * mpmath.coth(zv / 2) - 1) / zv**2
        with mpmath.workprec(prec):
            return +out

    def _with_branch_updates(self, passed_with_signs, loops):
        # meromorphic: all lateral paths define the same germ
        return self

    def taylor(self, order: int) -> BorelSeries:
        coeffs = []
        for n in range(order + 1):
            if n % 2 == 1:
                coeffs.append(ExactScalar())
            else:
                k = n // 2
                p, q = mpmath.bernfrac(2 * k + 2)
                coeffs.append(ExactScalar.from_rational(
                    Fraction(int(p), int(q) * math.factorial(2 * k + 2))
                ))
        return BorelSeries(0, coeffs)

    def __repr__(self):
        return "<StirlingBF>"


class DilogBF(BorelFunction):
    """The dilogarithm sum of zeta^n / n^2, with loop monodromy at 1:
    each counterclockwise loop adds -2*pi*i*log(zeta), so the state is the
    loop count n (and the continued function then has a log branch point at
    the origin, carried by the secondary index m)."""

    def __init__(self, n: int = 0, m: int = 0):
        self.n = int(n)
        self.m = int(m)

    def singular_points(self):
        pts = [ExactScalar.from_rational(1)]
        if self.n:
            pts.insert(0, ExactScalar())
        return pts

    def numeric_eval(self, zeta, prec: int = 53):
        with mpmath.workprec(prec + 16):
            zv = mpmath.mpmathify(zeta)
            total = mpmath.polylog(2, zv)
            if self.n:
                # each counterclockwise loop at 1 adds -2*pi*i*log(zeta),
                # and the log itself sits on the branch indexed by m
                tau = 2 * mpmath.pi * mpmath.mpc(0, 1)
                total += -self.n * tau * (mpmath.log(zv) + self.m * tau)
        with mpmath.workprec(prec):
            return +total

    def _with_branch_updates(self, passed_with_signs, loops):
        n, m = self.n, self.m
        one = ExactScalar.from_rational(1)
        for point, sign in passed_with_signs:
            if point == one and sign < 0:
                # passing above the cut lands one sheet down, exactly as for
                # the plain logarithm
                n -= 1
        for point, turns in loops:
            point = _exact(point)
            if point == one:
                n += int(turns)
            elif point.is_zero():
                m += int(turns)
            else:
                raise UnreachableBranchError(
                    f"the dilogarithm has no singular point at {point}",
                    point=str(point),
                )
        return DilogBF(n, m)

    def taylor(self, order: int) -> BorelSeries:
        if self.n:
            raise ValueError("no Taylor expansion at 0 after a loop at 1")
        coeffs = [ExactScalar()]
        for k in range(1, order + 1):
            coeffs.append(ExactScalar.from_rational(Fraction(1, k * k)))
        return BorelSeries(0, coeffs)

    def __repr__(self):
        return f"<DilogBF loops={self.n}, origin branch={self.m}>"


class PowerBF(BorelFunction):
    """g(sigma) zeta^(sigma-1), optionally times log(zeta), with

        g(sigma) = e^(i pi sigma) Gamma(1 - sigma) / (2 pi i).

    These are the Borel shapes of the pure monomials z^-sigma and
    -z^-sigma log z.  Evaluation is polar: the caller supplies modulus and a
    *continuous* argument, so contours that wind around the origin stay on
    the right branch by construction.
    """

    def __init__(self, sigma, with_log: bool = False):
        self.sigma = Fraction(sigma)
        if self.sigma.denominator == 1:
            raise ValueError("sigma must be non-integer (integers are poles "
                             "of the normalization)")
        self.with_log = bool(with_log)

    def g_value(self, prec: int = 53):
        with mpmath.workprec(prec + 16):
            s = mpmath.mpf(self.sigma.numerator) / self.sigma.denominator
            g = mpmath.exp(mpmath.mpc(0, 1) * mpmath.pi * s) \
                * mpmath.gamma(1 - s) / (2 * mpmath.pi * mpmath.mpc(0, 1))
        with mpmath.workprec(prec):
            return +g

    def g_prime_value(self, prec: int = 53):
        with mpmath.workprec(prec + 16):
            s = mpmath.mpf(self.sigma.numerator) / self.sigma.denominator
            g = self.g_value(prec + 16)
            gp = g * (mpmath.mpc(0, 1) * mpmath.pi - mpmath.digamma(1 - s))
        with mpmath.workprec(prec):
            return +gp

    def eval_polar(self, radius, theta, prec: int = 53):
        """Value at zeta = radius * e^(i theta), theta a continuous angle."""
        with mpmath.workprec(prec + 16):
            r = mpmath.mpf(radius)
            th = mpmath.mpf(theta)
            s = mpmath.mpf(self.sigma.numerator) / self.sigma.denominator
            logz = mpmath.log(r) + mpmath.mpc(0, 1) * th
            power = mpmath.exp((s - 1) * logz)
            if self.with_log:
                out = self.g_value(prec + 16) * power * logz \
                    + self.g_prime_value(prec + 16) * power
            else:
                out = self.g_value(prec + 16) * power
        with mpmath.workprec(prec):
            return +out

    def numeric_eval(self, zeta, prec: int = 53):
        with mpmath.workprec(prec + 16):
            zv = mpmath.mpmathify(zeta)
            return self.eval_polar(abs(zv), mpmath.arg(zv), prec)

    def singular_points(self):
        return [ExactScalar()]

    def __repr__(self):
        return f"<PowerBF sigma={self.sigma}{' with log' if self.with_log else ''}>"


# -- continuation and extraction -------------------------------------------------------


def points_between(f: BorelFunction, omega) -> list:
    """Singular points of f strictly inside the segment (0, omega), in order.

    Membership is decided exactly: a point s counts when s/omega is a
    rational number in (0, 1) in the scalar ring."""
    return _intermediate_points(f.singular_points(), _exact(omega))


def continue_along(f: BorelFunction, path: PathSpec) -> BorelFunction:
    """The branch of f reached along the path (see PathSpec)."""
    target = _exact(path.target)
    inter = _intermediate_points(f.singular_points(), target)
    signs = path.sign_values()
    if len(signs) != len(inter):
        raise UnreachableBranchError(
            f"path to {target} crosses {len(inter)} singular point(s) "
            f"{[str(s) for s in inter]} but {len(signs)} sign(s) were given",
            expected=len(inter),
            given=len(signs),
        )
    return f._with_branch_updates(list(zip(inter, signs)), tuple(
        ( _exact(p), t) for p, t in path.loops
    ))


def continue_eval(f: BorelFunction, path: PathSpec, zeta=None, prec: int = 53):
    """Numeric value of the continued branch, at the path target by default."""
    g = continue_along(f, path)
    point = path.target if zeta is None else zeta
    point_val = point.evaluate(prec) if isinstance(point, ExactScalar) else point
    return g.numeric_eval(point_val, prec)


@dataclass
class SingularityData:
    """Simple-singularity data at a point reached along a path.

    ``a0`` is the coefficient of 1/(2*pi*i*xi); ``chi`` is the exact log
    coefficient (a BorelFunction, or None when it vanishes); ``chi_series``
    its Taylor expansion; the regular remainder is branch-dependent and
    deliberately not part of the data.
    """

    point: ExactScalar
    a0: ExactScalar
    chi: BorelFunction | None
    chi_series: BorelSeries
    path: PathSpec


def extract_singularity(f: BorelFunction, omega, signs=(), order: int = 8,
                        loops=()) -> SingularityData:
    """Extract (a_0, chi) at omega along the path with the given detour signs."""
    omega = _exact(omega)
    path = PathSpec(target=omega, signs=tuple(signs), loops=tuple(loops))
    g = continue_along(f, path)
    zero_series = BorelSeries(0, [ExactScalar()] * (order + 1))
    tau = ExactScalar.tau()

    if isinstance(g, RationalBF):
        m = g.rat.pole_order(omega)
        if m > 1:
            raise NotSimpleError(f"pole of order {m} at {omega}",
                                 point=str(omega), order=m)
        a0 = tau * g.rat.residue(omega) if m == 1 else ExactScalar()
        return SingularityData(omega, a0, None, zero_series, path)

    if isinstance(g, StirlingBF):
        # omega = 2*pi*i*k
        q = omega / tau
        if not q.is_rational() or q.as_fraction().denominator != 1:
            return SingularityData(omega, ExactScalar(), None, zero_series, path)
        k = int(q.as_fraction())
        a0 = tau * g.residue_at(k) if k != 0 else ExactScalar()
        return SingularityData(omega, a0, None, zero_series, path)

    if isinstance(g, LogPoleBF):
        a0 = ExactScalar()
        if g.rational_part.pole_order(omega) > 1:
            raise NotSimpleError(f"pole of order > 1 at {omega}", point=str(omega))
        a0 = a0 + tau * g.rational_part.residue(omega)
        chi_rat = RationalFunction.zero()
        for a, r, k in g.log_terms:
            if a == omega:
                if r.pole_order(omega) > 0:
                    raise NotSimpleError(
                        f"log coefficient at {omega} is itself singular there",
                        point=str(omega),
                    )
                # r(omega + xi) log(-xi/omega): the log(xi) part feeds chi,
                # the branch constant multiplies an analytic factor (-> F)
                shifted = RationalFunction(
                    _poly_shift(r.num, omega),
                    poles={p - omega: m for p, m in r.poles.items()},
                    lead=r.lead,
                )
                chi_rat = chi_rat + shifted.scale(tau)
            else:
                if r.pole_order(omega) > 1:
                    raise NotSimpleError(
                        f"pole of order > 1 at {omega}", point=str(omega)
                    )
                rho = r.residue(omega)
                if not rho.is_zero():
                    a0 = a0 + tau * rho * g.log_value_at(a, omega)
        if chi_rat.is_zero():
            return SingularityData(omega, a0, None, zero_series, path)
        chi = RationalBF(chi_rat)
        return SingularityData(omega, a0, chi, chi.taylor(order), path)

    if isinstance(g, DilogBF):
        if omega == ExactScalar.from_rational(1):
            # Li2(1 + xi) = pi^2/6 - log(1 + xi) log(-xi) - Li2(-xi):
            # chi / (2 pi i) = -log(1 + xi), no polar part
            chi_rat_bf = LogPoleBF(
                RationalFunction.zero(),
                [(ExactScalar.from_rational(-1),
                  RationalFunction.constant(-tau), 0)],
            )
            return SingularityData(
                omega, ExactScalar(), chi_rat_bf, chi_rat_bf.taylor(order), path
            )
        if omega.is_zero() and g.n:
            # after n loops the germ at the origin is -n * 2*pi*i * log(zeta),
            # so chi = -n * (2*pi*i)^2 as a constant
            chi_const = RationalBF(
                RationalFunction.constant(tau * tau * (-g.n))
            )
            chi_series = chi_const.taylor(order)
            return SingularityData(omega, ExactScalar(), chi_const,
                                   chi_series, path)
        return SingularityData(omega, ExactScalar(), None, zero_series, path)

    raise TypeError(f"no extraction rule for {type(g).__name__}")


# -- convolution --------------------------------------------------------------------


def _convolve_monomials(i: int, j: int):
    """zeta^i * zeta^j convolution = i! j! / (i+j+1)! zeta^(i+j+1)."""
    return (
        i + j + 1,
        Fraction(math.factorial(i) * math.factorial(j),
                 math.factorial(i + j + 1)),
    )


def _poly_convolve(p, q):
    out = []
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            if b.is_zero():
                continue
            n, c = _convolve_monomials(i, j)
            while len(out) <= n:
                out.append(ExactScalar())
            out[n] = out[n] + a * b * c
    return _poly_trim(out)


def convolve(f: BorelFunction, g: BorelFunction) -> BorelFunction:
    """Convolution product (f * g)(zeta) = integral of f(u) g(zeta-u).

    Supported pairs: polynomial x polynomial, and simple-pole rational x
    polynomial (the shape needed by the monomial recursion); the latter
    produces a LogPoleBF.  Everything stays exact.
    """
    if not isinstance(f, RationalBF) or not isinstance(g, RationalBF):
        raise TypeError("convolve supports rational shapes only")
    rf, rg = f.rat, g.rat
    if rf.poles and rg.poles:
        raise NotImplementedError(
            "convolution of two singular factors is outside the supported shapes"
        )
    if rg.poles:
        rf, rg = rg, rf
    # now rg is a polynomial (possibly with lead != 1)
    gpoly = _poly_scale(rg.num, ExactScalar.from_rational(1) / rg.lead)
    if not rf.poles:
        fpoly = _poly_scale(rf.num, ExactScalar.from_rational(1) / rf.lead)
        return RationalBF(RationalFunction(_poly_convolve(fpoly, gpoly)))
    # split rf into polynomial part + simple poles via exact partial fractions
    for p in rf.poles:
        if rf.pole_order(p) > 1:
            raise NotImplementedError("convolution needs simple poles")
    quot, rem = _poly_divmod(rf.num, rf.denominator_poly())
    proper = RationalFunction(rem, poles=rf.poles, lead=rf.lead)
    pieces = [(p, proper.residue(p)) for p in rf.poles]
    out_poly = _poly_convolve(quot, gpoly)
    log_terms = []
    for p, rho in pieces:
        if rho.is_zero():
            continue
        # (rho/(u - p)) * g = rho g(zeta - p) Log(1 - zeta/p) + polynomial
        g_shift = _poly_shift(gpoly, -p)
        log_terms.append((p, RationalFunction(_poly_scale(g_shift, rho))))
        out_poly = _poly_add(out_poly, _pole_convolve_poly_part(p, rho, gpoly))
    return LogPoleBF(RationalFunction(out_poly), log_terms)


def _pole_convolve_poly_part(p: ExactScalar, rho: ExactScalar, gpoly):
    """The polynomial remainder of (rho/(u-p)) * g for polynomial g.

    From (1/(u-p)) * u^j: integrate (zeta-u)^j/(u-p) after expanding
    (zeta-u)^j = ((zeta-p) - (u-p))^j; the m >= 1 terms give
    -sum over m of C(j, m) (zeta-p)^(j-m) (-(u-p))^m / m evaluated between
    u = 0 and u = zeta, which is a polynomial in zeta.
    """
    # for each monomial g_j u^j and each m >= 1, the integral from 0 to zeta
    # of (u-p)^(m-1) du equals ((zeta-p)^m - (-p)^m)/m
    out = []
    for j, gj in enumerate(gpoly):
        if gj.is_zero():
            continue
        for m in range(1, j + 1):
            coeff = gj * rho * math.comb(j, m) * ((-1) ** m) * Fraction(1, m)
            # (zeta-p)^(j-m) * ((zeta-p)^m - (-p)^m)
            first = _poly_shift(
                [ExactScalar()] * j + [ExactScalar.from_rational(1)], -p
            )
            second = _poly_scale(
                _poly_shift([ExactScalar()] * (j - m)
                            + [ExactScalar.from_rational(1)], -p),
                (-p) ** m,
            )
            piece = _poly_add(first, _poly_scale(second, -1))
            out = _poly_add(out, _poly_scale(piece, coeff))
    return out


# -- classical minors -------------------------------------------------------------------


def euler_minor() -> RationalBF:
    """1/(1+zeta), the Borel transform of the Euler series."""
    return RationalBF(RationalFunction.simple_pole(-1, 1))


def stirling_minor() -> StirlingBF:
    return StirlingBF()


def dilog_minor() -> DilogBF:
    return DilogBF()


def power_minor(sigma, with_log: bool = False) -> PowerBF:
    return PowerBF(sigma, with_log=with_log)
