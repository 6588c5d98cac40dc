"""Laplace summation along rays, lateral comparisons, and Hankel contours.

This module turns the exact Borel-plane shapes of :mod:`.borelfun` into
numbers.  The basic operation is the ray integral

    value = c0 + integral over [0, e^(i theta) * infinity) of
            e^(-z zeta) f(zeta) d zeta,

parametrized as zeta = t e^(i theta).  Writing w = z e^(i theta), the kernel
modulus is e^(-m t) with m = Re w, so the integral converges whenever the
decay margin m exceeds the growth constant of the integrand (zero for every
shape shipped here, since they all grow at most polynomially along rays that
stay away from their singular points).

The numeric scheme has two independent error sources and both are reported:

* truncation: the ray is cut at a finite T, and the discarded tail is
  bounded analytically.  For each shape we carry an explicit envelope
  |f(t e^(i theta))| <= M valid for all t >= T (built from residues and
  pole distances, from the coth lattice bound, or from the exact
  incomplete-gamma moments of power kernels), so the tail bound
  M * Gamma(moment+1, m T) / m^(moment+1) is a guaranteed inequality.
  Shapes without a hand-proved envelope fall back to a sampled envelope
  and the result is flagged as not rigorous in the diagnostics.
* quadrature: each segment of [0, T] is integrated with the
  double-exponential (tanh-sinh) rule, which handles the integrable
  endpoint singularity of power kernels natively.  The reported
  quadrature error is the rule's own nested-level comparison, taken with
  a safety factor, never a wishful constant.

Lateral sums and their jump follow the frozen orientation convention of the
whole package: the "+" determination uses rays at angles just below the
singular direction theta_star.  Collapsing the two rays onto the singular
ray shows that

    jump = S_plus - S_minus
         = 2 pi i * sum of residues of e^(-z zeta) f(zeta)
           at the singular points between the two rays,

traversed counterclockwise, which is exactly the combination the alien
calculus predicts through the bridge identities.

Hankel contours serve the shapes that are singular at the origin itself.
The contour comes in from e^(i (theta - 2 pi)) * infinity, circles the
origin once counterclockwise at radius rho (a quarter of the distance to
the nearest nonzero singular point, or 1/4 when there is none), and leaves
toward e^(i theta) * infinity.  The two rays live on different sheets, so
the integrand is evaluated in polar form with a continuous angle; shapes
that are single valued simply cancel between the rays and keep only their
circle contribution.

`verify_asymptotics` compares ray sums against the partial sums of a
divergent expansion and reports the rescaled remainders
sup over z of |z|^(n+1) |S(z) - partial_n(z)| together with the
quadrature slack, so a caller can test a 1-Gevrey envelope honestly.

`pade_minor` builds a rational model of a Borel transform from raw
asymptotic coefficients.  It is a convenience for exploration: nothing
about it is certified, and results computed through it say so in their
diagnostics.

Out of scope here: accelero-summation, averaged (median) summation, and
certified interval quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath

from .borelfun import (
    BorelFunction,
    DilogBF,
    LogPoleBF,
    PowerBF,
    RationalBF,
    StirlingBF,
)
from .errors import DecayMarginError, RayBlockedError
from .scalars import ExactScalar
from .series import FormalSeries

__all__ = [
    "RaySpec",
    "SummationResult",
    "LateralPair",
    "AsymptoticsReport",
    "PadeApproximant",
    "laplace_ray",
    "lateral_jump",
    "hankel_laplace",
    "verify_asymptotics",
    "pade_minor",
]


# -- specifications and results ------------------------------------------------------


@dataclass(frozen=True)
class RaySpec:
    """Where and how to sum: ray angle, evaluation point, and budgets.

    ``theta`` is the ray angle in radians (it may leave (-pi, pi]; shapes
    with polar evaluation then continue onto the matching sheet).  ``z`` is
    the evaluation point; the decay margin Re(z e^(i theta)) - growth must
    be positive.  ``growth`` is the growth constant of the integrand along
    the ray, zero for every bundled shape.  ``target_error`` drives both
    the truncation point and the working precision (when ``prec`` is not
    given explicitly), and ``max_nodes`` caps the quadrature effort.
    """

    theta: object
    z: object
    max_nodes: int = 4000
    target_error: float = 1e-12
    growth: float = 0.0
    prec: int | None = None

    def __post_init__(self):
        if self.max_nodes < 64:
            raise ValueError("max_nodes must be at least 64")
        if not float(self.target_error) > 0:
            raise ValueError("target_error must be positive")

    def working_prec(self) -> int:
        if self.prec is not None:
            return max(53, int(self.prec))
        return max(53, int(-math.log2(float(self.target_error))) + 32)


@dataclass(frozen=True)
class SummationResult:
    """A computed sum: value, honest error estimate, and how it was made.

    ``error_estimate`` adds the quadrature rule's nested-level comparison
    (with a safety factor) to the analytic truncation bound.  The
    ``diagnostics`` mapping records the truncation point, the decay
    margin, both error components, and whether the tail envelope was
    proved (``rigorous_tail``) or merely sampled.
    """

    value: object
    error_estimate: object
    nodes_used: int
    diagnostics: dict = field(default_factory=dict, repr=False)


@dataclass(frozen=True)
class LateralPair:
    """Two lateral sums around a singular direction and their difference.

    ``plus`` sums along a ray just below ``theta_star`` and ``minus`` just
    above; ``jump = plus.value - minus.value`` with the combined error in
    ``error_estimate``.
    """

    plus: SummationResult
    minus: SummationResult
    jump: object
    error_estimate: object

    def __iter__(self):
        yield self.plus
        yield self.minus
        yield self.jump


# -- coercions -------------------------------------------------------------------


def _to_mp(x, prec):
    if isinstance(x, ExactScalar):
        return x.evaluate(prec)
    return mpmath.mpmathify(x)


def _real_angle(theta, prec):
    t = _to_mp(theta, prec)
    if isinstance(t, mpmath.mpc):
        if abs(t.imag) != 0:
            raise TypeError("the ray angle must be real")
        t = t.real
    return mpmath.mpf(t)


# -- a Pade model of a minor --------------------------------------------------------


class PadeApproximant:
    """A rational stand-in for a Borel transform, fitted from coefficients.

    Given an asymptotic expansion sum of c_n z^-n, the Borel transform of
    its z^-1 tail has Taylor coefficients b_k = c_{k+1} / k!.  A diagonal
    Pade approximant of that Taylor series often tracks the true minor
    well beyond the disk of convergence and places poles near the true
    singular points, which makes it a useful exploration tool when only
    raw coefficients are available.

    Nothing here is certified: the fit carries no error bound, its exact
    singular set is unknown (``singular_points`` is empty and admissibility
    checks use the numeric pole estimates), and every summation result
    computed through it is flagged as not rigorous.
    """

    def __init__(self, num, den):
        self.num = tuple(num)
        self.den = tuple(den)

    @classmethod
    def from_series(cls, series: FormalSeries, degree: int | None = None,
                    prec: int = 53):
        avail = series.order
        if degree is None:
            degree = max(1, (avail - 1) // 2)
        if 2 * degree + 1 > avail:
            raise ValueError(
                f"a [{degree}/{degree}] fit needs {2 * degree + 1} Borel "
                f"coefficients but the series only provides {avail}"
            )
        with mpmath.workprec(prec + 32):
            taylor = [
                series[k + 1].evaluate(prec + 32) / mpmath.factorial(k)
                for k in range(2 * degree + 1)
            ]
            # a Taylor series that is exactly rational of lower degree makes
            # the Pade system singular; step the degree down until it solves
            for d in range(degree, 0, -1):
                try:
                    p, q = mpmath.pade(taylor[: 2 * d + 1], d, d)
                    break
                except ZeroDivisionError:
                    continue
            else:
                raise ValueError("no diagonal Pade fit exists for the series")
        return cls(p, q)

    def numeric_eval(self, zeta, prec: int = 53):
        with mpmath.workprec(prec + 16):
            zv = mpmath.mpmathify(zeta)
            num = mpmath.polyval(list(reversed(self.num)), zv)
            den = mpmath.polyval(list(reversed(self.den)), zv)
            out = num / den
        with mpmath.workprec(prec):
            return +out

    def singular_points(self):
        return []

    def poles_numeric(self, prec: int = 53):
        coeffs = list(self.den)
        while coeffs and abs(coeffs[-1]) == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            return []
        with mpmath.workprec(prec + 16):
            try:
                return mpmath.polyroots(list(reversed(coeffs)), maxsteps=120)
            except mpmath.libmp.NoConvergence:
                return []

    def __repr__(self):
        return f"<PadeApproximant [{len(self.num) - 1}/{len(self.den) - 1}]>"


def pade_minor(series: FormalSeries, degree: int | None = None,
               prec: int = 53) -> PadeApproximant:
    """Fit a diagonal Pade model to the Borel transform of a series."""
    return PadeApproximant.from_series(series, degree=degree, prec=prec)


# -- ray admissibility ----------------------------------------------------------------


def _singular_values(f, prec):
    """Nonzero singular points of f as numbers (plus numeric pole guesses)."""
    if isinstance(f, StirlingBF):
        pts = f.singular_points(count=48)
    else:
        pts = f.singular_points()
    vals = []
    for p in pts:
        vals.append(p.evaluate(prec) if hasattr(p, "evaluate")
                    else mpmath.mpmathify(p))
    poles_numeric = getattr(f, "poles_numeric", None)
    if poles_numeric is not None:
        vals.extend(poles_numeric(prec))
    return [v for v in vals if abs(v) > 0]


def _ray_distance(v, theta):
    """Distance from the point v to the ray {t e^(i theta) : t >= 0}."""
    u = v * mpmath.exp(mpmath.mpc(0, -1) * theta)
    if u.real >= 0:
        return abs(u.imag)
    return abs(u)


def _check_ray(f, theta, prec):
    """Raise RayBlockedError when the ray hugs a singular point of f."""
    worst = None
    for v in _singular_values(f, prec):
        d = _ray_distance(v, theta)
        if d < min(mpmath.mpf(1), abs(v)) / 64:
            if worst is None or d < worst[1]:
                worst = (v, d)
    if worst is not None:
        v, d = worst
        raise RayBlockedError(
            f"the ray at angle {mpmath.nstr(mpmath.mpf(theta), 8)} passes "
            f"within {mpmath.nstr(d, 4)} of the singular point "
            f"{mpmath.nstr(v, 8)}",
            nearest=mpmath.nstr(v, 12),
            distance=float(d),
        )


# -- tail envelopes -------------------------------------------------------------------


def _pole_tail_distance(v, theta, T):
    """min over t >= T of |t e^(i theta) - v|, by exact geometry."""
    u = v * mpmath.exp(mpmath.mpc(0, -1) * theta)
    if u.real >= T:
        return abs(u.imag)
    return abs(mpmath.mpf(T) - u)


def _rational_envelope(rat, theta, T, prec):
    """Constant M with |rat(t e^(i theta))| <= M for t >= T, or None.

    Valid for proper rational functions with simple poles: the partial
    fraction bound sum of |res_p| / dist(tail, p).  Anything else returns
    None and the caller falls back to a sampled envelope.
    """
    if rat.is_zero():
        return mpmath.mpf(0)
    if len(rat.num) - 1 >= sum(rat.poles.values()):
        return None
    M = mpmath.mpf(0)
    for p in rat.poles:
        if rat.pole_order(p) > 1:
            return None
        d = _pole_tail_distance(p.evaluate(prec), theta, T)
        if not d > 0:
            return None
        M += abs(rat.residue(p).evaluate(prec)) / d
    return M


def _logpole_envelope(f, theta, T, prec):
    """Constant envelope for a rational-plus-logs shape beyond T.

    Each log factor obeys |Log(1 - zeta/a) + 2 pi i k| <= ln(1 + t/|a|)
    + pi + 2 pi |k|, and its proper rational cofactor decays like
    2 * (sum |res|) / t once T >= 2 max|pole| + 1 (enforced by the
    truncation floor).  The product (B + ln(1 + t/|a|)) / t is decreasing,
    so its value at T is a valid constant bound for the whole tail.
    """
    M = _rational_envelope(f.rational_part, theta, T, prec)
    if M is None:
        return None
    for a, r, k in f.log_terms:
        if r.is_zero():
            continue
        if not r.poles or len(r.num) - 1 >= sum(r.poles.values()):
            return None
        ressum = mpmath.mpf(0)
        for p in r.poles:
            if r.pole_order(p) > 1:
                return None
            ressum += abs(r.residue(p).evaluate(prec))
        av = abs(a.evaluate(prec))
        B = mpmath.pi * (1 + 2 * abs(k))
        M += (2 * ressum / T) * (mpmath.log(1 + T / av) + B)
    return M


def _stirling_envelope(theta, T, prec):
    """Envelope for the factorial-correction minor beyond T.

    With w = zeta/2 the bound chain is |coth w| <= 1 + 1/|sinh w| and
    |sinh w| >= 2 delta / pi where delta = min(dist(w, pi i Z), pi/2);
    the lattice distance is computed exactly over the pole range that can
    matter and capped there.  The minor itself is then bounded by
    (|coth|/2)/t + 1/t^2.
    """
    tau = 2 * mpmath.pi
    kmax = max(96, int(T / float(tau)) + 2)
    d = mpmath.inf
    for k in range(1, kmax + 1):
        for sgn in (1, -1):
            d = min(d, _pole_tail_distance(mpmath.mpc(0, sgn * tau * k),
                                           theta, T))
    delta = min(d / 2, mpmath.pi / 2)
    coth_bound = 1 + mpmath.pi / (2 * delta)
    return (coth_bound / 2) / T + 1 / mpmath.mpf(T) ** 2


def _power_tail(f, m, T, theta, moment, prec):
    """Exact tail bound for power kernels via incomplete gamma moments.

    |f| <= |g| t^(sigma-1) (+ log factor), and the modulus integral
    integral over [T, inf) of e^(-m t) t^(s-1) dt equals
    Gamma(s, m T) / m^s.  The log factor uses |log zeta| <= ln t + |theta|
    + 2 pi (covering the Hankel sheet range) and ln t <= 2 sqrt(t).
    """
    s = mpmath.mpf(f.sigma.numerator) / f.sigma.denominator + moment

    def moment_integral(order):
        return mpmath.gammainc(order, m * T) / m ** order

    g = abs(f.g_value(prec))
    base = moment_integral(s)
    if not f.with_log:
        return g * base
    A = abs(mpmath.mpf(theta)) + 2 * mpmath.pi
    gp = abs(f.g_prime_value(prec))
    return g * (A * base + 2 * moment_integral(s + mpmath.mpf(1) / 2)) \
        + gp * base


def _dilog_tail(f, m, T, theta, moment, prec):
    """Guaranteed tail bound for the dilogarithm minor beyond T >= 1.

    The inversion identity Li2(z) + Li2(1/z) = -pi^2/6 - log(-z)^2 / 2
    bounds the principal sheet by pi^2/3 + (ln t + pi)^2 / 2 once
    |z| >= 1 (the series bounds |Li2(1/z)| by pi^2/6 there), and each
    stored loop at 1 contributes |2 pi (Log z + 2 pi i m)| <= 2 pi
    (ln t + pi (1 + 2 |m|)).  With ln t <= 2 sqrt(t) the whole envelope
    is A + B sqrt(t) + C t, whose weighted tails are incomplete gammas.
    """
    pi = mpmath.pi
    loops = abs(f.n)
    sheet = abs(f.m)
    A = pi ** 2 / 3 + pi ** 2 / 2 + 2 * pi ** 2 * loops * (1 + 2 * sheet)
    B = 2 * pi + 4 * pi * loops
    C = mpmath.mpf(2)

    def moment_integral(order):
        return mpmath.gammainc(order, m * T) / m ** order

    half = mpmath.mpf(1) / 2
    return A * moment_integral(moment + 1) \
        + B * moment_integral(moment + 1 + half) \
        + C * moment_integral(moment + 2)


def _t_floor(f, theta, prec):
    """Smallest truncation point at which the shape's envelope is valid."""
    if isinstance(f, (RationalBF, PowerBF)):
        return mpmath.mpf(1)
    if isinstance(f, StirlingBF):
        return mpmath.mpf(4)
    if isinstance(f, LogPoleBF):
        mods = [abs(p.evaluate(prec)) for p in f.rational_part.poles]
        for _a, r, _k in f.log_terms:
            mods.extend(abs(p.evaluate(prec)) for p in r.poles)
        top = max(mods, default=mpmath.mpf(0))
        return max(mpmath.mpf(4), 2 * top + 1)
    mods = [abs(v) for v in _singular_values(f, prec)]
    top = min(max(mods, default=mpmath.mpf(0)), mpmath.mpf(32))
    return max(mpmath.mpf(4), 2 * top + 1)


def _sampled_envelope(evalf, T):
    """Fallback envelope from samples; honest only for decaying shapes."""
    samples = [abs(evalf(T * c)) for c in (1, mpmath.mpf(3) / 2, 2, 3, 5, 8)]
    if samples[-1] > 2 * samples[0] + 1:
        raise NotImplementedError(
            "the integrand does not appear to decay along the ray, and no "
            "proved envelope is available for this shape"
        )
    return 4 * max(samples)


def _tail_bound(f, evalf, theta, m, T, moment, prec):
    """(tail bound, sampled?) for the discarded integral beyond T."""
    if isinstance(f, PowerBF):
        return _power_tail(f, m, T, theta, moment, prec), False
    if isinstance(f, DilogBF):
        return abs(_dilog_tail(f, m, T, theta, moment, prec)), False
    if isinstance(f, RationalBF):
        M = _rational_envelope(f.rat, theta, T, prec)
    elif isinstance(f, LogPoleBF):
        M = _logpole_envelope(f, theta, T, prec)
    elif isinstance(f, StirlingBF):
        M = _stirling_envelope(theta, T, prec)
    else:
        M = None
    sampled = False
    if M is None:
        M = _sampled_envelope(evalf, T)
        sampled = True
    tail = M * mpmath.gammainc(moment + 1, m * T) / m ** (moment + 1)
    return abs(tail), sampled


def _choose_truncation(f, evalf, theta, m, target, moment, prec):
    T = _t_floor(f, theta, prec)
    tail, sampled = _tail_bound(f, evalf, theta, m, T, moment, prec)
    for _ in range(400):
        if tail <= target / 4:
            break
        T = T * 3 / 2
        tail, sampled = _tail_bound(f, evalf, theta, m, T, moment, prec)
    return T, tail, sampled


# -- quadrature -----------------------------------------------------------------------


def _ray_evaluator(f, theta, prec):
    if isinstance(f, PowerBF):
        return lambda t: f.eval_polar(t, theta, prec)
    direction = mpmath.exp(mpmath.mpc(0, 1) * theta)
    return lambda t: f.numeric_eval(t * direction, prec)


def _polar_evaluator(f, prec):
    if isinstance(f, PowerBF):
        return lambda r, ang: f.eval_polar(r, ang, prec)
    if isinstance(f, (RationalBF, StirlingBF, PadeApproximant)):
        return lambda r, ang: f.numeric_eval(
            r * mpmath.exp(mpmath.mpc(0, 1) * ang), prec)
    raise NotImplementedError(
        "Hankel contours need a single-valued shape or one with polar "
        f"(continuous-angle) evaluation; got {type(f).__name__}"
    )


def _power_head(f, w, theta, h, moment, prec):
    """Exact series for the power-kernel integral over [0, h].

    Expanding the exponential kernel termwise,

        integral over [0, h] of e^(-w t) f(t e^(i theta)) t^moment dt
        = e^(i theta (sigma - 1)) * sum over k of (-w)^k / k! *
          [coefficients] * h^(s + k) / (s + k)   with s = sigma + moment,

    where the log variant also needs integral of t^(s+k-1) log t dt =
    h^(s+k) (log h / (s+k) - 1/(s+k)^2).  With h <= 1/(2|w|) the term
    ratio stays below 1/2 past the first few terms, so the truncation
    remainder is bounded by the last computed term.  This sidesteps the
    quadrature entirely on the panel where the endpoint singularity
    would otherwise cap its accuracy.
    """
    s = mpmath.mpf(f.sigma.numerator) / f.sigma.denominator + moment
    g = f.g_value(prec)
    gp = f.g_prime_value(prec) if f.with_log else None
    logh = mpmath.log(h)
    total = mpmath.mpc(0)
    ck = mpmath.mpc(1)
    bound = mpmath.mpf(0)
    floor = mpmath.ldexp(1, -(prec + 8))
    for k in range(prec + 64):
        base = h ** (s + k) / (s + k)
        if f.with_log:
            logint = base * (logh - 1 / (s + k))
            term = ck * (g * logint
                         + (g * mpmath.mpc(0, 1) * theta + gp) * base)
        else:
            term = ck * g * base
        total += term
        bound = abs(term)
        if bound < floor * (1 + abs(total)) and k > 2:
            break
        ck = ck * (-w) / (k + 1)
    phase = mpmath.exp(mpmath.mpc(0, 1) * theta * (s - moment - 1))
    return phase * total, bound


def _segments(lo, T, f, theta, prec):
    """Subdivision points: a geometric ladder plus near-pole projections."""
    lo = mpmath.mpf(lo)
    pts = {lo, mpmath.mpf(T)}
    t = mpmath.mpf(1) / 2 if lo == 0 else 2 * lo
    while t < T:
        if t > lo:
            pts.add(t)
        t *= 2
    for v in _singular_values(f, prec):
        u = v * mpmath.exp(mpmath.mpc(0, -1) * theta)
        if abs(u.imag) < 1 and lo < u.real < T:
            pts.add(u.real)
    return sorted(pts)


def _max_degree(max_nodes):
    return max(5, min(11, int(math.log2(max(max_nodes, 64))) - 2))


def _quad(g, pts, maxdeg):
    """Piecewise tanh-sinh integration with node counting."""
    count = 0

    def wrapped(t):
        nonlocal count
        count += 1
        return g(t)

    val, err = mpmath.quad(wrapped, pts, error=True, maxdegree=maxdeg)
    return val, abs(err), count


# -- the operations -------------------------------------------------------------------


def laplace_ray(f: BorelFunction, c0, spec: RaySpec,
                moment: int = 0) -> SummationResult:
    """Sum c0 + the Laplace integral of f along the ray of ``spec``.

    ``moment`` inserts a factor (-zeta)^moment into the integrand, so
    moment = 1 computes the z-derivative of the moment = 0 sum at
    quadrature level (differentiation under the integral is exact for
    these absolutely convergent integrals).

    Raises DecayMarginError when the margin Re(z e^(i theta)) - growth is
    not positive (or when a power kernel is not integrable at the
    origin), and RayBlockedError when the ray passes too close to a
    singular point, naming the nearest one.
    """
    if moment < 0:
        raise ValueError("moment must be >= 0")
    prec = spec.working_prec()
    guard = prec + 24
    with mpmath.workprec(guard):
        theta = _real_angle(spec.theta, guard)
        z = _to_mp(spec.z, guard)
        w = z * mpmath.exp(mpmath.mpc(0, 1) * theta)
        m = mpmath.mpc(w).real - mpmath.mpf(spec.growth)
        if not m > 0:
            raise DecayMarginError(
                f"decay margin {mpmath.nstr(m, 8)} is not positive for z = "
                f"{mpmath.nstr(z, 8)} along theta = {mpmath.nstr(theta, 8)}",
                margin=float(m),
            )
        if isinstance(f, PowerBF) and f.sigma <= 0:
            raise DecayMarginError(
                f"the power kernel with sigma = {f.sigma} is not integrable "
                "at the origin",
                margin=float(f.sigma),
            )
        _check_ray(f, theta, guard)
        evalf = _ray_evaluator(f, theta, guard)
        target = mpmath.mpf(float(spec.target_error))
        T, tail, sampled = _choose_truncation(
            f, evalf, theta, m, target, moment, guard)

        def g(t):
            base = evalf(t)
            if moment:
                base = base * t ** moment
            return mpmath.exp(-w * t) * base

        head = mpmath.mpc(0)
        head_err = mpmath.mpf(0)
        lo = mpmath.mpf(0)
        if isinstance(f, PowerBF):
            lo = min(mpmath.mpf(1) / 2, T / 4, 1 / (2 * max(abs(w), 1)))
            head, head_err = _power_head(f, w, theta, lo, moment, guard)
        pts = _segments(lo, T, f, theta, guard)
        val, errq, nodes = _quad(g, pts, _max_degree(spec.max_nodes))
        phase = mpmath.exp(mpmath.mpc(0, 1) * theta)
        weight = (-phase) ** moment * phase
        value = _to_mp(c0, guard) + weight * (head + val)
        error = 4 * errq + 2 * tail + head_err \
            + mpmath.ldexp(1 + abs(value), -prec)
        diagnostics = {
            "margin": float(m),
            "truncation": float(T),
            "tail_bound": float(tail),
            "quadrature_error": float(errq),
            "segments": len(pts) - 1,
            "rigorous_tail": not sampled,
            "method": "tanh-sinh",
        }
    with mpmath.workprec(prec):
        return SummationResult(+value, +error, nodes, diagnostics)


def lateral_jump(f: BorelFunction, c0, theta_star, delta, z, *,
                 max_nodes: int = 4000, target_error: float = 1e-12,
                 prec: int | None = None) -> LateralPair:
    """Lateral sums on both sides of a singular direction, and their jump.

    The "+" sum uses the ray at theta_star - delta/2 (just below the
    singular direction) and the "-" sum the ray at theta_star + delta/2.
    With that orientation, jump = plus - minus equals 2 pi i times the sum
    of residues of e^(-z zeta) f(zeta) at the singular points swept
    between the two rays, matching the alien-calculus prediction.

    ``delta`` is the full angular opening between the rays; it must be
    positive, below pi/2, and wide enough that neither ray is blocked by
    the singular points that define the direction (for unit-distance
    singularities that means delta of a few hundredths or more).
    """
    delta = float(delta)
    if not 0 < delta < math.pi / 2:
        raise ValueError("delta must lie strictly between 0 and pi/2")
    work = max(53, prec) if prec is not None else None
    half = mpmath.mpf(delta) / 2
    theta_star = _real_angle(theta_star, (work or 53) + 24)
    plus = laplace_ray(f, c0, RaySpec(
        theta_star - half, z, max_nodes=max_nodes,
        target_error=target_error, prec=work))
    minus = laplace_ray(f, c0, RaySpec(
        theta_star + half, z, max_nodes=max_nodes,
        target_error=target_error, prec=work))
    jump = plus.value - minus.value
    error = plus.error_estimate + minus.error_estimate
    return LateralPair(plus, minus, jump, error)


def hankel_laplace(f: BorelFunction, theta, z, *, target_error: float = 1e-12,
                   max_nodes: int = 6000,
                   prec: int | None = None) -> SummationResult:
    """Laplace sum over a Hankel contour winding once around the origin.

    The contour comes in from e^(i (theta - 2 pi)) * infinity, circles the
    origin counterclockwise at radius rho = (nearest nonzero singular
    distance)/4 (or 1/4 when f is singular only at the origin), and goes
    back out toward e^(i theta) * infinity.  The in-ray lives one full
    turn below the out-ray, so multivalued shapes are evaluated in polar
    form with a continuous angle; single-valued shapes see their two ray
    contributions cancel, leaving the circle.
    """
    spec = RaySpec(theta, z, max_nodes=max_nodes,
                   target_error=target_error, prec=prec)
    out_prec = spec.working_prec()
    guard = out_prec + 24
    with mpmath.workprec(guard):
        th = _real_angle(theta, guard)
        zv = _to_mp(z, guard)
        w = zv * mpmath.exp(mpmath.mpc(0, 1) * th)
        m = mpmath.mpc(w).real
        if not m > 0:
            raise DecayMarginError(
                f"decay margin {mpmath.nstr(m, 8)} is not positive for z = "
                f"{mpmath.nstr(zv, 8)} along theta = {mpmath.nstr(th, 8)}",
                margin=float(m),
            )
        polar = _polar_evaluator(f, guard)
        _check_ray(f, th, guard)
        sing = _singular_values(f, guard)
        rho = min(abs(v) for v in sing) / 4 if sing \
            else mpmath.mpf(1) / 4
        target = mpmath.mpf(float(target_error))
        T, tail, sampled = _choose_truncation(
            f, lambda t: polar(t, th), th, m, target, 0, guard)
        T = max(T, 4 * rho)
        maxdeg = _max_degree(max_nodes)
        pts = _segments(rho, T, f, th, guard)
        tau = 2 * mpmath.pi

        out_val, out_err, out_n = _quad(
            lambda t: mpmath.exp(-w * t) * polar(t, th), pts, maxdeg)
        in_val, in_err, in_n = _quad(
            lambda t: mpmath.exp(-w * t) * polar(t, th - tau), pts, maxdeg)

        def on_circle(phi):
            pos = rho * mpmath.exp(mpmath.mpc(0, 1) * phi)
            return mpmath.exp(-zv * pos) * polar(rho, phi) \
                * mpmath.mpc(0, 1) * pos

        angles = [th - tau + k * mpmath.pi / 4 for k in range(9)]
        circ_val, circ_err, circ_n = _quad(on_circle, angles, maxdeg)

        phase = mpmath.exp(mpmath.mpc(0, 1) * th)
        value = phase * (out_val - in_val) + circ_val
        error = 4 * (out_err + in_err + circ_err) + 2 * tail \
            + mpmath.ldexp(1 + abs(value), -out_prec)
        diagnostics = {
            "margin": float(m),
            "truncation": float(T),
            "radius": float(rho),
            "tail_bound": float(tail),
            "quadrature_error": float(out_err + in_err + circ_err),
            "rigorous_tail": not sampled,
            "method": "tanh-sinh",
        }
    with mpmath.workprec(out_prec):
        return SummationResult(+value, +error, out_n + in_n + circ_n,
                               diagnostics)


# -- asymptotics reports ---------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticsReport:
    """Rescaled remainders of ray sums against a divergent expansion.

    ``sups[i]`` is sup over the z-list of |z|^(n+1) |S(z) - P_n(z)| for
    n = orders[i], where P_n is the partial sum through z^-n; the
    matching entry of ``sup_errors`` is the quadrature slack scaled the
    same way.  ``satisfies_envelope(C, M)`` checks the 1-Gevrey bound
    sups[i] <= C * M^n * n! within that slack.
    """

    orders: tuple
    zs: tuple
    sums: tuple
    sups: tuple
    sup_errors: tuple

    def satisfies_envelope(self, C, M) -> bool:
        C = mpmath.mpf(C)
        M = mpmath.mpf(M)
        return all(
            s <= C * M ** n * mpmath.factorial(n) + e
            for n, s, e in zip(self.orders, self.sups, self.sup_errors)
        )

    def rows(self):
        return [
            {"order": int(n), "sup": float(s), "slack": float(e),
             "gevrey_ratio": float(s / mpmath.factorial(n))}
            for n, s, e in zip(self.orders, self.sups, self.sup_errors)
        ]


def verify_asymptotics(f: BorelFunction, c0, series: FormalSeries, theta, zs,
                       orders=None, *, target_error: float = 1e-24,
                       max_nodes: int = 4000,
                       prec: int | None = None) -> AsymptoticsReport:
    """Compare ray sums with partial sums of their asymptotic expansion.

    The constant term of ``series`` must agree with ``c0`` (the partial
    sums use the series coefficients alone, with coefficient 0 playing
    the role of the constant).  The report carries the data; it asserts
    nothing itself, so callers can test the envelope they can prove.
    """
    if orders is None:
        orders = tuple(range(0, min(series.order, 10) + 1))
    orders = tuple(int(n) for n in orders)
    if not orders:
        raise ValueError("at least one truncation order is required")
    if max(orders) > series.order:
        raise ValueError(
            f"order {max(orders)} exceeds the series order {series.order}")
    spec0 = RaySpec(theta, 1, target_error=target_error, prec=prec)
    guard = spec0.working_prec() + 24
    with mpmath.workprec(guard):
        c0v = _to_mp(c0, guard)
        if abs(series[0].evaluate(guard) - c0v) > mpmath.ldexp(1, -40):
            raise ValueError(
                "the constant coefficient of the series disagrees with c0")
        zvals = [_to_mp(zp, guard) for zp in zs]
        results = tuple(
            laplace_ray(f, c0, RaySpec(theta, zp, max_nodes=max_nodes,
                                       target_error=target_error, prec=prec))
            for zp in zs
        )
        coeffs = [series[n].evaluate(guard) for n in range(series.order + 1)]
        sups = []
        slacks = []
        for n in orders:
            best = mpmath.mpf(0)
            slack = mpmath.mpf(0)
            for zv, res in zip(zvals, results):
                partial = c0v
                for k in range(1, n + 1):
                    partial += coeffs[k] * zv ** (-k)
                scale = abs(zv) ** (n + 1)
                best = max(best, scale * abs(res.value - partial))
                slack = max(slack, scale * res.error_estimate)
            sups.append(best)
            slacks.append(slack)
    return AsymptoticsReport(orders, tuple(zvals), results,
                             tuple(sups), tuple(slacks))
