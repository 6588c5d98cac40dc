"""Command-line front end for the resurgence toolkit.

The command exposes the main pipelines behind stable JSON output so that
results can be scripted, diffed, and replayed:

    resurgence alien --input stirling --omega 2pii --derivation
    resurgence sum --input stirling --theta 0 --z 10 --target-err 1e-10
    resurgence sum --jump --input euler --theta-star pi --z -3
    resurgence mzv eval --s 2,1
    resurgence mzv relation --a 2 --b 3 --mode stuffle,shuffle
    resurgence mould make --exp-scale 1/2 --letters 1 --order 4
    resurgence mould check --file m.json --symmetral
    resurgence hyperlog --word 1,2 --order 12
    resurgence hyperlog --L 1,1 --prec 80
    resurgence series --input euler --order 8 --borel

Conventions shared by every subcommand:

* Exact scalars cross the boundary as text and re-parse bit-exactly.  The
  literal ``2pii`` (optionally with a rational multiplier, ``3*2pii``)
  denotes the exact period of the logarithm; angles accept ``pi`` literals
  such as ``pi``, ``-pi/2`` and ``3pi/4``.
* Every numeric output is paired with its error estimate.  Exact results
  are printed as exact text, never as floats.
* ``--format json`` (the default) prints one JSON object; ``--format
  table`` prints the same data as flat ``key = value`` rows.
* Exit codes: 0 on success, 2 when the mathematics refuses (resonant
  words, blocked rays, non-simple singularities, and the rest of the
  domain error taxonomy), 1 for usage errors.  Domain failures still
  print a machine-readable error object.

The command is deliberately stateless: fixed inputs and precision give
byte-identical output, which is what makes the JSON form usable as test
fixtures.  ``--seed`` reseeds Python's random module for replaying the
randomized property tests; no subcommand below draws randomness itself.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

import mpmath

from .alien import (ResurgentSeries, alien_derivation, alien_minus,
                    alien_plus, euler_resurgent, stirling_resurgent)
from .borelfun import dilog_minor, euler_minor, power_minor, stirling_minor
from .errors import ResurgenceError
from .hyperlog import L_numeric, MonomialFamily, v_series
from .laplace import RaySpec, hankel_laplace, laplace_ray, lateral_jump
from .moulds import (exp_scale_mould, identity_mould, is_alternal,
                     is_alternel, is_symmetral, is_symmetrel,
                     mould_from_json, mould_to_json, unit_mould)
from .mzv import MzvIndex, verify_relation, ze_eval
from .scalars import ExactScalar, parse_scalar
from .series import borel, euler_series, stirling_series
from .words import Alphabet


class UsageError(Exception):
    """A malformed invocation (unknown flag, bad literal, missing mode)."""


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage failures raise instead of exiting.

    Stock argparse exits with status 2 on bad flags; the contract here
    reserves 2 for domain errors and 1 for usage, so errors are funneled
    through UsageError and mapped in main().
    """

    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# literal parsing


def _parse_angle(text: str) -> float:
    """Parse an angle that may use pi literals: 'pi', '-pi/2', '3pi/4', '0.3'."""
    s = text.strip().replace(" ", "").replace("*", "")
    if "pi" in s:
        head, _, tail = s.partition("pi")
        if head in ("", "+"):
            mult = Fraction(1)
        elif head == "-":
            mult = Fraction(-1)
        else:
            mult = Fraction(head)
        if tail:
            if not tail.startswith("/"):
                raise UsageError(f"cannot parse angle {text!r}")
            mult /= Fraction(tail[1:])
        return float(mult) * float(mpmath.pi)
    try:
        return float(s)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None


def _parse_point(text: str) -> ExactScalar:
    """Parse a Borel-plane point: '2pii' literals or exact scalar text."""
    s = text.strip().replace(" ", "")
    if s.endswith("2pii"):
        head = s[:-4].rstrip("*")
        if head in ("", "+"):
            mult = Fraction(1)
        elif head == "-":
            mult = Fraction(-1)
        else:
            try:
                mult = Fraction(head)
            except ValueError:
                raise UsageError(f"cannot parse point {text!r}") from None
        return ExactScalar.tau() * ExactScalar.from_rational(mult)
    try:
        return parse_scalar(s)
    except ValueError as exc:
        raise UsageError(f"cannot parse point {text!r}: {exc}") from None


def _parse_z(text: str, prec: int):
    """Parse the summation variable: exact text preferred, floats accepted."""
    s = text.strip()
    try:
        return parse_scalar(s).evaluate(prec)
    except ValueError:
        pass
    try:
        with mpmath.workprec(prec):
            return mpmath.mpmathify(s.replace("i", "j"))
    except (ValueError, TypeError):
        raise UsageError(f"cannot parse z value {text!r}") from None


def _parse_word(text: str) -> tuple:
    s = text.strip().strip("[]()")
    if not s:
        return ()
    try:
        return tuple(int(part) for part in s.split(","))
    except ValueError:
        raise UsageError(f"cannot parse word {text!r}") from None


def _parse_index(text: str) -> MzvIndex:
    parts = [p for p in text.strip().strip("[]()").split(",") if p]
    try:
        return MzvIndex(tuple(int(p) for p in parts))
    except ValueError:
        raise UsageError(f"cannot parse index {text!r}") from None


def _parse_letters(text: str) -> list:
    try:
        return [parse_scalar(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse letters {text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# output shaping


def _scalar_text(s: ExactScalar) -> str:
    """Canonical exact text: plain Gaussian form when possible."""
    return str(s.as_gaussian()) if s.is_gaussian() else str(s)


def _digits(prec: int) -> int:
    return max(10, int(prec * 0.30103) + 2)


def _num(x, digits: int):
    """A numeric value as JSON: string for reals, {re, im} for complex."""
    x = mpmath.mpmathify(x)
    if isinstance(x, mpmath.mpc):
        if x.imag == 0:
            return mpmath.nstr(x.real, digits)
        return {"re": mpmath.nstr(x.real, digits),
                "im": mpmath.nstr(x.imag, digits)}
    return mpmath.nstr(x, digits)


def _series_payload(fs) -> dict:
    coeffs = [_scalar_text(fs[n]) for n in range(fs.order + 1)]
    return {"order": fs.order, "coefficients": coeffs}


def _series_text(fs) -> str:
    text = str(fs)
    if text.startswith("<FormalSeries ") and text.endswith(">"):
        text = text[len("<FormalSeries "):-1]
    return text


def _resurgent_payload(out: ResurgentSeries) -> dict:
    data = _series_payload(out.series)
    tail_zero = all(out.series[n].is_zero()
                    for n in range(1, out.series.order + 1))
    data["constant_term"] = _scalar_text(out.constant_term)
    data["value"] = (_scalar_text(out.constant_term) if tail_zero
                     else _series_text(out.series))
    return data


def _summation_payload(res, digits: int) -> dict:
    return {
        "value": _num(res.value, digits),
        "error": _num(res.error_estimate, digits),
        "nodes": res.nodes_used,
        "diagnostics": res.diagnostics,
    }


def _flatten(payload, prefix=""):
    rows = []
    if isinstance(payload, dict):
        for key, val in payload.items():
            rows.extend(_flatten(val, f"{prefix}{key}."))
    elif isinstance(payload, (list, tuple)):
        rows.append((prefix[:-1], json.dumps(payload)))
    else:
        rows.append((prefix[:-1], payload))
    return rows


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "table":
        rows = _flatten(payload)
        width = max((len(k) for k, _ in rows), default=0)
        for key, val in rows:
            print(f"{key.ljust(width)} = {val}")
    else:
        print(json.dumps(payload, indent=2))


# ---------------------------------------------------------------------------
# named inputs


def _borel_input(name: str):
    """Resolve a builtin Borel-plane input name to (function, constant)."""
    zero = ExactScalar()
    if name == "euler":
        return euler_minor(), zero
    if name == "stirling":
        return stirling_minor(), zero
    if name == "dilog":
        return dilog_minor(), zero
    if name.startswith("I_sigma:"):
        spec = name[len("I_sigma:"):]
        with_log = spec.endswith(":log")
        if with_log:
            spec = spec[:-len(":log")]
        try:
            sigma = Fraction(spec)
        except ValueError:
            raise UsageError(f"cannot parse sigma in {name!r}") from None
        return power_minor(sigma, with_log=with_log), zero
    raise UsageError(
        f"unknown input {name!r}; expected euler, stirling, dilog, "
        "or I_sigma:<rational>")


def _resurgent_input(name: str) -> ResurgentSeries:
    if name == "euler":
        return euler_resurgent()
    if name == "stirling":
        return stirling_resurgent()
    raise UsageError(
        f"unknown input {name!r}; expected euler or stirling")


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_alien(args) -> dict:
    phi = _resurgent_input(args.input)
    omega = _parse_point(args.omega)
    if args.plus:
        operator, out = "plus", alien_plus(phi, omega)
    elif args.minus:
        operator, out = "minus", alien_minus(phi, omega)
    else:
        operator, out = "derivation", alien_derivation(phi, omega)
    data = _resurgent_payload(out)
    data.update(input=args.input, omega=_scalar_text(omega),
                operator=operator)
    return data


def _cmd_sum(args) -> dict:
    f, c0 = _borel_input(args.input)
    digits = _digits(args.prec)
    if args.jump:
        if args.theta_star is None:
            raise UsageError("--jump requires --theta-star")
        pair = lateral_jump(
            f, c0, _parse_angle(args.theta_star), args.delta,
            _parse_z(args.z, args.prec + 16),
            max_nodes=args.max_nodes, target_error=args.target_err,
            prec=args.prec)
        return {
            "input": args.input,
            "plus": _summation_payload(pair.plus, digits),
            "minus": _summation_payload(pair.minus, digits),
            "jump": {
                "value": _num(pair.jump, digits),
                "abs": _num(abs(pair.jump), digits),
                "error": _num(pair.error_estimate, digits),
            },
        }
    if args.theta is None:
        raise UsageError("ray summation requires --theta")
    theta = _parse_angle(args.theta)
    z = _parse_z(args.z, args.prec + 16)
    if args.hankel:
        res = hankel_laplace(f, theta, z, target_error=args.target_err,
                             max_nodes=args.max_nodes, prec=args.prec)
    else:
        spec = RaySpec(theta=theta, z=z, max_nodes=args.max_nodes,
                       target_error=args.target_err, prec=args.prec)
        res = laplace_ray(f, c0, spec, moment=args.moment)
    data = _summation_payload(res, digits)
    data.update(input=args.input,
                contour="hankel" if args.hankel else "ray")
    return data


def _cmd_mzv_eval(args) -> dict:
    idx = _parse_index(args.s)
    ev = ze_eval(idx, prec=args.prec, cutoff=args.cutoff)
    digits = _digits(args.prec)
    return {
        "s": list(idx.s),
        "value": _num(ev.value, digits),
        "error": _num(ev.error, digits),
        "certified": ev.certified,
        "flagged": ev.flagged,
    }


def _cmd_mzv_relation(args) -> dict:
    modes = tuple(m.strip() for m in args.mode.split(",") if m.strip())
    for mode in modes:
        if mode not in ("stuffle", "shuffle"):
            raise UsageError(f"unknown mode {mode!r}")
    report = verify_relation(_parse_index(args.a), _parse_index(args.b),
                             prec=args.prec, modes=modes,
                             cutoff=args.cutoff)
    data = report.to_dict()
    data["ok"] = report.ok
    return data


def _cmd_mould_make(args) -> dict:
    letters = _parse_letters(args.letters)
    alphabet = Alphabet(letters)
    if args.exp_scale is not None:
        m = exp_scale_mould(parse_scalar(args.exp_scale))
    elif args.identity:
        m = identity_mould()
    else:
        m = unit_mould()
    return mould_to_json(m.materialize(alphabet, args.order))


def _cmd_mould_check(args) -> dict:
    with open(args.file, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    m = mould_from_json(data)
    predicates = {
        "symmetral": (args.symmetral, is_symmetral),
        "alternal": (args.alternal, is_alternal),
        "symmetrel": (args.symmetrel, is_symmetrel),
        "alternel": (args.alternel, is_alternel),
    }
    requested = {name: fn for name, (flag, fn) in predicates.items() if flag}
    if not requested:
        raise UsageError("pick at least one predicate flag, e.g. --symmetral")
    out = {"file": args.file, "max_length": data.get("max_length")}
    for name, fn in requested.items():
        out[name] = fn(m)
    return out


def _cmd_hyperlog(args) -> dict:
    if args.L is not None:
        w = _parse_word(args.L)
        ii = L_numeric(w, prec=args.prec)
        digits = _digits(args.prec)
        return {
            "word": list(w),
            "value": _num(ii.value, digits),
            "error": _num(ii.error_estimate, digits),
            "nodes": ii.nodes,
        }
    w = _parse_word(args.word)
    if not w:
        raise UsageError("the word must be non-empty")
    letters = (sorted(set(w)) if args.letters is None
               else [int(part) for part in args.letters.split(",")])
    fam = MonomialFamily(letters, order=args.order)
    data = _series_payload(v_series(fam, w))
    data.update(word=list(w), text=_series_text(v_series(fam, w)))
    return data


def _cmd_series(args) -> dict:
    fs = (euler_series if args.input == "euler" else stirling_series)(
        args.order)
    data = _series_payload(fs)
    data.update(input=args.input, var="z", text=_series_text(fs))
    if args.borel:
        bs = borel(fs)
        data["borel"] = {
            "order": bs.order,
            "coefficients": [_scalar_text(c) for c in bs.taylor],
        }
    return data


# ---------------------------------------------------------------------------
# parser assembly


def _common(sub, order=None, prec=53):
    sub.add_argument("--prec", type=int, default=prec,
                     help="working precision in bits")
    if order is not None:
        sub.add_argument("--order", type=int, default=order,
                         help="truncation order")
    sub.add_argument("--format", choices=("json", "table"), default="json")
    sub.add_argument("--seed", type=int, default=None,
                     help="reseed the random module (property-test replay)")


def build_parser() -> _Parser:
    parser = _Parser(prog="resurgence",
                     description="mould calculus and resurgence pipelines")
    subs = parser.add_subparsers(dest="subcommand", parser_class=_Parser)

    p = subs.add_parser("alien", help="apply alien operators to builtins")
    p.add_argument("--input", required=True)
    p.add_argument("--omega", required=True,
                   help="singular point, e.g. -1 or 2pii")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--derivation", action="store_true")
    mode.add_argument("--plus", action="store_true")
    mode.add_argument("--minus", action="store_true")
    _common(p)
    p.set_defaults(handler=_cmd_alien)

    p = subs.add_parser("sum", help="Borel-Laplace summation along a ray")
    p.add_argument("--input", required=True,
                   help="euler, stirling, dilog, or I_sigma:<rational>")
    p.add_argument("--z", required=True, help="evaluation point")
    p.add_argument("--theta", default=None, help="ray direction")
    p.add_argument("--jump", action="store_true",
                   help="lateral pair across --theta-star")
    p.add_argument("--hankel", action="store_true",
                   help="Hankel contour around the origin")
    p.add_argument("--theta-star", default=None, help="singular direction")
    p.add_argument("--delta", type=float, default=0.5,
                   help="angular gap between the lateral rays")
    p.add_argument("--target-err", type=float, default=1e-12)
    p.add_argument("--max-nodes", type=int, default=4000)
    p.add_argument("--moment", type=int, default=0)
    _common(p)
    p.set_defaults(handler=_cmd_sum)

    p = subs.add_parser("mzv", help="multizeta evaluation and relations")
    mzv_subs = p.add_subparsers(dest="mzv_command", parser_class=_Parser)
    q = mzv_subs.add_parser("eval")
    q.add_argument("--s", required=True, help="index, e.g. 2 or 2,1")
    q.add_argument("--cutoff", type=int, default=10000)
    _common(q)
    q.set_defaults(handler=_cmd_mzv_eval)
    q = mzv_subs.add_parser("relation")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--mode", default="stuffle,shuffle")
    q.add_argument("--cutoff", type=int, default=10000)
    _common(q)
    q.set_defaults(handler=_cmd_mzv_relation)

    p = subs.add_parser("mould", help="make and check serialized moulds")
    mould_subs = p.add_subparsers(dest="mould_command", parser_class=_Parser)
    q = mould_subs.add_parser("make")
    gen = q.add_mutually_exclusive_group(required=True)
    gen.add_argument("--exp-scale", default=None,
                     help="weight of the exponential mould, e.g. 1/2")
    gen.add_argument("--unit", action="store_true")
    gen.add_argument("--identity", action="store_true")
    q.add_argument("--letters", default="1",
                   help="comma-separated exact letters")
    _common(q, order=4)
    q.set_defaults(handler=_cmd_mould_make)
    q = mould_subs.add_parser("check")
    q.add_argument("--file", required=True)
    q.add_argument("--symmetral", action="store_true")
    q.add_argument("--alternal", action="store_true")
    q.add_argument("--symmetrel", action="store_true")
    q.add_argument("--alternel", action="store_true")
    _common(q)
    q.set_defaults(handler=_cmd_mould_check)

    p = subs.add_parser("hyperlog",
                        help="hyperlogarithmic monomials and L values")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--word", default=None,
                        help="series coefficients for this word, e.g. 1,2")
    target.add_argument("--L", default=None,
                        help="numeric one-sided singular value")
    p.add_argument("--letters", default=None)
    _common(p, order=12)
    p.set_defaults(handler=_cmd_hyperlog)

    p = subs.add_parser("series", help="print builtin formal series")
    p.add_argument("--input", required=True, choices=("euler", "stirling"))
    p.add_argument("--borel", action="store_true",
                   help="include the Borel transform coefficients")
    _common(p, order=8)
    p.set_defaults(handler=_cmd_series)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "handler", None) is None:
            parser.error("a subcommand is required")
        if args.seed is not None:
            random.seed(args.seed)
        payload = args.handler(args)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}),
              file=sys.stderr)
        return 1
    except ResurgenceError as exc:
        print(json.dumps(exc.payload(), indent=2))
        return 2
    except NotImplementedError as exc:
        print(json.dumps({"error": "unsupported", "message": str(exc)}))
        return 2
    _emit(payload, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
