"""Multizeta values two ways, with certified error bounds.

The nested sums zeta(s_1, ..., s_r) multiply in two different
combinatorial fashions.  As sums they stuffle:

    zeta(2) zeta(2) = 2 zeta(2,2) + zeta(4),

and as iterated integrals they shuffle:

    zeta(2) zeta(2) = 2 zeta(2,2) + 4 zeta(3,1).

Both right-hand sides must equal pi^4 / 36, and eliminating zeta(2,2)
between them proves zeta(3,1) = pi^4 / 360 with no analysis at all.
The evaluator reports guaranteed error bounds, so each numeric identity
below comes with the tolerance that certifies it.
"""

import mpmath

from resurgence import MzvIndex, verify_relation, wa_eval, ze_eval, ze_to_wa

mpmath.mp.prec = 80

report = verify_relation(MzvIndex((2,)), MzvIndex((2,)), prec=80)
print("zeta(2)^2 =", mpmath.nstr(report.product_value, 18))
print("pi^4/36   =", mpmath.nstr(mpmath.pi ** 4 / 36, 18))
for check in report.checks:
    terms = " + ".join(
        f"{term['multiplicity']}*{term['index']}"
        for term in (dict(index=i, multiplicity=m) for i, m in check.terms))
    print(f"  {check.mode:8s} gives {terms}")
    print(f"           value {mpmath.nstr(check.value, 18)}, residual "
          f"{mpmath.nstr(check.residual, 3)} within budget "
          f"{mpmath.nstr(check.budget, 3)}: {'ok' if check.ok else 'FAIL'}")

# the duality that makes depth collapse: zeta(2,1) = zeta(3)
print()
a = ze_eval(MzvIndex((2, 1)), prec=80)
b = ze_eval(MzvIndex((3,)), prec=80)
print("zeta(2,1) =", mpmath.nstr(a.value, 18), "+/-", mpmath.nstr(a.error, 3))
print("zeta(3)   =", mpmath.nstr(b.value, 18), "+/-", mpmath.nstr(b.error, 3))
print("difference:", mpmath.nstr(abs(a.value - b.value), 3))

# sums against iterated integrals: the dictionary sends an index to a
# word in the integration kernels, evaluated by independent quadrature
print()
print("index        nested sum         iterated integral   |difference|")
for s in [(2,), (3,), (2, 1), (2, 2), (3, 1)]:
    idx = MzvIndex(s)
    sum_side = ze_eval(idx, prec=60)
    int_side = wa_eval(ze_to_wa(idx), prec=60)
    diff = abs(sum_side.value - int_side.value)
    label = "zeta" + str(s)
    print(f"  {label:10s} {mpmath.nstr(sum_side.value, 15):>18}"
          f" {mpmath.nstr(int_side.value, 15):>18}   {mpmath.nstr(diff, 3)}")
