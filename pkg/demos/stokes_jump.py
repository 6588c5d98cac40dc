"""Watch a Stokes jump happen.

The inverse-power series with coefficients (-1)^(n-1) (n-1)! has Borel
transform 1/(1+zeta), a single simple pole at -1.  Summing at negative z
forces the Laplace ray through the singular direction pi, so the two
lateral sums (rays tilted just below and just above pi) disagree by an
exponentially small amount.  Residue calculus says the difference is
exactly 2 pi i e^z.

The alien calculus predicts the same number without integrating
anything: the "+" lateral operator at omega = -1 applied to the series
gives the exact constant 2 pi i, and the bridge to function space
weights it with e^(-omega z) = e^z.  This script computes both sides.
"""

import mpmath

from resurgence import (ExactScalar, alien_plus, euler_minor,
                        euler_resurgent, lateral_jump)

mpmath.mp.prec = 70

# the exact side: one alien operator application, no quadrature
stokes_constant = alien_plus(euler_resurgent(), -1).constant_term
print("alien operator at -1 extracts the exact constant:", stokes_constant)
assert stokes_constant == ExactScalar.tau()

print()
print("      z        |S+ - S-|        prediction |2 pi i e^z|    residual")
for z in (-2, -3, -5):
    pair = lateral_jump(euler_minor(), 0, float(mpmath.pi), 0.5, z)
    predicted = abs(stokes_constant.evaluate(70)) * mpmath.exp(z)
    residual = abs(abs(pair.jump) - predicted)
    print(f"  {z:5d}   {mpmath.nstr(abs(pair.jump), 12):>18}"
          f"   {mpmath.nstr(predicted, 12):>18}   {mpmath.nstr(residual, 3)}")

print()
pair = lateral_jump(euler_minor(), 0, float(mpmath.pi), 0.5, -3)
print("at z = -3 the two lateral sums share their real part and split")
print("in the imaginary part, carrying the exponentially small term:")
print("  S+ =", mpmath.nstr(pair.plus.value, 15))
print("  S- =", mpmath.nstr(pair.minus.value, 15))
print("  jump =", mpmath.nstr(pair.jump, 15))
print("  reported error bound =", mpmath.nstr(pair.error_estimate, 3))
