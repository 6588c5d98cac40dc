"""Borel-sum a divergent series and check it against factorials.

The series with coefficients B_{2k+2} / ((2k+1)(2k+2)) in odd inverse
powers of z is the asymptotic correction in the factorial formula

    log Gamma(z) = (z - 1/2) log z - z + log(2 pi)/2 + (the series).

Its coefficients grow like (2k)!, so the series has radius of
convergence zero; summing it means Borel transform, then Laplace
integral along the positive axis.  The Borel transform is the lattice-
pole function zeta^-2 ((zeta/2) coth(zeta/2) - 1), which the laplace
module integrates with a certified truncation tail.  At integer z the
answer is checkable against exact factorials.
"""

import mpmath

from resurgence import (RaySpec, euler_minor, euler_series, laplace_ray,
                        stirling_minor, verify_asymptotics)

mpmath.mp.prec = 80

print("correction(z) = log Gamma(z) - (z - 1/2) log z + z - log(2 pi)/2")
print()
print("   z    Borel sum            exact               |difference|   bound")
for z in (4, 10, 25):
    res = laplace_ray(stirling_minor(), 0, RaySpec(0, z, target_error=1e-16))
    # the reference subtracts numbers of size ~z log z to leave ~1/(12 z),
    # so it needs working precision well beyond the displayed digits
    with mpmath.workprec(200):
        exact = (mpmath.loggamma(z) - (z - mpmath.mpf(1) / 2) * mpmath.log(z)
                 + z - mpmath.log(2 * mpmath.pi) / 2)
        diff = abs(res.value - exact)
    print(f"  {z:3d}   {mpmath.nstr(res.value, 14):>18}"
          f"   {mpmath.nstr(exact, 14):>18}"
          f"   {mpmath.nstr(diff, 3):>10}   {mpmath.nstr(res.error_estimate, 3)}")

# and the reason the series needed Borel summation in the first place:
# its partial sums approximate only down to a floor that shrinks like
# n! / z^(n+1); the report below measures the rescaled remainders.
print()
print("rescaled remainders of the other classic example (coefficients")
print("(-1)^(n-1) (n-1)!), measured against the Gevrey-1 envelope n!:")
report = verify_asymptotics(
    euler_minor(), 0, euler_series(10), 0,
    zs=(6, 9, 14), orders=range(0, 8))
for row in report.rows():
    print(f"  order {row['order']:2d}   sup |z|^(n+1) |S - P_n| ="
          f" {mpmath.nstr(row['sup'], 6):>12}"
          f"   ratio to n! = {mpmath.nstr(row['gevrey_ratio'], 4)}")
print("inside the envelope with constant 1.25, type 1:",
      report.satisfies_envelope(1.25, 1.0))
