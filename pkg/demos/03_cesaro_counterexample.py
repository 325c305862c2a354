# The Cesaro means of the orbit of 0 tend to 0, yet 0 is not a common fixed point
#
# The bump carries unit mass through a window of width t, so the averaged
# orbit has sup norm exactly 1/t once t >= 2.
from fractions import Fraction as F

from plsemigroup import ZERO, apply, cesaro_residual, cesaro_zero_exact, is_common_fixed_point, sup_dist

print("0 is a common fixed point:", is_common_fixed_point(ZERO))
print("||T(1)0 - 0|| =", sup_dist(apply(1, ZERO), ZERO))
print()
print(f"{'t':>6}  {'||A(t)0 - 0||':>14}")
for k in range(0, 11):
    t = 2 ** k
    r, _ = cesaro_residual(ZERO, t)
    print(f"{t:>6}  {str(r):>14}")

# The averaged profile is piecewise quadratic; evaluate it exactly.
mean = cesaro_zero_exact(5).mean
print()
print("A(5)0 at u = 0, 3, 7/2, 4, 5:", [str(mean(u)) for u in (0, 3, F(7, 2), 4, 5)])

# The trapezoid route works for any x in C and carries a proved h/4 bound.
for h in (F(1, 2), F(1, 8), F(1, 32)):
    approx, bound = cesaro_residual(ZERO, 4, h)
    print(f"h = {h}: trapezoid residual {approx} (bound {bound}), exact 1/4")
