# The semigroup T(t) and the orbit of 0
#
# T(t) shifts a function right by t and fills [0, t] with a clamped copy of
# 1 - alpha_x.  Starting from the zero function the orbit is a unit bump that
# travels to the right.
from fractions import Fraction as F

from plsemigroup import ZERO, apply, decompose, dumps, orbit_zero_closed_form, sup_dist, v, w

for t in (F(1, 2), F(1), F(3, 2), F(2), F(9, 2)):
    y = apply(t, ZERO)
    same = y == orbit_zero_closed_form(t)
    print(f"T({t})0 = {dumps(y)}   matches bump: {same}")

# Times beyond 1 are assembled from half steps: t = m/2 + t', t' in [0, 1/2).
print("decompose(17/10):", decompose(F(17, 10)))

# The semigroup law and the isometry hold exactly, not up to rounding.
x = v(F(1, 8))
y = apply(F(1, 3), ZERO)
s, t = F(2, 3), F(5, 4)
print("T(s)T(t)y == T(s+t)y:", apply(s, apply(t, y)) == apply(s + t, y))
print("||T(t)x - T(t)y|| == ||x - y||:", sup_dist(apply(t, x), apply(t, y)) == sup_dist(x, y))

# Common fixed points: the two families v_s and w_s, s in [0, 1/2].
for z in (v(0), v(F(1, 4)), w(0), w(F(1, 2))):
    print(f"{dumps(z)} fixed by T(7/3): {apply(F(7, 3), z) == z}")
