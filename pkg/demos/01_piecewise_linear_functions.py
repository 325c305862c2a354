# Exact piecewise-linear functions on {-1} u [0, inf)
#
# Every function in this package is stored as a value at the isolated point
# -1 plus breakpoints (u, v) on [0, inf), constant after the last one.  All
# numbers are Fractions, so equality checks below are exact.
from fractions import Fraction as F

from plsemigroup import OmegaFn, alpha_fn, canonicalize, dumps, in_C, integrate, pl_max, pl_min, sup_dist

# A tent that rises to 1 at u = 1 and falls back to 0 at u = 2; x(-1) = 1/3.
x = OmegaFn.make(F(1, 3), [(0, 0), (1, 1), (2, 0)])
print("x           :", dumps(x))
print("x(1/2)      :", x(F(1, 2)))
print("x(-1)       :", x(-1))

# Redundant breakpoints are dropped, so structural equality is function equality.
padded = OmegaFn(F(1, 3), ((F(0), F(0)), (F(1, 2), F(1, 2)), (F(1), F(1)), (F(2), F(0)), (F(5), F(0))))
print("canonical   :", canonicalize(padded) == x)

# Membership in C: values in [0, 1] and slopes of modulus at most 1.
print("x in C      :", in_C(x))
steep = OmegaFn.make(0, [(0, 0), (F(1, 4), 1)])
print("steep in C  :", in_C(steep))

# Pointwise min/max introduce exact crossing points.
level = OmegaFn.make(0, [(0, F(1, 2))])
print("min(x, 1/2) :", dumps(pl_min(x, level)))
print("max(x, 1/2) :", dumps(pl_max(x, level)))

# Tail supremum u -> max(x(-1), sup_{s >= u} x(s)).
print("alpha_x     :", dumps(alpha_fn(x)))

# Sup-norm distance and exact integrals.
print("||x - 1/2|| :", sup_dist(x, level))
print("int_0^2 x   :", integrate(x, 0, 2))
