"""The one-parameter semigroup T(t) acting on PL members of C.

For ``0 <= t <= 1`` the map keeps ``x(-1)``, shifts ``x`` right by ``t``, and
fills the gap ``[0, t]`` with the clamp of ``1 - alpha_x(1 - t + u)`` into the
band ``[x(0) - t + u, x(0) + t - u]``.  Larger times are built from half-steps.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .pl_function import (
    DomainError,
    OmegaFn,
    alpha_fn,
    canonical_points,
    canonicalize,
    constant,
    eval_points,
    in_C,
    pl_max,
    pl_min,
    restrict,
    to_rational,
)

__all__ = [
    "HALF",
    "Decomposition",
    "Family",
    "FixedPointFamily",
    "ZERO",
    "F_PROFILE",
    "f",
    "apply_basic",
    "decompose",
    "apply",
    "orbit_zero_closed_form",
    "fixed_point",
    "v",
    "w",
    "is_common_fixed_point",
    "gap_profile",
]

HALF = Fraction(1, 2)
ZERO = constant(0)

#: Profile of the bump ``f``: 0 left of -2, up to 1 at -1, back to 0 at 0.
F_PROFILE: tuple[tuple[Fraction, Fraction], ...] = (
    (Fraction(-2), Fraction(0)),
    (Fraction(-1), Fraction(1)),
    (Fraction(0), Fraction(0)),
)


def f(u) -> Fraction:
    return eval_points(F_PROFILE, to_rational(u))


@dataclass(frozen=True)
class Decomposition:
    m: int
    t_prime: Fraction

    @property
    def t(self) -> Fraction:
        return self.m * HALF + self.t_prime


def decompose(t) -> Decomposition:
    """Split ``t`` as ``m/2 + t'`` with ``t'`` in ``[0, 1/2)``.

    Exact multiples of 1/2 get ``t' = 0``; ``m = 0`` is allowed.
    """
    t = to_rational(t)
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    m = math.floor(2 * t)
    return Decomposition(m, t - m * HALF)


def _clamp(g, lower, upper):
    # lower <= upper on [0, t], so this is the median of the three
    return pl_min(pl_max(g, lower), upper)


def gap_profile(t: Fraction, x: OmegaFn) -> list[tuple[Fraction, Fraction]]:
    """Breakpoints of ``u -> 1 - alpha_x(1 - t + u)`` on ``[0, t]``."""
    alpha = alpha_fn(x)
    lo = 1 - t
    return [(s - lo, 1 - a) for s, a in restrict(alpha.points, lo, Fraction(1))]


def apply_basic(t, x: OmegaFn) -> OmegaFn:
    """T(t)x for ``0 <= t <= 1``, straight from the three-case formula."""
    t = to_rational(t)
    if not 0 <= t <= 1:
        raise ValueError(f"apply_basic needs 0 <= t <= 1, got {t}; use apply")
    membership = in_C(x)
    if not membership:
        raise DomainError(f"T(t) is defined on C only ({membership.violation})")
    if t == 0:
        return canonicalize(x)
    x0 = x.points[0][1]
    zero = Fraction(0)
    # the three competitors as profiles, flat after u = t
    g = OmegaFn(zero, tuple(gap_profile(t, x)))
    lower = OmegaFn(zero, ((zero, x0 - t), (t, x0)))
    upper = OmegaFn(zero, ((zero, x0 + t), (t, x0)))
    head = restrict(_clamp(g, lower, upper).points, zero, t)
    shifted = [(u + t, val) for u, val in x.points]
    # head ends at (t, x0), which is also shifted[0]
    return OmegaFn(x.minus_one, canonical_points(head[:-1] + shifted))


def apply(t, x: OmegaFn) -> OmegaFn:
    t = to_rational(t)
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if t <= 1:
        return apply_basic(t, x)
    d = decompose(t)
    y = apply_basic(d.t_prime, x)
    for _ in range(d.m):
        y = apply_basic(HALF, y)
    return y


def orbit_zero_closed_form(t) -> OmegaFn:
    """T(t)0 as the travelling bump ``u -> f(u - t)``."""
    t = to_rational(t)
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    shifted = [(u + t, val) for u, val in F_PROFILE]
    pts = [(Fraction(0), eval_points(shifted, Fraction(0)))]
    pts += [(u, val) for u, val in shifted if u > 0]
    return OmegaFn(Fraction(0), canonical_points(pts))


class Family(enum.Enum):
    V = "v"
    W = "w"


@dataclass(frozen=True)
class FixedPointFamily:
    kind: Family
    s: Fraction

    def __post_init__(self):
        s = to_rational(self.s)
        if not 0 <= s <= HALF:
            raise ValueError(f"family parameter must lie in [0, 1/2], got {s}")
        object.__setattr__(self, "s", s)


def fixed_point(fam: FixedPointFamily) -> OmegaFn:
    if fam.kind is Family.V:
        return constant(fam.s, minus_one=1 - fam.s)
    return constant(HALF, minus_one=fam.s)


def v(s) -> OmegaFn:
    return fixed_point(FixedPointFamily(Family.V, s))


def w(s) -> OmegaFn:
    return fixed_point(FixedPointFamily(Family.W, s))


def is_common_fixed_point(x: OmegaFn) -> bool:
    membership = in_C(x)
    if not membership:
        raise DomainError(f"not a member of C ({membership.violation})")
    x = canonicalize(x)
    if len(x.points) != 1:
        return False
    c = x.tail
    if c <= HALF and x.minus_one == 1 - c:
        return True
    return c == HALF and x.minus_one <= HALF
