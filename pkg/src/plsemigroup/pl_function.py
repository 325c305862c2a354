"""Eventually-constant piecewise-linear functions on {-1} u [0, inf).

A function is stored as its value at the isolated point -1 together with a
strictly increasing list of breakpoints ``(u, v)`` starting at ``u = 0``.
Between breakpoints the function is linear; after the last breakpoint it is
constant.  All data are :class:`fractions.Fraction`, so every operation here
is exact.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Point = tuple[Fraction, Fraction]

__all__ = [
    "StructureError",
    "DomainError",
    "OmegaFn",
    "CMembership",
    "to_rational",
    "constant",
    "canonicalize",
    "canonical_points",
    "evaluate",
    "eval_points",
    "in_C",
    "sup_dist",
    "pl_min",
    "pl_max",
    "lincomb",
    "alpha_fn",
    "integrate",
    "restrict",
    "dumps",
    "loads",
    "to_record",
    "from_record",
]


class StructureError(ValueError):
    """Malformed breakpoint data."""


class DomainError(ValueError):
    """Argument outside the domain where an operation is defined."""


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently import rounding error.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text or any(c in text for c in ".eE_ "):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


@dataclass(frozen=True)
class OmegaFn:
    minus_one: Fraction
    points: tuple[Point, ...]

    def __post_init__(self):
        _check_points(self.points)
        if self.points[0][0] != 0:
            raise StructureError("first breakpoint must sit at u = 0")

    @classmethod
    def make(cls, minus_one, points: Iterable[Sequence]) -> OmegaFn:
        """Build from loose literals and return the canonical form."""
        pts = tuple((to_rational(u), to_rational(v)) for u, v in points)
        return canonicalize(cls(to_rational(minus_one), pts))

    def __call__(self, u) -> Fraction:
        return evaluate(self, u)

    @property
    def tail(self) -> Fraction:
        return self.points[-1][1]

    @property
    def abscissae(self) -> list[Fraction]:
        return [u for u, _ in self.points]

    def is_canonical(self) -> bool:
        return canonical_points(self.points) == self.points


@dataclass(frozen=True)
class CMembership:
    in_C: bool
    violation: str | None = None

    def __bool__(self):
        return self.in_C


def constant(c, minus_one=None) -> OmegaFn:
    c = to_rational(c)
    m = c if minus_one is None else to_rational(minus_one)
    return OmegaFn(m, ((Fraction(0), c),))


def _check_points(points: Sequence[Point]) -> None:
    if not points:
        raise StructureError("at least one breakpoint is required")
    for (u0, _), (u1, _) in zip(points, points[1:]):
        if u1 <= u0:
            raise StructureError(
                f"breakpoint abscissae must strictly increase ({u0} then {u1})")


# -- point-list primitives ---------------------------------------------------
#
# A "profile" is a non-empty, strictly increasing list of points describing a
# continuous PL function on the whole real line, constant to the left of the
# first point and to the right of the last one.  OmegaFn.points is a profile
# whose first abscissa is 0.

def canonical_points(points: Sequence[Point]) -> tuple[Point, ...]:
    """Drop every breakpoint that is collinear with its neighbours.

    The constant extension on either side counts as a neighbour, so a leading
    or trailing breakpoint is dropped when it continues a flat run; the first
    point is kept regardless, because OmegaFn anchors it at 0.
    """
    _check_points(points)
    out: list[Point] = [points[0]]
    for i in range(1, len(points)):
        u, v = points[i]
        if i + 1 < len(points):
            nu, nv = points[i + 1]
        else:
            nu, nv = u + 1, v
        pu, pv = out[-1]
        if (v - pv) * (nu - u) == (nv - v) * (u - pu):
            continue
        out.append((u, v))
    return tuple(out)


def canonicalize(x: OmegaFn) -> OmegaFn:
    pts = canonical_points(x.points)
    if pts == x.points:
        return x
    return OmegaFn(x.minus_one, pts)


def eval_points(points: Sequence[Point], u: Fraction) -> Fraction:
    if u <= points[0][0]:
        return points[0][1]
    if u >= points[-1][0]:
        return points[-1][1]
    lo, hi = 0, len(points) - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if points[mid][0] <= u:
            lo = mid
        else:
            hi = mid
    (u0, v0), (u1, v1) = points[lo], points[hi]
    return v0 + (v1 - v0) * (u - u0) / (u1 - u0)


def evaluate(x: OmegaFn, u) -> Fraction:
    u = to_rational(u)
    if u == -1:
        return x.minus_one
    if u < 0:
        raise DomainError(f"{u} is not a point of the domain {{-1}} u [0, inf)")
    return eval_points(x.points, u)


def restrict(points: Sequence[Point], a: Fraction, b: Fraction) -> list[Point]:
    """Breakpoints of a profile on ``[a, b]``, endpoints included."""
    if a > b:
        raise ValueError(f"empty interval [{a}, {b}]")
    out = [(a, eval_points(points, a))]
    out += [(u, v) for u, v in points if a < u < b]
    if b > a:
        out.append((b, eval_points(points, b)))
    return out


def _merged_abscissae(*profiles: Sequence[Point]) -> list[Fraction]:
    return sorted({u for pts in profiles for u, _ in pts})


def _combine(p: Sequence[Point], q: Sequence[Point], pick) -> tuple[Point, ...]:
    """Pointwise ``pick(a, b)`` (min or max) of two profiles."""
    xs = _merged_abscissae(p, q)
    out: list[Point] = []
    prev = None
    for u in xs:
        a, b = eval_points(p, u), eval_points(q, u)
        if prev is not None:
            pu, pa, pb = prev
            d0, d1 = pa - pb, a - b
            if d0 * d1 < 0:
                # the two lines cross strictly inside (pu, u)
                s = d0 / (d0 - d1)
                cu = pu + s * (u - pu)
                out.append((cu, pa + s * (a - pa)))
        out.append((u, pick(a, b)))
        prev = (u, a, b)
    return canonical_points(out)


def _omega_combine(x: OmegaFn, y: OmegaFn, pick) -> OmegaFn:
    return OmegaFn(pick(x.minus_one, y.minus_one), _combine(x.points, y.points, pick))


def pl_min(x: OmegaFn, y: OmegaFn) -> OmegaFn:
    return _omega_combine(x, y, min)


def pl_max(x: OmegaFn, y: OmegaFn) -> OmegaFn:
    return _omega_combine(x, y, max)


def lincomb(terms: Iterable[tuple[Fraction, OmegaFn]]) -> OmegaFn:
    """Exact linear combination ``sum(c * x)`` of OmegaFns."""
    terms = [(to_rational(c), x) for c, x in terms]
    if not terms:
        raise ValueError("empty linear combination")
    # Sum slope changes instead of evaluating every term at every abscissa;
    # linear in the total number of breakpoints.
    start = Fraction(0)
    kinks: dict[Fraction, Fraction] = {}
    for c, x in terms:
        start += c * x.points[0][1]
        slope = Fraction(0)
        for (u0, v0), (u1, v1) in zip(x.points, x.points[1:]):
            s = (v1 - v0) / (u1 - u0)
            kinks[u0] = kinks.get(u0, 0) + c * (s - slope)
            slope = s
        last = x.points[-1][0]
        kinks[last] = kinks.get(last, 0) - c * slope
    pts: list[Point] = []
    u_prev, val, slope = Fraction(0), start, Fraction(0)
    for u in sorted(kinks):
        val += slope * (u - u_prev)
        pts.append((u, val))
        slope += kinks[u]
        u_prev = u
    if not pts or pts[0][0] != 0:
        pts.insert(0, (Fraction(0), start))
    m1 = sum((c * x.minus_one for c, x in terms), Fraction(0))
    return OmegaFn(m1, canonical_points(pts))


def in_C(x: OmegaFn) -> CMembership:
    """Membership in C: values in [0, 1] and slopes in [-1, 1]."""
    if not 0 <= x.minus_one <= 1:
        return CMembership(False, f"range: x(-1) = {x.minus_one} not in [0, 1]")
    for u, v in x.points:
        if not 0 <= v <= 1:
            return CMembership(False, f"range: x({u}) = {v} not in [0, 1]")
    for (u0, v0), (u1, v1) in zip(x.points, x.points[1:]):
        if abs(v1 - v0) > u1 - u0:
            slope = (v1 - v0) / (u1 - u0)
            return CMembership(
                False, f"Lipschitz: slope {slope} on [{u0}, {u1}] exceeds 1 in modulus")
    return CMembership(True)


def sup_dist(x: OmegaFn, y: OmegaFn) -> Fraction:
    """Exact sup-norm distance over {-1} u [0, inf).

    The difference is PL, so its modulus peaks at -1, at a merged breakpoint,
    or on the common constant tail (which is the last merged breakpoint).
    """
    best = abs(x.minus_one - y.minus_one)
    for u in _merged_abscissae(x.points, y.points):
        best = max(best, abs(eval_points(x.points, u) - eval_points(y.points, u)))
    return best


def alpha_fn(x: OmegaFn) -> OmegaFn:
    """Tail supremum ``w -> max(x(-1), sup_{s >= w} x(s))`` on [0, inf).

    Returned as an OmegaFn whose value at -1 repeats ``x(-1)``; only the
    [0, inf) part is meaningful.  Right-to-left scan: on a segment the tail
    supremum is ``max(running max, x(w))`` since a linear piece peaks at an
    endpoint.
    """
    membership = in_C(x)
    if not membership:
        raise DomainError(f"tail supremum taken outside C ({membership.violation})")
    pts = x.points
    run = max(x.minus_one, pts[-1][1])
    rev: list[Point] = [(pts[-1][0], run)]
    for (u0, v0), (u1, v1) in zip(reversed(pts[:-1]), reversed(pts[1:])):
        # segment [u0, u1]; rev[-1] is the value at u1
        if v0 > run:
            if v1 < run:
                # x climbs past the running max inside the segment
                cu = u1 - (run - v1) * (u1 - u0) / (v0 - v1)
                rev.append((cu, run))
            run = v0
        rev.append((u0, run))
    return OmegaFn(x.minus_one, canonical_points(rev[::-1]))


def integrate(x, a, b) -> Fraction:
    """Exact integral over ``[a, b]`` by per-segment trapezoids.

    ``x`` is an OmegaFn (then ``0 <= a``) or a bare profile, i.e. a sequence
    of points with constant extension on both sides.
    """
    a, b = to_rational(a), to_rational(b)
    if a > b:
        raise ValueError(f"integration bounds out of order: {a} > {b}")
    if isinstance(x, OmegaFn):
        if a < 0:
            raise DomainError("OmegaFn integrals live on [0, inf)")
        pts = x.points
    else:
        pts = [(to_rational(u), to_rational(v)) for u, v in x]
        _check_points(pts)
    if a == b:
        return Fraction(0)
    seg = restrict(pts, a, b)
    return sum(((u1 - u0) * (v0 + v1) / 2 for (u0, v0), (u1, v1) in zip(seg, seg[1:])),
               Fraction(0))


# -- serialization -------------------------------------------------------------

def to_record(x: OmegaFn) -> dict:
    return {
        "minus_one": str(x.minus_one),
        "breakpoints": [[str(u), str(v)] for u, v in x.points],
    }


def from_record(rec: dict) -> OmegaFn:
    try:
        m1 = rec["minus_one"]
        bps = rec["breakpoints"]
    except (KeyError, TypeError) as exc:
        raise StructureError(f"bad function record: {exc}") from None
    pts = []
    for item in bps:
        if len(item) != 2:
            raise StructureError(f"breakpoint must be a [u, v] pair, got {item!r}")
        pts.append((to_rational(item[0]), to_rational(item[1])))
    return OmegaFn(to_rational(m1), tuple(pts))


def dumps(x: OmegaFn) -> str:
    return json.dumps(to_record(x))


def loads(text: str) -> OmegaFn:
    return from_record(json.loads(text))
