"""Cesaro means ``A(t)x = (1/t) * integral_0^t T(s)x ds``.

Two routes:

* the orbit of 0 is the travelling bump ``f(u - s)``, so ``A(t)0`` has an
  exact piecewise-quadratic profile, ``(1 - F(u - t)) / t`` with ``F`` the
  antiderivative of ``f``;
* any other ``x`` in C goes through the composite trapezoid rule on the grid
  ``s_k = k*h``.  ``s -> T(s)x`` is 1-Lipschitz in the sup norm, which bounds
  the error of the mean by ``h/4``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .pl_function import DomainError, OmegaFn, eval_points, in_C, lincomb, sup_dist, to_rational
from .semigroup import F_PROFILE, ZERO, apply

__all__ = [
    "Method",
    "QuadPiece",
    "ZeroOrbitMean",
    "CesaroResult",
    "cesaro_zero_exact",
    "cesaro_quadrature",
    "cesaro_residual",
]


class Method(enum.Enum):
    EXACT_ZERO_ORBIT = "exact_zero_orbit"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class QuadPiece:
    """``c0 + c1*(u - anchor) + c2*(u - anchor)**2`` for ``lo <= u <= hi``.

    ``hi`` is None on the final unbounded piece.
    """
    lo: Fraction
    hi: Fraction | None
    anchor: Fraction
    c0: Fraction
    c1: Fraction
    c2: Fraction

    def __call__(self, u: Fraction) -> Fraction:
        d = u - self.anchor
        return self.c0 + d * (self.c1 + d * self.c2)

    def derivative(self, u: Fraction) -> Fraction:
        return self.c1 + 2 * self.c2 * (u - self.anchor)


def _antiderivative_pieces(profile) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
    """Pieces ``(a, F(a), v(a), slope)`` of the antiderivative from the left.

    ``F`` vanishes left of the first point.  Beyond the last point ``F`` grows
    linearly with the tail value, which is zero for the bump.
    """
    out = []
    acc = Fraction(0)
    for (a, va), (b, vb) in zip(profile, profile[1:]):
        m = (vb - va) / (b - a)
        out.append((a, acc, va, m))
        acc += (b - a) * (va + vb) / 2
    out.append((profile[-1][0], acc, profile[-1][1], Fraction(0)))
    return out


class ZeroOrbitMean:
    """Exact ``A(t)0`` on {-1} u [0, inf); its value at -1 is 0."""

    def __init__(self, t):
        t = to_rational(t)
        if t <= 0:
            raise ValueError(f"averaging time must be positive, got {t}")
        self.t = t
        self.minus_one = Fraction(0)
        self.pieces = self._build()

    def _build(self) -> list[QuadPiece]:
        t = self.t
        anti = _antiderivative_pieces(F_PROFILE)
        raw: list[QuadPiece] = []
        # u - t left of the bump: the window holds all the mass
        first = anti[0][0] + t
        raw.append(QuadPiece(Fraction(0), first, first, 1 / t, Fraction(0), Fraction(0)))
        bounds = [a + t for a, *_ in anti[1:]] + [None]
        for (a, Fa, va, m), hi in zip(anti, bounds):
            anchor = a + t
            raw.append(QuadPiece(anchor, hi, anchor, (1 - Fa) / t, -va / t, -m / (2 * t)))
        pieces = []
        for p in raw:
            if p.hi is not None and p.hi <= 0:
                continue
            if p.lo < 0:
                p = QuadPiece(Fraction(0), p.hi, p.anchor, p.c0, p.c1, p.c2)
            if p.hi is not None and p.hi <= p.lo:
                continue
            pieces.append(p)
        return pieces

    def _piece_at(self, u: Fraction) -> QuadPiece:
        for p in self.pieces:
            if p.hi is None or u <= p.hi:
                return p
        return self.pieces[-1]

    def __call__(self, u) -> Fraction:
        u = to_rational(u)
        if u == -1:
            return self.minus_one
        if u < 0:
            raise DomainError(f"{u} is not a point of the domain")
        return self._piece_at(u)(u)

    @property
    def boundaries(self) -> list[Fraction]:
        return sorted({p.lo for p in self.pieces} | {p.hi for p in self.pieces if p.hi is not None})

    def sup_dist(self, y: OmegaFn) -> Fraction:
        """Exact ``sup |A(t)0 - y|`` over the domain.

        On each cell between merged breakpoints the difference is a quadratic,
        so the sup sits at a cell end or at its vertex.
        """
        best = abs(self.minus_one - y.minus_one)
        grid = sorted(set(self.boundaries) | {u for u, _ in y.points})
        for u in grid:
            best = max(best, abs(self(u) - eval_points(y.points, u)))
        for l, r in zip(grid, grid[1:]):
            q = self._piece_at((l + r) / 2)
            if q.c2 == 0:
                continue
            yl, yr = eval_points(y.points, l), eval_points(y.points, r)
            slope = (yr - yl) / (r - l)
            crit = l - (q.derivative(l) - slope) / (2 * q.c2)
            if l < crit < r:
                best = max(best, abs(q(crit) - eval_points(y.points, crit)))
        return best

    def sup_norm(self) -> Fraction:
        return self.sup_dist(ZERO)


@dataclass(frozen=True)
class CesaroResult:
    mean: OmegaFn | ZeroOrbitMean
    error_bound: Fraction
    t: Fraction
    method: Method

    def distance_to(self, x: OmegaFn) -> Fraction:
        if isinstance(self.mean, ZeroOrbitMean):
            return self.mean.sup_dist(x)
        return sup_dist(self.mean, x)


def cesaro_zero_exact(t) -> CesaroResult:
    mean = ZeroOrbitMean(t)
    return CesaroResult(mean, Fraction(0), mean.t, Method.EXACT_ZERO_ORBIT)


def cesaro_quadrature(x: OmegaFn, t, h) -> CesaroResult:
    """Composite trapezoid mean on nodes ``k*h``, with the ``h/4`` bound.

    Nodes are produced by stepping ``T(h)`` repeatedly, which equals
    ``T(k*h)x`` exactly by the semigroup law.
    """
    t, h = to_rational(t), to_rational(h)
    if t <= 0 or h <= 0:
        raise ValueError(f"need t > 0 and h > 0, got t={t}, h={h}")
    n = t / h
    if n.denominator != 1:
        raise ValueError(f"step {h} does not divide {t}")
    n = int(n)
    membership = in_C(x)
    if not membership:
        raise DomainError(f"Cesaro means are taken in C ({membership.violation})")
    w_end, w_mid = 1 / Fraction(2 * n), 1 / Fraction(n)
    terms = [(w_end, x)]
    y = x
    for k in range(1, n + 1):
        y = apply(h, y)
        terms.append((w_end if k == n else w_mid, y))
    return CesaroResult(lincomb(terms), h / 4, t, Method.QUADRATURE)


def cesaro_residual(x: OmegaFn, t, h=None) -> tuple[Fraction, Fraction]:
    """``(||A(t)x - x||, error bound)``.

    With ``h`` omitted the exact route is used, which requires ``x = 0``.
    """
    if h is None:
        if x != ZERO:
            raise ValueError("the exact route covers x = 0 only; pass a step h")
        res = cesaro_zero_exact(t)
    else:
        res = cesaro_quadrature(x, t, h)
    return res.distance_to(x), res.error_bound
