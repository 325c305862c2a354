import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plsemigroup.pl_function import (
    DomainError,
    OmegaFn,
    StructureError,
    alpha_fn,
    canonicalize,
    constant,
    dumps,
    evaluate,
    in_C,
    integrate,
    lincomb,
    loads,
    pl_max,
    pl_min,
    sup_dist,
    to_rational,
)
from plsemigroup.semigroup import F_PROFILE, orbit_zero_closed_form, v
from strategies import members, rationals, raw_profiles


def probe_points(*fns):
    xs = sorted({u for x in fns for u, _ in x.points})
    mids = [(a + b) / 2 for a, b in zip(xs, xs[1:])]
    return [F(-1)] + xs + mids + [xs[-1] + 1]


def f_direct(r):
    if r >= 0 or r <= -2:
        return 0.0
    return -r if r >= -1 else r + 2


class TestStructure:
    def test_missing_origin(self):
        with pytest.raises(StructureError):
            OmegaFn(F(0), ((F(1), F(0)),))

    @pytest.mark.parametrize("pts", [
        ((F(0), F(0)), (F(2), F(0)), (F(1), F(0))),
        ((F(0), F(0)), (F(0), F(1))),
        (),
    ])
    def test_malformed(self, pts):
        with pytest.raises(StructureError):
            OmegaFn(F(0), pts)

    def test_to_rational_rejects_floats(self):
        with pytest.raises(TypeError):
            to_rational(0.5)
        with pytest.raises(ValueError):
            to_rational("0.5")
        assert to_rational("3/6") == F(1, 2)
        assert to_rational(-4) == -4


class TestCanonicalize:
    def test_constant_merge(self):
        x = OmegaFn(F(0), ((F(0), F(0)), (F(1), F(0)), (F(2), F(0))))
        assert canonicalize(x).points == ((0, 0),)

    def test_collinear_merge(self):
        x = OmegaFn(F(0), ((F(0), F(0)), (F(1), F(1)), (F(2), F(2))))
        assert canonicalize(x).points == ((0, 0), (2, 2))

    def test_keeps_corners(self):
        x = OmegaFn(F(0), ((F(0), F(0)), (F(1), F(1)), (F(2), F(0))))
        assert canonicalize(x) == x

    @given(raw_profiles())
    def test_idempotent_and_pointwise(self, x):
        c = canonicalize(x)
        assert canonicalize(c) == c
        assert c.is_canonical()
        for u in probe_points(x, c):
            assert evaluate(c, u) == evaluate(x, u)


class TestEvaluate:
    def test_zero(self):
        assert evaluate(constant(0), 5) == 0

    def test_T1_zero_at_origin(self):
        x = OmegaFn.make(0, [(0, 1), (1, 0)])
        assert evaluate(x, 0) == 1
        assert x(F(1, 4)) == F(3, 4)
        assert x(7) == 0

    def test_minus_one(self):
        assert evaluate(v(F(1, 4)), -1) == F(3, 4)

    def test_outside_domain(self):
        with pytest.raises(DomainError):
            evaluate(constant(0), F(-1, 2))


class TestInC:
    def test_zero(self):
        assert in_C(constant(0)).in_C

    def test_steep(self):
        m = in_C(OmegaFn.make(0, [(0, 0), (F(1, 4), F(1, 2))]))
        assert not m.in_C and m.violation.startswith("Lipschitz")

    def test_range(self):
        m = in_C(OmegaFn.make(0, [(0, 1), (1, F(3, 2))]))
        assert not m.in_C and m.violation.startswith("range")
        assert not in_C(constant(0, minus_one=2))

    @given(members(), members(), rationals())
    def test_convex(self, x, y, lam):
        assert in_C(lincomb([(lam, x), (1 - lam, y)]))


class TestSupDist:
    def test_self(self):
        x = OmegaFn.make(F(1, 3), [(0, 1), (1, 0), (2, F(1, 2))])
        assert sup_dist(x, x) == 0

    @pytest.mark.parametrize("t, expected", [(F(1, 2), F(1, 2)), (F(3), F(1))])
    def test_zero_orbit(self, t, expected):
        # oracle: dense grid of the bump formula, step 1/1000 covers every kink
        grid = max(f_direct(k / 1000 - float(t)) for k in range(0, int(t * 1000) + 2000))
        assert abs(grid - float(expected)) < 1e-12
        assert sup_dist(constant(0), orbit_zero_closed_form(t)) == expected

    def test_fixed_point_family(self):
        a, b = v(F(1, 4)), v(F(1, 3))
        oracle = max(abs(a(-1) - b(-1)), abs(a(0) - b(0)))
        assert oracle == F(1, 12)
        assert sup_dist(a, b) == F(1, 12)

    @given(raw_profiles(), raw_profiles(), raw_profiles())
    def test_metric(self, x, y, z):
        x, y, z = map(canonicalize, (x, y, z))
        assert sup_dist(x, y) == sup_dist(y, x)
        assert sup_dist(x, z) <= sup_dist(x, y) + sup_dist(y, z)
        assert (sup_dist(x, y) == 0) == (x == y)

    @given(raw_profiles(), raw_profiles())
    def test_attains_grid_max(self, x, y):
        assert sup_dist(x, y) == max(abs(x(u) - y(u)) for u in probe_points(x, y))


class TestMinMax:
    def test_self(self):
        x = OmegaFn.make(0, [(0, 0), (1, 1), (3, F(1, 2))])
        assert pl_min(x, x) == x and pl_max(x, x) == x

    def test_crossing(self):
        ramp = OmegaFn.make(0, [(0, 0), (1, 1)])
        got = pl_min(constant(F(1, 2)), ramp)
        assert got.points == ((0, 0), (F(1, 2), F(1, 2)))
        assert got.minus_one == 0

    @given(raw_profiles(), raw_profiles())
    def test_sum_identity(self, x, y):
        lhs = lincomb([(1, pl_max(x, y)), (1, pl_min(x, y))])
        rhs = lincomb([(1, x), (1, y)])
        for u in probe_points(x, y, lhs):
            assert lhs(u) == rhs(u) == x(u) + y(u)

    @settings(max_examples=30)
    @given(raw_profiles(), raw_profiles(), st.integers(0, 2**32))
    def test_random_points(self, x, y, seed):
        rng = random.Random(seed)
        lo, hi = pl_min(x, y), pl_max(x, y)
        assert lo.is_canonical() and hi.is_canonical()
        for _ in range(1000):
            u = F(rng.randint(0, 12000), rng.randint(1, 997))
            assert lo(u) == min(x(u), y(u))
            assert hi(u) == max(x(u), y(u))


def alpha_oracle(x, u):
    # brute force over a fine lattice plus the breakpoints themselves
    cands = [x.minus_one, x(u)] + [x(u + F(k, 8)) for k in range(0, 200)]
    cands += [val for b, val in x.points if b >= u]
    return max(cands)


class TestAlpha:
    def test_zero(self):
        assert alpha_fn(constant(0)) == constant(0)

    def test_fixed_point_family(self):
        a = alpha_fn(v(F(1, 4)))
        assert a.points == ((0, F(3, 4)),)

    def test_T1_zero(self):
        a = alpha_fn(OmegaFn.make(0, [(0, 1), (1, 0)]))
        assert a.points == ((0, 1), (1, 0))

    def test_requires_C(self):
        with pytest.raises(DomainError):
            alpha_fn(constant(2))

    @given(members(), rationals(0, 6))
    def test_matches_brute_force(self, x, u):
        assert alpha_fn(x)(u) == alpha_oracle(x, u)

    @given(members())
    def test_nonincreasing_lipschitz(self, x):
        a = alpha_fn(x)
        for (u0, v0), (u1, v1) in zip(a.points, a.points[1:]):
            assert -1 <= (v1 - v0) / (u1 - u0) <= 0
        assert a.points[-1][1] == max(x.minus_one, x.points[-1][1])

    @given(members(), members(), rationals(0, 6))
    def test_distance_bound(self, x, y, u):
        assert abs(alpha_fn(x)(u) - alpha_fn(y)(u)) <= sup_dist(x, y)


class TestIntegrate:
    @given(rationals(-2, 2), rationals(0, 3), rationals(0, 3))
    def test_constant(self, c, a, b):
        a, b = min(a, b), max(a, b)
        assert integrate(constant(c), a, b) == c * (b - a)

    def test_bump(self):
        h = 1 / 1000
        riemann = sum(f_direct(-2 + (k + 0.5) * h) for k in range(2000)) * h
        assert abs(riemann - 1) < 1 / 250
        assert integrate(F_PROFILE, -2, 0) == 1
        assert integrate(F_PROFILE, -5, 5) == 1

    def test_triangle(self):
        assert integrate(OmegaFn.make(0, [(0, 1), (1, 0)]), 0, 1) == F(1, 2)

    @given(raw_profiles(), rationals(0, 12), rationals(0, 12), rationals(0, 12))
    def test_additive(self, x, a, b, c):
        a, b, c = sorted((a, b, c))
        assert integrate(x, a, c) == integrate(x, a, b) + integrate(x, b, c)

    def test_bad_bounds(self):
        with pytest.raises(ValueError):
            integrate(constant(1), 2, 1)
        with pytest.raises(DomainError):
            integrate(constant(1), -1, 1)


class TestSerialization:
    def test_format(self):
        x = OmegaFn.make(F(1, 2), [(0, 1), (F(3, 2), 0)])
        assert dumps(x) == '{"minus_one": "1/2", "breakpoints": [["0", "1"], ["3/2", "0"]]}'

    def test_accepts_integers(self):
        x = loads('{"minus_one": 0, "breakpoints": [[0, 1], ["1", "0"]]}')
        assert x == OmegaFn.make(0, [(0, 1), (1, 0)])

    @given(raw_profiles())
    def test_round_trip(self, x):
        x = canonicalize(x)
        text = dumps(x)
        assert loads(text) == x
        assert dumps(loads(text)) == text

    @pytest.mark.parametrize("text", [
        '{"minus_one": "0"}',
        '{"minus_one": "0", "breakpoints": [["0"]]}',
        '{"minus_one": "0", "breakpoints": [["1", "0"]]}',
        '{"minus_one": "0.5", "breakpoints": [["0", "0"]]}',
    ])
    def test_rejects(self, text):
        with pytest.raises(ValueError):
            loads(text)
