from fractions import Fraction

from hypothesis import strategies as st

from plsemigroup.pl_function import OmegaFn, canonicalize

DENS = (1, 2, 3, 4, 5, 8, 12, 16, 64)


@st.composite
def rationals(draw, lo=0, hi=1, dens=DENS):
    d = draw(st.sampled_from(dens))
    lo, hi = Fraction(lo), Fraction(hi)
    a = -((-lo * d).__floor__())
    b = (hi * d).__floor__()
    return Fraction(draw(st.integers(a, b)), d)


@st.composite
def members(draw, max_points=5):
    """Random canonical members of C."""
    n = draw(st.integers(1, max_points))
    d = draw(st.sampled_from(DENS))
    ks = draw(st.lists(st.integers(1, 4 * d), min_size=n - 1, max_size=n - 1, unique=True))
    xs = [Fraction(0)] + [Fraction(k, d) for k in sorted(ks)]
    vals = [draw(rationals())]
    for u0, u1 in zip(xs, xs[1:]):
        step = draw(rationals(-1, 1)) * (u1 - u0)
        vals.append(min(Fraction(1), max(Fraction(0), vals[-1] + step)))
    return canonicalize(OmegaFn(draw(rationals()), tuple(zip(xs, vals))))


@st.composite
def raw_profiles(draw, max_points=6):
    """Arbitrary (not necessarily canonical, not in C) OmegaFn data."""
    n = draw(st.integers(1, max_points))
    ks = draw(st.lists(st.integers(1, 40), min_size=n - 1, max_size=n - 1, unique=True))
    xs = [Fraction(0)] + [Fraction(k, 4) for k in sorted(ks)]
    vals = [draw(rationals(-3, 3)) for _ in xs]
    return OmegaFn(draw(rationals(-3, 3)), tuple(zip(xs, vals)))
