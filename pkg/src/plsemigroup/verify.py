"""Randomised, exact checks of every identity and inequality the construction
is supposed to satisfy.

Each suite draws its instances from a generator seeded by ``(seed, check_id)``
so a suite gives the same report whether it runs alone or inside
:func:`run_all`.  Comparisons are exact; one failing instance is recorded as
the witness.
"""
from __future__ import annotations

import contextlib
import dataclasses
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from . import semigroup as sg
from .cesaro import cesaro_zero_exact
from .pl_function import (
    OmegaFn,
    alpha_fn,
    canonicalize,
    dumps,
    eval_points,
    evaluate,
    in_C,
    pl_max,
    sup_dist,
)

__all__ = [
    "CHECK_IDS",
    "MUTANTS",
    "CheckReport",
    "InstanceGen",
    "gen_random_C",
    "run_suite",
    "run_all",
    "mutant",
    "reports_to_json",
    "reports_from_json",
]

_DENOMINATORS = (1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 32, 64)


@dataclass(frozen=True)
class InstanceGen:
    seed: int = 0
    count: int = 100
    t_range: tuple[Fraction, Fraction] = (Fraction(0), Fraction(3))
    breakpoint_budget: int = 6
    max_den: int = 64


@dataclass
class CheckReport:
    check_id: str
    instances: int = 0
    passed: int = 0
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.witness is None and self.passed == self.instances

    def record(self, ok: bool, witness: Callable[[], dict]) -> None:
        self.instances += 1
        if ok:
            self.passed += 1
        elif self.witness is None:
            self.witness = witness()

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def reports_to_json(reports: list[CheckReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=1)


def reports_from_json(text: str) -> list[CheckReport]:
    return [CheckReport(**d) for d in json.loads(text)]


class _Sampler:
    def __init__(self, rng: random.Random, gen: InstanceGen):
        self.rng = rng
        self.gen = gen

    def rational(self, lo, hi) -> Fraction:
        lo, hi = Fraction(lo), Fraction(hi)
        d = self.rng.choice([q for q in _DENOMINATORS if q <= self.gen.max_den])
        a, b = math.ceil(lo * d), math.floor(hi * d)
        if a > b:
            return lo
        return Fraction(self.rng.randint(a, b), d)

    def time(self) -> Fraction:
        return self.rational(*self.gen.t_range)

    def member(self, budget: int | None = None) -> OmegaFn:
        budget = budget or self.gen.breakpoint_budget
        rng = self.rng
        n = rng.randint(1, max(1, budget))
        d = rng.choice([q for q in _DENOMINATORS if q <= self.gen.max_den])
        span = max(3 * d, n)
        xs = [Fraction(0)] + [Fraction(k, d) for k in sorted(rng.sample(range(1, span + 1), n - 1))]
        vals = [self.rational(0, 1)]
        for u0, u1 in zip(xs, xs[1:]):
            step = self.rational(-1, 1) * (u1 - u0)
            vals.append(min(Fraction(1), max(Fraction(0), vals[-1] + step)))
        return canonicalize(OmegaFn(self.rational(0, 1), tuple(zip(xs, vals))))

    def point(self, hi=4) -> Fraction:
        # -1 belongs to the domain too
        if self.rng.random() < 0.1:
            return Fraction(-1)
        return self.rational(0, hi)


def _rng(gen: InstanceGen, check_id: str) -> random.Random:
    return random.Random(f"{gen.seed}:{check_id}")


def gen_random_C(gen: InstanceGen) -> list[OmegaFn]:
    """``gen.count`` random members of C; budget 1 gives constants."""
    if gen.breakpoint_budget < 1:
        raise ValueError("breakpoint budget must be at least 1")
    s = _Sampler(_rng(gen, "gen_random_C"), gen)
    return [s.member() for _ in range(gen.count)]


class _Run:
    """Shared state for one harness run: every T(t)x produced is checked for C."""

    def __init__(self):
        self.c_checked = 0
        self.c_witness: dict | None = None
        self.c_failed = 0

    def T(self, t, x: OmegaFn) -> OmegaFn:
        y = sg.apply(t, x)
        self.c_checked += 1
        membership = in_C(y)
        if not membership:
            self.c_failed += 1
            if self.c_witness is None:
                self.c_witness = {"t": str(t), "x": dumps(x), "Tx": dumps(y),
                                  "violation": membership.violation}
        return y


def _alpha_direct(x: OmegaFn, u: Fraction) -> Fraction:
    # sup of a PL function over [u, inf) sits at u or at a later breakpoint
    tail = [v for b, v in x.points if b > u]
    return max([x.minus_one, eval_points(x.points, u)] + tail)


# -- suites -------------------------------------------------------------------

def _lemma_alpha_i(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    for _ in range(s.gen.count):
        x = s.member()
        u1, u2 = s.rational(0, 4), s.rational(0, 4)
        a = alpha_fn(x)
        a1, a2 = a(u1), a(u2)
        slopes_ok = all(-(q1 - q0) <= p1 - p0 and q1 <= q0
                        for (p0, q0), (p1, q1) in zip(a.points, a.points[1:]))
        ok = (abs(a1 - a2) <= abs(u1 - u2) and slopes_ok
              and a1 == _alpha_direct(x, u1) and a2 == _alpha_direct(x, u2))
        rep.record(ok, lambda: {"x": dumps(x), "u1": str(u1), "u2": str(u2),
                                "lhs": str(abs(a1 - a2)), "rhs": str(abs(u1 - u2)),
                                "alpha": dumps(a)})


def _lemma_alpha_ii(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    for _ in range(s.gen.count):
        x, y = s.member(), s.member()
        u = s.rational(0, 4)
        ax, ay = alpha_fn(x)(u), alpha_fn(y)(u)
        d = sup_dist(x, y)
        ok = abs(ax - ay) <= d and ax == _alpha_direct(x, u) and ay == _alpha_direct(y, u)
        rep.record(ok, lambda: {"x": dumps(x), "y": dumps(y), "u": str(u),
                                "lhs": str(abs(ax - ay)), "rhs": str(d)})


def _lemma_3_trichotomy(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    for _ in range(s.gen.count):
        x = s.member()
        t = s.rational(0, 1)
        u1, u2 = sorted((s.rational(0, t), s.rational(0, t)))
        y = run.T(t, x)
        x0 = x.points[0][1]
        g1 = 1 - _alpha_direct(x, 1 - t + u1)
        y1, y2 = y(u1), y(u2)
        gap = u2 - u1
        hyp = (g1 < y2 - gap, g1 > y2 + gap, abs(g1 - y2) <= gap)
        if hyp[0]:
            concl = y1 == x0 - t + u1 and y2 == x0 - t + u2
        elif hyp[1]:
            concl = y1 == x0 + t - u1 and y2 == x0 + t - u2
        else:
            concl = y1 == g1
        ok = sum(hyp) == 1 and concl
        rep.record(ok, lambda: {"x": dumps(x), "t": str(t), "u1": str(u1), "u2": str(u2),
                                "hypotheses": [bool(h) for h in hyp],
                                "Tx(u1)": str(y1), "Tx(u2)": str(y2)})


def _eq_nonex(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    for _ in range(s.gen.count):
        x, y = s.member(), s.member()
        t = s.rational(0, 1)
        tx, ty = run.T(t, x), run.T(t, y)
        d = sup_dist(x, y)
        pts = [s.point(5) for _ in range(4)] + [Fraction(-1)] + [u for u, _ in tx.points + ty.points]
        worst = max(abs(evaluate(tx, u) - evaluate(ty, u)) for u in pts)
        rep.record(worst <= d, lambda: {"x": dumps(x), "y": dumps(y), "t": str(t),
                                        "lhs": str(worst), "rhs": str(d)})


def _sg1(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    for _ in range(s.gen.count):
        x, y = s.member(), s.member()
        t = s.rational(0, 5)
        lhs, rhs = sup_dist(run.T(t, x), run.T(t, y)), sup_dist(x, y)
        rep.record(lhs <= rhs, lambda: {"x": dumps(x), "y": dumps(y), "t": str(t),
                                        "lhs": str(lhs), "rhs": str(rhs)})


def _eq_isometric(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    for _ in range(s.gen.count):
        x, y = s.member(), s.member()
        t = s.rational(0, 5)
        lhs, rhs = sup_dist(run.T(t, x), run.T(t, y)), sup_dist(x, y)
        rep.record(lhs == rhs, lambda: {"x": dumps(x), "y": dumps(y), "t": str(t),
                                        "lhs": str(lhs), "rhs": str(rhs)})


def _sg2(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    for _ in range(s.gen.count):
        x = s.member()
        y = run.T(0, x)
        rep.record(y == x, lambda: {"x": dumps(x), "T0x": dumps(y)})


def _sg3(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    # T(t) on [1/2, 1] from the formula agrees with T(1/2) o T(t - 1/2)
    for _ in range(s.gen.count):
        x = s.member()
        t = s.rational(sg.HALF, 1)
        lhs = sg.apply_basic(t, x)
        rhs = sg.apply_basic(sg.HALF, sg.apply_basic(t - sg.HALF, x))
        rep.record(lhs == rhs, lambda: {"x": dumps(x), "t": str(t),
                                        "lhs": dumps(lhs), "rhs": dumps(rhs)})


def _eq_s_plus_t(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    for _ in range(s.gen.count):
        x = s.member()
        t1, t2 = s.time(), s.time()
        lhs = run.T(t1, run.T(t2, x))
        rhs = run.T(t1 + t2, x)
        rep.record(lhs == rhs, lambda: {"x": dumps(x), "t1": str(t1), "t2": str(t2),
                                        "lhs": dumps(lhs), "rhs": dumps(rhs)})


def _sg4(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    for _ in range(s.gen.count):
        x = s.member()
        t1, t2 = s.time(), s.time()
        lhs = sup_dist(run.T(t1, x), run.T(t2, x))
        rep.record(lhs <= abs(t1 - t2), lambda: {"x": dumps(x), "t1": str(t1), "t2": str(t2),
                                                 "lhs": str(lhs), "rhs": str(abs(t1 - t2))})


_PROBES = (Fraction(1, 4), Fraction(1, 2), Fraction(1))
_FAMILY_TIMES = (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))


def _eq_F(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    for kind in sg.Family:
        for k in range(5):
            z = sg.fixed_point(sg.FixedPointFamily(kind, Fraction(k, 8)))
            for t in _FAMILY_TIMES:
                y = run.T(t, z)
                rep.record(y == z and sg.is_common_fixed_point(z),
                           lambda: {"x": dumps(z), "t": str(t), "Tx": dumps(y)})
    # random members, with constants overrepresented since they sit near the set
    for i in range(s.gen.count):
        x = s.member(budget=1 if i % 3 == 0 else None)
        moved = [t for t in _PROBES if run.T(t, x) != x]
        claimed = sg.is_common_fixed_point(x)
        rep.record(claimed == (not moved),
                   lambda: {"x": dumps(x), "is_common_fixed_point": claimed,
                            "moved_by": [str(t) for t in moved]})


def _eq_T_t_0(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    grid = [Fraction(k, 4) for k in range(25)]
    rand = [s.rational(0, 6) for _ in range(max(0, s.gen.count - len(grid)))]
    for t in grid + rand:
        lhs, rhs = run.T(t, sg.ZERO), sg.orbit_zero_closed_form(t)
        rep.record(lhs == rhs, lambda: {"t": str(t), "lhs": dumps(lhs), "rhs": dumps(rhs)})


def _eq_int(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    prev = None
    for k in range(1, 11):
        t = Fraction(2 ** k)
        r = cesaro_zero_exact(t).mean.sup_norm()
        ok = r == 1 / t and (prev is None or r < prev)
        rep.record(ok, lambda: {"t": str(t), "residual": str(r), "expected": str(1 / t)})
        prev = r
    for _ in range(s.gen.count):
        t = s.rational(2, 64)
        r = cesaro_zero_exact(t).mean.sup_norm()
        rep.record(r == 1 / t, lambda: {"t": str(t), "residual": str(r), "expected": str(1 / t)})
    moved = sup_dist(run.T(1, sg.ZERO), sg.ZERO)
    rep.record(moved == 1 and not sg.is_common_fixed_point(sg.ZERO),
               lambda: {"||T(1)0 - 0||": str(moved)})


def _C_invariance(s: _Sampler, rep: CheckReport, run: _Run) -> None:
    for _ in range(s.gen.count):
        run.T(s.rational(0, 5), s.member())


_SUITES: dict[str, Callable[[_Sampler, CheckReport, _Run], None]] = {
    "lemma_alpha_i": _lemma_alpha_i,
    "lemma_alpha_ii": _lemma_alpha_ii,
    "lemma_3_trichotomy": _lemma_3_trichotomy,
    "eq_nonex": _eq_nonex,
    "sg1": _sg1,
    "eq_isometric": _eq_isometric,
    "sg2": _sg2,
    "sg3": _sg3,
    "eq_s_plus_t": _eq_s_plus_t,
    "sg4": _sg4,
    "eq_F": _eq_F,
    "eq_T_t_0": _eq_T_t_0,
    "eq_int": _eq_int,
    "C_invariance": _C_invariance,
}
CHECK_IDS = tuple(_SUITES)


def _run_one(check_id: str, gen: InstanceGen, run: _Run) -> CheckReport:
    rep = CheckReport(check_id)
    sampler = _Sampler(_rng(gen, check_id), gen)
    if gen.count > 0:
        try:
            _SUITES[check_id](sampler, rep, run)
        except (ValueError, ArithmeticError) as exc:
            # an implementation that leaves C or breaks an invariant mid-run
            msg = f"{type(exc).__name__}: {exc}"
            rep.record(False, lambda: {"error": msg})
    return rep


def _finish_c(rep: CheckReport, run: _Run) -> None:
    rep.instances = run.c_checked
    rep.passed = run.c_checked - run.c_failed
    rep.witness = run.c_witness


def run_suite(check_id: str, gen: InstanceGen | None = None) -> CheckReport:
    """Run one named suite.  ``C_invariance`` covers every T(t)x it produced."""
    if check_id not in _SUITES:
        raise ValueError(f"unknown check {check_id!r}; choose from {', '.join(CHECK_IDS)}")
    gen = gen or InstanceGen()
    run = _Run()
    rep = _run_one(check_id, gen, run)
    if check_id == "C_invariance":
        _finish_c(rep, run)
    return rep


def run_all(gen: InstanceGen | None = None) -> list[CheckReport]:
    """Every suite in a fixed order; ``C_invariance`` comes last and counts
    the outputs of T(t) produced by all the suites before it."""
    gen = gen or InstanceGen()
    run = _Run()
    reports = [_run_one(cid, gen, run) for cid in CHECK_IDS]
    _finish_c(reports[-1], run)
    return reports


# -- mutants ------------------------------------------------------------------

def _mutant_no_clamp_upper(g, lower, upper):
    return pl_max(g, lower)


def _mutant_unit_steps(t):
    t = Fraction(t)
    m = math.floor(t)
    return sg.Decomposition(m, t - m)


def _mutant_alpha_no_minus_one(x: OmegaFn) -> OmegaFn:
    a = alpha_fn(dataclasses.replace(x, minus_one=Fraction(0)))
    return dataclasses.replace(a, minus_one=x.minus_one)


MUTANTS: dict[str, tuple[str, Callable]] = {
    "drop_clamp_upper": ("_clamp", _mutant_no_clamp_upper),
    "floor_t_steps": ("decompose", _mutant_unit_steps),
    "alpha_without_minus_one": ("alpha_fn", _mutant_alpha_no_minus_one),
}


@contextlib.contextmanager
def mutant(name: str) -> Iterator[None]:
    """Temporarily swap a deliberately wrong piece into the semigroup."""
    attr, impl = MUTANTS[name]
    original = getattr(sg, attr)
    setattr(sg, attr, impl)
    try:
        yield
    finally:
        setattr(sg, attr, original)
