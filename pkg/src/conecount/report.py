"""Verification suites and machine-readable reports.

A suite is a list of independent checks; each check records its inputs,
the expected and actual values, the tolerance used, pass/fail/skip, and
its runtime.  Reports serialise to CSV (columns exactly
``suite,check_id,input,expected,actual,tolerance,status,runtime_ms``)
and to JSON carrying the same records plus the calibration and seed
blocks.  Apart from runtime_ms, two runs with the same configuration
produce identical bytes.

Checks whose estimated cost exceeds the configured budget are reported
as ``skip`` and do not affect the exit status.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import asymptotics, circle, closed_forms, counts, hyperbola, integrals
from .arith import build_arith_tables
from .calibration import Calibration

CSV_HEADER = ["suite", "check_id", "input", "expected", "actual", "tolerance", "status", "runtime_ms"]

SUITE_NAMES = (
    "identities",
    "counts",
    "thm1",
    "thm2",
    "thm3",
    "circle",
    "hyperbola",
    "boundary",
    "all",
)

DEFAULT_BUDGET = 2 * 10**10  # work units (roughly: innermost cells touched)


@dataclass(frozen=True)
class RunConfig:
    seed: int = 1
    budget: int = DEFAULT_BUDGET
    grid: tuple[str, ...] | None = None  # raw --grid items, suite-interpreted
    calibration: Calibration = field(default_factory=Calibration)
    jobs: int = 1

    def pair_grid(self, default: list[tuple[int, int]]) -> list[tuple[int, int]]:
        if not self.grid:
            return default
        out = []
        for item in self.grid:
            a, _, b = item.partition("x")
            out.append((int(a), int(b)))
        return out

    def b_grid(self, default: list[int]) -> list[int]:
        if not self.grid:
            return default
        return [int(float(item)) for item in self.grid]


@dataclass(frozen=True)
class CheckRecord:
    suite: str
    check_id: str
    input: str
    expected: str
    actual: str
    tolerance: str
    status: str
    runtime_ms: float


@dataclass(frozen=True)
class Check:
    check_id: str
    input: str
    run: Callable[[], tuple[object, object, object, bool]]
    cost: float = 1.0


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    records: tuple[CheckRecord, ...]
    calibration: dict
    seeds: dict

    @property
    def counts_by_status(self) -> dict:
        out = {"pass": 0, "fail": 0, "skip": 0}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def all_passed(self) -> bool:
        return self.counts_by_status["fail"] == 0


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (int, Fraction, str)):
        return str(v)
    return repr(v)


def exact_check(check_id: str, inp: str, expected, actual_fn: Callable[[], object], cost=1.0) -> Check:
    def run():
        actual = actual_fn()
        return expected, actual, "exact", actual == expected

    return Check(check_id=check_id, input=inp, run=run, cost=cost)


def tol_check(check_id: str, inp: str, expected_fn, actual_fn, tol: float, cost=1.0) -> Check:
    def run():
        expected = float(expected_fn() if callable(expected_fn) else expected_fn)
        actual = float(actual_fn())
        return expected, actual, tol, abs(expected - actual) <= tol

    return Check(check_id=check_id, input=inp, run=run, cost=cost)


def bound_check(check_id: str, inp: str, value_fn, bound: float, cost=1.0) -> Check:
    def run():
        value = float(value_fn())
        return f"<= {_fmt(bound)}", value, bound, value <= bound

    return Check(check_id=check_id, input=inp, run=run, cost=cost)


def true_check(check_id: str, inp: str, predicate: Callable[[], bool], cost=1.0) -> Check:
    def run():
        ok = bool(predicate())
        return True, ok, "exact", ok

    return Check(check_id=check_id, input=inp, run=run, cost=cost)


# ---------------------------------------------------------------------------
# Suite builders
# ---------------------------------------------------------------------------


def _suite_identities(cfg: RunConfig) -> list[Check]:
    checks: list[Check] = []
    prefix = closed_forms.s_brute_prefix(60)
    for n in range(1, 61):
        checks.append(
            exact_check(f"triple_sum_closed_form/n={n:02d}", f"n={n}", closed_forms.F_closed(n), lambda n=n: prefix[n])
        )
    for n in range(1, 41):
        def run_parts(n=n):
            brute = closed_forms.s_parts(n, "brute")
            closed = closed_forms.s_parts(n, "closed")
            recombined = brute[0] + 6 * brute[1] - 3 * brute[2]
            ok = brute == closed and recombined == closed_forms.F_closed(n)
            return "brute == closed == recombination", "ok" if ok else f"{brute} vs {closed}", "exact", ok

        checks.append(Check(check_id=f"s_parts/n={n:02d}", input=f"n={n}", run=run_parts, cost=n**3))
    for n in range(1, 41):
        def run_tu(n=n):
            brute = closed_forms.tu_sums(n, "brute")
            closed = closed_forms.tu_sums(n, "closed")
            return "brute == closed", "ok" if brute == closed else f"{brute} vs {closed}", "exact", brute == closed

        checks.append(Check(check_id=f"tu_sums/n={n:02d}", input=f"n={n}", run=run_tu, cost=n**2))

    def g_ratio():
        ts = np.concatenate(
            [np.logspace(-6, 4, 2000), np.arange(1, 10001) - 1e-9, np.arange(1, 10001) + 1e-9]
        )
        ts = ts[(ts > 0) & (ts <= 1e4)]
        return max(abs(closed_forms.G_value(float(t))) / min(t, t * t) for t in ts)

    checks.append(
        bound_check("g_bound/log_grid", "t in (0, 1e4]", g_ratio, cfg.calibration.g_bound_constant, cost=3e4)
    )
    checks.append(
        exact_check("f_values/small", "n=0,1,2", (Fraction(0), Fraction(6), Fraction(63, 2)),
                    lambda: (closed_forms.F_closed(0), closed_forms.F_closed(1), closed_forms.F_closed(2)))
    )
    return checks


def _random_m_pairs(seed: int, count: int = 10) -> list[tuple[int, int]]:
    """Seeded rectangular pairs with XY <= 5000, enumeration-friendly cost."""
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < count:
        x = rng.randint(1, 18)
        y_cap = min(5000 // x, int(math.sqrt(2e8 / x**3)))
        if y_cap < 1:
            continue
        pairs.append((x, rng.randint(1, y_cap)))
    return pairs


def _suite_counts(cfg: RunConfig) -> list[Check]:
    checks: list[Check] = []

    def run_grid():
        bad = [
            (x, y)
            for x in range(1, 11)
            for y in range(x, 11)
            if counts.m_fast(x, y) != counts.m_naive(x, y)
        ]
        return "all equal", "all equal" if not bad else f"mismatch at {bad}", "exact", not bad

    checks.append(Check(check_id="m/oracle_grid", input="1<=X<=Y<=10", run=run_grid, cost=2e7))
    for i, (x, y) in enumerate(_random_m_pairs(cfg.seed)):
        checks.append(
            exact_check(
                f"m/oracle_random_{i:02d}", f"X={x},Y={y}",
                True, lambda x=x, y=y: counts.m_fast(x, y) == counts.m_naive(x, y),
                cost=4.0 * x**3 * y**2,
            )
        )
    checks.append(
        true_check("m/divisible_by_16", "grid + random pairs",
                   lambda: all(counts.m_fast(x, y) % 16 == 0
                               for x in range(1, 11) for y in range(1, 11)), cost=1e6)
    )
    checks.append(exact_check("p/example_1", "X=1", 245, lambda: counts.p_count(1), cost=1e3))
    checks.append(
        true_check("p/tiny_oracle", "X=1..3",
                   lambda: all(counts.p_count(x) == counts.p_count_tiny(x) for x in (1, 2, 3)), cost=1e6)
    )
    checks.append(
        true_check("p/contains_m", "X=1..8",
                   lambda: all(counts.p_count(x) >= counts.m_fast(x, x) for x in range(1, 9)), cost=1e7)
    )
    for b in (1, 4, 16, 100, 1234, 10**4):
        cost = 120.0 * math.isqrt(b) ** 3 + 1e5
        checks.append(
            exact_check(f"mprime/oracle_B={b}", f"B={b}", True,
                        lambda b=b: counts.mprime(b) == counts.mprime_naive(b), cost=cost)
        )
        checks.append(
            exact_check(f"n0/oracle_B={b}", f"B={b}", True,
                        lambda b=b: counts.n0_times4(b) == counts.n0_times4_naive(b), cost=cost)
        )

        def run_nw(b=b):
            n4, w = counts.n_w_naive(b)
            h = counts.height_counts(b)
            ok = h.n_times4 == n4 and (h.W1, h.W2, h.W3, h.W4) == w
            return f"4N={n4}, W={w}", f"4N={h.n_times4}, W={(h.W1, h.W2, h.W3, h.W4)}", "exact", ok

        checks.append(Check(check_id=f"n_w/oracle_B={b}", input=f"B={b}", run=run_nw, cost=cost))
    for b in (1, 50, 500, 5000, 10**5):
        def run_decomp(b=b):
            h = counts.height_counts(b)
            ok = h.n_times4 - h.n0_times4 == h.W1 + h.W2 + h.W3 + h.W4 and h.W4 == 24
            return "4(N-N0) = W1+W2+W3+W4, W4 = 24", "ok" if ok else "violated", "exact", ok

        checks.append(Check(check_id=f"decomposition/B={b}", input=f"B={b}", run=run_decomp, cost=math.isqrt(b) ** 3 + 1e4))
    checks.append(
        true_check("mprime/nondecreasing", "B=1..300",
                   lambda: all(counts.mprime(b) <= counts.mprime(b + 1) for b in range(1, 300)), cost=1e7)
    )
    return checks


def _suite_thm1(cfg: RunConfig) -> list[Check]:
    cal = cfg.calibration
    table = build_arith_tables(10**4)
    checks = [
        tol_check("main_term/example_a", "X=1.6,Y=10", 2400.0,
                  lambda: asymptotics.main_term_thm1(1.6, 10, table), 1e-9),
        tol_check("main_term/example_b", "X=2,Y=2", 552.0,
                  lambda: asymptotics.main_term_thm1(2, 2, table), 1e-9),
        tol_check("singular_series/partial_1e4", "Q=1e4",
                  lambda: asymptotics.constants().zeta2 / asymptotics.constants().zeta3,
                  lambda: asymptotics.singular_series_partial(10**4, table),
                  cal.singular_series_tol),
        true_check("singular_series/monotone_bounded", "Q<=2000",
                   lambda: _singular_series_monotone(table)),
    ]
    pairs = cfg.pair_grid([(20, 20), (20, 100), (40, 40), (60, 60)])
    for (x, y) in pairs:
        checks.append(
            bound_check(f"deviation/X={x},Y={y}", f"X={x},Y={y}",
                        lambda x=x, y=y: asymptotics.deviation_thm1(x, y, table).deviation,
                        cal.thm1_deviation_bound, cost=4.0 * (x * y) ** 2)
        )

    def trend():
        devs = [asymptotics.deviation_thm1(s, s, table).deviation for s in (20, 40, 60)]
        return max(b / a for a, b in zip(devs, devs[1:]))

    checks.append(bound_check("deviation/trend_factor", "(20,20)->(40,40)->(60,60)", trend, 2.0, cost=6e7))
    return checks


def _singular_series_monotone(table) -> bool:
    limit = asymptotics.constants().zeta2 / asymptotics.constants().zeta3
    prev = 0.0
    for q in range(1, 2001):
        cur = asymptotics.singular_series_partial(q, table)
        if cur < prev or cur > limit + 1.0 / q:
            return False
        prev = cur
    return True


def _suite_thm2(cfg: RunConfig) -> list[Check]:
    cal = cfg.calibration
    grid = cfg.b_grid([i * 10**5 for i in range(1, 11)])
    cost = float(sum(math.isqrt(b) ** 3 for b in grid))
    k = asymptotics.constants()
    checks = [
        tol_check("constants/kappa2_consistency", "33 - 6 zeta(2) = c/2",
                  lambda: k.kappa2, lambda: k.c / (4 * k.zeta2 * k.zeta3), 1e-12),
        true_check("constants/zeta3_bracket", "1.2020 < zeta3 < 1.2021",
                   lambda: 1.2020 < k.zeta3 < 1.2021),
        tol_check("fit/kappa_hat", f"grid={grid[0]}..{grid[-1]}", k.kappa2,
                  lambda: asymptotics.fit_theorem2(grid)[0], cal.thm2_kappa_rel_tol * k.kappa2,
                  cost=cost),
        bound_check("fit/residual_trend", f"grid={grid[0]}..{grid[-1]}",
                    lambda: max(r.deviation for r in asymptotics.fit_residual_trend(grid)),
                    cal.thm2_residual_bound, cost=cost),
        true_check("fit/synthetic_recovery", "kappa=5.8,C=-3.2", _fit_synthetic),
        true_check("fit/two_point_interpolation", "B={1e4,1e6-ish}", _fit_two_point, cost=2e8),
    ]
    return checks


def _fit_synthetic() -> bool:
    kap, c = 5.8, -3.2
    grid = [10, 100, 1000, 10**4]
    s11 = s12 = s22 = r1 = r2 = 0.0
    for B in grid:
        nb = kap * B * math.log(B) + c * B
        f1, f2 = B * math.log(B), float(B)
        s11 += f1 * f1
        s12 += f1 * f2
        s22 += f2 * f2
        r1 += f1 * nb
        r2 += f2 * nb
    det = s11 * s22 - s12 * s12
    kh = (r1 * s22 - r2 * s12) / det
    ch = (s11 * r2 - s12 * r1) / det
    return abs(kh - kap) < 1e-9 and abs(ch - c) < 1e-9


def _fit_two_point() -> bool:
    grid = [10**4, 9 * 10**4]
    kh, ch = asymptotics.fit_theorem2(grid)
    for B in grid:
        if abs(kh * B * math.log(B) + ch * B - counts.n_times4(B) / 4.0) > 1e-6 * counts.n_times4(B):
            return False
    return True


def _suite_thm3(cfg: RunConfig) -> list[Check]:
    cal = cfg.calibration
    return [
        tol_check("si_cubed/quad_vs_closed", "default config (T=1e4)",
                  integrals.si_cubed_closed, lambda: integrals.si_cubed_quad().value,
                  cal.si_cubed_tol, cost=1e6),
    ]


def _suite_circle(cfg: RunConfig) -> list[Check]:
    cal = cfg.calibration
    tol = cal.kernel_oracle_tol
    alphas = [0.0, 0.5, 1.0 / 3.0, 0.123456, 0.987, -0.377, 2.345]
    checks = [
        bound_check("kernels/f_vs_brute", "X,Y<=8", lambda: _kernel_worst("f", alphas), tol, cost=1e6),
        bound_check("kernels/g_vs_brute", "X,Y<=8", lambda: _kernel_worst("g", alphas), tol, cost=1e6),
        bound_check("kernels/fstar_vs_brute", "X,Y<=8", lambda: _kernel_worst("fstar", alphas), tol, cost=1e6),
        bound_check("kernels/w_vs_brute", "X,Y<=8", lambda: _kernel_worst("w", alphas), tol, cost=1e6),
        bound_check("kernels/v_vs_brute", "X,Y<=8", lambda: _kernel_worst("v", alphas), tol, cost=1e6),
        true_check("kernels/g1_zero", "q=1", lambda: all(circle.g_q_eval(a, 1, 6, 6) == 0.0 for a in alphas)),
        bound_check("decomposition/restored_row", "major-arc samples, X,Y<=8",
                    _decomposition_slack, 0.0, cost=1e6),
        exact_check("arcs/example_4x4", "X=Y=4", ((1, 0.125), (2, 0.0625)), _arc_example),
        exact_check("arcs/count_10x10", "X=Y=10", 10, lambda: len(circle.dissect(10, 10).arcs)),
        true_check("arcs/disjoint_30x30", "X=Y=30", lambda: circle.dissect(30, 30) is not None),
        exact_check("l2/example_1x1", "X=Y=1", 8, lambda: circle.l2_via_r(1, 1)),
        true_check("l2/naive_equal", "X,Y<=8",
                   lambda: all(circle.l2_via_r(x, y) == circle.l2_naive(x, y)
                               for x in (1, 2, 3, 5) for y in (1, 2, 4, 8)), cost=1e7),
        true_check("l2/bound_40", "X<=Y<=100",
                   lambda: all(circle.l2_via_r(x, y) <= cal.l2_bound_constant * x * y * max(math.log(x), 1.0)
                               for x in (1, 2, 5, 10, 30, 60, 100) for y in (x, 100)), cost=1e6),
        bound_check("wv/proximity", "|gamma| <= 1/(2X) sampled",
                    lambda: _wv_worst(cal.wv_proximity_constant), 1.0, cost=1e6),
        bound_check("v/sup_bound", "gamma sampled",
                    lambda: _v_sup_worst(cal.v_sup_constant), 1.0, cost=1e6),
        bound_check("v/decay_bound", "gamma sampled",
                    lambda: _v_decay_worst(cal.v_decay_constant), 1.0, cost=1e6),
        bound_check("minor_arcs/ratio", f"X=Y=40, n=1000, seed={cfg.seed}",
                    lambda: circle.minor_arc_scan(40, 40, 1000, cfg.seed).ratio,
                    cal.minor_arc_ratio_bound, cost=1e6),
        true_check("minor_arcs/deterministic", f"seed={cfg.seed}",
                   lambda: circle.minor_arc_scan(40, 40, 200, cfg.seed)
                   == circle.minor_arc_scan(40, 40, 200, cfg.seed), cost=1e6),
    ]
    for (q, x, y) in [(1, 2, 2), (2, 2, 2), (1, 4, 4), (2, 6, 8)]:
        def rel(q=q, x=x, y=y):
            quad = circle.j_quadrature(q, x, y).value
            closed = integrals.j_closed(q, x, y)
            return abs(quad - closed) / closed

        checks.append(bound_check(f"j_bridge/q={q},X={x},Y={y}", f"q={q},X={x},Y={y}",
                                  rel, cal.j_bridge_rel_tol, cost=1e6))
    return checks


def _kernel_worst(which: str, alphas) -> float:
    import cmath

    worst = 0.0
    for (X, Y) in [(2, 2), (3, 5), (8, 8), (5, 8)]:
        for a in alphas:
            if which == "f":
                brute = sum(
                    cmath.exp(2j * math.pi * a * x * y)
                    for x in range(-X, X + 1) if x
                    for y in range(-Y, Y + 1) if y
                ).real
                mine = circle.f_eval(a, X, Y)
            elif which == "g":
                q = 3
                brute = sum(
                    cmath.exp(2j * math.pi * a * x * y)
                    for x in range(-X, X + 1) if x and x % q
                    for y in range(-Y, Y + 1) if y
                ).real
                mine = circle.g_q_eval(a, q, X, Y)
            elif which == "fstar":
                q = 2
                brute = sum(
                    cmath.exp(2j * math.pi * a * q * x * y)
                    for x in range(-(X // q), X // q + 1) if x
                    for y in range(-Y, Y + 1)
                ).real
                mine = circle.f_star_eval(a, q, X, Y)
            elif which == "w":
                q = 2
                m = Y
                brute = sum(
                    math.sin(math.pi * (2 * m + 1) * a * x) / math.sin(math.pi * a * x)
                    if abs(math.sin(math.pi * a * x)) > 1e-12 else (2 * m + 1)
                    for x in range(1, X // q + 1)
                ) * 2.0
                mine = circle.w_q_eval(a, q, X, Y)
            else:
                q = 2
                m = Y
                brute = sum(
                    math.sin(math.pi * (2 * m + 1) * a * x) / (math.pi * a * x)
                    if abs(a * x) > 1e-12 else (2 * m + 1)
                    for x in range(1, X // q + 1)
                ) * 2.0
                mine = circle.v_q_eval(a, q, X, Y)
            worst = max(worst, abs(brute - mine))
    return worst


def _decomposition_slack() -> float:
    worst = -math.inf
    for (X, Y) in [(6, 8), (8, 8)]:
        diss = circle.dissect(X, Y)
        for arc in diss.arcs:
            for t in (-0.7, 0.0, 0.9):
                beta = t * arc.half_width
                alpha = arc.center + beta
                diff = abs(
                    circle.f_eval(alpha, X, Y)
                    - circle.f_star_eval(beta, arc.q, X, Y)
                    - circle.g_q_eval(alpha, arc.q, X, Y)
                )
                worst = max(worst, diff - (2 * X + 1))
    return worst


def _arc_example():
    d = circle.dissect(4, 4)
    return tuple(sorted((a.q, a.half_width) for a in d.arcs))


def _wv_worst(constant: float) -> float:
    worst = 0.0
    for (q, X, Y) in [(1, 2, 2), (1, 8, 8), (2, 8, 6), (3, 7, 9), (1, 20, 30), (5, 17, 23)]:
        for g in np.linspace(1e-9, 1 / (2 * X), 120):
            w = circle.w_q_eval(g, q, X, Y)
            v = circle.v_q_eval(g, q, X, Y)
            worst = max(worst, abs(w - v) / (constant * g * X * X / (q * q)))
    return worst


def _v_sup_worst(constant: float) -> float:
    worst = 0.0
    for (q, X, Y) in [(1, 2, 2), (1, 8, 8), (2, 8, 6), (3, 7, 9), (1, 20, 30), (5, 17, 23)]:
        for g in np.linspace(1e-7, 0.5, 150):
            worst = max(worst, abs(circle.v_q_eval(g, q, X, Y)) / (constant * X * Y / q))
    return worst


def _v_decay_worst(constant: float) -> float:
    worst = 0.0
    for (q, X, Y) in [(1, 8, 8), (2, 8, 6), (3, 7, 9), (1, 20, 30), (5, 17, 23)]:
        for g in np.logspace(-6, -0.31, 150):
            worst = max(worst, abs(circle.v_q_eval(g, q, X, Y)) * g / (constant * math.log(X)))
    return worst


def _suite_hyperbola(cfg: RunConfig) -> list[Check]:
    cal = cfg.calibration
    checks = [
        exact_check("partition/examples", "B=1e8,16,1", (10, 2, 1),
                    lambda: tuple(hyperbola.quadratic_partition(b).L for b in (10**8, 16, 1))),
        true_check("partition/eighth_powers", "B sampled",
                   lambda: all(
                       (hyperbola.quadratic_partition(b).L - 1) ** 8 < b <= hyperbola.quadratic_partition(b).L ** 8
                       for b in list(range(1, 300)) + [255, 256, 257, 6560, 6561, 6562, 10**6]
                   )),
        exact_check("xi/example_16", "B=16", counts.m_fast(1, 4) - counts.m_fast(1, 1),
                    lambda: hyperbola.xi_sum(16)),
        true_check("xi/resummation", "B in {1e4, 5e4}", _xi_resummation, cost=1e8),
        tol_check("telescope/L2", "L=2", 15.0 / 16.0 - 4.0 * math.log(2.0),
                  lambda: hyperbola.telescope_constant(2), 1e-12),
        bound_check("telescope/cauchy", "L=1e3 vs 1e4",
                    lambda: abs(hyperbola.telescope_constant(1000) - hyperbola.telescope_constant(10**4))
                    / (1.0 / 1000 - 1.0 / 10**4),
                    cal.telescope_cauchy_coefficient, cost=1e5),
        tol_check("xi_main/example_16", "B=16", 360.0, lambda: hyperbola.xi_main_term(16).direct, 1e-9),
    ]
    for b in cfg.b_grid([16, 10**4, 10**5, 10**6]):
        def run_sandwich(b=b):
            s = hyperbola.sandwich(b)
            ok = s.lower <= s.exact <= s.upper
            return "lower <= exact <= upper", f"{s.lower} <= {s.exact} <= {s.upper}", "exact", ok

        checks.append(Check(check_id=f"sandwich/B={b}", input=f"B={b}", run=run_sandwich,
                            cost=2.0 * math.isqrt(b) ** 3))
    for b in (10**4, 10**6):
        checks.append(
            bound_check(f"xi_main/split_gap_B={b}", f"B={b}",
                        lambda b=b: _xi_split_gap(b), cal.xi_split_rel_tol, cost=1e6))
        checks.append(
            bound_check(f"xi_main/vs_xi_B={b}", f"B={b}",
                        lambda b=b: _xi_vs_main(b), cal.xi_main_deviation_bound,
                        cost=2.0 * math.isqrt(b) ** 3))
    return checks


def _xi_resummation() -> bool:
    for b in (10**4, 5 * 10**4):
        L = hyperbola.quadratic_partition(b).L
        Z = math.isqrt(b)
        first = sum(counts.m_fast(l * l, Z // (l * l)) for l in range(1, L))
        second = sum(counts.m_fast(l * l, Z // ((l + 1) * (l + 1))) for l in range(1, L))
        if hyperbola.xi_sum(b) != first - second:
            return False
    return True


def _xi_split_gap(b: int) -> float:
    m = hyperbola.xi_main_term(b)
    return abs(m.direct - m.split) / abs(m.direct)


def _xi_vs_main(b: int) -> float:
    xi2 = 2.0 * hyperbola.xi_sum(b)
    mt2 = 2.0 * hyperbola.xi_main_term(b).direct
    return abs(xi2 - mt2) / (b ** (7.0 / 8.0) * math.log(b) ** 2)


def _suite_boundary(cfg: RunConfig) -> list[Check]:
    cal = cfg.calibration
    k = asymptotics.constants()

    def rel_boundary():
        rec = asymptotics.boundary_check(10**6)
        return abs(rec.exact / 10**6 - k.boundary) / k.boundary

    checks = [
        bound_check("boundary/leading_1e6", "B=1e6", rel_boundary, cal.boundary_rel_tol, cost=1e8),
        bound_check("w3/leading_Z=1e3", "B=1e6",
                    lambda: abs(counts.w_counts(10**6)[2] / (10**3) ** 2 - 48.0 / k.zeta2) / (48.0 / k.zeta2),
                    cal.w3_rel_tol, cost=1e6),
        exact_check("boundary/identity_B=1", "B=1", True,
                    lambda: asymptotics.boundary_check(1).exact == sum(counts.w_counts(1)) / 4.0),
        true_check("boundary/finite_1e4", "B=1e4",
                   lambda: math.isfinite(asymptotics.boundary_check(10**4).deviation)),
        exact_check("height_zeta/cutoff_1", "s=2, cutoff=1", 192.0,
                    lambda: asymptotics.height_zeta_truncated(2.0, 1)),
        true_check("height_zeta/monotone", "s=2, cutoffs 1..40",
                   lambda: _hz_monotone(), cost=1e7),
        true_check("height_zeta/tail_bound", "s=2, 100 vs 200",
                   lambda: _hz_tail(), cost=3e9),
    ]
    return checks


def _hz_monotone() -> bool:
    vals = [asymptotics.height_zeta_truncated(2.0, c) for c in range(1, 41)]
    return all(a <= b for a, b in zip(vals, vals[1:]))


def _hz_tail() -> bool:
    v100 = asymptotics.height_zeta_truncated(2.0, 100)
    v200 = asymptotics.height_zeta_truncated(2.0, 200)
    bound = asymptotics.height_zeta_tail_bound(2.0, 100, 200)
    return 0.0 <= v200 - v100 <= bound


_SUITES: dict[str, Callable[[RunConfig], list[Check]]] = {
    "identities": _suite_identities,
    "counts": _suite_counts,
    "thm1": _suite_thm1,
    "thm2": _suite_thm2,
    "thm3": _suite_thm3,
    "circle": _suite_circle,
    "hyperbola": _suite_hyperbola,
    "boundary": _suite_boundary,
}


def run_suite(suite: str, config: RunConfig | None = None) -> VerificationReport:
    """Run one suite (or ``all``); partial failures never abort the rest."""
    config = config or RunConfig()
    if suite not in SUITE_NAMES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITE_NAMES}")
    names = [s for s in SUITE_NAMES if s != "all"] if suite == "all" else [suite]
    jobs = max(1, config.jobs)
    records: list[CheckRecord] = []
    for name in names:
        checks = _SUITES[name](config)

        def execute(check: Check, name=name) -> CheckRecord:
            if check.cost > config.budget:
                return CheckRecord(suite=name, check_id=check.check_id, input=check.input,
                                   expected="", actual="over budget", tolerance="",
                                   status="skip", runtime_ms=0.0)
            t0 = time.perf_counter()
            try:
                expected, actual, tolerance, passed = check.run()
                status = "pass" if passed else "fail"
            except Exception as exc:  # one broken check must not sink the suite
                expected, actual, tolerance, status = "", f"error: {type(exc).__name__}: {exc}", "", "fail"
            ms = (time.perf_counter() - t0) * 1000.0
            return CheckRecord(suite=name, check_id=check.check_id, input=check.input,
                               expected=_fmt(expected), actual=_fmt(actual),
                               tolerance=_fmt(tolerance), status=status, runtime_ms=ms)

        if jobs == 1:
            records.extend(execute(c) for c in checks)
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                records.extend(pool.map(execute, checks))
    records.sort(key=lambda r: (r.suite, r.check_id))
    return VerificationReport(
        suite=suite,
        records=tuple(records),
        calibration=config.calibration.as_dict(),
        seeds={"seed": config.seed, "summation": "ascending-index math.fsum"},
    )


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------


def to_csv_text(report: VerificationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in report.records:
        writer.writerow([r.suite, r.check_id, r.input, r.expected, r.actual,
                         r.tolerance, r.status, repr(r.runtime_ms)])
    return buf.getvalue()


def parse_csv_text(text: str) -> list[CheckRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if rows[0] != CSV_HEADER:
        raise ValueError("unexpected CSV header")
    return [
        CheckRecord(suite=a, check_id=b, input=c, expected=d, actual=e,
                    tolerance=f, status=g, runtime_ms=float(h))
        for a, b, c, d, e, f, g, h in rows[1:]
    ]


def to_json_text(report: VerificationReport) -> str:
    payload = {
        "suite": report.suite,
        "records": [
            {
                "suite": r.suite, "check_id": r.check_id, "input": r.input,
                "expected": r.expected, "actual": r.actual, "tolerance": r.tolerance,
                "status": r.status, "runtime_ms": r.runtime_ms,
            }
            for r in report.records
        ],
        "calibration": report.calibration,
        "seeds": report.seeds,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit(report: VerificationReport, format: str, path: str) -> None:
    """Write the report as CSV or JSON (UTF-8, LF); OSError propagates."""
    if format == "csv":
        text = to_csv_text(report)
    elif format == "json":
        text = to_json_text(report)
    else:
        raise ValueError(f"unknown format {format!r}")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
