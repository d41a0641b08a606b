"""The integral sine, the triple-sine integral, and their closed forms.

Closed forms implemented here:

  * Box(v) = v|v|.
  * For positive w1, w2, w3,

        I(w1,w2,w3) = int_{-inf}^{inf} sin(w1 t) sin(w2 t) sin(w3 t) / t^3 dt
                    = (pi/8) [ (w1+w2+w3)^2 + Box(w1-w2-w3)
                               + Box(w2-w3-w1) + Box(w3-w1-w2) ].

  * int_0^inf (Si t)^3 / t^3 dt = 33 pi/32 - pi^3/32, where
    Si t = int_0^t sin(a)/a da.

  * J(q) = (2 floor(Y) + 1)^2 * F(floor(X/q)), the closed form of the
    cubed-kernel integral int v_q(g)^3 dg evaluated by the circle module.

Each improper integral is evaluated as (value over [eps, T]) plus an
analytic tail, and is reported as a QuadResult carrying the value and a
tail/residual bound; acceptance-style comparisons fold the bound into
their tolerance.

Quadrature is fixed-order Gauss-Legendre on panels cut at the integrand's
sign-change breakpoints, with adaptive bisection of any panel whose
halved-panel estimate moves by more than its share of the tolerance.
Panel results are reduced in deterministic left-to-right order.

The sine integral uses three regimes, each with truncation error below
1e-13:  the Maclaurin series for t <= 2 (terms fall below 1e-17 by k = 13);
cumulative panel quadrature between the breakpoints {2} u {k pi} for
2 < t <= 40 (panels are shorter than pi, where the fixed rule is exact to
rounding); and for t > 40 the asymptotic form

    Si t = pi/2 - cos(t) P(1/t) - sin(t) Q(1/t),
    P(u) ~ u (1 - 2! u^2 + 4! u^4 - ...),  Q(u) ~ u^2 (1 - 3! u^2 + 5! u^4 - ...),

truncated at 16 terms, past the smallest term at t = 40 (first omitted
term < 2e-16).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np

from .closed_forms import F_closed
from .errors import ConvergenceError

_PI = math.pi


@dataclass(frozen=True)
class QuadratureConfig:
    """Truncation and tolerance knobs for the improper integrals."""

    truncation: float = 1.0e4
    tolerance: float = 1.0e-9
    max_panel_depth: int = 12

    def __post_init__(self):
        if self.truncation < 1.0:
            raise ValueError("truncation must be >= 1")
        if self.tolerance < 1.0e-12:
            raise ValueError("tolerance must be >= 1e-12")


class QuadResult(NamedTuple):
    """A quadrature value together with the bound on everything left out."""

    value: float
    tail_bound: float


@lru_cache(maxsize=8)
def _gl_nodes(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def integrate_panels(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: np.ndarray,
    tolerance: float,
    max_depth: int = 12,
    order: int = 16,
) -> float:
    """Integrate a vectorised integrand over consecutive panels.

    Each panel gets a fixed-order Gauss-Legendre estimate; panels whose
    bisected estimate differs by more than their length-proportional share
    of ``tolerance`` are split (up to ``max_depth`` times).  The surviving
    panel values are summed left to right.
    """
    pts = np.asarray(breakpoints, dtype=float)
    if pts.size < 2:
        return 0.0
    nodes, weights = _gl_nodes(order)
    total_len = float(pts[-1] - pts[0])

    def gl(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        half = (b - a) / 2.0
        mid = (a + b) / 2.0
        x = mid[:, None] + half[:, None] * nodes[None, :]
        vals = f(x.ravel()).reshape(x.shape)
        return half * (vals @ weights)

    a = pts[:-1].copy()
    b = pts[1:].copy()
    coarse = gl(a, b)
    finished: list[tuple[float, float]] = []  # (left endpoint, panel value)
    depth = 0
    while a.size:
        if depth >= max_depth:
            raise ConvergenceError("panel bisection budget exhausted")
        mid = (a + b) / 2.0
        left = gl(a, mid)
        right = gl(mid, b)
        fine = left + right
        share = tolerance * np.maximum((b - a) / total_len, 1e-300)
        done = np.abs(fine - coarse) <= share
        for i in np.nonzero(done)[0]:
            finished.append((float(a[i]), float(fine[i])))
        keep = ~done
        a = np.concatenate([a[keep], mid[keep]])
        b = np.concatenate([mid[keep], b[keep]])
        coarse = np.concatenate([left[keep], right[keep]])
        depth += 1
    finished.sort(key=lambda t: t[0])
    return math.fsum(v for _, v in finished)


# ---------------------------------------------------------------------------
# Sine integral
# ---------------------------------------------------------------------------

_SI_SERIES_CUT = 2.0
_SI_ASYMPTOTIC_CUT = 40.0
_SI_SERIES_TERMS = 14
_SI_ASYMPTOTIC_TERMS = 16


def _si_series(t: np.ndarray) -> np.ndarray:
    # Si t = sum_k (-1)^k t^(2k+1) / ((2k+1) (2k+1)!)
    t2 = t * t
    acc = np.zeros_like(t)
    term = t.copy()
    fact = 1.0
    for k in range(_SI_SERIES_TERMS):
        n = 2 * k + 1
        acc = acc + term / (n * fact)
        term = -term * t2
        fact = fact * (n + 1) * (n + 2)
    return acc


def _si_asymptotic(t: np.ndarray) -> np.ndarray:
    u2 = 1.0 / (t * t)
    p = np.zeros_like(t)
    q = np.zeros_like(t)
    cp = 1.0  # (2k)!
    cq = 1.0  # (2k+1)!
    sgn = 1.0
    upow = np.ones_like(t)
    for k in range(_SI_ASYMPTOTIC_TERMS):
        p = p + sgn * cp * upow
        q = q + sgn * cq * upow
        cq_next = cq * (2 * k + 2) * (2 * k + 3)
        cp = cp * (2 * k + 1) * (2 * k + 2)
        cq = cq_next
        sgn = -sgn
        upow = upow * u2
    return _PI / 2.0 - np.cos(t) * p / t - np.sin(t) * q / (t * t)


@lru_cache(maxsize=1)
def _si_mid_table():
    """Cumulative Si at the mid-regime breakpoints {2} u {k pi <= 40}."""
    brk = [_SI_SERIES_CUT] + [k * _PI for k in range(1, 14) if k * _PI > _SI_SERIES_CUT]
    brk = [b for b in brk if b <= _SI_ASYMPTOTIC_CUT] + [_SI_ASYMPTOTIC_CUT]
    nodes, weights = _gl_nodes(32)
    vals = [float(_si_series(np.array([_SI_SERIES_CUT]))[0])]
    for a, b in zip(brk[:-1], brk[1:]):
        half = (b - a) / 2.0
        x = (a + b) / 2.0 + half * nodes
        vals.append(vals[-1] + half * float(np.dot(np.sin(x) / x, weights)))
    return np.asarray(brk), np.asarray(vals)


def _si_mid(t: np.ndarray) -> np.ndarray:
    brk, cum = _si_mid_table()
    idx = np.searchsorted(brk, t, side="right") - 1
    idx = np.clip(idx, 0, brk.size - 1)
    a = brk[idx]
    base = cum[idx]
    nodes, weights = _gl_nodes(24)
    half = (t - a) / 2.0
    x = (a + t)[:, None] / 2.0 + half[:, None] * nodes[None, :]
    x = np.where(x == 0.0, 1e-300, x)
    partial = half * ((np.sin(x) / x) @ weights)
    return base + partial


def si(t):
    """Si t = int_0^t sin(a)/a da, accurate to better than 1e-12.

    Accepts a scalar or an ndarray; nonnegative arguments only.
    """
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0):
        raise ValueError("si is defined here for t >= 0")
    scalar = arr.ndim == 0
    x = np.atleast_1d(arr)
    out = np.empty_like(x)
    lo = x <= _SI_SERIES_CUT
    hi = x > _SI_ASYMPTOTIC_CUT
    mid = ~lo & ~hi
    if lo.any():
        out[lo] = _si_series(x[lo])
    if mid.any():
        out[mid] = _si_mid(x[mid])
    if hi.any():
        out[hi] = _si_asymptotic(x[hi])
    return float(out[0]) if scalar else out


def box_fn(v: float) -> float:
    """Box(v) = v |v|, the sign-preserving square."""
    return v * abs(v)


# ---------------------------------------------------------------------------
# Triple sine integral
# ---------------------------------------------------------------------------


def triple_sine_closed(w1: float, w2: float, w3: float) -> float:
    """Closed form of int_{-inf}^{inf} sin(w1 t) sin(w2 t) sin(w3 t)/t^3 dt."""
    if w1 <= 0 or w2 <= 0 or w3 <= 0:
        raise ValueError("frequencies must be positive")
    s = w1 + w2 + w3
    return (_PI / 8.0) * (
        s * s + box_fn(w1 - w2 - w3) + box_fn(w2 - w3 - w1) + box_fn(w3 - w1 - w2)
    )


def _triple_sine_small_t(w: tuple[float, float, float], eps: float) -> float:
    # integrand = w1 w2 w3 (1 - (sum w^2) t^2/6 + c4 t^4 + ...) near t = 0
    w1, w2, w3 = w
    sq = w1 * w1 + w2 * w2 + w3 * w3
    c4 = (w1 * w1 * w2 * w2 + w1 * w1 * w3 * w3 + w2 * w2 * w3 * w3) / 36.0 + (
        w1**4 + w2**4 + w3**4
    ) / 120.0
    return w1 * w2 * w3 * (eps - sq * eps**3 / 18.0 + c4 * eps**5 / 5.0)


def triple_sine_quad(
    w1: float, w2: float, w3: float, cfg: QuadratureConfig | None = None
) -> QuadResult:
    """The triple-sine integral by panel quadrature.

    The integrand is even, so 2 * int_0^T is computed with panels cut at
    every zero k pi / w_i; |t| < 1e-3 uses the even Maclaurin branch and
    the tail beyond T is bounded by 2 int_T^inf t^-3 dt = 1/T^2.
    """
    if w1 <= 0 or w2 <= 0 or w3 <= 0:
        raise ValueError("frequencies must be positive")
    cfg = cfg or QuadratureConfig()
    eps = 1.0e-3
    T = cfg.truncation
    zeros = []
    for w in (w1, w2, w3):
        zeros.append(np.arange(1, int(w * T / _PI) + 1) * (_PI / w))
    brk = np.unique(np.concatenate([np.array([eps, T])] + zeros))
    brk = brk[(brk >= eps) & (brk <= T)]

    def integrand(t: np.ndarray) -> np.ndarray:
        return np.sin(w1 * t) * np.sin(w2 * t) * np.sin(w3 * t) / t**3

    body = integrate_panels(integrand, brk, cfg.tolerance, cfg.max_panel_depth, order=12)
    head = _triple_sine_small_t((w1, w2, w3), eps)
    tail_bound = 1.0 / (T * T)
    return QuadResult(value=2.0 * (head + body), tail_bound=tail_bound)


# ---------------------------------------------------------------------------
# The cubed sine integral
# ---------------------------------------------------------------------------


def si_cubed_closed() -> float:
    """33 pi/32 - pi^3/32, the closed form of int_0^inf (Si t)^3/t^3 dt."""
    return 33.0 * _PI / 32.0 - _PI**3 / 32.0


def si_cubed_quad(cfg: QuadratureConfig | None = None) -> QuadResult:
    """int_0^inf (Si t)^3 / t^3 dt by panel quadrature on [eps, T].

    Near zero (Si t)^3/t^3 -> 1; the branch below eps = 1e-3 integrates the
    even series (1 - t^2/6 + (77/5400) t^4).  Beyond T the expansion
    Si t = pi/2 - cos(t)/t - sin(t)/t^2 + O(t^-3) gives the analytic tail
    (pi/2)^3/(2 T^2); the oscillatory corrections are O(T^-3) and enter the
    reported residual bound instead of the value.
    """
    cfg = cfg or QuadratureConfig()
    if cfg.truncation < 100.0:
        raise ValueError("cubed-sine truncation below 100 cannot meet tolerance")
    eps = 1.0e-3
    T = cfg.truncation
    brk = np.unique(np.concatenate([[eps], np.arange(1, int(T / _PI) + 1) * _PI, [T]]))
    brk = brk[(brk >= eps) & (brk <= T)]

    def integrand(t: np.ndarray) -> np.ndarray:
        s = si(t)
        return s * s * s / t**3

    body = integrate_panels(integrand, brk, cfg.tolerance, cfg.max_panel_depth, order=16)
    head = eps - eps**3 / 18.0 + (77.0 / 27000.0) * eps**5
    tail = (_PI / 2.0) ** 3 / (2.0 * T * T)
    # |Si t - pi/2| <= 1.1/t for t >= 100 bounds the dropped oscillatory part
    residual = 3.0 * (_PI / 2.0 + 1.1 / T) ** 2 * 1.1 * (2.0 / (3.0 * T**3)) + cfg.tolerance
    return QuadResult(value=head + body + tail, tail_bound=residual)


# ---------------------------------------------------------------------------
# The closed form of the cubed-kernel integral J(q)
# ---------------------------------------------------------------------------


def j_closed(q: int, X: float, Y: float) -> float:
    """J(q) = (2 floor(Y) + 1)^2 * F(floor(X/q)); zero whenever q > X."""
    if q < 1:
        raise ValueError("q must be a positive integer")
    n = math.floor(X / q)
    if n <= 0:
        return 0.0
    m = math.floor(Y)
    return (2 * m + 1) ** 2 * float(F_closed(n))


def j_closed_exact(q: int, X: int, Y: int) -> Fraction:
    """Exact rational J(q) for integer bounds (used by identity tests)."""
    n = X // q
    return (2 * Y + 1) ** 2 * F_closed(n)
