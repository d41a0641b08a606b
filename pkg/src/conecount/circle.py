"""Exponential-sum kernels and the major/minor arc dissection.

The generating sum of the box count is

    f(alpha) = sum_{1<=|x|<=X} sum_{1<=|y|<=Y} e(alpha x y),

with e(t) = exp(2 pi i t); summing the inner geometric sum gives the real
Dirichlet-kernel form

    sum_{|y|<=Y} e(theta y) = sin(pi (2 floor(Y) + 1) theta) / sin(pi theta),

so f and its major-arc companions are evaluated through that kernel:

    f*_q(beta)  = sum_{0<|x|<=X/q} sum_{|y|<=Y} e(beta q x y)   (y = 0 row kept),
    g_q(alpha)  = sum_{0<|x|<=X, q !| x} sum_{0<|y|<=Y} e(alpha x y),
    w_q(gamma)  = sum_{0<|x|<=X/q} sin(pi(2 floor(Y)+1) gamma x) / sin(pi gamma x),
    v_q(gamma)  = sum_{0<|x|<=X/q} sin(pi(2 floor(Y)+1) gamma x) / (pi gamma x),

with f*_q(beta) = w_q(q beta).  All five are real (each sum is closed
under x -> -x).

The dissection places, for Q = sqrt(X Y)/2, an arc of half-width
Q/(q X Y) around every fraction a/q with 1 <= a <= q <= Q, gcd(a, q) = 1,
inside the window [Q/(XY), 1 + Q/(XY)]; the arcs are pairwise disjoint
and the minor arcs are the complement.

Near-integer arguments of the Dirichlet kernel switch to a second-order
Taylor branch when |sin(pi theta)| < 1e-8, preventing catastrophic
cancellation; the removable point itself returns the exact limit.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .arith import build_r_table
from .errors import ResourceLimitError
from .integrals import QuadResult, integrate_panels

_SIN_EPS = 1.0e-8


def _dirichlet_full(theta: np.ndarray, m: int) -> np.ndarray:
    """sum_{|y|<=m} e(theta y) = sin(pi(2m+1)theta)/sin(pi theta), vectorised.

    The Taylor branch around integer theta:  with d = theta - round(theta),
    ratio = (2m+1) (1 - ((2m+1)^2 - 1) (pi d)^2 / 6 + O((pi d)^4)).
    """
    k = 2 * m + 1
    s = np.sin(np.pi * theta)
    near = np.abs(s) < _SIN_EPS
    safe = np.where(near, 1.0, s)
    vals = np.sin(np.pi * k * theta) / safe
    if np.any(near):
        d = theta - np.round(theta)
        taylor = k * (1.0 - (k * k - 1.0) * (np.pi * d) ** 2 / 6.0)
        vals = np.where(near, taylor, vals)
    return vals


def sym_kernel(theta: float, Y: float) -> float:
    """sum_{1<=|y|<=Y} e(theta y), i.e. the Dirichlet kernel minus the y = 0 term."""
    m = math.floor(Y)
    return float(_dirichlet_full(np.asarray([theta], dtype=float), m)[0]) - 1.0


def f_eval(alpha: float, X: float, Y: float) -> float:
    """f(alpha) over the box |x| <= X, |y| <= Y (O(X) kernel calls)."""
    nx = math.floor(X)
    m = math.floor(Y)
    if nx < 1 or m < 1:
        return 0.0
    x = np.arange(1, nx + 1, dtype=float)
    return float(2.0 * np.sum(_dirichlet_full(alpha * x, m) - 1.0))


def _f_eval_many(alphas: np.ndarray, X: float, Y: float) -> np.ndarray:
    nx = math.floor(X)
    m = math.floor(Y)
    x = np.arange(1, nx + 1, dtype=float)
    theta = alphas[:, None] * x[None, :]
    return 2.0 * np.sum(_dirichlet_full(theta, m) - 1.0, axis=1)


def g_q_eval(alpha: float, q: int, X: float, Y: float) -> float:
    """The part of f(alpha) with q not dividing x (zero for q = 1)."""
    nx = math.floor(X)
    m = math.floor(Y)
    x = np.arange(1, nx + 1, dtype=float)
    x = x[np.arange(1, nx + 1) % q != 0]
    if x.size == 0:
        return 0.0
    return float(2.0 * np.sum(_dirichlet_full(alpha * x, m) - 1.0))


def f_star_eval(beta: float, q: int, X: float, Y: float) -> float:
    """f*_q(beta): x restricted to multiples of q (rescaled), y = 0 row kept."""
    return w_q_eval(q * beta, q, X, Y)


def w_q_eval(gamma: float, q: int, X: float, Y: float) -> float:
    """w_q(gamma) = sum over 0 < |x| <= X/q of the full Dirichlet kernel at gamma x."""
    n = math.floor(X / q)
    m = math.floor(Y)
    if n < 1:
        return 0.0
    x = np.arange(1, n + 1, dtype=float)
    return float(2.0 * np.sum(_dirichlet_full(gamma * x, m)))


def _sinc_sum(gamma: np.ndarray, n: int, m: int) -> np.ndarray:
    """v_q on an array of gamma: 2 sum_{x<=n} sin(pi(2m+1) gamma x)/(pi gamma x)."""
    k = 2 * m + 1
    x = np.arange(1, n + 1, dtype=float)
    z = np.pi * gamma[:, None] * x[None, :]
    small = np.abs(z) < _SIN_EPS
    safe = np.where(small, 1.0, z)
    vals = np.sin(k * z) / safe
    if np.any(small):
        taylor = k * (1.0 - (k * z) ** 2 / 6.0)
        vals = np.where(small, taylor, vals)
    return 2.0 * vals.sum(axis=1)


def v_q_eval(gamma: float, q: int, X: float, Y: float) -> float:
    """v_q(gamma): the w_q sum with sin(pi gamma x) replaced by pi gamma x."""
    n = math.floor(X / q)
    m = math.floor(Y)
    if n < 1:
        return 0.0
    return float(_sinc_sum(np.asarray([gamma], dtype=float), n, m)[0])


# ---------------------------------------------------------------------------
# Arc dissection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    q: int
    a: int
    center: float
    half_width: float


@dataclass(frozen=True)
class ArcDissection:
    """Major arcs around a/q for q <= Q = sqrt(XY)/2, inside the unit window."""

    X: float
    Y: float
    Q: float
    arcs: tuple[Arc, ...]
    window: tuple[float, float]

    def minor_intervals(self) -> list[tuple[float, float]]:
        """The complement of the arcs inside the window, as sorted intervals."""
        lo, hi = self.window
        out = []
        cur = lo
        for arc in self.arcs:
            a0 = arc.center - arc.half_width
            a1 = arc.center + arc.half_width
            if a0 > cur:
                out.append((cur, a0))
            cur = max(cur, a1)
        if cur < hi:
            out.append((cur, hi))
        return out


def dissect(X: float, Y: float) -> ArcDissection:
    """Build the complete arc list (sorted by center, verified disjoint)."""
    if X * Y < 4:
        raise ValueError("dissection needs X*Y >= 4 so that Q >= 1")
    Q = 0.5 * math.sqrt(X * Y)
    delta = Q / (X * Y)
    arcs = []
    for q in range(1, math.floor(Q) + 1):
        for a in range(1, q + 1):
            if math.gcd(a, q) == 1:
                arcs.append(Arc(q=q, a=a, center=a / q, half_width=delta / q))
    arcs.sort(key=lambda arc: arc.center)
    for left, right in zip(arcs, arcs[1:]):
        if left.center + left.half_width >= right.center - right.half_width:
            raise AssertionError("major arcs overlap")
    window = (delta, 1.0 + delta)
    for arc in arcs:
        if arc.center - arc.half_width < window[0] - 1e-15 or arc.center + arc.half_width > window[1] + 1e-15:
            raise AssertionError("arc leaves the unit window")
    return ArcDissection(X=X, Y=Y, Q=Q, arcs=tuple(arcs), window=window)


# ---------------------------------------------------------------------------
# Mean square of f via the divisor-pair table
# ---------------------------------------------------------------------------


def l2_via_r(X: int, Y: int) -> int:
    """int_0^1 |f|^2 = #{xy = uv in the box} = 2 sum_{n>=1} r(n)^2, exactly."""
    r = build_r_table(X, Y).r
    return int(2 * np.dot(r[1:], r[1:]))


def l2_naive(X: int, Y: int) -> int:
    """Quadruple-loop count of xy = uv in the box (tiny boxes only)."""
    if X * X * Y > 10**6:
        raise ResourceLimitError("l2_naive is for tiny boxes")
    xs = [x for x in range(-X, X + 1) if x]
    ys = [y for y in range(-Y, Y + 1) if y]
    count = 0
    for x in xs:
        for y in ys:
            p = x * y
            for u in xs:
                if p % u == 0 and 1 <= abs(p // u) <= Y:
                    count += 1
    return count


# ---------------------------------------------------------------------------
# Minor arc scan
# ---------------------------------------------------------------------------


class MinorArcScan(NamedTuple):
    X: float
    Y: float
    n_samples: int
    seed: int
    max_abs_f: float
    scale: float  # (XY/Q) log Y
    ratio: float


def minor_arc_scan(X: float, Y: float, n_samples: int, seed: int) -> MinorArcScan:
    """Sample |f| on the minor arcs (seeded, reproducible) and report the
    largest value against the scale (XY/Q) log Y."""
    diss = dissect(X, Y)
    intervals = diss.minor_intervals()
    lengths = [b - a for a, b in intervals]
    total = sum(lengths)
    rng = random.Random(seed)
    alphas = np.empty(n_samples)
    for i in range(n_samples):
        u = rng.random() * total
        for (a, b), ln in zip(intervals, lengths):
            if u <= ln:
                alphas[i] = a + u
                break
            u -= ln
    vals = np.abs(_f_eval_many(alphas, X, Y))
    scale = (X * Y / diss.Q) * math.log(Y)
    m = float(vals.max())
    return MinorArcScan(
        X=X, Y=Y, n_samples=n_samples, seed=seed, max_abs_f=m, scale=scale, ratio=m / scale
    )


# ---------------------------------------------------------------------------
# Numerical J(q)
# ---------------------------------------------------------------------------


def j_quadrature(
    q: int,
    X: float,
    Y: float,
    T: float = 50.0,
    tol: float = 1.0e-9,
    v_decay_constant: float = 10.0,
) -> QuadResult:
    """int_{-T}^{T} v_q(gamma)^3 dgamma plus a tail bound.

    v_q is even, so 2 int_0^T is computed on panels cut at the zeros
    gamma = j/(2 floor(Y) + 1); the tail uses |v_q| <= C log X / gamma
    (C = ``v_decay_constant``, an empirical constant):

        |tail| <= 2 (C log X)^3 / (2 T^2).
    """
    if q > X:
        return QuadResult(value=0.0, tail_bound=0.0)
    n = math.floor(X / q)
    m = math.floor(Y)
    k = 2 * m + 1

    def integrand(g: np.ndarray) -> np.ndarray:
        return _sinc_sum(g, n, m) ** 3

    brk = np.unique(np.concatenate([[0.0], np.arange(1, int(T * k) + 1) / k, [T]]))
    brk = brk[brk <= T]
    body = integrate_panels(integrand, brk, tol, order=16)
    c_log = v_decay_constant * max(math.log(X), 1.0)
    tail = c_log**3 / (T * T)
    return QuadResult(value=2.0 * body, tail_bound=tail)
