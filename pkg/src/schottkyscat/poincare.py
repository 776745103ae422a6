r"""Poincare series, critical exponents, the equal-rank exponent shift and
the averaged trivializing sections.

All series here are word sums of A-cocycle powers,

    sum_{|w| <= L} a(g_w k_b)^{-s - rho},

evaluated shell by shell.  Convergence is monitored through the ratio of
consecutive shell sums: Schottky contraction makes the shells eventually
geometric, so the projected geometric tail is an honest error estimate and
a shell ratio >= 1 signals a parameter at or below the critical exponent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BracketFailureError, DivergenceError, UnsupportedRankError
from .lie import BoundaryPoint, rho
from .schottky import SchottkyData

_RATIO_CONVERGED = 0.95


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    length_used: int
    tail_bound: float
    converged: bool


def _inverted(mats: np.ndarray) -> np.ndarray:
    out = np.empty_like(mats)
    out[:, 0, 0] = mats[:, 1, 1]
    out[:, 0, 1] = -mats[:, 0, 1]
    out[:, 1, 0] = -mats[:, 1, 0]
    out[:, 1, 1] = mats[:, 0, 0]
    return out


def _shell_tail(shell_abs: np.ndarray, tol: float):
    """(tail_bound, converged, diverging) from per-shell absolute sums."""
    totals = shell_abs if shell_abs.ndim == 1 else shell_abs.sum(axis=1)
    last, prev = totals[-1], totals[-2] if len(totals) > 1 else totals[-1]
    if last == 0.0:
        return 0.0, True, False
    if prev == 0.0:
        return float(last), False, False
    ratio = last / prev
    if ratio >= 1.0:
        return math.inf, False, True
    tail = last * ratio / (1.0 - ratio)
    return float(tail), bool(ratio < _RATIO_CONVERGED and tail < tol), False


def _sum_at_angles(data, thetas, s_exp, L, invert=False):
    """Word sums sum_w exp(s_exp * log a(g_w k_theta)) and shell tails."""
    mats, shell_ptr, _ = data.words(L)
    if invert:
        mats = _inverted(mats)
    return kernels.power_shell_sums(mats, thetas, s_exp, shell_ptr)


def poincare_series(
    data: SchottkyData, s: complex, b: BoundaryPoint, L: int, tol: float = 1e-8
) -> SeriesResult:
    """Partial Poincare series sum_{|w|<=L} a(g_w k_b)^{-s-rho} at one
    boundary point, with a geometric tail estimate from the last two shells.

    Raises DivergenceError when the shells grow (Re s at or below the
    critical exponent).
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    r = rho(data.rank_tag)
    s_exp = -(complex(s) + r)
    total, shell_abs = _sum_at_angles(data, np.array([b.theta]), s_exp, L)
    tail, converged, diverging = _shell_tail(shell_abs, tol)
    if diverging:
        raise DivergenceError(
            f"shell sums grow at s={s}: Re s is at or below the critical exponent"
        )
    return SeriesResult(
        value=complex(total[0]), length_used=L, tail_bound=tail, converged=converged
    )


def _growth_rate(data, thetas, s, L):
    """Geometric-mean shell ratio of |a^{-s-rho}| sums over a node grid."""
    r = rho(data.rank_tag)
    _, shell_abs = _sum_at_angles(data, thetas, -(s + r), L)
    totals = shell_abs.sum(axis=1)
    totals = totals[totals > 0]
    if len(totals) < 3:
        return math.inf
    k = min(3, len(totals) - 1)
    return (totals[-1] / totals[-1 - k]) ** (1.0 / k)


def _default_length(data: SchottkyData) -> int:
    r = data.n_generators
    if r <= 1:
        return 40
    L = 2
    while 2 * r * (2 * r - 1) ** L < 30000:
        L += 1
    return L + 1


def critical_exponent(
    data: SchottkyData, tol: float = 0.01, L: int | None = None, grid_per_arc: int = 32
) -> float:
    """Critical exponent delta: bisection on the shell growth rate of the
    Poincare series over a fixed grid of fundamental-arc points."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not data.generators:
        return -math.inf
    if L is None:
        L = _default_length(data)
    r = rho(data.rank_tag)
    thetas = np.concatenate(
        [a.interior_samples(grid_per_arc) for a in data.boundary.arcs]
    )
    lo, hi = -r, 3.0 * r
    if _growth_rate(data, thetas, lo, L) < 1.0 or _growth_rate(data, thetas, hi, L) >= 1.0:
        raise BracketFailureError(
            f"no sign change of the shell growth rate on [{lo}, {hi}]"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _growth_rate(data, thetas, mid, L) >= 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def exponent_shift(delta_n: float, n: int) -> float:
    """Exponent of the same group one rank up: delta - (rho(n+1) - rho(n))."""
    if n != 2:
        raise UnsupportedRankError("only the rank 2 -> 3 shift is supported")
    return delta_n - (rho(3) - rho(2))


def trivializer(data: SchottkyData, mu: float, b: BoundaryPoint, L: int) -> float:
    """Averaged trivializing section: sum_{|w|<=L} a(g_w^{-1} k_b)^{-mu-rho}.

    Strictly positive; diverges (shell growth) when mu is at or below the
    critical exponent.
    """
    vals = trivializer_at(data, mu, np.array([b.theta]), L)
    return float(vals[0])


def trivializer_at(data: SchottkyData, mu: float, thetas, L: int) -> np.ndarray:
    """Vectorized trivializer over an array of fundamental-arc angles."""
    r = rho(data.rank_tag)
    total, shell_abs = _sum_at_angles(
        data, np.asarray(thetas, dtype=np.float64), -(mu + r), L, invert=True
    )
    _, _, diverging = _shell_tail(shell_abs, tol=math.inf)
    if diverging:
        raise DivergenceError(f"trivializer diverges at mu={mu}")
    return total.real
