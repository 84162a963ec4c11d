"""Finite-difference derivative oracle, phase unwrapping and line fits."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "DerivativeEstimate",
    "FitResult",
    "unwrap_phases",
    "differentiate",
    "linear_fit",
]


@dataclass(frozen=True)
class DerivativeEstimate:
    """Result of :func:`differentiate`.

    ``achieved_tol`` is the relative change between the last two Richardson
    estimates; ``converged`` says whether it met the requested tolerance.
    """

    value: float
    achieved_tol: float
    step: float
    converged: bool


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float


def unwrap_phases(angles: Sequence[float]) -> np.ndarray:
    """Remove 2*pi jumps so that adjacent differences lie in (-pi, pi].

    The first element is left unchanged and every other element is shifted
    by an integer multiple of 2*pi. Sequences that are already continuous
    are returned bit-for-bit.
    """
    phi = np.asarray(angles, dtype=float)
    if phi.ndim != 1 or phi.size == 0:
        raise DomainError("unwrap_phases needs a non-empty 1-D sequence")
    if phi.size == 1:
        return phi.copy()
    jumps = np.diff(phi)
    turns = np.floor((math.pi - jumps) / (2 * math.pi))
    out = phi.copy()
    out[1:] += 2 * math.pi * np.cumsum(turns)
    return out


def _check_step(e0, h):
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")
    if not e0 - 2 * h > 0:
        raise DomainError(f"stencil leaves the positive axis: e0={e0}, h={h}")


def differentiate(
    func: Callable[[float], float],
    e0: float,
    h0: float | None = None,
    *,
    unwrap: bool = False,
    rtol: float = 1e-8,
    floor: float = 1e-10,
    max_halvings: int = 40,
) -> DerivativeEstimate:
    """Central difference with one Richardson step and automatic step shrinking.

    Each estimate uses the nodes ``e0 +- h`` and ``e0 +- h/2``:
    ``(4 D(h/2) - D(h)) / 3`` with ``D(h) = (f(e0+h) - f(e0-h)) / (2h)``,
    which is exact for cubics. The step is halved until two successive
    estimates agree to ``rtol`` or ``h`` drops below ``floor * e0``.

    Parameters
    ----------
    func : callable
        Scalar function of one positive variable (typically energy).
    e0 : float
        Evaluation point.
    h0 : float, optional
        Initial step; defaults to ``1e-3 * e0``.
    unwrap : bool
        Unwrap the stencil samples before differencing. Needed whenever
        ``func`` returns a principal-value angle.

    Returns
    -------
    DerivativeEstimate
        If the tolerance is never met, the estimate whose successive change
        was smallest is returned with ``converged=False``.
    """
    if h0 is None:
        h0 = 1e-3 * e0
    _check_step(e0, h0)
    cache: dict[float, float] = {}

    def f(x):
        if x not in cache:
            cache[x] = float(func(x))
        return cache[x]

    def estimate(h):
        nodes = [e0 - h, e0 - h / 2, e0, e0 + h / 2, e0 + h]
        vals = [f(x) for x in nodes]
        if unwrap:
            vals = unwrap_phases(vals)
        d_h = (vals[4] - vals[0]) / (2 * h)
        d_half = (vals[3] - vals[1]) / h
        return float((4 * d_half - d_h) / 3)

    h = h0
    prev = estimate(h)
    best = DerivativeEstimate(prev, math.inf, h, False)
    for _ in range(max_halvings):
        if h / 2 < floor * e0:
            break
        h /= 2
        cur = estimate(h)
        change = abs(cur - prev) / abs(cur) if cur != 0 else abs(cur - prev)
        if change <= rtol:
            return DerivativeEstimate(cur, change, h, True)
        if change < best.achieved_tol:
            best = DerivativeEstimate(cur, change, h, False)
        prev = cur
    return best


def linear_fit(points: Sequence[tuple[float, float]]) -> FitResult:
    """Ordinary least-squares line through ``(abscissa, ordinate)`` pairs.

    A perfectly constant ordinate gives ``r_squared = 1``.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 3:
        raise DomainError("linear_fit needs at least 3 (x, y) points")
    x, y = pts[:, 0], pts[:, 1]
    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx == 0:
        raise DomainError("linear_fit abscissae are all equal")
    dy = y - y.mean()
    slope = float(dx @ dy) / sxx
    intercept = float(y.mean() - slope * x.mean())
    ss_res = float(np.sum((y - (slope * x + intercept)) ** 2))
    ss_tot = float(dy @ dy)
    r2 = 1.0 if ss_tot == 0 else min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return FitResult(slope, intercept, r2)
