"""One-dimensional minimisation helpers: golden-section search and log grids."""

import math
from typing import Callable, Optional, Tuple

import numpy as np

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def _finite_or_inf(value: float) -> float:
    return value if math.isfinite(value) else math.inf


def golden_section(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Optional[float] = None,
    iterations: Optional[int] = None,
) -> Tuple[float, float]:
    """
    Golden-section search.

    Given a function f with a single local minimum in [a, b], shrink the
    bracket either until it is narrower than `tol` or for a fixed number of
    `iterations`. Returns the best point seen and its value. Non-finite
    values count as +inf so callers may signal infeasible points that way.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if iterations is None:
        if tol is None:
            raise ValueError("golden_section needs tol or iterations")
        if h <= tol:
            mid = 0.5 * (a + b)
            return mid, _finite_or_inf(f(mid))
        iterations = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = _finite_or_inf(f(c))
    yd = _finite_or_inf(f(d))
    best_x, best_y = (c, yc) if yc <= yd else (d, yd)

    for _ in range(max(iterations - 1, 0)):
        if yc < yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = _finite_or_inf(f(c))
            if yc < best_y:
                best_x, best_y = c, yc
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = _finite_or_inf(f(d))
            if yd < best_y:
                best_x, best_y = d, yd

    return best_x, best_y


def log_grid(lo: float, hi: float, count: int) -> np.ndarray:
    """Increasing log-spaced grid on [lo, hi]."""
    if not (0 < lo <= hi):
        raise ValueError(f"log grid needs 0 < lo <= hi, got [{lo}, {hi}]")
    return np.geomspace(lo, hi, count)
