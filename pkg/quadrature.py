"""Adaptive Gauss-Kronrod quadrature with a conservative error estimate.

Integrands receive a numpy array of abscissae (one row of 15 nodes per panel)
and must return an array of the same shape, or a scalar for constants.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from errors import ConvergenceError, IntegrandDomainError, ParameterDomainError
from settings import get_settings

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

EPS = np.finfo(float).eps

# 15-point Kronrod abscissae on [0, 1) and weights; the 7-point Gauss rule is
# embedded at the odd positions plus the centre.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
])
_WGK_CENTER = 0.209482141084727828012999174891714
_WG = np.array([
    0.0,
    0.129484966168869693270611432679082,
    0.0,
    0.279705391489276667901467771423780,
    0.0,
    0.381830050505118944950369775488975,
    0.0,
])
_WG_CENTER = 0.417959183673469387755102040816327

NODES = np.concatenate([-_XGK, [0.0], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK, [_WGK_CENTER], _WGK[::-1]])
GAUSS_WEIGHTS = np.concatenate([_WG, [_WG_CENTER], _WG[::-1]])
RULE_SIZE = NODES.size


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    evaluations: int

    @property
    def upper(self) -> float:
        return self.value + self.error_estimate


def _evaluate(g: Integrand, x: np.ndarray) -> np.ndarray:
    with np.errstate(all="ignore"):
        y = np.asarray(g(x))
    if np.iscomplexobj(y):
        raise IntegrandDomainError("integrand returned complex values")
    y = np.broadcast_to(y.astype(float), x.shape)
    bad = ~np.isfinite(y)
    if bad.any():
        where = float(x[bad].flat[0])
        raise IntegrandDomainError(f"integrand is not finite at u={where:.6g}")
    return y


def _apply_rule(
    g: Integrand, lefts: np.ndarray, rights: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Kronrod value, error estimate and roundoff floor for each panel."""
    centers = 0.5 * (lefts + rights)
    half = 0.5 * (rights - lefts)
    x = centers[:, None] + half[:, None] * NODES[None, :]
    y = _evaluate(g, x)
    kronrod = half * (y @ KRONROD_WEIGHTS)
    gauss = half * (y @ GAUSS_WEIGHTS)
    floor = 50.0 * EPS * (half * (np.abs(y) @ KRONROD_WEIGHTS))
    diff = np.abs(kronrod - gauss)
    return kronrod, np.maximum(diff, floor), diff <= floor


def integrate(
    g: Integrand,
    lo: float,
    hi: float,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
    max_evaluations: Optional[int] = None,
) -> QuadResult:
    """Integrate g over [lo, hi] by adaptive bisection.

    Each panel is integrated with the 15-point Kronrod rule; the error is the
    difference against the embedded 7-point Gauss rule, floored at the
    roundoff level. Panels are accepted once their error fits their share of
    max(abs_tol, rel_tol*|value|); all remaining panels of a round are
    evaluated together.
    """
    defaults = get_settings().quadrature
    rel_tol = defaults.rel_tol if rel_tol is None else rel_tol
    abs_tol = defaults.abs_tol if abs_tol is None else abs_tol
    budget = defaults.max_evaluations if max_evaluations is None else max_evaluations

    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ParameterDomainError(f"integration range must satisfy lo <= hi, got [{lo}, {hi}]")
    if not (rel_tol > 0 and abs_tol > 0):
        raise ParameterDomainError("quadrature tolerances must be positive")

    length = hi - lo
    pending_l = np.array([lo], dtype=float)
    pending_r = np.array([hi], dtype=float)
    done_l, done_v, done_e = [], [], []
    evaluations = 0

    while pending_l.size:
        values, errors, at_floor = _apply_rule(g, pending_l, pending_r)
        evaluations += RULE_SIZE * pending_l.size

        total = math.fsum(done_v) + math.fsum(values)
        total_err = math.fsum(done_e) + math.fsum(errors)
        tol = max(abs_tol, rel_tol * abs(total))
        if total_err <= tol or length == 0.0:
            accept = np.ones(pending_l.size, dtype=bool)
        else:
            share = tol * (pending_r - pending_l) / length
            accept = (errors <= share) | at_floor

        done_l.extend(pending_l[accept])
        done_v.extend(values[accept])
        done_e.extend(errors[accept])

        split_l = pending_l[~accept]
        split_r = pending_r[~accept]
        if not split_l.size:
            break
        if evaluations + 2 * RULE_SIZE * split_l.size > budget:
            raise ConvergenceError(
                f"quadrature on [{lo:.6g}, {hi:.6g}] exceeded {budget} evaluations "
                f"(error {total_err:.3g} > tolerance {tol:.3g})"
            )
        mids = 0.5 * (split_l + split_r)
        if np.any((mids <= split_l) | (mids >= split_r)):
            raise ConvergenceError(
                f"quadrature on [{lo:.6g}, {hi:.6g}] reached panel width underflow"
            )
        pending_l = np.concatenate([split_l, mids])
        pending_r = np.concatenate([mids, split_r])

    order = np.argsort(np.asarray(done_l), kind="stable")
    value = math.fsum(np.asarray(done_v)[order])
    error = math.fsum(np.asarray(done_e)[order])
    logger.debug(
        "integrated [%g, %g]: value=%.12g error=%.3g panels=%d evaluations=%d",
        lo, hi, value, error, len(done_l), evaluations,
    )
    return QuadResult(value=value, error_estimate=error, evaluations=evaluations)


def integrate_upper(
    g: Integrand,
    lo: float,
    hi: float,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
) -> float:
    """Upper end of the integral's error interval: value + error_estimate."""
    return integrate(g, lo, hi, rel_tol=rel_tol, abs_tol=abs_tol).upper
