"""Tail bounds from characteristic functions.

Two-sided bounds from non-negative trigonometric polynomials (and their
sin^(2k) specialisation), exponential two-sided and one-sided bounds for
CFs that continue analytically along the imaginary axis, a parameter
optimiser, and numerical support certificates.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import comb

from cf_core import CharFn
from errors import (
    AnalyticityDomainError,
    BoundOverflowError,
    ConvergenceError,
    DivisionDomainError,
    IntegrandDomainError,
    InternalConsistencyError,
    ParameterDomainError,
    RejectedPolynomialError,
    UnsupportedError,
)
from quadrature import EPS, QuadResult, integrate
from search import golden_section, log_grid
from settings import get_settings
from trigpoly import MAX_SIN_POWER, TrigPoly, central_difference, check_nonnegative, sin_power_coeffs

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
CROSS_FORM_TOL = 1e-9
JENSEN_TOL = 1e-12
MAJORANT_SLACK = 1e-10
DENOMINATOR_FLOOR = 1e-300

DEFAULT_POLY = TrigPoly((1.0, -1.0))


class Side(str, Enum):
    TWO_SIDED = "two_sided"
    RIGHT = "right"
    LEFT = "left"


class Method(str, Enum):
    THEOREM1 = "theorem1"
    COROLLARY1 = "corollary1"
    THEOREM2 = "theorem2"
    THEOREM3_RIGHT = "theorem3-right"
    THEOREM3_LEFT = "theorem3-left"

    @property
    def side(self) -> Side:
        if self is Method.THEOREM3_RIGHT:
            return Side.RIGHT
        if self is Method.THEOREM3_LEFT:
            return Side.LEFT
        return Side.TWO_SIDED

    @classmethod
    def parse(cls, text: Union[str, "Method"]) -> "Method":
        if isinstance(text, Method):
            return text
        key = text.strip().lower().replace("_", "-")
        for method in cls:
            if method.value == key:
                return method
        raise ParameterDomainError(
            f"unknown method {text!r}; expected one of {', '.join(m.value for m in cls)}"
        )


@dataclass(frozen=True)
class TailBound:
    threshold: float
    side: Side
    bound: float
    raw_bound: float
    method: Method
    s_used: float
    poly_or_k: Optional[Union[TrigPoly, int]] = None
    quad_error: float = 0.0
    distribution: str = ""

    @property
    def k(self) -> Optional[int]:
        return self.poly_or_k if isinstance(self.poly_or_k, int) else None

    def to_record(self) -> Dict[str, object]:
        record: Dict[str, object] = {
            "method": self.method.value,
            "side": self.side.value,
            "threshold": self.threshold,
            "bound": self.bound,
            "raw_bound": self.raw_bound,
            "s": self.s_used,
            "quad_error": self.quad_error,
            "distribution": self.distribution,
        }
        if self.k is not None:
            record["k"] = self.k
        return record


@dataclass(frozen=True)
class SupportCertificate:
    A: float
    certified: bool
    best_bound: float
    s_at_best: float
    s_max_probed: float
    tol: float
    side: Side = Side.TWO_SIDED
    distribution: str = ""

    def to_record(self) -> Dict[str, object]:
        return {
            "A": self.A,
            "certified": self.certified,
            "best_bound": self.best_bound,
            "s_at_best": self.s_at_best,
            "s_max_probed": self.s_max_probed,
            "tol": self.tol,
            "side": self.side.value,
            "distribution": self.distribution,
        }


@dataclass(frozen=True)
class MajorantRow:
    u: float
    difference: float
    majorant: float
    slack: float


@dataclass(frozen=True)
class MajorantReport:
    k: int
    rows: tuple
    worst_slack: float
    passed: bool


@dataclass(frozen=True)
class OptimizeOptions:
    poly: Optional[TrigPoly] = None
    k: Optional[int] = None
    k_max: Optional[int] = None
    F0plus: Optional[float] = None
    F0minus: Optional[float] = None
    check_poly: bool = True
    rel_tol: Optional[float] = None
    abs_tol: Optional[float] = None
    grid_points: Optional[int] = None
    golden_iterations: Optional[int] = None


def clamp_probability(raw: float) -> float:
    return min(max(raw, 0.0), 1.0)


def _make_bound(
    cf: CharFn,
    method: Method,
    threshold: float,
    raw: float,
    s: float,
    quad_error: float,
    poly_or_k: Optional[Union[TrigPoly, int]] = None,
) -> TailBound:
    return TailBound(
        threshold=threshold,
        side=method.side,
        bound=clamp_probability(raw),
        raw_bound=raw,
        method=method,
        s_used=s,
        poly_or_k=poly_or_k,
        quad_error=quad_error,
        distribution=cf.label,
    )


def _require_positive(value: float, name: str) -> float:
    if not (isinstance(value, (int, float, np.floating)) and math.isfinite(value) and value > 0):
        raise ParameterDomainError(f"{name} must be a positive finite number, got {value!r}")
    return float(value)


def _require_k(k: int) -> int:
    if not (isinstance(k, (int, np.integer)) and 1 <= k <= MAX_SIN_POWER):
        raise ParameterDomainError(f"k must be an integer in [1, {MAX_SIN_POWER}], got {k!r}")
    return int(k)


def _resolve_abs_tol(abs_tol: Optional[float]) -> float:
    return get_settings().quadrature.abs_tol if abs_tol is None else abs_tol


# ---------- Trigonometric-polynomial bounds ----------


def _integral(cf: CharFn, m: float, s: float, imag: bool, rel_tol, abs_tol) -> Tuple[float, float]:
    """int_0^s Re f(mu) du (or Im) with its error, exact when the CF provides it."""
    if cf.integral_eval is not None:
        value, error = cf.integral_eval(m, s)
        return (value.imag if imag else value.real), error
    part = cf.imag_part if imag else cf.real_part
    res = integrate(lambda u: part(m * u), 0.0, s, rel_tol=rel_tol, abs_tol=abs_tol)
    return res.value, res.error_estimate


def _theorem1_bracket(cf: CharFn, p: TrigPoly, s: float, rel_tol, abs_tol):
    """sum_j a_j int_0^s Re f(ju) du + sum_j b_j int_0^s Im f(ju) du and its error budget."""
    values = [p.a0 * s]
    errors: List[float] = []
    for j, a in p.cos_terms():
        value, error = _integral(cf, j, s, False, rel_tol, abs_tol)
        values.append(a * value)
        errors.append(abs(a) * error)
    for j, b in p.sin_terms():
        value, error = _integral(cf, j, s, True, rel_tol, abs_tol)
        values.append(b * value)
        errors.append(abs(b) * error)
    return math.fsum(values), math.fsum(errors)


def _cross_form(cf: CharFn, k: int, s: float, rel_tol, abs_tol) -> Tuple[float, float]:
    """int_0^s Delta_{2u}^{(2k)}(Re f, 0) du and its error."""
    if cf.integral_eval is not None:
        # Re f is even, so the multiplier 2(j - k) enters through its magnitude.
        values: List[float] = []
        errors: List[float] = []
        for j in range(2 * k + 1):
            weight = (-1) ** j * comb(2 * k, j, exact=True)
            value, error = _integral(cf, abs(2 * (j - k)), s, False, rel_tol, abs_tol)
            values.append(weight * value)
            errors.append(abs(weight) * error)
        return math.fsum(values), math.fsum(errors)
    # The 2k-th difference cancels terms of size up to 4^k.
    cross_abs_tol = max(_resolve_abs_tol(abs_tol), 64.0 * EPS * 4.0 ** k * s)
    cross = integrate(
        lambda u: central_difference(cf.real_part, 2.0 * u, 2 * k),
        0.0, s, rel_tol=rel_tol, abs_tol=cross_abs_tol,
    )
    return cross.value, cross.error_estimate


def theorem1_bound(
    cf: CharFn,
    p: TrigPoly,
    s: float,
    check_poly: bool = True,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
) -> TailBound:
    """Bound on 1 - F(2pi/s) + F(-2pi/s) from a non-negative trigonometric polynomial.

    Every integral enters with its error estimate added in the direction of
    its coefficient's sign, so the bracket is an upper estimate.
    """
    s = _require_positive(s, "s")
    if p.a0 <= 0:
        raise DivisionDomainError(f"a_0 must be positive, got {p.a0}")

    tol = get_settings().nonnegativity.tol
    check = check_nonnegative(p, tol)
    if not check.ok:
        message = (
            f"polynomial is negative somewhere: minimum {check.min_estimate:.3g} "
            f"at theta={check.argmin:.6g}"
        )
        if check_poly:
            raise RejectedPolynomialError(message)
        logger.warning("%s; continuing because the check was overridden", message)

    value, error = _theorem1_bracket(cf, p, s, rel_tol, abs_tol)
    scale = 2.0 / (s * p.a0)
    return _make_bound(
        cf, Method.THEOREM1, TWO_PI / s, scale * (value + error), s, scale * error, poly_or_k=p
    )


def corollary1_bound(
    cf: CharFn,
    k: int,
    s: float,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
) -> TailBound:
    """Theorem-1 bound with P = sin^(2k), cross-checked against the central-difference form.

    sin^(2k)(theta) = (-1)^k 4^-k sum_j (-1)^j C(2k, j) exp(i(2j - 2k)theta), so
    the integrand of the difference form is Delta_{2u}^{(2k)}(Re f, 0) and the
    constant is 2 (-1)^k / (s C(2k, k)).
    """
    k = _require_k(k)
    s = _require_positive(s, "s")
    p = sin_power_coeffs(k)

    value, error = _theorem1_bracket(cf, p, s, rel_tol, abs_tol)
    scale = 2.0 / (s * p.a0)

    cross_value, cross_error = _cross_form(cf, k, s, rel_tol, abs_tol)
    constant = 2.0 * (-1) ** k / (s * comb(2 * k, k, exact=True))
    primary = scale * value
    secondary = constant * cross_value
    allowed = CROSS_FORM_TOL + scale * error + abs(constant) * cross_error
    if abs(primary - secondary) > allowed:
        raise InternalConsistencyError(
            f"corollary forms disagree for {cf.label}, k={k}, s={s:g}: "
            f"{primary:.12g} vs {secondary:.12g} (allowed {allowed:.3g})"
        )
    return _make_bound(
        cf, Method.COROLLARY1, TWO_PI / s, scale * (value + error), s, scale * error, poly_or_k=k
    )


def remark1_majorant_check(cf: CharFn, k: int, u_grid: Sequence[float]) -> MajorantReport:
    """|Delta_u^{(2k)}(Re f, 0)| <= u^(2k) E X^(2k) on every grid point."""
    k = _require_k(k)
    if cf.even_moments is None or k not in cf.even_moments:
        raise UnsupportedError(f"{cf.label} carries no moment E X^{2 * k}")
    moment = float(cf.even_moments[k])
    rows = []
    for u in u_grid:
        u = _require_positive(u, "u")
        difference = central_difference(cf.real_part, u, 2 * k)
        majorant = u ** (2 * k) * moment
        rows.append(MajorantRow(u, difference, majorant, majorant + MAJORANT_SLACK - abs(difference)))
    worst = min((row.slack for row in rows), default=math.inf)
    return MajorantReport(k=k, rows=tuple(rows), worst_slack=worst, passed=worst >= 0.0)


# ---------- Exponential bounds ----------


def _sinhc_minus_one(x: float) -> float:
    """sinh(x)/x - 1 without cancellation near 0."""
    if x < 1e-3:
        x2 = x * x
        return x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0))
    return math.sinh(x) / x - 1.0


def _exp_minus_linear(x: float) -> float:
    """exp(x) - x - 1 without cancellation near 0."""
    if x < 1e-3:
        return x * x / 2.0 * (1.0 + x / 3.0 * (1.0 + x / 4.0 * (1.0 + x / 5.0)))
    return math.expm1(x) - x


def _check_exponent(A: float, s: float) -> None:
    cap = get_settings().optimizer.max_exponent
    if A * s > cap:
        raise BoundOverflowError(
            f"A*s = {A * s:.6g} exceeds {cap:g}; exponential factors overflow, use a smaller s"
        )


def _require_imag_axis(cf: CharFn, method: Method) -> Callable:
    if cf.imag_axis_eval is None:
        raise UnsupportedError(f"{method.value} needs imaginary-axis values, which {cf.label} lacks")
    return cf.imag_axis_eval


def _probe_imag_axis(imag: Callable, points: Sequence[float]) -> None:
    cap = get_settings().optimizer.imag_axis_cap
    values = np.asarray(imag(np.asarray(points, dtype=float)), dtype=float)
    if not np.all(np.isfinite(values)) or np.any(np.abs(values) > cap):
        raise BoundOverflowError(
            f"imaginary-axis value at u={max(abs(p) for p in points):.6g} overflows; use a smaller s"
        )


def _integrate_imag(integrand, s: float, rel_tol, abs_tol) -> QuadResult:
    try:
        return integrate(integrand, 0.0, s, rel_tol=rel_tol, abs_tol=abs_tol)
    except IntegrandDomainError as exc:
        raise BoundOverflowError(f"{exc}; use a smaller s") from exc


def theorem2_bound(
    cf: CharFn,
    A: float,
    s: float,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
) -> TailBound:
    """Bound on 1 - F(A) + F(-A) for CFs analytic in |t| < R, with 0 < s < R."""
    A = _require_positive(A, "A")
    s = _require_positive(s, "s")
    radius = cf.analyticity_radius
    if s >= radius:
        raise AnalyticityDomainError(f"s={s:g} exceeds analyticity radius R={radius:g}")
    imag = _require_imag_axis(cf, Method.THEOREM2)
    _check_exponent(A, s)
    denominator = s * _sinhc_minus_one(A * s)
    if denominator <= DENOMINATOR_FLOOR:
        raise ParameterDomainError(f"A*s = {A * s:.3g} is too small for a meaningful denominator")
    _probe_imag_axis(imag, [s, -s])

    def integrand(u):
        value = 0.5 * (imag(u) + imag(-u)) - 1.0
        if np.min(value) < -JENSEN_TOL:
            raise InternalConsistencyError(
                f"E cosh(uX) - 1 = {np.min(value):.3g} < 0 for {cf.label}; the imaginary-axis values are inconsistent"
            )
        return value

    res = _integrate_imag(integrand, s, rel_tol, abs_tol)
    return _make_bound(
        cf, Method.THEOREM2, A, res.upper / denominator, s, res.error_estimate / denominator
    )


def _one_sided(
    cf: CharFn,
    method: Method,
    A: float,
    s: float,
    c: float,
    rel_tol: Optional[float],
    abs_tol: Optional[float],
) -> TailBound:
    imag = _require_imag_axis(cf, method)
    _check_exponent(A, s)
    factor = A / _exp_minus_linear(A * s)
    if method is Method.THEOREM3_RIGHT:
        _probe_imag_axis(imag, [-s])
        integrand = lambda u: imag(-u) + c - 1.0  # noqa: E731
    else:
        _probe_imag_axis(imag, [s])
        integrand = lambda u: imag(u) - c  # noqa: E731
    res = _integrate_imag(integrand, s, rel_tol, abs_tol)
    return _make_bound(cf, method, A, factor * res.upper, s, factor * res.error_estimate)


def _resolve_probability(given: Optional[float], metadata: Optional[float], default: float, name: str) -> float:
    value = given if given is not None else metadata if metadata is not None else default
    if not 0.0 <= value <= 1.0:
        raise ParameterDomainError(f"{name} must be a probability, got {value}")
    return float(value)


def theorem3_right(
    cf: CharFn,
    A: float,
    s: float,
    F0plus: Optional[float] = None,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
) -> TailBound:
    """Bound on 1 - F(A) for CFs analytic in -b < Im t < 0, with 0 < s < b.

    Without F(+0) from the caller or the CF metadata the constant falls back
    to 1, which only weakens the bound.
    """
    A = _require_positive(A, "A")
    s = _require_positive(s, "s")
    if s >= cf.lower_strip:
        raise AnalyticityDomainError(f"s={s:g} exceeds lower strip width b={cf.lower_strip:g}")
    c = _resolve_probability(F0plus, cf.prob_nonpositive, 1.0, "F(+0)")
    return _one_sided(cf, Method.THEOREM3_RIGHT, A, s, c, rel_tol, abs_tol)


def theorem3_left(
    cf: CharFn,
    A: float,
    s: float,
    F0minus: Optional[float] = None,
    rel_tol: Optional[float] = None,
    abs_tol: Optional[float] = None,
) -> TailBound:
    """Bound on F(-A) for CFs analytic in 0 < Im t < b, with 0 < s < b. F(-0) defaults to 0."""
    A = _require_positive(A, "A")
    s = _require_positive(s, "s")
    if s >= cf.upper_strip:
        raise AnalyticityDomainError(f"s={s:g} exceeds upper strip width b={cf.upper_strip:g}")
    c = _resolve_probability(F0minus, cf.prob_negative, 0.0, "F(-0)")
    return _one_sided(cf, Method.THEOREM3_LEFT, A, s, c, rel_tol, abs_tol)


# ---------- Optimisation ----------


def _s_limit(cf: CharFn, method: Method) -> float:
    if method is Method.THEOREM2:
        return cf.analyticity_radius
    if method is Method.THEOREM3_RIGHT:
        return cf.lower_strip
    return cf.upper_strip


def s_domain(cf: CharFn, method: Method, A: float) -> float:
    """Upper end of the admissible s-range for the exponential bounds."""
    limit = _s_limit(cf, method)
    if limit <= 0 or cf.imag_axis_eval is None:
        raise UnsupportedError(
            f"{method.value} needs a CF analytic near the imaginary axis; "
            f"{cf.label} has an empty s-domain (limit {limit:g})"
        )
    cap = get_settings().optimizer.max_exponent / A
    return cap if cap < limit else limit * (1.0 - 1e-6)


def bound_at(
    cf: CharFn,
    method: Method,
    A: float,
    s: float,
    opts: Optional[OptimizeOptions] = None,
) -> TailBound:
    """Evaluate an exponential bound at a fixed s."""
    opts = opts or OptimizeOptions()
    if method is Method.THEOREM2:
        return theorem2_bound(cf, A, s, rel_tol=opts.rel_tol, abs_tol=opts.abs_tol)
    if method is Method.THEOREM3_RIGHT:
        return theorem3_right(cf, A, s, opts.F0plus, rel_tol=opts.rel_tol, abs_tol=opts.abs_tol)
    if method is Method.THEOREM3_LEFT:
        return theorem3_left(cf, A, s, opts.F0minus, rel_tol=opts.rel_tol, abs_tol=opts.abs_tol)
    raise ParameterDomainError(f"{method.value} has no free s at a fixed threshold")


_INFEASIBLE = (AnalyticityDomainError, BoundOverflowError, ConvergenceError, ParameterDomainError)


def _minimize_over_s(cf: CharFn, method: Method, A: float, opts: OptimizeOptions) -> TailBound:
    cfg = get_settings().optimizer
    upper = s_domain(cf, method, A)
    grid = log_grid(upper * cfg.grid_floor, upper, opts.grid_points or cfg.grid_points)
    cache: Dict[float, Optional[TailBound]] = {}

    def evaluate(s: float) -> Optional[TailBound]:
        if s not in cache:
            try:
                cache[s] = bound_at(cf, method, A, s, opts)
            except _INFEASIBLE as exc:
                logger.debug("%s at s=%g skipped: %s", method.value, s, exc)
                cache[s] = None
        return cache[s]

    def objective(s: float) -> float:
        result = evaluate(s)
        return math.inf if result is None else result.raw_bound

    raws = np.array([objective(float(s)) for s in grid])
    if not np.isfinite(raws).any():
        raise BoundOverflowError(f"{method.value}: no admissible s for A={A:g} on {cf.label}")
    i = int(np.argmin(raws))
    best = evaluate(float(grid[i]))

    lo, hi = float(grid[max(i - 1, 0)]), float(grid[min(i + 1, grid.size - 1)])
    if hi > lo:
        s_ref, raw_ref = golden_section(
            objective, lo, hi, iterations=opts.golden_iterations or cfg.golden_iterations
        )
        if raw_ref < best.raw_bound:
            best = evaluate(s_ref)
    logger.debug(
        "%s on %s at A=%g: grid argmin s=%g, best s=%g raw=%.6g",
        method.value, cf.label, A, grid[i], best.s_used, best.raw_bound,
    )
    return best


def optimize_bound(
    cf: CharFn,
    method: Union[Method, str],
    A: float,
    opts: Optional[OptimizeOptions] = None,
) -> TailBound:
    """Smallest bound at threshold A over the method's free parameter.

    theorem1 has none (s = 2pi/A); corollary1 scans k; the exponential bounds
    search s on a log grid and refine the grid argmin by golden section.
    """
    method = Method.parse(method)
    A = _require_positive(A, "A")
    opts = opts or OptimizeOptions()

    if method is Method.THEOREM1:
        return theorem1_bound(
            cf, opts.poly or DEFAULT_POLY, TWO_PI / A,
            check_poly=opts.check_poly, rel_tol=opts.rel_tol, abs_tol=opts.abs_tol,
        )
    if method is Method.COROLLARY1:
        if opts.k is not None:
            ks = [_require_k(opts.k)]
        else:
            k_max = opts.k_max or get_settings().optimizer.k_max
            ks = range(1, _require_k(k_max) + 1)
        best: Optional[TailBound] = None
        for k in ks:
            candidate = corollary1_bound(cf, k, TWO_PI / A, rel_tol=opts.rel_tol, abs_tol=opts.abs_tol)
            if best is None or candidate.raw_bound < best.raw_bound:
                best = candidate
        return best
    return _minimize_over_s(cf, method, A, opts)


def tail_curve(
    cf: CharFn,
    method: Union[Method, str],
    thresholds: Sequence[float],
    opts: Optional[OptimizeOptions] = None,
) -> List[TailBound]:
    thresholds = [_require_positive(a, "threshold") for a in thresholds]
    if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
        raise ParameterDomainError("thresholds must be strictly ascending")
    return [optimize_bound(cf, method, a, opts) for a in thresholds]


def fit_loglog_slope(curve: Sequence[TailBound]) -> float:
    """Least-squares slope of log(raw_bound) against log(threshold)."""
    if len(curve) < 2:
        raise ParameterDomainError("slope fitting needs at least two bounds")
    x = np.log([b.threshold for b in curve])
    raws = np.array([b.raw_bound for b in curve])
    if np.any(raws <= 0):
        raise ParameterDomainError("slope fitting needs positive bounds")
    slope, _ = np.polyfit(x, np.log(raws), 1)
    return float(slope)


def compute_bound(
    cf: CharFn,
    method: Union[Method, str],
    A: Optional[float] = None,
    s: Optional[float] = None,
    k: Optional[int] = None,
    poly: Optional[TrigPoly] = None,
    opts: Optional[OptimizeOptions] = None,
) -> TailBound:
    """Evaluate a bound with explicit parameters, optimising whatever is left free."""
    method = Method.parse(method)
    opts = opts or OptimizeOptions()

    if method in (Method.THEOREM1, Method.COROLLARY1):
        if s is None and A is None:
            raise ParameterDomainError(f"{method.value} needs s or A (A = 2*pi/s)")
        if s is not None and A is not None and not math.isclose(A, TWO_PI / s, rel_tol=1e-9):
            raise ParameterDomainError(f"{method.value} fixes A = 2*pi/s; give only one of them")
        s = _require_positive(s, "s") if s is not None else TWO_PI / _require_positive(A, "A")
        if method is Method.THEOREM1:
            return theorem1_bound(
                cf, poly or opts.poly or DEFAULT_POLY, s,
                check_poly=opts.check_poly, rel_tol=opts.rel_tol, abs_tol=opts.abs_tol,
            )
        k = k if k is not None else opts.k
        if k is not None:
            return corollary1_bound(cf, k, s, rel_tol=opts.rel_tol, abs_tol=opts.abs_tol)
        return optimize_bound(cf, method, TWO_PI / s, opts)

    if A is None:
        raise ParameterDomainError(f"{method.value} needs a threshold A")
    if s is not None:
        return bound_at(cf, method, A, s, opts)
    return optimize_bound(cf, method, A, opts)


# ---------- Support certificates ----------


def _certify(
    cf: CharFn,
    method: Method,
    A: float,
    tol: float,
    s_max: float,
    grid_points: Optional[int],
    opts: OptimizeOptions,
) -> SupportCertificate:
    cfg = get_settings()
    cap = min(s_max, cfg.optimizer.max_exponent / A)
    grid = log_grid(cap * 1e-3, cap, grid_points or cfg.certify.grid_points)
    best: Optional[TailBound] = None
    probed = 0.0
    for s in grid:
        try:
            result = bound_at(cf, method, A, float(s), opts)
        except (BoundOverflowError, ConvergenceError) as exc:
            logger.warning("certifier stopped at s=%g: %s", s, exc)
            break
        probed = float(s)
        if best is None or result.raw_bound < best.raw_bound:
            best = result
    best_bound = best.bound if best is not None else 1.0
    certified = best is not None and best_bound < tol
    logger.debug("certify %s A=%g: best=%.3g certified=%s", cf.label, A, best_bound, certified)
    return SupportCertificate(
        A=A,
        certified=certified,
        best_bound=best_bound,
        s_at_best=best.s_used if best is not None else 0.0,
        s_max_probed=probed,
        tol=tol,
        side=method.side,
        distribution=cf.label,
    )


def certify_compact_support(
    cf: CharFn,
    A: float,
    tol: float,
    s_max: float,
    grid_points: Optional[int] = None,
    opts: Optional[OptimizeOptions] = None,
) -> SupportCertificate:
    """Numerically certify that the mass outside [-A, A] is below tol.

    For an entire CF of exponential type rho the two-sided exponential
    bound tends to zero as s grows whenever A > rho.
    """
    A = _require_positive(A, "A")
    tol = _require_positive(tol, "tol")
    s_max = _require_positive(s_max, "s_max")
    if not math.isinf(cf.analyticity_radius):
        raise UnsupportedError(f"{cf.label} is not entire (R={cf.analyticity_radius:g})")
    _require_imag_axis(cf, Method.THEOREM2)
    return _certify(cf, Method.THEOREM2, A, tol, s_max, grid_points, opts or OptimizeOptions())


def certify_half_line(
    cf: CharFn,
    A: float,
    side: Union[Side, str],
    tol: float,
    s_max: float,
    grid_points: Optional[int] = None,
    opts: Optional[OptimizeOptions] = None,
) -> SupportCertificate:
    """One-sided certificate: mass beyond A (right) or below -A (left) is below tol."""
    side = Side(side)
    A = _require_positive(A, "A")
    tol = _require_positive(tol, "tol")
    s_max = _require_positive(s_max, "s_max")
    if side is Side.TWO_SIDED:
        return certify_compact_support(cf, A, tol, s_max, grid_points, opts)
    method = Method.THEOREM3_RIGHT if side is Side.RIGHT else Method.THEOREM3_LEFT
    strip = _s_limit(cf, method)
    if not math.isinf(strip):
        raise UnsupportedError(f"{cf.label} is analytic only in a strip of width {strip:g} on the {side.value}")
    _require_imag_axis(cf, method)
    return _certify(cf, method, A, tol, s_max, grid_points, opts or OptimizeOptions())
