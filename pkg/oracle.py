"""Exact tail probabilities and validation of computed bounds against them.

Tails use strict inequalities: right_tail(x) = P(X > x), left_tail(x) = P(X < -x).
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

import numpy as np

from bounds import Method, OptimizeOptions, Side, TailBound, compute_bound
from cf_core import CatalogSpec, CharFn
from errors import ParameterDomainError, TailBoundError, UnsupportedOracleError
from settings import expand_grid_values
from trigpoly import TrigPoly, parse_kernel

logger = logging.getLogger(__name__)

SOUNDNESS_SLACK = 1e-9

BoundTransform = Callable[[TailBound], TailBound]


@dataclass(frozen=True)
class TailOracle:
    cdf: Callable[[float], float]
    label: str
    cdf_left: Optional[Callable[[float], float]] = None
    sf: Optional[Callable[[float], float]] = None
    heavy_tailed: bool = False

    def right_tail(self, x: float) -> float:
        """P(X > x)."""
        if self.sf is not None:
            return float(self.sf(x))
        return 1.0 - float(self.cdf(x))

    def left_tail(self, x: float) -> float:
        """P(X < -x)."""
        below = self.cdf_left if self.cdf_left is not None else self.cdf
        return float(below(-x))

    def two_sided_tail(self, x: float) -> float:
        return self.right_tail(x) + self.left_tail(x)

    def tail(self, side: Union[Side, str], x: float) -> float:
        side = Side(side)
        if side is Side.RIGHT:
            return self.right_tail(x)
        if side is Side.LEFT:
            return self.left_tail(x)
        return self.two_sided_tail(x)


def oracle_for(spec: CatalogSpec) -> TailOracle:
    """Closed-form CDF for a catalog distribution."""
    if spec.is_point_mass:
        c = spec.params[0]
        return TailOracle(
            cdf=lambda x: 1.0 if x >= c else 0.0,
            cdf_left=lambda x: 1.0 if x > c else 0.0,
            sf=lambda x: 1.0 if x < c else 0.0,
            label=spec.label,
        )
    law = spec.law()
    if law is None:
        raise UnsupportedOracleError(f"{spec.label} has no closed-form CDF")
    heavy = spec.family == "cauchy" or (spec.family == "symmetric_stable" and spec.params[0] < 2)
    return TailOracle(
        cdf=lambda x: float(law.cdf(x)),
        sf=lambda x: float(law.sf(x)),
        label=spec.label,
        heavy_tailed=heavy,
    )


def empirical_tail(samples: Sequence[float], x: float, side: Union[Side, str]) -> float:
    """Exact counting tail of the empirical measure."""
    data = np.asarray(samples, dtype=float)
    if data.size == 0:
        raise ParameterDomainError("empirical_tail needs at least one sample")
    side = Side(side)
    right = int(np.count_nonzero(data > x)) / data.size
    left = int(np.count_nonzero(data < -x)) / data.size
    if side is Side.RIGHT:
        return right
    if side is Side.LEFT:
        return left
    return right + left


def empirical_oracle(samples: Sequence[float], label: Optional[str] = None) -> TailOracle:
    data = np.sort(np.asarray(samples, dtype=float))
    if data.size == 0:
        raise ParameterDomainError("empirical oracle needs at least one sample")
    n = data.size
    return TailOracle(
        cdf=lambda x: int(np.searchsorted(data, x, side="right")) / n,
        cdf_left=lambda x: int(np.searchsorted(data, x, side="left")) / n,
        sf=lambda x: (n - int(np.searchsorted(data, x, side="right"))) / n,
        label=label or f"empirical(n={n})",
    )


# ---------- Plans ----------


def _poly_from_entry(entry: Any) -> TrigPoly:
    if isinstance(entry, TrigPoly):
        return entry
    if isinstance(entry, str):
        return parse_kernel(entry)
    if isinstance(entry, dict):
        return TrigPoly(tuple(entry.get("cos") or ()), tuple(entry.get("sin") or ()))
    raise ParameterDomainError(f"cannot read a polynomial from {entry!r}")


def expand_case(case: Dict[str, Any]) -> List[Dict[str, Any]]:
    """Cartesian product of a plan case's grids; one dict per bound to compute.

    Grid keys are A, s, k and polys; F0plus, F0minus and k_max are passed
    through unchanged.
    """
    method = Method.parse(case["method"])
    axes: Dict[str, List[Any]] = {}
    for key in ("A", "s", "k"):
        if key in case:
            axes[key] = expand_grid_values(case[key])
    if "polys" in case:
        axes["poly"] = [_poly_from_entry(p) for p in case["polys"]]
    names = list(axes)
    entries = []
    for combo in itertools.product(*(axes[name] for name in names)):
        entry: Dict[str, Any] = {"method": method}
        entry.update(zip(names, combo))
        if "k" in entry:
            entry["k"] = int(entry["k"])
        for key in ("F0plus", "F0minus", "k_max"):
            if key in case:
                entry[key] = case[key]
        entries.append(entry)
    return entries


def expand_plan(cases: Sequence[Dict[str, Any]]) -> List[Dict[str, Any]]:
    return [entry for case in cases for entry in expand_case(case)]


# ---------- Validation ----------


@dataclass(frozen=True)
class Violation:
    method: str
    params: Dict[str, Any]
    bound: float
    truth: float
    deficit: float

    def to_json(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "params": self.params,
            "bound": self.bound,
            "truth": self.truth,
            "deficit": self.deficit,
        }


@dataclass
class ViolationReport:
    checked: int = 0
    violations: List[Violation] = field(default_factory=list)
    errors: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def extend(self, other: "ViolationReport") -> None:
        self.checked += other.checked
        self.violations.extend(other.violations)
        self.errors.extend(other.errors)

    def to_json(self) -> Dict[str, Any]:
        return {
            "checked": self.checked,
            "violations": [v.to_json() for v in self.violations],
            "errors": list(self.errors),
        }


def _describe_entry(entry: Dict[str, Any], distribution: str) -> Dict[str, Any]:
    params: Dict[str, Any] = {"distribution": distribution}
    for key, value in entry.items():
        if key == "method":
            continue
        params[key] = value.describe() if isinstance(value, TrigPoly) else value
    return params


def halve_bounds(bound: TailBound) -> TailBound:
    """Fault hook: a deliberately unsound bound."""
    return replace(bound, bound=0.5 * bound.bound, raw_bound=0.5 * bound.raw_bound)


def validate(
    cf: CharFn,
    oracle: TailOracle,
    plan: Sequence[Dict[str, Any]],
    bound_transform: Optional[BoundTransform] = None,
    opts: Optional[OptimizeOptions] = None,
) -> ViolationReport:
    """Compute every bound in an expanded plan and compare it with the exact tail."""
    report = ViolationReport()
    base = opts or OptimizeOptions()
    for entry in plan:
        method = Method.parse(entry["method"])
        params = _describe_entry(entry, cf.label)
        entry_opts = replace(
            base,
            F0plus=entry.get("F0plus", base.F0plus),
            F0minus=entry.get("F0minus", base.F0minus),
            k_max=entry.get("k_max", base.k_max),
        )
        try:
            result = compute_bound(
                cf, method, A=entry.get("A"), s=entry.get("s"),
                k=entry.get("k"), poly=entry.get("poly"), opts=entry_opts,
            )
        except TailBoundError as exc:
            logger.warning("%s %s failed: %s", method.value, params, exc)
            report.errors.append({"method": method.value, "params": params, "error": str(exc)})
            continue
        if bound_transform is not None:
            result = bound_transform(result)
        truth = oracle.tail(result.side, result.threshold)
        report.checked += 1
        if result.bound + SOUNDNESS_SLACK < truth:
            params.update(threshold=result.threshold, s_used=result.s_used)
            report.violations.append(
                Violation(
                    method=method.value,
                    params=params,
                    bound=result.bound,
                    truth=truth,
                    deficit=truth - result.bound,
                )
            )
    logger.info(
        "validated %s: %d checked, %d violations, %d errors",
        cf.label, report.checked, len(report.violations), len(report.errors),
    )
    return report


def tail_is_monotone(oracle: TailOracle, grid: Sequence[float]) -> bool:
    values = np.array([oracle.cdf(float(x)) for x in grid])
    return bool(np.all(np.diff(values) >= 0.0))


def limits_ok(oracle: TailOracle, far: float = 1e6, tol: float = 1e-9) -> bool:
    """cdf(-far) and 1 - cdf(far) within tol of 0; heavy-tailed laws are exempt."""
    if oracle.heavy_tailed:
        return True
    return oracle.cdf(-far) <= tol and 1.0 - oracle.cdf(far) <= tol and not math.isnan(oracle.cdf(0.0))
