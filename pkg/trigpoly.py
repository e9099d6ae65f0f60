"""Non-negative trigonometric polynomials and finite differences.

A polynomial is P(theta) = sum_j a_j cos(j theta) + sum_j b_j sin(j theta)
with a = (a_0, ..., a_k) and b = (b_1, ..., b_k).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
from scipy.special import comb

from errors import ParameterDomainError
from search import golden_section
from settings import get_settings

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

MAX_SIN_POWER = 15


@dataclass(frozen=True)
class TrigPoly:
    cos_coeffs: Tuple[float, ...]
    sin_coeffs: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        cos_coeffs = tuple(float(c) for c in self.cos_coeffs)
        sin_coeffs = tuple(float(c) for c in self.sin_coeffs)
        if not cos_coeffs:
            raise ParameterDomainError("a trigonometric polynomial needs at least a_0")
        if not all(math.isfinite(c) for c in cos_coeffs + sin_coeffs):
            raise ParameterDomainError("trigonometric polynomial coefficients must be finite")
        object.__setattr__(self, "cos_coeffs", cos_coeffs)
        object.__setattr__(self, "sin_coeffs", sin_coeffs)

    @property
    def a0(self) -> float:
        return self.cos_coeffs[0]

    @property
    def degree(self) -> int:
        nonzero = [j for j, a in enumerate(self.cos_coeffs) if a != 0.0]
        nonzero += [j + 1 for j, b in enumerate(self.sin_coeffs) if b != 0.0]
        return max(nonzero, default=0)

    def cos_terms(self) -> List[Tuple[int, float]]:
        """(j, a_j) for j >= 1 with a_j != 0."""
        return [(j, a) for j, a in enumerate(self.cos_coeffs) if j > 0 and a != 0.0]

    def sin_terms(self) -> List[Tuple[int, float]]:
        """(j, b_j) with b_j != 0."""
        return [(j + 1, b) for j, b in enumerate(self.sin_coeffs) if b != 0.0]

    def describe(self) -> dict:
        return {"cos": list(self.cos_coeffs), "sin": list(self.sin_coeffs)}

    @classmethod
    def from_strings(cls, cos_text: str, sin_text: Optional[str] = None) -> "TrigPoly":
        """Parse CLI lists such as `--cos 1,-1 --sin ""`."""
        return cls(_parse_list(cos_text, "cos"), _parse_list(sin_text or "", "sin"))


def _parse_list(text: str, name: str) -> Tuple[float, ...]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    try:
        return tuple(float(item) for item in items)
    except ValueError as exc:
        raise ParameterDomainError(f"--{name} expects comma-separated numbers, got {text!r}") from exc


def eval_poly(p: TrigPoly, theta: ArrayLike) -> ArrayLike:
    """Evaluate P at theta (scalar or array)."""
    theta_arr = np.asarray(theta, dtype=float)
    a = np.asarray(p.cos_coeffs)
    result = np.cos(np.multiply.outer(theta_arr, np.arange(a.size))) @ a
    if p.sin_coeffs:
        b = np.asarray(p.sin_coeffs)
        result = result + np.sin(np.multiply.outer(theta_arr, np.arange(1, b.size + 1))) @ b
    return float(result) if np.ndim(result) == 0 else result


@dataclass(frozen=True)
class NonnegativityCheck:
    min_estimate: float
    argmin: float
    ok: bool


def check_nonnegative(p: TrigPoly, tol: float = 0.0) -> NonnegativityCheck:
    """Dense grid over [0, 2pi) followed by golden-section refinement at the grid minimum."""
    if tol < 0:
        raise ParameterDomainError("tol must be non-negative")
    cfg = get_settings().nonnegativity
    count = cfg.points_per_degree * (p.degree + 1)
    step = 2.0 * math.pi / count
    grid = np.arange(count) * step
    values = eval_poly(p, grid)
    i = int(np.argmin(values))
    theta, value = float(grid[i]), float(values[i])

    refined_theta, refined_value = golden_section(
        lambda t: eval_poly(p, t), theta - step, theta + step, tol=cfg.refine_width
    )
    if refined_value < value:
        theta, value = refined_theta % (2.0 * math.pi), refined_value
    return NonnegativityCheck(min_estimate=value, argmin=theta, ok=value >= -tol)


def sin_power_coeffs(k: int) -> TrigPoly:
    """Cosine expansion of sin^(2k)(theta)."""
    if not (isinstance(k, (int, np.integer)) and 1 <= k <= MAX_SIN_POWER):
        raise ParameterDomainError(f"k must be an integer in [1, {MAX_SIN_POWER}], got {k!r}")
    scale = 4.0 ** k
    a = [0.0] * (2 * k + 1)
    a[0] = comb(2 * k, k, exact=True) / scale
    for j in range(k):
        a[2 * (k - j)] = 2.0 * (-1) ** (k - j) * comb(2 * k, j, exact=True) / scale
    return TrigPoly(tuple(a))


def fejer_coeffs(n: int) -> TrigPoly:
    """Fejer kernel 1 + 2 sum_{j<=n} (1 - j/(n+1)) cos(j theta)."""
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ParameterDomainError(f"Fejer order must be a positive integer, got {n!r}")
    a = [1.0] + [2.0 * (1.0 - j / (n + 1)) for j in range(1, n + 1)]
    return TrigPoly(tuple(a))


def parse_kernel(text: str) -> TrigPoly:
    """`sin2k:<k>` or `fejer:<n>`."""
    name, _, arg = text.partition(":")
    try:
        order = int(arg)
    except ValueError as exc:
        raise ParameterDomainError(f"kernel order must be an integer, got {text!r}") from exc
    name = name.strip().lower()
    if name == "sin2k":
        return sin_power_coeffs(order)
    if name == "fejer":
        return fejer_coeffs(order)
    raise ParameterDomainError(f"unknown kernel {name!r}; expected sin2k or fejer")


def central_difference(
    g: Callable[[ArrayLike], ArrayLike], u: ArrayLike, order2k: int
) -> ArrayLike:
    """sum_{j=0}^{2k} (-1)^j C(2k, j) g((j - k) u); vectorised over u."""
    if order2k < 2 or order2k % 2:
        raise ParameterDomainError(f"difference order must be even and >= 2, got {order2k}")
    k = order2k // 2
    u_arr = np.asarray(u, dtype=float)
    total = np.zeros_like(u_arr)
    for j in range(order2k + 1):
        weight = (-1) ** j * comb(order2k, j, exact=True)
        total = total + weight * np.asarray(g((j - k) * u_arr), dtype=float)
    return float(total) if np.ndim(total) == 0 else total
