"""Characteristic functions: abstraction, closed-form catalog, empirical CFs."""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import stats

from errors import ParameterDomainError, SampleFormatError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
ComplexFn = Callable[[ArrayLike], ArrayLike]
RealFn = Callable[[ArrayLike], ArrayLike]
IntegralFn = Callable[[float, float], Tuple[complex, float]]

INF = math.inf
MOMENT_ORDERS = range(1, 16)
_CHUNK_ELEMENTS = 1 << 20
_EPS = float(np.finfo(float).eps)


def _scalar_or_array(values: np.ndarray, like: ArrayLike):
    return values.item() if np.ndim(like) == 0 else values


@dataclass(frozen=True)
class CharFn:
    """Characteristic function f(t) = E exp(itX) plus analyticity metadata.

    imag_axis_eval(u) returns f(iu) = E exp(-uX) and +inf where that
    expectation diverges.

    integral_eval(m, s), when present, returns the integral of f(m*u) over
    [0, s] for m >= 0 together with an absolute error bound. Bounds use it
    instead of quadrature.
    """

    eval: ComplexFn
    label: str
    imag_axis_eval: Optional[RealFn] = None
    analyticity_radius: float = 0.0
    lower_strip: float = 0.0
    upper_strip: float = 0.0
    prob_nonpositive: Optional[float] = None
    prob_negative: Optional[float] = None
    even_moments: Optional[Mapping[int, float]] = None
    integral_eval: Optional[IntegralFn] = None

    def __post_init__(self) -> None:
        for name in ("analyticity_radius", "lower_strip", "upper_strip"):
            if not getattr(self, name) >= 0:
                raise ParameterDomainError(f"{name} must be non-negative")
        radius = self.analyticity_radius
        if radius > 0 and (self.lower_strip < radius or self.upper_strip < radius):
            raise ParameterDomainError(
                "analyticity in |t| < R implies both strips of width at least R"
            )
        for name in ("prob_nonpositive", "prob_negative"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ParameterDomainError(f"{name} must be a probability, got {value}")
        if self.even_moments is not None and not isinstance(self.even_moments, MappingProxyType):
            object.__setattr__(self, "even_moments", MappingProxyType(dict(self.even_moments)))

    def real_part(self, t: ArrayLike) -> ArrayLike:
        return np.real(self.eval(t))

    def imag_part(self, t: ArrayLike) -> ArrayLike:
        return np.imag(self.eval(t))


# ---------- Catalog ----------

# family -> (parameter names, default parameters)
FAMILIES: Dict[str, Tuple[Tuple[str, ...], Tuple[float, ...]]] = {
    "point_mass": (("c",), (0.0,)),
    "normal": (("mu", "sigma"), (0.0, 1.0)),
    "cauchy": (("x0", "gamma"), (0.0, 1.0)),
    "laplace": (("mu", "b"), (0.0, 1.0)),
    "exponential": (("lambda",), (1.0,)),
    "uniform": (("lo", "hi"), (-1.0, 1.0)),
    "symmetric_stable": (("alpha", "scale"), (1.0, 1.0)),
    "linnik": (("alpha", "scale"), (2.0, 1.0)),
}


@dataclass(frozen=True)
class CatalogSpec:
    family: str
    params: Tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        family = self.family.strip().lower()
        if family not in FAMILIES:
            raise ParameterDomainError(
                f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}"
            )
        names, defaults = FAMILIES[family]
        params = tuple(float(p) for p in self.params) or defaults
        if len(params) != len(names):
            raise ParameterDomainError(
                f"{family} takes {len(names)} parameter(s) ({', '.join(names)}), got {len(params)}"
            )
        if not all(math.isfinite(p) for p in params):
            raise ParameterDomainError(f"{family} parameters must be finite")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", params)
        self._validate()

    def _validate(self) -> None:
        f, p = self.family, self.params
        if f in ("normal", "cauchy", "laplace") and p[1] <= 0:
            raise ParameterDomainError(f"{f}: scale parameter must be positive, got {p[1]}")
        if f == "exponential" and p[0] <= 0:
            raise ParameterDomainError(f"exponential: lambda must be positive, got {p[0]}")
        if f == "uniform" and not p[0] < p[1]:
            raise ParameterDomainError(f"uniform: need lo < hi, got {p[0]}, {p[1]}")
        if f in ("symmetric_stable", "linnik"):
            if not 0 < p[0] <= 2:
                raise ParameterDomainError(f"{f}: alpha must lie in (0, 2], got {p[0]}")
            if p[1] <= 0:
                raise ParameterDomainError(f"{f}: scale must be positive, got {p[1]}")

    @classmethod
    def parse(cls, text: str) -> "CatalogSpec":
        """`family:param1,param2`; parameters may be omitted for defaults."""
        family, _, rest = text.partition(":")
        items = [item.strip() for item in rest.split(",") if item.strip()]
        try:
            params = tuple(float(item) for item in items)
        except ValueError as exc:
            raise ParameterDomainError(f"bad distribution parameters in {text!r}") from exc
        return cls(family, params)

    @property
    def label(self) -> str:
        return f"{self.family}:{','.join(f'{p:g}' for p in self.params)}"

    @property
    def is_point_mass(self) -> bool:
        return self.family == "point_mass"

    def law(self):
        """Equivalent scipy.stats frozen law, or None when there is no closed form."""
        f, p = self.family, self.params
        if f == "normal":
            return stats.norm(loc=p[0], scale=p[1])
        if f == "cauchy":
            return stats.cauchy(loc=p[0], scale=p[1])
        if f == "laplace":
            return stats.laplace(loc=p[0], scale=p[1])
        if f == "exponential":
            return stats.expon(scale=1.0 / p[0])
        if f == "uniform":
            return stats.uniform(loc=p[0], scale=p[1] - p[0])
        if f == "symmetric_stable" and p[0] == 1.0:
            return stats.cauchy(loc=0.0, scale=p[1])
        if f == "symmetric_stable" and p[0] == 2.0:
            return stats.norm(loc=0.0, scale=p[1] * math.sqrt(2.0))
        if f == "linnik" and p[0] == 2.0:
            return stats.laplace(loc=0.0, scale=p[1])
        return None


def _moments_from_law(law) -> Mapping[int, float]:
    return {k: float(law.moment(2 * k)) for k in MOMENT_ORDERS}


def _sinhc(x: np.ndarray) -> np.ndarray:
    """sinh(x)/x with the removable singularity filled in."""
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, x)
    with np.errstate(over="ignore"):
        return np.where(small, 1.0 + x * x / 6.0, np.sinh(safe) / safe)


def _point_mass(c: float, label: str) -> CharFn:
    def f(t):
        t = np.asarray(t, dtype=float)
        return _scalar_or_array(np.exp(1j * c * t), t)

    def f_imag(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(over="ignore"):
            return _scalar_or_array(np.exp(-c * u), u)

    return CharFn(
        eval=f, label=label, imag_axis_eval=f_imag,
        analyticity_radius=INF, lower_strip=INF, upper_strip=INF,
        prob_nonpositive=1.0 if c <= 0 else 0.0,
        prob_negative=1.0 if c < 0 else 0.0,
        even_moments={k: c ** (2 * k) for k in MOMENT_ORDERS},
    )


def _normal(mu: float, sigma: float, label: str, law) -> CharFn:
    def f(t):
        t = np.asarray(t, dtype=float)
        return _scalar_or_array(np.exp(1j * mu * t - 0.5 * (sigma * t) ** 2), t)

    def f_imag(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(over="ignore"):
            return _scalar_or_array(np.exp(-mu * u + 0.5 * (sigma * u) ** 2), u)

    return CharFn(
        eval=f, label=label, imag_axis_eval=f_imag,
        analyticity_radius=INF, lower_strip=INF, upper_strip=INF,
        even_moments=_moments_from_law(law),
        **_probabilities_at_zero(law),
    )


def _cauchy(x0: float, gamma: float, label: str, law) -> CharFn:
    def f(t):
        t = np.asarray(t, dtype=float)
        return _scalar_or_array(np.exp(1j * x0 * t - gamma * np.abs(t)), t)

    return CharFn(eval=f, label=label, **_probabilities_at_zero(law))


def _laplace(mu: float, b: float, label: str, law) -> CharFn:
    def f(t):
        t = np.asarray(t, dtype=float)
        return _scalar_or_array(np.exp(1j * mu * t) / (1.0 + (b * t) ** 2), t)

    def f_imag(u):
        u = np.asarray(u, dtype=float)
        inside = np.abs(b * u) < 1.0
        with np.errstate(over="ignore", divide="ignore"):
            value = np.where(inside, np.exp(-mu * u) / (1.0 - (b * u) ** 2), INF)
        return _scalar_or_array(value, u)

    radius = 1.0 / b
    return CharFn(
        eval=f, label=label, imag_axis_eval=f_imag,
        analyticity_radius=radius, lower_strip=radius, upper_strip=radius,
        even_moments=_moments_from_law(law),
        **_probabilities_at_zero(law),
    )


def _exponential(lam: float, label: str, law) -> CharFn:
    def f(t):
        t = np.asarray(t, dtype=float)
        return _scalar_or_array(lam / (lam - 1j * t), t)

    def f_imag(u):
        # E exp(-uX) is finite for u > -lambda
        u = np.asarray(u, dtype=float)
        with np.errstate(divide="ignore"):
            value = np.where(u > -lam, lam / np.maximum(lam + u, 0.0), INF)
        return _scalar_or_array(value, u)

    return CharFn(
        eval=f, label=label, imag_axis_eval=f_imag,
        analyticity_radius=lam, lower_strip=lam, upper_strip=INF,
        prob_nonpositive=0.0, prob_negative=0.0,
        even_moments=_moments_from_law(law),
    )


def _uniform(lo: float, hi: float, label: str, law) -> CharFn:
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)

    def f(t):
        t = np.asarray(t, dtype=float)
        return _scalar_or_array(np.exp(1j * mid * t) * np.sinc(half * t / np.pi), t)

    def f_imag(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(over="ignore", invalid="ignore"):
            value = np.exp(-mid * u) * _sinhc(half * u)
        return _scalar_or_array(np.where(np.isnan(value), INF, value), u)

    return CharFn(
        eval=f, label=label, imag_axis_eval=f_imag,
        analyticity_radius=INF, lower_strip=INF, upper_strip=INF,
        even_moments=_moments_from_law(law),
        **_probabilities_at_zero(law),
    )


def _symmetric_stable(alpha: float, scale: float, label: str, law) -> CharFn:
    def f(t):
        t = np.asarray(t, dtype=float)
        return _scalar_or_array(np.exp(-np.abs(scale * t) ** alpha) + 0j, t)

    if alpha == 2.0:
        def f_imag(u):
            u = np.asarray(u, dtype=float)
            with np.errstate(over="ignore"):
                return _scalar_or_array(np.exp((scale * u) ** 2), u)

        return CharFn(
            eval=f, label=label, imag_axis_eval=f_imag,
            analyticity_radius=INF, lower_strip=INF, upper_strip=INF,
            prob_nonpositive=0.5, prob_negative=0.5,
            even_moments=_moments_from_law(law),
        )
    return CharFn(eval=f, label=label, prob_nonpositive=0.5, prob_negative=0.5)


def _linnik(alpha: float, scale: float, label: str, law) -> CharFn:
    def f(t):
        t = np.asarray(t, dtype=float)
        return _scalar_or_array(1.0 / (1.0 + np.abs(scale * t) ** alpha) + 0j, t)

    if alpha == 2.0:
        def f_imag(u):
            u = np.asarray(u, dtype=float)
            inside = np.abs(scale * u) < 1.0
            with np.errstate(divide="ignore"):
                value = np.where(inside, 1.0 / (1.0 - (scale * u) ** 2), INF)
            return _scalar_or_array(value, u)

        radius = 1.0 / scale
        return CharFn(
            eval=f, label=label, imag_axis_eval=f_imag,
            analyticity_radius=radius, lower_strip=radius, upper_strip=radius,
            prob_nonpositive=0.5, prob_negative=0.5,
            even_moments=_moments_from_law(law),
        )
    return CharFn(eval=f, label=label, prob_nonpositive=0.5, prob_negative=0.5)


def _probabilities_at_zero(law) -> Dict[str, float]:
    # every family routed here is continuous, so F(+0) = F(-0)
    p = float(law.cdf(0.0))
    return {"prob_nonpositive": p, "prob_negative": p}


def make_catalog_cf(spec: CatalogSpec) -> CharFn:
    """Closed-form CF with its analyticity metadata."""
    p, label, law = spec.params, spec.label, spec.law()
    if spec.family == "point_mass":
        return _point_mass(p[0], label)
    if spec.family == "normal":
        return _normal(p[0], p[1], label, law)
    if spec.family == "cauchy":
        return _cauchy(p[0], p[1], label, law)
    if spec.family == "laplace":
        return _laplace(p[0], p[1], label, law)
    if spec.family == "exponential":
        return _exponential(p[0], label, law)
    if spec.family == "uniform":
        return _uniform(p[0], p[1], label, law)
    if spec.family == "symmetric_stable":
        return _symmetric_stable(p[0], p[1], label, law)
    return _linnik(p[0], p[1], label, law)


# ---------- Empirical CFs ----------


def _as_sample_array(samples: Iterable[float]) -> np.ndarray:
    x = np.asarray(list(samples), dtype=float)
    if x.size == 0:
        raise ParameterDomainError("empirical CF needs at least one sample")
    if not np.all(np.isfinite(x)):
        raise ParameterDomainError("samples must be finite")
    return x


def _empirical_mean(kernel: Callable[[np.ndarray], np.ndarray], t: np.ndarray, x: np.ndarray) -> np.ndarray:
    """(1/n) sum_j kernel(t * x_j), accumulated over sample chunks to bound memory."""
    chunk = max(1, _CHUNK_ELEMENTS // max(t.size, 1))
    total = None
    for start in range(0, x.size, chunk):
        part = kernel(np.multiply.outer(t, x[start:start + chunk])).sum(axis=-1)
        total = part if total is None else total + part
    return total / x.size


def empirical_cf(samples: Sequence[float], label: Optional[str] = None) -> CharFn:
    """CF of the empirical measure (1/n) sum_j delta_{x_j}."""
    x = _as_sample_array(samples)
    n = x.size

    def f(t):
        t = np.asarray(t, dtype=float)
        return _scalar_or_array(_empirical_mean(lambda tx: np.exp(1j * tx), t, x), t)

    def f_imag(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(over="ignore"):
            value = _empirical_mean(lambda ux: np.exp(-ux), u, x)
        return _scalar_or_array(value, u)

    def f_integral(m: float, s: float) -> Tuple[complex, float]:
        # int_0^s exp(i m u x) du = s sinc(a) + i s (1 - cos a)/a with a = m s x
        if m < 0 or s < 0:
            raise ParameterDomainError(f"integral needs m >= 0 and s >= 0, got m={m}, s={s}")
        a = np.asarray(float(m) * float(s))
        re = _empirical_mean(lambda ax: np.sinc(ax / np.pi), a, x)
        im = _empirical_mean(lambda ax: 0.5 * ax * np.sinc(ax / (2.0 * np.pi)) ** 2, a, x)
        return complex(s * float(re), s * float(im)), (8.0 + n) * _EPS * s

    return CharFn(
        eval=f, label=label or f"empirical(n={n})", imag_axis_eval=f_imag,
        analyticity_radius=INF, lower_strip=INF, upper_strip=INF,
        prob_nonpositive=int(np.count_nonzero(x <= 0)) / n,
        prob_negative=int(np.count_nonzero(x < 0)) / n,
        even_moments={k: float(np.mean(x ** (2 * k))) for k in MOMENT_ORDERS},
        integral_eval=f_integral,
    )


def load_samples(path: str) -> List[float]:
    """Read one number per line (with `#` comments) or a one-column CSV headed `x`."""
    if not os.path.exists(path):
        raise SampleFormatError(f"sample file not found: {path}")
    values: List[float] = []
    with open(path, "r", encoding="utf-8-sig") as f:
        lines = f.read().splitlines()

    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen and not values and line.strip('"').lower() == "x":
            header_seen = True
            continue
        try:
            value = float(line.rstrip(","))
        except ValueError as exc:
            raise SampleFormatError(f"{path}:{lineno}: not a number: {line!r}") from exc
        if not math.isfinite(value):
            raise SampleFormatError(f"{path}:{lineno}: non-finite value {line!r}")
        values.append(value)

    if not values:
        raise SampleFormatError(f"{path}: no samples found")
    logger.debug("loaded %d samples from %s", len(values), path)
    return values


# ---------- Self checks ----------


@dataclass(frozen=True)
class SelfCheckReport:
    passed: bool
    worst_violation: float
    worst_t: Optional[float]
    worst_check: Optional[str]


def cf_self_check(cf: CharFn, grid: Sequence[float], tol: float) -> SelfCheckReport:
    """Normalisation, |f| <= 1 and Hermitian symmetry on the grid."""
    if not tol > 0:
        raise ParameterDomainError("tol must be positive")
    t = np.asarray(grid, dtype=float)
    checks = []

    at_zero = abs(complex(cf.eval(0.0)) - 1.0)
    checks.append(("normalization", at_zero - tol, 0.0))

    values = np.asarray(cf.eval(t), dtype=complex)
    if t.size:
        excess = np.abs(values) - (1.0 + tol)
        i = int(np.argmax(excess))
        checks.append(("modulus", float(excess[i]), float(t[i])))

        mirrored = np.asarray(cf.eval(-t), dtype=complex)
        asym = np.abs(mirrored - np.conj(values)) - tol
        i = int(np.argmax(asym))
        checks.append(("hermitian", float(asym[i]), float(t[i])))

    name, worst, where = max(checks, key=lambda c: c[1])
    passed = worst <= 0.0
    if not passed:
        logger.warning("CF %s failed %s check at t=%g (excess %.3g)", cf.label, name, where, worst)
    return SelfCheckReport(
        passed=passed,
        worst_violation=max(worst, 0.0),
        worst_t=where if not passed else None,
        worst_check=name if not passed else None,
    )
