"""Configuration layer: YAML defaults, environment overrides, verification plans."""

from __future__ import annotations

import logging
import os
import sys
from dataclasses import dataclass, field, fields, replace
from functools import lru_cache
from typing import Any, Dict, List, Optional

import numpy as np
import yaml

logger = logging.getLogger(__name__)

RELTOL_ENV_VAR = "CF_TAILBOUND_QUAD_RELTOL"
INSTALLED_CONFIG_NAME = "cf_tailbound_config"


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_evaluations: int = 1_000_000


@dataclass(frozen=True)
class NonnegativitySettings:
    tol: float = 1e-9
    points_per_degree: int = 1024
    refine_width: float = 1e-10


@dataclass(frozen=True)
class OptimizerSettings:
    grid_points: int = 64
    golden_iterations: int = 30
    k_max: int = 8
    max_exponent: float = 700.0
    imag_axis_cap: float = 1e300
    grid_floor: float = 1e-4


@dataclass(frozen=True)
class CertifySettings:
    grid_points: int = 64
    s_max: float = 200.0
    tol: float = 1e-6


@dataclass(frozen=True)
class OutputSettings:
    significant_digits: int = 12


@dataclass(frozen=True)
class Settings:
    quadrature: QuadratureSettings = field(default_factory=QuadratureSettings)
    nonnegativity: NonnegativitySettings = field(default_factory=NonnegativitySettings)
    optimizer: OptimizerSettings = field(default_factory=OptimizerSettings)
    certify: CertifySettings = field(default_factory=CertifySettings)
    output: OutputSettings = field(default_factory=OutputSettings)


def get_config_dir() -> str:
    """
    Resolve the config directory.
    Tries local ./config first (for development), then installed location.
    """
    script_dir = os.path.dirname(os.path.abspath(__file__))
    config_dir = os.path.join(script_dir, "config")
    if os.path.isdir(config_dir):
        return config_dir

    # data_files installs to sys.prefix/cf_tailbound_config
    installed_config = os.path.join(sys.prefix, INSTALLED_CONFIG_NAME)
    if os.path.isdir(installed_config):
        return installed_config

    # Final fallback: the local path even if it doesn't exist
    return config_dir


def _read_yaml(path: str) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"{path}: top level must be a mapping")
    return data


def _merge_section(default: Any, overrides: Optional[Dict[str, Any]]) -> Any:
    if not overrides:
        return default
    known = {f.name: f.type for f in fields(default)}
    values = {}
    for key, value in overrides.items():
        if key not in known:
            logger.warning("Ignoring unknown setting '%s'", key)
            continue
        current = getattr(default, key)
        values[key] = type(current)(value)
    return replace(default, **values)


def _env_rel_tol(default: float) -> float:
    raw = os.environ.get(RELTOL_ENV_VAR)
    if not raw:
        return default
    try:
        value = float(raw)
    except ValueError:
        logger.warning("%s=%r is not a number; using %g", RELTOL_ENV_VAR, raw, default)
        return default
    if not (value > 0 and np.isfinite(value)):
        logger.warning("%s must be positive and finite; using %g", RELTOL_ENV_VAR, default)
        return default
    return value


def load_settings(config_dir: Optional[str] = None) -> Settings:
    """Load defaults.yaml and apply the environment override.

    Falls back to built-in defaults when the file is missing or unreadable so
    the library still works outside a checkout.
    """
    base = Settings()
    cfg_path = os.path.join(config_dir or get_config_dir(), "defaults.yaml")
    data: Dict[str, Any] = {}
    if os.path.exists(cfg_path):
        try:
            data = _read_yaml(cfg_path)
        except Exception as exc:
            logger.warning("Could not read %s (%s); using built-in defaults", cfg_path, exc)
            data = {}

    try:
        settings = Settings(
            quadrature=_merge_section(base.quadrature, data.get("quadrature")),
            nonnegativity=_merge_section(base.nonnegativity, data.get("nonnegativity")),
            optimizer=_merge_section(base.optimizer, data.get("optimizer")),
            certify=_merge_section(base.certify, data.get("certify")),
            output=_merge_section(base.output, data.get("output")),
        )
    except (TypeError, ValueError) as exc:
        logger.warning("Invalid value in %s (%s); using built-in defaults", cfg_path, exc)
        settings = base

    rel_tol = _env_rel_tol(settings.quadrature.rel_tol)
    return replace(settings, quadrature=replace(settings.quadrature, rel_tol=rel_tol))


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()


# ---------- Verification plans ----------


def expand_grid_values(spec: Any) -> List[Any]:
    """Turn a plan grid entry into a list of values."""
    if isinstance(spec, dict):
        if "linspace" in spec:
            a, b, n = spec["linspace"]
            return [float(v) for v in np.linspace(float(a), float(b), int(n))]
        if "geomspace" in spec:
            a, b, n = spec["geomspace"]
            return [float(v) for v in np.geomspace(float(a), float(b), int(n))]
        raise ValueError(f"Unknown grid generator: {sorted(spec)}")
    if isinstance(spec, list):
        return list(spec)
    return [spec]


def load_plan(path: Optional[str] = None, key: str = "plan") -> List[Dict[str, Any]]:
    """Load a verification plan; each case has a method and grid keys.

    `plan` holds catalog cases (each with `dist`); `empirical_plan` holds the
    cases run against a sample file.
    """
    plan_path = path or os.path.join(get_config_dir(), "verify_plan.yaml")
    data = _read_yaml(plan_path)
    cases = data.get(key) or []
    if not isinstance(cases, list):
        raise ValueError(f"{plan_path}: '{key}' must be a list")
    for case in cases:
        if "method" not in case:
            raise ValueError(f"{plan_path}: every case needs a method")
    return cases
