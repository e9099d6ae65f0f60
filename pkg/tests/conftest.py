"""Pytest configuration and shared fixtures"""

import sys
import tempfile
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from cf_core import CatalogSpec, make_catalog_cf  # noqa: E402
from settings import RELTOL_ENV_VAR, get_settings  # noqa: E402


@pytest.fixture
def temp_workspace():
    """Create a temporary workspace directory for testing."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def config_dir():
    """Return the path to the repository config directory."""
    return Path(__file__).parent.parent / "config"


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Every test starts from the checked-in defaults without env overrides."""
    monkeypatch.delenv(RELTOL_ENV_VAR, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def catalog():
    """Build a catalog CF from a `family:params` string."""
    def _make(text):
        return make_catalog_cf(CatalogSpec.parse(text))
    return _make


@pytest.fixture
def cauchy_cf(catalog):
    return catalog("cauchy:0,1")


@pytest.fixture
def normal_cf(catalog):
    return catalog("normal:0,1")


@pytest.fixture
def exponential_cf(catalog):
    return catalog("exponential:1")


@pytest.fixture
def uniform_cf(catalog):
    return catalog("uniform:-1,1")


@pytest.fixture
def sample_file(temp_workspace):
    """A 200-point standard normal sample with a comment header and blank lines."""
    rng = np.random.default_rng(7)
    values = rng.standard_normal(200)
    lines = ["# standard normal, seed 7", ""]
    lines += [repr(float(v)) for v in values]
    lines.append("")
    path = temp_workspace / "samples.txt"
    path.write_text("\n".join(lines))
    return path


@pytest.fixture
def empty_sample_file(temp_workspace):
    path = temp_workspace / "empty.txt"
    path.write_text("# nothing here\n\n")
    return path
