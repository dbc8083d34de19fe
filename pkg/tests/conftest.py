"""
Shared fixtures for the blockalg tests.
"""
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from scalar import FieldContext, cyclotomic_context  # noqa: E402
from algebra import BlockAlgebra  # noqa: E402

CONFIG_DIR = ROOT / "config"


@pytest.fixture
def ctx_q():
    return FieldContext(("q",))


@pytest.fixture
def ctx_theta():
    return cyclotomic_context()


@pytest.fixture
def symbolic():
    """B(q) with q an indeterminate."""
    return BlockAlgebra.symbolic()


@pytest.fixture
def config_dir():
    return CONFIG_DIR


@pytest.fixture
def small_options():
    """Bounds small enough for the suites to run quickly."""
    return {"window": 5, "alpha_max": 2, "i_max": 3, "truncation": 10, "seed": 7}
