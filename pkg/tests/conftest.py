#!/usr/bin/env python3
"""Pytest configuration"""

import sys
from pathlib import Path

import pytest

# Add project root to path
ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(ROOT))

from parasol.exprlang import parse  # noqa: E402
from parasol.manifold import (  # noqa: E402
    FieldBundle,
    SolitonParams,
    TensorParams,
    builtin_flat,
    builtin_potential,
    standard_structure,
    symmetric_metric,
)

FIX_POT_PHI = "x1*y1 + x2*y2 + x1^2*y1^2"


def fix_2d() -> FieldBundle:
    """n = 2 chart with g_xy = 1 + x y."""
    return FieldBundle(
        n=2,
        coordinates=("x", "y"),
        metric=symmetric_metric(2, {(0, 1): parse("1 + x*y")}),
        structure=standard_structure(2),
    )


def pytest_configure(config):
    """Configure pytest"""
    config.addinivalue_line(
        "markers",
        "slow: marks tests as slow (deselect with '-m \"not slow\"')",
    )


@pytest.fixture
def specs_dir() -> Path:
    return ROOT / "specs"


@pytest.fixture
def flat4():
    return builtin_flat(2)


@pytest.fixture
def fix_pot():
    return builtin_potential(2, parse(FIX_POT_PHI))


@pytest.fixture
def fix_sol():
    """Flat n=4 with V = x1 d/dx1 - y1 d/dy1, lambda = 1/4, p = -1."""
    return builtin_flat(
        2,
        soliton=SolitonParams(lam=0.25, p=-1.0),
        tensor_params=TensorParams(alpha=1.0, beta=0.25, a=1.0, b=1.0),
        vector_field=[parse("x1"), parse("0"), parse("-y1"), parse("0")],
    )
