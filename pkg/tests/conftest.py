from __future__ import annotations

import pytest

import cubelink.linkage_engine as linkage_engine


@pytest.fixture(autouse=True)
def self_checked_engine():
    """Validate every internal recursion level during tests."""
    old = linkage_engine.SELF_CHECK
    linkage_engine.SELF_CHECK = True
    yield
    linkage_engine.SELF_CHECK = old
