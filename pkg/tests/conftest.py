from __future__ import annotations

import pytest

from bipkit.harness.enumeration import bipartite_level


@pytest.fixture(scope="session")
def connected_levels() -> dict[int, list]:
    """Connected bipartite graphs up to isomorphism, 1..11 vertices."""
    return {n: bipartite_level(n, True) for n in range(1, 12)}


@pytest.fixture(scope="session")
def all_levels() -> dict[int, list]:
    """All bipartite graphs up to isomorphism, 1..8 vertices."""
    return {n: bipartite_level(n, False) for n in range(1, 9)}
