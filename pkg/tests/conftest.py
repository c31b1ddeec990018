from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hypercover.geometry import affine_plane, complete_uniform, projective_plane
from hypercover.hypercore import Hypergraph, is_connected

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_connected_hypergraph(rng: np.random.Generator, n_max: int = 10,
                                size_max: int = 4, extra_max: int = 4) -> Hypergraph:
    """A random connected hypergraph: a random edge tree over the vertices plus a few extra edges."""
    n = int(rng.integers(2, n_max + 1))
    order = [int(v) for v in rng.permutation(n)]
    edges = []
    covered = [order[0]]
    rest = order[1:]
    while rest:
        take = int(rng.integers(1, min(size_max - 1, len(rest)) + 1))
        new, rest = rest[:take], rest[take:]
        anchor = covered[int(rng.integers(len(covered)))]
        edges.append(sorted([anchor, *new]))
        covered.extend(new)
    for _ in range(int(rng.integers(0, extra_max + 1))):
        size = int(rng.integers(2, min(size_max, n) + 1))
        edges.append(sorted(int(v) for v in rng.choice(n, size=size, replace=False)))
    H = Hypergraph.from_edges(n, edges)
    assert is_connected(H)
    return H


@st.composite
def connected_hypergraphs(draw, n_max: int = 7, size_max: int = 3, extra_max: int = 3):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected_hypergraph(np.random.default_rng(seed), n_max, size_max, extra_max)


@pytest.fixture
def k34() -> Hypergraph:
    return complete_uniform(3)


@pytest.fixture
def fano() -> Hypergraph:
    return projective_plane(2)


@pytest.fixture
def ag22() -> Hypergraph:
    return affine_plane(2)


@pytest.fixture
def ag23() -> Hypergraph:
    return affine_plane(3)


@pytest.fixture
def edge3() -> Hypergraph:
    return Hypergraph(3, ((0, 1, 2),))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
