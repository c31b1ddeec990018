from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypercover.geometry import affine_plane, complete_uniform, projective_plane
from hypercover.hypercore import Hypergraph, HypergraphError
from hypercover.matchpoly import (
    Graph,
    cycle,
    incidence_bipartite_graph,
    matching_polynomial,
    matching_roots,
    max_matching_size,
    mu_tau,
    path,
    verify_expected_laplacian,
    verify_godsil_gutman,
    verify_signing_root_bound,
)
from hypercover.polys import IntPoly
from hypercover.spectra import char_poly

K2 = Graph(2, ((0, 1),))
K13 = Graph(4, ((0, 1), (0, 2), (0, 3)))


def test_matching_polynomial_examples():
    assert matching_polynomial(K2).match_counts == (1, 1)
    assert str(matching_polynomial(K2)) == "poly 1 0 -1"
    assert matching_polynomial(K13).to_intpoly() == IntPoly((1, 0, -3, 0, 0))
    assert matching_polynomial(cycle(3)).to_intpoly() == IntPoly((1, 0, -3, 0))


def test_empty_graph():
    assert matching_polynomial(Graph(3, ())).to_intpoly() == IntPoly((1, 0, 0, 0))
    assert matching_roots(matching_polynomial(Graph(2, ()))) == [0.0, 0.0]


def test_size_budget():
    with pytest.raises(HypergraphError):
        matching_polynomial(path(41))


def test_matching_roots_examples():
    assert matching_roots(IntPoly((1, 0, -1))) == pytest.approx([1, -1])
    assert matching_roots(IntPoly((1, 0, -3, 0, 0))) == pytest.approx([math.sqrt(3), 0, 0, -math.sqrt(3)], abs=1e-12)
    roots = matching_roots(matching_polynomial(incidence_bipartite_graph(complete_uniform(3))))
    assert len(roots) == 8
    assert roots[0] <= 2 * math.sqrt(2) + 1e-9


def test_k34_incidence_matching_counts():
    mp = matching_polynomial(incidence_bipartite_graph(complete_uniform(3)))
    assert str(mp) == "poly 1 0 -12 0 42 0 -44 0 9"


def test_mu_tau_examples(edge3, k34, ag22):
    assert mu_tau(edge3) == pytest.approx(math.sqrt(3), abs=1e-12)
    assert mu_tau(k34) > 0
    assert 0 < mu_tau(ag22) <= math.sqrt(3) + 1e-9


def test_mu_tau_rejects_irregular():
    with pytest.raises(HypergraphError):
        mu_tau(Hypergraph(4, ((0, 1, 2), (2, 3))))


def test_max_matching_examples():
    assert max_matching_size(K13, [1, 2, 3]) == 1
    for H, tau in ((complete_uniform(3), 4), (affine_plane(3), 9)):
        assert max_matching_size(incidence_bipartite_graph(H), range(H.n)) == tau


def test_max_matching_rejects_non_bipartite():
    with pytest.raises(HypergraphError):
        max_matching_size(cycle(3), [0])


def test_godsil_gutman_examples():
    assert verify_godsil_gutman(K2)
    assert verify_godsil_gutman(cycle(3))
    assert verify_godsil_gutman(incidence_bipartite_graph(complete_uniform(3)))


def test_c3_signed_char_polys():
    # psi_s = x^3 - 3x - 2 * (product of edge signs)
    for signs, c in (((1, 1, 1), -2), ((1, 1, -1), 2)):
        A = np.zeros((3, 3), dtype=np.int64)
        for (u, v), s in zip(cycle(3).edges, signs):
            A[u, v] = A[v, u] = s
        assert char_poly(A) == IntPoly((1, 0, -3, c))


def test_expected_laplacian_examples(edge3, k34):
    assert verify_expected_laplacian(Hypergraph(2, ((0, 1),)))
    assert verify_expected_laplacian(edge3)
    assert verify_expected_laplacian(k34)


def test_root_bound_c3():
    w = verify_signing_root_bound(cycle(3), 1)
    assert w.at_most_value == pytest.approx(1.0)
    assert w.at_most_value <= math.sqrt(3) <= w.at_least_value
    assert math.prod(w.at_most.signs) == -1


def test_root_bound_k2_and_star(edge3):
    w = verify_signing_root_bound(K2, 1)
    assert w.at_most_value == pytest.approx(1.0) and w.matching_root == pytest.approx(1.0)
    w = verify_signing_root_bound(incidence_bipartite_graph(edge3), 1)
    assert w.at_most_value <= math.sqrt(3) + 1e-9


@pytest.mark.parametrize("H", [complete_uniform(3), affine_plane(2), affine_plane(3), projective_plane(2)])
def test_biregular_matching_root_bounds(H):
    d, r = H.degrees[0], len(H.edges[0])
    tau = min(H.n, H.num_edges)
    B = incidence_bipartite_graph(H)
    assert max_matching_size(B, range(H.n)) == tau
    roots = matching_roots(matching_polynomial(B))
    assert 0 < roots[tau - 1] <= max(math.sqrt(d), math.sqrt(r)) + 1e-9
    assert roots[0] <= math.sqrt(d - 1) + math.sqrt(r - 1) + 1e-9


@st.composite
def small_graphs(draw, bipartite=False):
    n = draw(st.integers(1, 9))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if bipartite:
        side = draw(st.lists(st.booleans(), min_size=n, max_size=n))
        pairs = [(u, v) for u, v in pairs if side[u] != side[v]]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=12)) if pairs else []
    return Graph(n, tuple(edges))


@given(small_graphs(bipartite=True))
def test_bipartite_roots_symmetric(G):
    roots = matching_roots(matching_polynomial(G))
    assert np.allclose(roots, [-x for x in reversed(roots)], atol=1e-9)


@given(small_graphs())
def test_counts_match_brute_force(G):
    from itertools import combinations

    counts = matching_polynomial(G).match_counts
    for k, m in enumerate(counts):
        brute = sum(
            1 for sub in combinations(G.edges, k)
            if len({v for e in sub for v in e}) == 2 * k
        )
        assert m == brute


@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_trees_match_char_poly(n, seed):
    rng = np.random.default_rng(seed)
    edges = tuple((int(rng.integers(0, v)), v) for v in range(1, n))
    T = Graph(n, edges)
    assert matching_polynomial(T).to_intpoly() == char_poly(T.adjacency())


@given(small_graphs())
def test_godsil_gutman_random(G):
    assert verify_godsil_gutman(G)
