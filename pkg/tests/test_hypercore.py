from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

from conftest import connected_hypergraphs
from hypercover.geometry import affine_plane, complete_uniform, projective_plane
from hypercover.hypercore import (
    EdgeSizeError,
    Hypergraph,
    HypergraphError,
    MalformedHeaderError,
    NonAscendingError,
    ParseError,
    VertexRangeError,
    dual,
    incidence_graph,
    parse_hypergraph,
    serialize_hypergraph,
    validate,
)
from hypercover.spectra import incidence_matrix


def test_parse_single_edge():
    H = parse_hypergraph(b"hg 1\nn 3\ne 0 1 2\n")
    assert H.n == 3 and H.edges == ((0, 1, 2),)


def test_parse_k34_file():
    text = "hg 1\n# K^3_4\nn 4\n\ne 0 1 2\ne 0 1 3\ne 0 2 3\ne 1 2 3\n"
    H = parse_hypergraph(text)
    assert H.num_edges == 4
    rep = validate(H)
    assert (rep.is_uniform, rep.r, rep.is_regular, rep.d) == (True, 3, True, 3)


def test_parse_preserves_edge_order():
    H = parse_hypergraph("hg 1\nn 4\ne 2 3\ne 0 1\ne 0 1\n")
    assert H.edges == ((2, 3), (0, 1), (0, 1))


@pytest.mark.parametrize("text, err, line", [
    ("hg 1\nn 2\ne 0 0\n", NonAscendingError, 3),
    ("hg 1\nn 3\ne 2 1\n", NonAscendingError, 3),
    ("hg 2\nn 2\n", MalformedHeaderError, 1),
    ("hg 1\nm 2\n", MalformedHeaderError, 2),
    ("hg 1\nn 2\ne 0 2\n", VertexRangeError, 3),
    ("hg 1\nn 2\n\ne 1\n", EdgeSizeError, 4),
])
def test_parse_errors_are_distinct(text, err, line):
    with pytest.raises(err) as info:
        parse_hypergraph(text)
    assert isinstance(info.value, ParseError)
    assert info.value.line == line


def test_constructor_rejects_bad_edges():
    with pytest.raises(HypergraphError):
        Hypergraph(3, ((0,),))
    with pytest.raises(HypergraphError):
        Hypergraph(3, ((1, 0),))
    with pytest.raises(HypergraphError):
        Hypergraph(2, ((0, 2),))


def test_validate_k34():
    rep = validate(complete_uniform(3))
    assert (rep.r, rep.d, rep.is_connected, rep.nu, rep.e, rep.tau) == (3, 3, True, 4, 4, 4)


def test_validate_ag23():
    rep = validate(affine_plane(3))
    assert (rep.r, rep.d, rep.is_connected, rep.nu, rep.e, rep.tau) == (3, 4, True, 9, 12, 9)


def test_validate_disconnected():
    rep = validate(Hypergraph(4, ((0, 1), (2, 3))))
    assert not rep.is_connected


def test_validate_non_uniform():
    rep = validate(Hypergraph(4, ((0, 1, 2), (2, 3))))
    assert not rep.is_uniform and rep.r is None and not rep.is_regular


def test_incidence_graph_star(edge3):
    ig = incidence_graph(edge3)
    assert ig.adjacency == ((0, 0), (1, 0), (2, 0))
    assert ig.right_degrees() == [3] and ig.left_degrees() == [1, 1, 1]


@pytest.mark.parametrize("H, dl, dr, m", [
    (complete_uniform(3), 3, 3, 12),
    (affine_plane(2), 3, 2, 12),
])
def test_incidence_graph_biregular(H, dl, dr, m):
    ig = incidence_graph(H)
    assert len(ig.adjacency) == m
    assert set(ig.left_degrees()) == {dl} and set(ig.right_degrees()) == {dr}


def test_dual_k34():
    D = dual(complete_uniform(3))
    rep = validate(D)
    assert (D.n, D.num_edges, rep.d, rep.r) == (4, 4, 3, 3)


def test_dual_fano():
    D = dual(projective_plane(2))
    rep = validate(D)
    assert (D.n, D.num_edges, rep.d, rep.r) == (7, 7, 3, 3)


def test_dual_rejects_degree_one(edge3):
    with pytest.raises(HypergraphError, match="vertex 0"):
        dual(edge3)


def test_dual_is_involution_on_incidence_matrix():
    H = affine_plane(3)
    assert np.array_equal(incidence_matrix(dual(dual(H))), incidence_matrix(H))
    assert np.array_equal(incidence_matrix(dual(H)), incidence_matrix(H).T)


@given(connected_hypergraphs())
def test_handshake(H):
    assert sum(H.degrees) == sum(H.edge_sizes()) == H.num_incidences


@given(connected_hypergraphs())
def test_serialize_round_trip(H):
    text = serialize_hypergraph(H)
    assert parse_hypergraph(text) == H
    assert not any(line != line.rstrip() for line in text.splitlines())


@given(connected_hypergraphs())
def test_dual_swaps_incidence_sides(H):
    if min(H.degrees) < 2:
        return
    D = dual(H)
    a, b = incidence_graph(H), incidence_graph(D)
    assert sorted(a.left_degrees()) == sorted(b.right_degrees())
    assert sorted(a.right_degrees()) == sorted(b.left_degrees())
    assert sorted((e, v) for v, e in a.adjacency) == sorted(b.adjacency)
