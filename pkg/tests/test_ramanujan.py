from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypercover.covering import Signing
from hypercover.geometry import affine_plane, complete_uniform, projective_plane
from hypercover.hypercore import Hypergraph, HypergraphError, dual, is_connected
from hypercover.matchpoly import cycle
from hypercover.ramanujan import (
    alon_boppana_report,
    ball_radius_estimate,
    certify,
    certify_covering,
    classify_eigenvalues,
    ramanujan_interval,
    universal_cover_radius,
)
from hypercover.spectra import Spectrum, adjacency_matrix, sym_eigenvalues

# 2-regular, edge sizes 2 and 3
MIXED = Hypergraph(6, ((0, 1, 2), (2, 3), (3, 4, 5), (0, 5), (1, 4)))


def _cycle_hg(n):
    return Hypergraph.from_edges(n, cycle(n).edges)


def _groups(labeled):
    return [(round(g.value, 9), g.multiplicity, g.label) for g in labeled]


def test_interval_examples():
    iv = ramanujan_interval(3, 3)
    assert (iv.lo, iv.hi, iv.trivial, iv.obvious) == (-3, 5, 6, -3)
    iv = ramanujan_interval(3, 2)
    assert iv.lo == pytest.approx(-2 * math.sqrt(2)) and iv.hi == pytest.approx(2 * math.sqrt(2))
    assert iv.trivial == 3
    iv = ramanujan_interval(6, 5)
    assert iv.lo == pytest.approx(3 - 2 * math.sqrt(20)) and iv.hi == pytest.approx(3 + 2 * math.sqrt(20))
    assert iv.trivial == 24


def test_interval_rejects_bad_parameters():
    with pytest.raises(HypergraphError):
        ramanujan_interval(0, 3)


@given(st.integers(2, 40), st.integers(2, 40))
def test_trivial_dominates_band(d, r):
    iv = ramanujan_interval(d, r)
    assert iv.lo <= iv.hi <= iv.trivial + 1e-12
    assert math.isclose(iv.trivial, iv.hi, abs_tol=1e-12) == ((d - 1) * (r - 1) == 1)


@given(st.integers(1, 40), st.integers(2, 40))
def test_closed_form_radius_identity(d, r):
    closed = ramanujan_interval(d, r).hi
    assert closed == pytest.approx((math.sqrt(d - 1) + math.sqrt(r - 1)) ** 2 - d, abs=1e-12)


def test_classify_examples():
    assert _groups(classify_eigenvalues(complete_uniform(3))) == [(6, 1, "trivial"), (-2, 3, "pass")]
    assert _groups(classify_eigenvalues(projective_plane(2))) == [(6, 1, "trivial"), (-1, 6, "pass")]
    assert _groups(classify_eigenvalues(affine_plane(3))) == [(8, 1, "trivial"), (-1, 8, "pass")]


def test_obvious_eigenvalues_when_more_vertices_than_edges():
    H = dual(affine_plane(2))  # (2,3)-regular, 6 vertices, 4 edges
    assert _groups(classify_eigenvalues(H)) == [(4, 1, "trivial"), (0, 3, "pass"), (-2, 2, "obvious")]


def test_obvious_budget_is_capped():
    H = dual(affine_plane(2))
    spec = Spectrum((4, 0, 0, -2, -2, -2))
    labels = _groups(classify_eigenvalues(H, spec))
    assert (-2, 2, "obvious") in labels and (-2, 1, "fail_low") in labels


def test_missing_trivial_is_an_error():
    H = complete_uniform(3)
    with pytest.raises(HypergraphError):
        classify_eigenvalues(H, Spectrum((5, -2, -2, -2)))


@pytest.mark.parametrize("H", [complete_uniform(3), affine_plane(2), affine_plane(3), affine_plane(4),
                               affine_plane(5), projective_plane(3)])
def test_certify_full(H):
    assert certify(H).verdict == "full"


def test_certificate_text():
    text = certify(complete_uniform(3)).format()
    assert text == (
        "verdict full\n"
        "interval -3.000000000 5.000000000\n"
        "trivial 6.000000000\n"
        "eig 6.000000000 x1 trivial\n"
        "eig -2.000000000 x3 pass\n"
    )


@pytest.mark.parametrize("H", [complete_uniform(3), complete_uniform(4), dual(affine_plane(2)),
                               projective_plane(2), affine_plane(3)])
def test_certificate_accounting(H):
    cert = certify(H)
    assert sum(g.label == "trivial" for g in cert.labeled) == 1
    assert sum(g.multiplicity for g in cert.labeled) == H.n
    assert sum(g.multiplicity for g in cert.labeled if g.label == "obvious") <= abs(H.n - H.num_edges)


def test_verdict_variants():
    # C_4 as a (2,2)-regular hypergraph: spectrum {2, 0, 0, -2} inside the band [-2, 2]
    assert certify(_cycle_hg(4)).verdict == "full"
    # a disconnected input is rejected rather than mislabelled
    with pytest.raises(HypergraphError):
        certify(Hypergraph(6, ((0, 1, 2), (0, 1, 2), (3, 4, 5), (3, 4, 5))))


def test_covering_all_positive_new_equals_old():
    H = complete_uniform(3)
    cert = certify_covering(H, Signing.all_positive(H.num_incidences))
    base = sym_eigenvalues(adjacency_matrix(H)).values
    assert np.allclose(cert.new_spectrum.values, base, atol=1e-9)
    assert len(cert.new_spectrum) == H.n
    # the copied Perron value d(r-1) = 6 is a new eigenvalue above the band
    assert not cert.right and cert.left


def test_covering_degenerate_single_edge(edge3):
    for bits in range(8):
        s = Signing.from_bits([(bits >> i) & 1 for i in range(3)])
        cert = certify_covering(edge3, s)
        assert np.allclose(cert.new_spectrum.values, [2, -1, -1], atol=1e-12)
        assert cert.interval.lo == cert.interval.hi == 1
        assert _groups(cert.labeled) == [(2, 1, "fail_high"), (-1, 2, "obvious")]
        assert cert.left and not cert.right


def test_covering_text_and_sides():
    H = complete_uniform(3)
    cert = certify_covering(H, Signing((-1,) + (1,) * 11))
    assert cert.passes("right") == cert.right
    assert cert.format().splitlines()[0].startswith("covering right=")
    with pytest.raises(HypergraphError):
        cert.passes("middle")


def test_radius_closed_forms():
    r = universal_cover_radius(complete_uniform(3))
    assert r.estimate == r.exact == 5
    r = universal_cover_radius(_cycle_hg(7))
    assert r.exact == pytest.approx(2.0)
    r = universal_cover_radius(affine_plane(2))  # (3,2): graph K_4
    assert r.exact == pytest.approx(2 * math.sqrt(2))


def test_radius_requires_regular_connected():
    with pytest.raises(HypergraphError):
        universal_cover_radius(Hypergraph(4, ((0, 1, 2), (2, 3))))
    with pytest.raises(HypergraphError):
        universal_cover_radius(Hypergraph(4, ((0, 1), (2, 3))))


def test_ball_estimate_for_mixed_sizes():
    assert is_connected(MIXED) and set(MIXED.degrees) == {2}
    r = universal_cover_radius(MIXED, 12)
    assert r.exact is None
    later = ball_radius_estimate(MIXED, 14).estimate
    assert abs(later - r.estimate) < 0.05


def test_ball_estimate_monotone_and_below_closed_form():
    H = complete_uniform(3)
    est = [ball_radius_estimate(H, L).estimate for L in range(0, 7)]
    assert all(b >= a - 1e-9 for a, b in zip(est, est[1:]))
    assert est[-1] <= 5 + 1e-9
    mixed = [ball_radius_estimate(MIXED, L).estimate for L in range(0, 12)]
    assert all(b >= a - 1e-9 for a, b in zip(mixed, mixed[1:]))


def test_ball_budget():
    with pytest.raises(HypergraphError, match="budget"):
        ball_radius_estimate(complete_uniform(3), 12, budget=1000)


def test_alon_boppana_k34():
    rep = alon_boppana_report(complete_uniform(3))
    assert rep.lambda2 == pytest.approx(-2) and rep.radius == 5 and rep.exact
    assert rep.gap == pytest.approx(7)
    assert rep.format().splitlines()[1] == "radius 5.000000000 exact"


def test_alon_boppana_cycle():
    rep = alon_boppana_report(_cycle_hg(50))
    assert rep.lambda2 == pytest.approx(2 * math.cos(2 * math.pi / 50), abs=1e-10)
    assert rep.radius == pytest.approx(2)


def _random_33(seed, n=60):
    rng = np.random.default_rng(seed)
    while True:
        stubs = rng.permutation(np.repeat(np.arange(n), 3)).reshape(-1, 3)
        if all(len(set(e)) == 3 for e in stubs):
            H = Hypergraph.from_edges(n, [[int(v) for v in e] for e in stubs])
            if is_connected(H):
                return H


def test_alon_boppana_random_33():
    # empirical, not a guarantee: lambda_2 of a 60-vertex random (3,3)-regular hypergraph
    rep = alon_boppana_report(_random_33(0))
    assert abs(rep.lambda2 - 5) <= 1.5
