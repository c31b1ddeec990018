"""Ramanujan intervals, eigenvalue labelling, certificates and universal-cover radii."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .covering import Signing, signed_adjacency
from .hypercore import Hypergraph, HypergraphError, is_connected, require_biregular, validate
from .spectra import Spectrum, _clean, adjacency_matrix, sym_eigenvalues

__all__ = [
    "EPS",
    "MATCH_TOL",
    "RamanujanInterval",
    "LabeledGroup",
    "RamanujanCertificate",
    "CoveringCertificate",
    "RadiusEstimate",
    "AlonBoppanaReport",
    "ramanujan_interval",
    "classify_eigenvalues",
    "certify",
    "certify_covering",
    "certify_covering_spectrum",
    "universal_cover_radius",
    "ball_radius_estimate",
    "alon_boppana_report",
]

EPS = 1e-8        # slack granted to both bound comparisons
MATCH_TOL = 1e-6  # distance for recognising the trivial and obvious values
BALL_BUDGET = 200_000

TRIVIAL, OBVIOUS, PASS, FAIL_LOW, FAIL_HIGH = "trivial", "obvious", "pass", "fail_low", "fail_high"


@dataclass(frozen=True)
class RamanujanInterval:
    d: int
    r: int
    lo: float
    hi: float
    trivial: float
    obvious: float


def ramanujan_interval(d: int, r: int) -> RamanujanInterval:
    if d < 1 or r < 2:
        raise HypergraphError("need d >= 1 and r >= 2")
    half = 2.0 * math.sqrt((d - 1) * (r - 1))
    return RamanujanInterval(d, r, r - 2 - half, r - 2 + half, float(d * (r - 1)), float(-d))


@dataclass(frozen=True)
class LabeledGroup:
    value: float
    multiplicity: int
    label: str


def _label_values(values, iv: RamanujanInterval, trivial_budget: int, obvious_budget: int,
                  eps: float = EPS) -> list[str]:
    labels = [""] * len(values)
    if trivial_budget:
        dist = [abs(v - iv.trivial) for v in values]
        best = min(range(len(values)), key=dist.__getitem__, default=None)
        if best is None or dist[best] > MATCH_TOL:
            raise HypergraphError(f"no eigenvalue within {MATCH_TOL} of the trivial value {iv.trivial}")
        labels[best] = TRIVIAL
    if obvious_budget:
        near = sorted(
            (abs(v - iv.obvious), i) for i, v in enumerate(values)
            if not labels[i] and abs(v - iv.obvious) <= MATCH_TOL
        )
        for _, i in near[:obvious_budget]:
            labels[i] = OBVIOUS
    for i, v in enumerate(values):
        if labels[i]:
            continue
        if v < iv.lo - eps:
            labels[i] = FAIL_LOW
        elif v > iv.hi + eps:
            labels[i] = FAIL_HIGH
        else:
            labels[i] = PASS
    return labels


def _group_labels(spec: Spectrum, labels: list[str]) -> list[LabeledGroup]:
    out: list[LabeledGroup] = []
    start = 0
    for value, mult in spec.groups:
        chunk = labels[start:start + mult]
        start += mult
        for lab in dict.fromkeys(chunk):
            out.append(LabeledGroup(value, chunk.count(lab), lab))
    return out


def classify_eigenvalues(H: Hypergraph, spec: Spectrum | None = None) -> list[LabeledGroup]:
    """Label the spectrum of a connected (d, r)-regular hypergraph.

    The eigenvalue nearest ``d(r-1)`` is trivial; up to ``max(0, nu - e)``
    values at ``-d`` are obvious; everything else is checked against the band.
    """
    d, r = require_biregular(H)
    if spec is None:
        spec = sym_eigenvalues(adjacency_matrix(H))
    iv = ramanujan_interval(d, r)
    labels = _label_values(spec.values, iv, 1, max(0, H.n - H.num_edges))
    return _group_labels(spec, labels)


def _verdict(right: bool, left: bool) -> str:
    if right and left:
        return "full"
    if right:
        return "right_only"
    if left:
        return "left_only"
    return "none"


@dataclass(frozen=True)
class RamanujanCertificate:
    verdict: str
    interval: RamanujanInterval
    labeled: tuple[LabeledGroup, ...]
    tolerance: float = EPS

    @property
    def right(self) -> bool:
        return self.verdict in ("full", "right_only")

    @property
    def left(self) -> bool:
        return self.verdict in ("full", "left_only")

    def format(self) -> str:
        iv = self.interval
        lines = [
            f"verdict {self.verdict}",
            f"interval {_clean(iv.lo):.9f} {_clean(iv.hi):.9f}",
            f"trivial {_clean(iv.trivial):.9f}",
        ]
        lines += [f"eig {_clean(g.value):.9f} x{g.multiplicity} {g.label}" for g in self.labeled]
        return "\n".join(lines) + "\n"


def certify(H: Hypergraph) -> RamanujanCertificate:
    d, r = require_biregular(H)
    labeled = classify_eigenvalues(H)
    right = not any(g.label == FAIL_HIGH for g in labeled)
    left = not any(g.label == FAIL_LOW for g in labeled)
    return RamanujanCertificate(_verdict(right, left), ramanujan_interval(d, r), tuple(labeled))


@dataclass(frozen=True)
class CoveringCertificate:
    """Verdicts for a 2-cover, judged on its new eigenvalues only."""

    base_spectrum: Spectrum
    new_spectrum: Spectrum
    interval: RamanujanInterval
    labeled: tuple[LabeledGroup, ...]
    right: bool
    left: bool
    tolerance: float = EPS

    @property
    def full(self) -> bool:
        return self.right and self.left

    def passes(self, side: str) -> bool:
        if side == "right":
            return self.right
        if side == "left":
            return self.left
        if side == "full":
            return self.full
        raise HypergraphError(f"unknown side {side!r}")

    def format(self) -> str:
        iv = self.interval
        lines = [
            f"covering right={'true' if self.right else 'false'} "
            f"left={'true' if self.left else 'false'} full={'true' if self.full else 'false'}",
            f"interval {_clean(iv.lo):.9f} {_clean(iv.hi):.9f}",
            f"trivial {_clean(iv.trivial):.9f}",
        ]
        lines += [f"eig {_clean(g.value):.9f} x{g.multiplicity} {g.label}" for g in self.labeled]
        return "\n".join(lines) + "\n"


def certify_covering_spectrum(H: Hypergraph, new: Spectrum, base: Spectrum | None = None,
                              dr: tuple[int, int] | None = None) -> CoveringCertificate:
    """Certificate from an already computed new spectrum (the signed adjacency spectrum)."""
    d, r = dr if dr is not None else require_biregular(H)
    iv = ramanujan_interval(d, r)
    labels = _label_values(new.values, iv, 0, max(0, H.n - H.num_edges))
    labeled = _group_labels(new, labels)
    right = FAIL_HIGH not in labels
    left = FAIL_LOW not in labels
    if base is None:
        base = sym_eigenvalues(adjacency_matrix(H))
    return CoveringCertificate(base, new, iv, tuple(labeled), right, left)


def certify_covering(H: Hypergraph, s: Signing) -> CoveringCertificate:
    """New eigenvalues of the 2-cover defined by ``s`` are those of the signed adjacency.

    Right-sided: every new eigenvalue is at most the upper band edge.  Left-sided:
    every non-obvious new eigenvalue is at least the lower band edge, with up to
    ``max(0, nu - e)`` values at ``-d`` counted as obvious.
    """
    dr = require_biregular(H)
    new = sym_eigenvalues(signed_adjacency(H, s))
    return certify_covering_spectrum(H, new, dr=dr)


# ---------------------------------------------------------------------------
# universal cover
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RadiusEstimate:
    estimate: float
    exact: float | None
    depth: int | None = None
    nodes: int | None = None


def _ball_adjacency(H: Hypergraph, depth: int, root: int, budget: int) -> sparse.csr_matrix:
    incident: list[list[int]] = [[] for _ in range(H.n)]
    for idx, e in enumerate(H.edges):
        for v in e:
            incident[v].append(idx)
    base = [root]
    groups: list[list[int]] = []
    frontier: list[tuple[int, int]] = [(0, -1)]
    total = 1
    for _ in range(depth):
        nxt: list[tuple[int, int]] = []
        for x, via in frontier:
            v = base[x]
            for e in incident[v]:
                if e == via:
                    continue
                grp = [x]
                for u in H.edges[e]:
                    if u != v:
                        grp.append(len(base))
                        base.append(u)
                        nxt.append((grp[-1], e))
                groups.append(grp)
                total += len(grp)
                if total > budget:
                    raise HypergraphError(f"universal-cover ball exceeds the node budget {budget}")
        frontier = nxt
    rows, cols = [], []
    for grp in groups:
        for a in grp:
            for b in grp:
                if a != b:
                    rows.append(a)
                    cols.append(b)
    n = len(base)
    data = np.ones(len(rows))
    return sparse.csr_matrix((data, (rows, cols)), shape=(n, n))


def _power_radius(A: sparse.csr_matrix, tol: float = 1e-14, max_iter: int = 200_000) -> float:
    """Perron root by power iteration on ``A + I`` (the shift removes bipartite oscillation)."""
    n = A.shape[0]
    if n == 1 or A.nnz == 0:
        return 0.0
    x = np.ones(n) / math.sqrt(n)
    rho = 0.0
    for _ in range(max_iter):
        y = A @ x
        new = float(x @ y)
        z = y + x
        x = z / np.linalg.norm(z)
        if abs(new - rho) <= tol * max(1.0, new):
            return new
        rho = new
    return rho


def ball_radius_estimate(H: Hypergraph, depth: int, *, root: int = 0,
                         budget: int = BALL_BUDGET) -> RadiusEstimate:
    """Spectral radius of the depth-``depth`` ball of the universal cover.

    Vertices of the ball are non-backtracking incidence-graph walks from ``root``
    that end at a vertex after at most ``depth`` edge steps; each edge node of the
    walk tree becomes a hyperedge on its parent and children.
    """
    if depth < 0:
        raise HypergraphError("depth must be non-negative")
    A = _ball_adjacency(H, depth, root, budget)
    return RadiusEstimate(_power_radius(A), None, depth, A.shape[0])


def universal_cover_radius(H: Hypergraph, depth: int = 12, *, budget: int = BALL_BUDGET) -> RadiusEstimate:
    """``r - 2 + 2 sqrt((d-1)(r-1))`` for (d, r)-regular input, else a truncated-ball estimate."""
    rep = validate(H)
    if not rep.is_connected:
        raise HypergraphError("hypergraph is not connected")
    if not rep.is_regular:
        raise HypergraphError("hypergraph is not regular")
    if rep.is_uniform:
        iv = ramanujan_interval(rep.d, rep.r)
        return RadiusEstimate(iv.hi, iv.hi)
    return ball_radius_estimate(H, depth, budget=budget)


@dataclass(frozen=True)
class AlonBoppanaReport:
    lambda2: float
    radius: float
    exact: bool
    gap: float

    def format(self) -> str:
        return (
            f"lambda2 {_clean(self.lambda2):.9f}\n"
            f"radius {_clean(self.radius):.9f} {'exact' if self.exact else 'estimate'}\n"
            f"gap {_clean(self.gap):.9f}\n"
        )


def alon_boppana_report(H: Hypergraph, depth: int = 12) -> AlonBoppanaReport:
    """Second eigenvalue next to the universal-cover radius (informational only)."""
    if not is_connected(H):
        raise HypergraphError("hypergraph is not connected")
    spec = sym_eigenvalues(adjacency_matrix(H))
    lam2 = spec.values[1] if len(spec) > 1 else spec.values[0]
    rad = universal_cover_radius(H, depth)
    return AlonBoppanaReport(lam2, rad.estimate, rad.exact is not None, rad.estimate - lam2)
