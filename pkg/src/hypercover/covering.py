"""Permutation voltage coverings of hypergraphs and incidence signings.

A voltage assignment attaches a permutation of ``range(k)`` to every incidence
``(u, e)``; it is read as the arc voltage from the edge to the vertex, and the
reverse arc carries the inverse.  The derived cover has vertices ``(u, i)`` and
edges ``(e, j) = {(u, perm[e, u][j]) : u in e}``.

Cover vertex ``(u, i)`` is stored at index ``u + i * n`` and cover edge
``(e, j)`` at index ``e + j * m`` (sheet-major blocks).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypercore import Hypergraph, HypergraphError, is_connected
from .rng import SplitMix64
from .spectra import (
    Spectrum,
    adjacency_matrix,
    herm_eigenvalues,
    incidence_adjacency,
    sym_eigenvalues,
)

__all__ = [
    "VoltageAssignment",
    "Signing",
    "CoverResult",
    "LiftResult",
    "derived_cover",
    "signed_incidence_matrix",
    "signed_adjacency",
    "signed_laplacian",
    "spectrum_contains",
    "spectra_equal",
    "verify_spectral_inclusion",
    "verify_spectral_union",
    "abelian_cyclic_lift",
    "switch_vertex",
    "switch_edge",
    "random_voltage",
    "random_signing",
    "parse_signing",
    "serialize_signing",
    "parse_voltage",
    "serialize_voltage",
]

SPECTRAL_TOL = 1e-7


@dataclass(frozen=True)
class VoltageAssignment:
    """One permutation (image array) per incidence, in canonical incidence order."""

    k: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        if self.k < 1:
            raise HypergraphError("fold count must be positive")
        target = list(range(self.k))
        for i, p in enumerate(perms):
            if sorted(p) != target:
                raise HypergraphError(f"voltage {i} is not a permutation of range({self.k})")

    @classmethod
    def identity(cls, H: Hypergraph, k: int) -> VoltageAssignment:
        return cls(k, (tuple(range(k)),) * H.num_incidences)

    def inverse(self, idx: int) -> tuple[int, ...]:
        """Voltage of the reverse (vertex -> edge) arc."""
        p = self.perms[idx]
        inv = [0] * self.k
        for j, image in enumerate(p):
            inv[image] = j
        return tuple(inv)


@dataclass(frozen=True)
class Signing:
    """A sign in {+1, -1} per incidence (or per graph edge)."""

    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (1, -1) for s in signs):
            raise HypergraphError("signs must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def all_positive(cls, m: int) -> Signing:
        return cls((1,) * m)

    @classmethod
    def from_bits(cls, bits) -> Signing:
        """Bit 1 is ``+``, bit 0 is ``-``."""
        return cls(tuple(1 if b else -1 for b in bits))

    def __len__(self) -> int:
        return len(self.signs)

    def to_voltage(self) -> VoltageAssignment:
        return VoltageAssignment(2, tuple((0, 1) if s > 0 else (1, 0) for s in self.signs))


@dataclass(frozen=True)
class CoverResult:
    cover: Hypergraph
    edge_labels: tuple[tuple[int, int], ...]
    k: int

    def project_vertex(self, x: int) -> int:
        return x % (self.cover.n // self.k)


@dataclass(frozen=True)
class LiftResult:
    lift: CoverResult
    voltage: VoltageAssignment
    pivot: int
    blocks: tuple[np.ndarray, ...]


def _check_length(H: Hypergraph, length: int, what: str) -> None:
    if length != H.num_incidences:
        raise HypergraphError(f"{what} has length {length}, hypergraph has {H.num_incidences} incidences")


def derived_cover(H: Hypergraph, phi: VoltageAssignment) -> CoverResult:
    _check_length(H, len(phi.perms), "voltage assignment")
    n, m, k = H.n, H.num_edges, phi.k
    index = H.incidence_index
    edges: list[tuple[int, ...]] = []
    labels: list[tuple[int, int]] = []
    for j in range(k):
        for e_idx, e in enumerate(H.edges):
            verts = sorted(u + phi.perms[index[(u, e_idx)]][j] * n for u in e)
            edges.append(tuple(verts))
            labels.append((e_idx, j))
    return CoverResult(Hypergraph(n * k, tuple(edges)), tuple(labels), k)


def signed_incidence_matrix(H: Hypergraph, s: Signing) -> np.ndarray:
    _check_length(H, len(s), "signing")
    Z = np.zeros((H.n, H.num_edges), dtype=np.int64)
    for (v, e), sign in zip(H.incidences, s.signs):
        Z[v, e] = sign
    return Z


def signed_adjacency(H: Hypergraph, s: Signing) -> np.ndarray:
    """Entry ``(u, v)`` sums ``s(u, e) * s(v, e)`` over edges containing both."""
    _check_length(H, len(s), "signing")
    A = np.zeros((H.n, H.n), dtype=np.int64)
    pos = 0
    for e in H.edges:
        signs = s.signs[pos:pos + len(e)]
        pos += len(e)
        for a, u in enumerate(e):
            for b, v in enumerate(e):
                if a != b:
                    A[u, v] += signs[a] * signs[b]
    return A


def signed_laplacian(H: Hypergraph, s: Signing) -> np.ndarray:
    Z = signed_incidence_matrix(H, s)
    Q = Z @ Z.T
    other = np.diag(H.degrees).astype(np.int64) + signed_adjacency(H, s)
    if not np.array_equal(Q, other):
        raise AssertionError("signed Laplacian mismatch between Z Z^T and D + A")
    return Q


def spectrum_contains(big, small, tol: float = SPECTRAL_TOL) -> bool:
    """Multiset containment of real values, matched greedily on sorted lists."""
    big = sorted(big)
    small = sorted(small)
    j = 0
    for x in small:
        while j < len(big) and big[j] < x - tol:
            j += 1
        if j == len(big) or big[j] > x + tol:
            return False
        j += 1
    return True


def spectra_equal(a, b, tol: float = SPECTRAL_TOL) -> bool:
    a, b = sorted(a), sorted(b)
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(a, b))


def _require_connected(H: Hypergraph) -> None:
    if not is_connected(H):
        raise HypergraphError("hypergraph is not connected")


def verify_spectral_inclusion(H: Hypergraph, phi: VoltageAssignment, tol: float = SPECTRAL_TOL) -> bool:
    _require_connected(H)
    cover = derived_cover(H, phi).cover
    return spectrum_contains(
        sym_eigenvalues(adjacency_matrix(cover)).values,
        sym_eigenvalues(adjacency_matrix(H)).values,
        tol,
    )


def verify_spectral_union(H: Hypergraph, s: Signing, tol: float = SPECTRAL_TOL) -> bool:
    _require_connected(H)
    cover = derived_cover(H, s.to_voltage()).cover
    old = sym_eigenvalues(adjacency_matrix(H)).values
    new = sym_eigenvalues(signed_adjacency(H, s)).values
    return spectra_equal(sym_eigenvalues(adjacency_matrix(cover)).values, old + new, tol)


def _cyclic_shift(k: int, power: int) -> tuple[int, ...]:
    return tuple((j + power) % k for j in range(k))


def abelian_cyclic_lift(H: Hypergraph, k: int, pivot: int = 0) -> LiftResult:
    """Lift with the k-cycle on a single incidence and identity voltages elsewhere.

    Also returns the ``k`` Hermitian blocks: the incidence-graph adjacency with the
    pivot entries replaced by ``exp(+-2 pi i j / k)``, whose spectra together make
    up the spectrum of the lifted incidence graph.
    """
    _require_connected(H)
    if k < 1:
        raise HypergraphError("fold count must be positive")
    if not 0 <= pivot < H.num_incidences:
        raise HypergraphError(f"pivot {pivot} is not an incidence index")
    perms = [tuple(range(k))] * H.num_incidences
    # vertex->edge arc carries (0 1 ... k-1); the stored edge->vertex voltage is its inverse
    perms[pivot] = _cyclic_shift(k, -1)
    phi = VoltageAssignment(k, tuple(perms))
    lift = derived_cover(H, phi)

    v0, e0 = H.incidences[pivot]
    base = incidence_adjacency(H).astype(complex)
    blocks = []
    for j in range(k):
        w = np.exp(2j * np.pi * j / k)
        block = base.copy()
        block[v0, H.n + e0] = w
        block[H.n + e0, v0] = np.conj(w)
        blocks.append(block)
    return LiftResult(lift, phi, pivot, tuple(blocks))


def block_spectrum(lift: LiftResult) -> Spectrum:
    vals: list[float] = []
    for block in lift.blocks:
        vals.extend(herm_eigenvalues(block).values)
    return Spectrum(tuple(vals))


def switch_vertex(H: Hypergraph, s: Signing, u: int) -> Signing:
    return Signing(tuple(-x if v == u else x for x, (v, _) in zip(s.signs, H.incidences)))


def switch_edge(H: Hypergraph, s: Signing, e: int) -> Signing:
    return Signing(tuple(-x if f == e else x for x, (_, f) in zip(s.signs, H.incidences)))


def random_signing(H: Hypergraph, rng: SplitMix64) -> Signing:
    return Signing.from_bits(rng.bits(H.num_incidences))


def random_voltage(H: Hypergraph, k: int, rng: SplitMix64) -> VoltageAssignment:
    return VoltageAssignment(k, tuple(tuple(rng.permutation(k)) for _ in range(H.num_incidences)))


# --- file formats -----------------------------------------------------------


def _content_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]


def parse_signing(text: bytes | str) -> Signing:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = _content_lines(text)
    if len(lines) < 2 or lines[0].split() != ["sg", "1"]:
        raise HypergraphError("signing file must start with 'sg 1'")
    head = lines[1].split()
    if len(head) != 2 or head[0] != "m" or not head[1].isdigit():
        raise HypergraphError("expected 'm <incidence count>'")
    m = int(head[1])
    symbols = lines[2].split() if len(lines) > 2 else []
    if len(symbols) != m or any(t not in "+-" for t in symbols):
        raise HypergraphError(f"expected {m} '+'/'-' symbols")
    return Signing(tuple(1 if t == "+" else -1 for t in symbols))


def serialize_signing(s: Signing) -> str:
    return f"sg 1\nm {len(s)}\n" + " ".join("+" if x > 0 else "-" for x in s.signs) + "\n"


def parse_voltage(text: bytes | str) -> VoltageAssignment:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = _content_lines(text)
    if len(lines) < 2 or lines[0].split() != ["vt", "1"]:
        raise HypergraphError("voltage file must start with 'vt 1'")
    head = lines[1].split()
    if len(head) != 2 or head[0] != "k" or not head[1].isdigit():
        raise HypergraphError("expected 'k <fold>'")
    k = int(head[1])
    perms = []
    for ln in lines[2:]:
        tokens = ln.split()
        if tokens[0] != "p" or len(tokens) != k + 1:
            raise HypergraphError(f"malformed permutation line {ln!r}")
        perms.append(tuple(int(t) for t in tokens[1:]))
    return VoltageAssignment(k, tuple(perms))


def serialize_voltage(phi: VoltageAssignment) -> str:
    lines = ["vt 1", f"k {phi.k}"]
    lines.extend("p " + " ".join(map(str, p)) for p in phi.perms)
    return "\n".join(lines) + "\n"
