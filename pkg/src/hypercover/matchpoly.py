"""Matching polynomials, their real roots, bipartite matchings and the
signed-adjacency averaging identities."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .covering import Signing, signed_laplacian
from .hypercore import Hypergraph, HypergraphError, require_biregular
from .polys import IntPoly, real_roots
from .spectra import char_poly, jacobi_eigenvalues

__all__ = [
    "Graph",
    "path",
    "cycle",
    "MatchingPolynomial",
    "incidence_bipartite_graph",
    "matching_polynomial",
    "matching_roots",
    "mu_tau",
    "max_matching_size",
    "signed_graph_adjacency",
    "verify_godsil_gutman",
    "verify_expected_laplacian",
    "verify_signing_root_bound",
]

MAX_VERTICES = 40
MAX_SIGNED_EDGES = 20
MAX_WITNESS_EDGES = 16


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple((min(int(u), int(v)), max(int(u), int(v))) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for u, v in edges:
            if u == v:
                raise HypergraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise HypergraphError(f"edge {(u, v)} out of range")
            if (u, v) in seen:
                raise HypergraphError(f"duplicate edge {(u, v)}")
            seen.add((u, v))

    def neighbours(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1
        return A


def path(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def incidence_bipartite_graph(H: Hypergraph) -> Graph:
    """``B_H`` as a simple graph: vertices first, then edge nodes offset by ``H.n``."""
    return Graph(H.n + H.num_edges, tuple((v, H.n + e) for v, e in H.incidences))


@dataclass(frozen=True)
class MatchingPolynomial:
    """``sum_i (-1)^i m_i x^(n-2i)`` with ``m_i`` the number of i-matchings."""

    n: int
    match_counts: tuple[int, ...]

    def to_intpoly(self) -> IntPoly:
        coeffs = [0] * (self.n + 1)
        for i, m in enumerate(self.match_counts):
            coeffs[2 * i] = (-1) ** i * m
        return IntPoly(tuple(coeffs))

    def __str__(self) -> str:
        return str(self.to_intpoly())


def _bfs_order(G: Graph) -> list[int]:
    adj = G.neighbours()
    order: list[int] = []
    seen = [False] * G.n
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for v in sorted(adj[u]):
                if not seen[v]:
                    seen[v] = True
                    queue.append(v)
    return order


def matching_polynomial(G: Graph) -> MatchingPolynomial:
    """Exact matching counts from ``mu_G = x mu_{G-u} - sum_{v~u} mu_{G-u-v}``.

    Sub-problems are induced subgraphs, keyed by the bitmask of surviving
    vertices after relabelling in BFS order (which keeps the live frontier narrow).
    """
    if G.n > MAX_VERTICES:
        raise HypergraphError(f"matching polynomial limited to {MAX_VERTICES} vertices")
    order = _bfs_order(G)
    pos = {v: i for i, v in enumerate(order)}
    nbr_mask = [0] * G.n
    for u, v in G.edges:
        a, b = pos[u], pos[v]
        nbr_mask[a] |= 1 << b
        nbr_mask[b] |= 1 << a

    memo: dict[int, tuple[int, ...]] = {0: (1,)}

    def counts(mask: int) -> tuple[int, ...]:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        u = low.bit_length() - 1
        rest = mask ^ low
        acc = list(counts(rest))
        nb = nbr_mask[u] & rest
        while nb:
            bit = nb & -nb
            nb ^= bit
            sub = counts(rest ^ bit)
            if len(acc) < len(sub) + 1:
                acc.extend([0] * (len(sub) + 1 - len(acc)))
            for i, c in enumerate(sub):
                acc[i + 1] += c
        res = tuple(acc)
        memo[mask] = res
        return res

    return MatchingPolynomial(G.n, counts((1 << G.n) - 1))


def matching_roots(p: MatchingPolynomial | IntPoly, tol: float = 1e-12) -> list[float]:
    """All real roots, descending, with multiplicity."""
    poly = p.to_intpoly() if isinstance(p, MatchingPolynomial) else p
    roots = real_roots(poly, tol)
    if len(roots) != poly.degree:
        raise HypergraphError(f"found {len(roots)} real roots for a degree-{poly.degree} polynomial")
    for r in roots:
        scale = sum(abs(c) * max(1.0, abs(r)) ** (poly.degree - i) for i, c in enumerate(poly.coeffs))
        if abs(float(poly(r))) > 1e-6 * scale:
            raise HypergraphError(f"residual at root {r} exceeds tolerance")
    return roots


def mu_tau(H: Hypergraph) -> float:
    """The ``min(nu, e)``-th largest root of the incidence-graph matching polynomial."""
    require_biregular(H, connected=False)
    tau = min(H.n, H.num_edges)
    roots = matching_roots(matching_polynomial(incidence_bipartite_graph(H)))
    return roots[tau - 1]


def max_matching_size(G: Graph, left) -> int:
    """Maximum matching of a bipartite graph by augmenting paths.

    ``left`` lists the vertices of one side; every edge must cross sides.
    """
    left = set(left)
    adj = G.neighbours()
    for u, v in G.edges:
        if (u in left) == (v in left):
            raise HypergraphError(f"edge {(u, v)} does not cross the bipartition")
    match_of = {}

    def augment(u: int, visited: set[int]) -> bool:
        for v in adj[u]:
            if v in visited:
                continue
            visited.add(v)
            if v not in match_of or augment(match_of[v], visited):
                match_of[v] = u
                return True
        return False

    return sum(1 for u in sorted(left) if augment(u, set()))


def signed_graph_adjacency(G: Graph, s: Signing) -> np.ndarray:
    if len(s) != len(G.edges):
        raise HypergraphError("signing length does not match edge count")
    A = np.zeros((G.n, G.n), dtype=np.int64)
    for (u, v), x in zip(G.edges, s.signs):
        A[u, v] = A[v, u] = x
    return A


def _all_signings(m: int):
    for bits in product((1, -1), repeat=m):
        yield Signing(bits)


def verify_godsil_gutman(G: Graph) -> bool:
    """Sum of signed characteristic polynomials equals ``2^m`` times the matching polynomial."""
    m = len(G.edges)
    if m > MAX_SIGNED_EDGES:
        raise HypergraphError(f"signing enumeration limited to {MAX_SIGNED_EDGES} edges")
    total = IntPoly((0,))
    for s in _all_signings(m):
        total = total + char_poly(signed_graph_adjacency(G, s))
    return total == matching_polynomial(G).to_intpoly() * (2**m)


def verify_expected_laplacian(H: Hypergraph) -> bool:
    """``x^nu mu_{B_H}(x)`` against the incidence-signing average of ``x^e psi_Q(x^2)``."""
    m = H.num_incidences
    if m > MAX_SIGNED_EDGES:
        raise HypergraphError(f"signing enumeration limited to {MAX_SIGNED_EDGES} incidences")
    total = IntPoly((0,))
    for s in _all_signings(m):
        total = total + char_poly(signed_laplacian(H, s))
    lhs = matching_polynomial(incidence_bipartite_graph(H)).to_intpoly().shift(H.n) * (2**m)
    rhs = total.compose_square().shift(H.num_edges)
    return lhs == rhs


@dataclass(frozen=True)
class RootBoundWitness:
    index: int
    matching_root: float
    at_most: Signing
    at_most_value: float
    at_least: Signing
    at_least_value: float


def verify_signing_root_bound(G: Graph, index: int, slack: float = 1e-9) -> RootBoundWitness:
    """Find signings whose ``index``-th largest eigenvalue lies below and above the
    ``index``-th largest matching root (exhaustive, first hit in enumeration order)."""
    m = len(G.edges)
    if m > MAX_WITNESS_EDGES:
        raise HypergraphError(f"witness search limited to {MAX_WITNESS_EDGES} edges")
    if not 1 <= index <= G.n:
        raise HypergraphError(f"index must lie in [1, {G.n}]")
    target = matching_roots(matching_polynomial(G))[index - 1]
    low = high = None
    for s in _all_signings(m):
        lam = float(jacobi_eigenvalues(signed_graph_adjacency(G, s))[index - 1])
        if low is None and lam <= target + slack:
            low = (s, lam)
        if high is None and lam >= target - slack:
            high = (s, lam)
        if low and high:
            break
    if low is None or high is None:
        raise HypergraphError("no witness signing found; the eigen/matching computations disagree")
    return RootBoundWitness(index, target, low[0], low[1], high[0], high[1])
