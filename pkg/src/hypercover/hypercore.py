"""Hypergraph data model, incidence structure, dual and the ``.hg`` text format."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "HypergraphError",
    "ParseError",
    "MalformedHeaderError",
    "VertexRangeError",
    "EdgeSizeError",
    "NonAscendingError",
    "Hypergraph",
    "IncidenceGraph",
    "RegularityReport",
    "parse_hypergraph",
    "serialize_hypergraph",
    "read_hypergraph",
    "write_hypergraph",
    "validate",
    "incidence_graph",
    "dual",
]


class HypergraphError(ValueError):
    """Base class for domain errors raised by this package."""


class ParseError(HypergraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedHeaderError(ParseError):
    pass


class VertexRangeError(ParseError):
    pass


class EdgeSizeError(ParseError):
    pass


class NonAscendingError(ParseError):
    pass


@dataclass(frozen=True)
class Hypergraph:
    """A finite hypergraph on vertices ``0..n-1`` with an ordered multiset of edges.

    Each edge is a strictly ascending tuple of at least two vertex indices.
    Duplicate edges are allowed and counted with multiplicity everywhere.
    """

    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        edges = tuple(tuple(int(v) for v in e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 0:
            raise HypergraphError("vertex count must be non-negative")
        for idx, e in enumerate(edges):
            if len(e) < 2:
                raise HypergraphError(f"edge {idx} has size {len(e)} < 2")
            if any(a >= b for a, b in zip(e, e[1:])):
                raise HypergraphError(f"edge {idx} is not strictly ascending: {e}")
            if e[0] < 0 or e[-1] >= self.n:
                raise HypergraphError(f"edge {idx} has a vertex outside [0, {self.n})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
        """Build from unsorted vertex collections; each edge is sorted."""
        return cls(n, tuple(tuple(sorted(e)) for e in edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return tuple(deg)

    @cached_property
    def incidences(self) -> tuple[tuple[int, int], ...]:
        """(vertex, edge index) pairs: edges in order, vertices ascending within an edge."""
        return tuple((v, i) for i, e in enumerate(self.edges) for v in e)

    @cached_property
    def incidence_index(self) -> dict[tuple[int, int], int]:
        return {inc: k for k, inc in enumerate(self.incidences)}

    @property
    def num_incidences(self) -> int:
        return len(self.incidences)

    def edge_sizes(self) -> tuple[int, ...]:
        return tuple(len(e) for e in self.edges)


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite vertex/edge incidence graph ``B_H``.

    Left nodes are the hypergraph vertices, right nodes the edge indices.
    """

    left: int
    right: int
    adjacency: tuple[tuple[int, int], ...]

    def left_degrees(self) -> list[int]:
        deg = [0] * self.left
        for v, _ in self.adjacency:
            deg[v] += 1
        return deg

    def right_degrees(self) -> list[int]:
        deg = [0] * self.right
        for _, e in self.adjacency:
            deg[e] += 1
        return deg

    def graph_edges(self) -> list[tuple[int, int]]:
        """Incidences as node pairs with edge nodes offset by ``left``."""
        return [(v, self.left + e) for v, e in self.adjacency]


@dataclass(frozen=True)
class RegularityReport:
    is_uniform: bool
    r: int | None
    is_regular: bool
    d: int | None
    is_connected: bool
    nu: int
    e: int
    tau: int

    @property
    def is_biregular(self) -> bool:
        return self.is_uniform and self.is_regular


def _components(n_nodes: int, pairs: Iterable[tuple[int, int]]) -> int:
    parent = list(range(n_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = n_nodes
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            count -= 1
    return count


def is_connected(H: Hypergraph) -> bool:
    """Walk-connectivity of the vertex set, computed on the incidence graph."""
    if H.n <= 1:
        return True
    if any(d == 0 for d in H.degrees):
        return False
    ig = incidence_graph(H)
    return _components(H.n + H.num_edges, ig.graph_edges()) == 1


def validate(H: Hypergraph) -> RegularityReport:
    sizes = set(H.edge_sizes())
    degs = set(H.degrees)
    uniform = len(sizes) == 1
    regular = len(degs) == 1
    return RegularityReport(
        is_uniform=uniform,
        r=next(iter(sizes)) if uniform else None,
        is_regular=regular,
        d=next(iter(degs)) if regular else None,
        is_connected=is_connected(H),
        nu=H.n,
        e=H.num_edges,
        tau=min(H.n, H.num_edges),
    )


def require_biregular(H: Hypergraph, *, connected: bool = True) -> tuple[int, int]:
    """Return ``(d, r)`` or raise if ``H`` is not (connected) regular and uniform."""
    rep = validate(H)
    if not rep.is_uniform:
        raise HypergraphError("hypergraph is not uniform")
    if not rep.is_regular:
        raise HypergraphError("hypergraph is not regular")
    if connected and not rep.is_connected:
        raise HypergraphError("hypergraph is not connected")
    return rep.d, rep.r  # type: ignore[return-value]


def incidence_graph(H: Hypergraph) -> IncidenceGraph:
    return IncidenceGraph(left=H.n, right=H.num_edges, adjacency=H.incidences)


def dual(H: Hypergraph) -> Hypergraph:
    """The dual hypergraph: vertices are the edges of ``H``, one edge per vertex of ``H``."""
    stars: list[list[int]] = [[] for _ in range(H.n)]
    for i, e in enumerate(H.edges):
        for v in e:
            stars[v].append(i)
    for v, star in enumerate(stars):
        if len(star) < 2:
            raise HypergraphError(f"vertex {v} has degree {len(star)} < 2; dual edge would be degenerate")
    return Hypergraph(H.num_edges, tuple(tuple(s) for s in stars))


def parse_hypergraph(text: bytes | str) -> Hypergraph:
    """Parse the ``.hg`` format.

    ``hg 1`` header, ``n <count>``, then one ``e v1 v2 ...`` line per edge.
    ``#`` lines are comments and blank lines are ignored.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    stage = 0
    n = 0
    edges: list[tuple[int, ...]] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if stage == 0:
            if tokens != ["hg", "1"]:
                raise MalformedHeaderError(lineno, f"expected 'hg 1', got {line!r}")
            stage = 1
        elif stage == 1:
            if len(tokens) != 2 or tokens[0] != "n" or not tokens[1].isdigit():
                raise MalformedHeaderError(lineno, f"expected 'n <count>', got {line!r}")
            n = int(tokens[1])
            stage = 2
        else:
            if tokens[0] != "e":
                raise MalformedHeaderError(lineno, f"expected an edge line, got {line!r}")
            try:
                verts = [int(t) for t in tokens[1:]]
            except ValueError:
                raise MalformedHeaderError(lineno, f"non-integer vertex in {line!r}") from None
            if len(verts) < 2:
                raise EdgeSizeError(lineno, f"edge of size {len(verts)} < 2")
            for v in verts:
                if not 0 <= v < n:
                    raise VertexRangeError(lineno, f"vertex {v} outside [0, {n})")
            if any(a >= b for a, b in zip(verts, verts[1:])):
                raise NonAscendingError(lineno, "vertices must be strictly ascending")
            edges.append(tuple(verts))
    if stage < 2:
        raise MalformedHeaderError(0, "missing header")
    return Hypergraph(n, tuple(edges))


def serialize_hypergraph(H: Hypergraph) -> str:
    lines = ["hg 1", f"n {H.n}"]
    lines.extend("e " + " ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def read_hypergraph(path) -> Hypergraph:
    with open(path, "rb") as fh:
        return parse_hypergraph(fh.read())


def write_hypergraph(H: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_hypergraph(H))


def hypergraph_from_pairs(n: int, pairs: Sequence[tuple[int, int]]) -> Hypergraph:
    """A simple graph viewed as a 2-uniform hypergraph."""
    return Hypergraph.from_edges(n, pairs)
