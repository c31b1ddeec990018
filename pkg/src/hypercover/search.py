"""Searching for Ramanujan 2-coverings, covering towers and cyclic abelian lifts."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .covering import (
    Signing,
    abelian_cyclic_lift,
    block_spectrum,
    derived_cover,
    signed_adjacency,
    spectra_equal,
)
from .geometry import affine_plane, field as finite_field
from .hypercore import Hypergraph, HypergraphError, require_biregular
from .matchpoly import mu_tau
from .ramanujan import (
    CoveringCertificate,
    RamanujanCertificate,
    certify,
    certify_covering_spectrum,
)
from .rng import SplitMix64, words_per_draw
from .spectra import Spectrum, adjacency_matrix, incidence_adjacency, sym_eigenvalues

__all__ = [
    "MAX_FREE_SIGNS",
    "TOWER_TRIALS",
    "SearchConfig",
    "SearchResult",
    "SearchBudgetError",
    "TowerError",
    "LeftCondition",
    "TowerLevel",
    "AbelianLevel",
    "spanning_tree_incidences",
    "free_incidences",
    "signing_from_pattern",
    "search_cover",
    "left_condition",
    "build_tower",
    "abelian_tower",
]

MAX_FREE_SIGNS = 24
TOWER_TRIALS = 100_000
CHUNK = 256  # patterns per worker task in parallel sweeps
SIDES = ("right", "left", "full")
MODES = ("exhaustive", "random")


class SearchBudgetError(HypergraphError):
    pass


class TowerError(HypergraphError):
    def __init__(self, level: int, side: str, msg: str):
        self.level = level
        self.side = side
        super().__init__(f"level {level} ({side}): {msg}")


@dataclass(frozen=True)
class SearchConfig:
    side: str = "right"
    mode: str = "exhaustive"
    seed: int = 0
    trials: int = 1000
    reduce_switching: bool = True
    jobs: int = 1

    def __post_init__(self):
        if self.side not in SIDES:
            raise HypergraphError(f"side must be one of {SIDES}")
        if self.mode not in MODES:
            raise HypergraphError(f"mode must be one of {MODES}")
        if self.trials < 0 or self.jobs < 1:
            raise HypergraphError("trials must be >= 0 and jobs >= 1")


@dataclass(frozen=True)
class SearchResult:
    witness: Signing | None
    certificate: CoveringCertificate | None
    explored: int
    exhausted: bool
    free_signs: int = 0
    pattern: int | None = None  # free-sign pattern (exhaustive) or trial index (random)


def spanning_tree_incidences(H: Hypergraph) -> frozenset[int]:
    """Incidence indices of a BFS spanning tree of the incidence graph rooted at vertex 0."""
    by_vertex: list[list[int]] = [[] for _ in range(H.n)]
    by_edge: list[list[int]] = [[] for _ in range(H.num_edges)]
    for idx, (v, e) in enumerate(H.incidences):
        by_vertex[v].append(idx)
        by_edge[e].append(idx)
    seen_v = [False] * H.n
    seen_e = [False] * H.num_edges
    seen_v[0] = True
    tree: set[int] = set()
    queue: list[tuple[str, int]] = [("v", 0)]
    while queue:
        kind, x = queue.pop(0)
        for idx in (by_vertex[x] if kind == "v" else by_edge[x]):
            v, e = H.incidences[idx]
            if kind == "v" and not seen_e[e]:
                seen_e[e] = True
                tree.add(idx)
                queue.append(("e", e))
            elif kind == "e" and not seen_v[v]:
                seen_v[v] = True
                tree.add(idx)
                queue.append(("v", v))
    if not (all(seen_v) and all(seen_e)):
        raise HypergraphError("hypergraph is not connected")
    return frozenset(tree)


def free_incidences(H: Hypergraph, reduce_switching: bool = True) -> tuple[int, ...]:
    if not reduce_switching:
        return tuple(range(H.num_incidences))
    tree = spanning_tree_incidences(H)
    return tuple(i for i in range(H.num_incidences) if i not in tree)


def signing_from_pattern(m: int, free: tuple[int, ...], pattern: int) -> Signing:
    """Free incidence ``i`` takes bit ``f-1-i`` of ``pattern`` (1 is ``+``); the rest are ``+``.

    Numeric order on patterns is then lexicographic order on the free signs with ``-`` < ``+``.
    """
    f = len(free)
    signs = [1] * m
    for i, idx in enumerate(free):
        signs[idx] = 1 if (pattern >> (f - 1 - i)) & 1 else -1
    return Signing(tuple(signs))


def _signing_from_bits(m: int, free: tuple[int, ...], bits: list[int]) -> Signing:
    signs = [1] * m
    for idx, b in zip(free, bits):
        signs[idx] = 1 if b else -1
    return Signing(tuple(signs))


def _evaluate(H: Hypergraph, dr: tuple[int, int], s: Signing, side: str) -> CoveringCertificate | None:
    new = sym_eigenvalues(signed_adjacency(H, s))
    cert = certify_covering_spectrum(H, new, base=_EMPTY, dr=dr)
    return cert if cert.passes(side) else None


_EMPTY = Spectrum(())


def _scan_patterns(H, dr, free, side, start, stop):
    for x in range(start, stop):
        s = signing_from_pattern(H.num_incidences, free, x)
        if _evaluate(H, dr, s, side) is not None:
            return x
    return None


def _scan_trials(H, dr, free, side, seed, start, stop):
    words = words_per_draw(len(free))
    for t in range(start, stop):
        rng = SplitMix64(seed)
        rng.jump(t * words)
        s = _signing_from_bits(H.num_incidences, free, rng.bits(len(free)))
        if _evaluate(H, dr, s, side) is not None:
            return t
    return None


def _sweep(total: int, jobs: int, task, args) -> int | None:
    """First hit in ``range(total)``; parallel rounds of ``jobs`` chunks keep the answer order-exact."""
    if jobs == 1 or total <= CHUNK:
        return task(*args, 0, total)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        start = 0
        while start < total:
            bounds = []
            for _ in range(jobs):
                if start >= total:
                    break
                bounds.append((start, min(total, start + CHUNK)))
                start += CHUNK
            futures = [pool.submit(task, *args, a, b) for a, b in bounds]
            hits = [f.result() for f in futures]
            found = [h for h in hits if h is not None]
            if found:
                return min(found)
    return None


def search_cover(H: Hypergraph, cfg: SearchConfig) -> SearchResult:
    """Look for a signing whose 2-cover is Ramanujan on ``cfg.side``.

    Exhaustive mode returns the smallest free-sign pattern that passes; random mode
    returns the first passing trial, trial ``t`` reading its bits from SplitMix64
    seeded with ``seed`` and advanced by ``t`` draws.
    """
    dr = require_biregular(H)
    free = free_incidences(H, cfg.reduce_switching)
    f = len(free)
    m = H.num_incidences
    if cfg.mode == "exhaustive":
        if f > MAX_FREE_SIGNS:
            raise SearchBudgetError(f"{f} free signs exceed the exhaustive budget of {MAX_FREE_SIGNS}")
        total = 1 << f
        hit = _sweep(total, cfg.jobs, _scan_patterns, (H, dr, free, cfg.side))
        if hit is None:
            return SearchResult(None, None, total, True, f)
        s = signing_from_pattern(m, free, hit)
    else:
        total = cfg.trials
        hit = _sweep(total, cfg.jobs, _scan_trials, (H, dr, free, cfg.side, cfg.seed))
        if hit is None:
            return SearchResult(None, None, total, False, f)
        rng = SplitMix64(cfg.seed)
        rng.jump(hit * words_per_draw(f))
        s = _signing_from_bits(m, free, rng.bits(f))
    new = sym_eigenvalues(signed_adjacency(H, s))
    cert = certify_covering_spectrum(H, new, dr=dr)
    return SearchResult(s, cert, hit + 1, False, f, hit)


@dataclass(frozen=True)
class LeftCondition:
    holds: bool
    mu_tau: float
    threshold: float


def left_condition(H: Hypergraph) -> LeftCondition:
    """Compare the ``tau``-th matching root of the incidence graph with ``|sqrt(d-1) - sqrt(r-1)|``."""
    d, r = require_biregular(H, connected=False)
    mt = mu_tau(H)
    threshold = abs(math.sqrt(d - 1) - math.sqrt(r - 1))
    return LeftCondition(mt >= threshold - 1e-9, mt, threshold)


@dataclass(frozen=True)
class TowerLevel:
    base: Hypergraph
    signing: Signing
    certificate: CoveringCertificate
    cover: Hypergraph
    mode: str


def _certified_for(cert: RamanujanCertificate, side: str) -> bool:
    return cert.verdict == "full" if side == "full" else getattr(cert, side)


def build_tower(H0: Hypergraph, levels: int, side: str = "right", *, seed: int = 0,
                jobs: int = 1, trials: int = TOWER_TRIALS) -> list[TowerLevel]:
    """Repeatedly replace H by a certified 2-cover; level ``t`` has ``2^t`` times the vertices of H0."""
    if levels < 1:
        raise HypergraphError("levels >= 1 required")
    if side not in SIDES:
        raise HypergraphError(f"side must be one of {SIDES}")
    if not _certified_for(certify(H0), side):
        raise HypergraphError(f"base hypergraph is not {side}-sided Ramanujan")
    out: list[TowerLevel] = []
    H = H0
    for t in range(1, levels + 1):
        f = len(free_incidences(H))
        mode = "exhaustive" if f <= MAX_FREE_SIGNS else "random"
        res = search_cover(H, SearchConfig(side, mode, seed=seed, trials=trials, jobs=jobs))
        if res.witness is None:
            if side == "right":
                raise TowerError(t, side, f"no right-sided covering found in {mode} mode; "
                                 "such coverings always exist, so this indicates a bug")
            raise TowerError(t, side, f"no {side}-sided covering found in {mode} mode; "
                             "the matching-root condition may fail at this level")
        cover = derived_cover(H, res.witness.to_voltage()).cover
        out.append(TowerLevel(H, res.witness, res.certificate, cover, mode))
        H = cover
    return out


@dataclass(frozen=True)
class AbelianLevel:
    k: int
    q: int
    lift: Hypergraph
    certificate: RamanujanCertificate
    lift_bound: float
    lift_value: float
    incidence_bound: float
    incidence_value: float
    block_union_ok: bool
    base_profile_ok: bool


def _base_profile(q: int) -> list[float]:
    a, b = math.sqrt(q * q + q), math.sqrt(q)
    return [a] + [b] * (q * q - 1) + [0.0] * q + [-b] * (q * q - 1) + [-a]


def abelian_tower(q: int, folds, tol: float = 1e-8, union_tol: float = 1e-7) -> list[AbelianLevel]:
    """Cyclic k-fold lifts of AG(2, q) with a single k-cycle on incidence 0.

    For each k checks that the Hermitian block spectra reassemble the lifted incidence
    graph's spectrum, that its ``k q^2``-th eigenvalue is at least ``sqrt(q) - sqrt(q-1)``,
    and that the lift's smallest adjacency eigenvalue is at least ``q - 2 - 2 sqrt(q(q-1))``.
    """
    if q < 5:
        raise HypergraphError("abelian tower needs q >= 5")
    finite_field(q)  # raises for unsupported orders
    H = affine_plane(q)
    base = sym_eigenvalues(incidence_adjacency(H))
    profile_ok = spectra_equal(base.values, _base_profile(q), tol)
    if not profile_ok:
        raise HypergraphError("incidence-graph spectrum of AG(2, q) has the wrong profile")
    lift_bound = q - 2 - 2 * math.sqrt(q * (q - 1))
    inc_bound = math.sqrt(q) - math.sqrt(q - 1)
    out: list[AbelianLevel] = []
    for k in folds:
        if k < 1:
            raise HypergraphError("fold counts must be positive")
        lift = abelian_cyclic_lift(H, k, pivot=0)
        cover = lift.lift.cover
        n = k * q * q
        inc = sym_eigenvalues(incidence_adjacency(cover))
        union_ok = spectra_equal(inc.values, block_spectrum(lift).values, union_tol)
        if not union_ok:
            raise HypergraphError(f"k={k}: block spectra do not reassemble the lift spectrum")
        inc_value = inc.kth_largest(n)
        if inc_value < inc_bound - tol:
            raise HypergraphError(f"k={k}: incidence eigenvalue {inc_value} below {inc_bound}")
        adj = sym_eigenvalues(adjacency_matrix(cover))
        lift_value = adj.kth_largest(n)
        if lift_value < lift_bound - tol:
            raise HypergraphError(f"k={k}: adjacency eigenvalue {lift_value} below {lift_bound}")
        cert = certify(cover)
        out.append(AbelianLevel(k, q, cover, cert, lift_bound, lift_value,
                                inc_bound, inc_value, union_ok, profile_ok))
    return out
