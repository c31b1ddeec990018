"""Matrix builders, a cyclic Jacobi eigensolver and exact characteristic polynomials."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypercore import Hypergraph, HypergraphError
from .polys import IntPoly

__all__ = [
    "TOL_GROUP",
    "Spectrum",
    "adjacency_matrix",
    "incidence_matrix",
    "incidence_adjacency",
    "signless_laplacian",
    "dual_laplacian",
    "jacobi_eigenvalues",
    "sym_eigenvalues",
    "herm_eigenvalues",
    "char_poly",
    "verify_poly_relation",
    "format_matrix",
    "parse_spectrum_text",
]

TOL_GROUP = 1e-6


def _clean(x: float) -> float:
    # avoids printing -0.000000000
    return 0.0 if abs(x) < 5e-10 else x


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending, with multiplicity groups merged at ``tol``."""

    values: tuple[float, ...]
    tol: float = TOL_GROUP

    def __post_init__(self):
        vals = tuple(sorted((float(v) for v in self.values), reverse=True))
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    @property
    def groups(self) -> list[tuple[float, int]]:
        out: list[list[float]] = []
        for v in self.values:
            if out and out[-1][-1] - v <= self.tol:
                out[-1].append(v)
            else:
                out.append([v])
        return [(sum(g) / len(g), len(g)) for g in out]

    def array(self) -> np.ndarray:
        return np.array(self.values)

    def kth_largest(self, k: int) -> float:
        """1-based: ``kth_largest(1)`` is the largest eigenvalue."""
        return self.values[k - 1]

    def format(self) -> str:
        return "".join(f"eig {_clean(v):.9f} x{m}\n" for v, m in self.groups)


def parse_spectrum_text(text: str) -> list[tuple[float, int]]:
    """Inverse of :meth:`Spectrum.format`."""
    groups = []
    for line in text.splitlines():
        parts = line.split()
        if len(parts) >= 3 and parts[0] == "eig" and parts[2].startswith("x"):
            groups.append((float(parts[1]), int(parts[2][1:])))
    return groups


# ---------------------------------------------------------------------------
# matrix builders
# ---------------------------------------------------------------------------


def adjacency_matrix(H: Hypergraph) -> np.ndarray:
    """``a_uv`` = number of edges containing both ``u`` and ``v``; zero diagonal."""
    A = np.zeros((H.n, H.n), dtype=np.int64)
    for e in H.edges:
        idx = np.array(e)
        A[np.ix_(idx, idx)] += 1
    np.fill_diagonal(A, 0)
    return A


def incidence_matrix(H: Hypergraph) -> np.ndarray:
    Z = np.zeros((H.n, H.num_edges), dtype=np.int64)
    for j, e in enumerate(H.edges):
        Z[list(e), j] = 1
    return Z


def incidence_adjacency(H: Hypergraph) -> np.ndarray:
    """Adjacency of the incidence graph, vertices first then edges."""
    Z = incidence_matrix(H)
    n, m = Z.shape
    A = np.zeros((n + m, n + m), dtype=np.int64)
    A[:n, n:] = Z
    A[n:, :n] = Z.T
    return A


def signless_laplacian(H: Hypergraph) -> np.ndarray:
    Z = incidence_matrix(H)
    Q = Z @ Z.T
    assert np.array_equal(Q, np.diag(H.degrees).astype(np.int64) + adjacency_matrix(H))
    return Q


def dual_laplacian(H: Hypergraph) -> np.ndarray:
    """``Z^T Z``, the signless Laplacian of the dual."""
    Z = incidence_matrix(H)
    return Z.T @ Z


# ---------------------------------------------------------------------------
# eigensolvers
# ---------------------------------------------------------------------------


def _round_robin(m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Tournament schedule on ``m`` (even) players: ``m-1`` rounds of ``m/2`` disjoint pairs."""
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        half = m // 2
        p = [min(players[i], players[m - 1 - i]) for i in range(half)]
        q = [max(players[i], players[m - 1 - i]) for i in range(half)]
        rounds.append((np.array(p), np.array(q)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(M, *, tol: float = 1e-15, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Each sweep visits every pair once in a fixed round-robin order; within a
    round the rotations act on disjoint index pairs and are applied together.
    Returns values sorted descending.
    """
    A = np.array(M, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise HypergraphError("matrix must be square")
    if n == 0:
        return np.zeros(0)
    if n == 1:
        return A[0].copy()
    m = n + (n % 2)
    if m != n:
        A = np.pad(A, ((0, 1), (0, 1)))
    rounds = _round_robin(m)
    scale = max(np.linalg.norm(A), 1e-300)
    for _ in range(max_sweeps):
        off = np.sqrt(max(np.sum(A * A) - np.sum(np.diag(A) ** 2), 0.0))
        if off <= tol * scale:
            break
        for p, q in rounds:
            apq = A[p, q]
            active = np.abs(apq) > 1e-300
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            app, aqq = A[p, p], A[q, q]
            theta = (aqq - app) / (2.0 * apq)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # columns: A <- A J
            Ap, Aq = A[:, p].copy(), A[:, q].copy()
            A[:, p] = Ap * c - Aq * s
            A[:, q] = Ap * s + Aq * c
            # rows: A <- J^T A
            Ap, Aq = A[p, :].copy(), A[q, :].copy()
            A[p, :] = c[:, None] * Ap - s[:, None] * Aq
            A[q, :] = s[:, None] * Ap + c[:, None] * Aq
            A[p, q] = 0.0
            A[q, p] = 0.0
    # the zero padding row is never rotated (its entries stay exactly 0)
    return np.sort(np.diag(A)[:n])[::-1]


def sym_eigenvalues(M, *, tol_group: float = TOL_GROUP) -> Spectrum:
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise HypergraphError("matrix must be square")
    if not np.array_equal(A, A.T):
        raise HypergraphError("matrix is not symmetric")
    return Spectrum(tuple(jacobi_eigenvalues(A)), tol_group)


def herm_eigenvalues(M, *, tol_group: float = TOL_GROUP, pair_tol: float = 1e-8) -> Spectrum:
    """Eigenvalues of a Hermitian matrix through its real symmetric embedding.

    ``[[Re M, -Im M], [Im M, Re M]]`` carries every eigenvalue twice; the
    doubled list is split back into pairs.
    """
    M = np.asarray(M, dtype=complex)
    if not np.allclose(M, M.conj().T, atol=1e-12, rtol=0):
        raise HypergraphError("matrix is not Hermitian")
    re, im = M.real, M.imag
    big = np.block([[re, -im], [im, re]])
    big = (big + big.T) / 2
    doubled = jacobi_eigenvalues(big)
    scale = max(1.0, float(np.abs(M).sum(axis=1).max(initial=0.0)))
    first, second = doubled[0::2], doubled[1::2]
    if np.any(np.abs(first - second) > pair_tol * scale):
        raise HypergraphError("odd multiplicity in the real embedding of a Hermitian matrix")
    return Spectrum(tuple((first + second) / 2), tol_group)


# ---------------------------------------------------------------------------
# exact characteristic polynomial
# ---------------------------------------------------------------------------


def _fits_int64(A: np.ndarray) -> bool:
    n = A.shape[0]
    a = max(1, int(np.abs(A).sum(axis=1).max(initial=0)))
    return n * (2**n) * a**n < 2**62


def char_poly(M) -> IntPoly:
    """``det(xI - M)`` for an integer matrix via the Faddeev-LeVerrier recursion.

    ``M_k = M M_{k-1} + c_{n-k+1} I`` and ``c_{n-k} = -tr(M M_k) / k``; every
    division is exact over the integers.
    """
    A = np.asarray(M)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise HypergraphError("matrix must be square")
    if A.dtype.kind == "f":
        if not np.all(A == np.round(A)):
            raise HypergraphError("char_poly needs integral entries")
        A = A.astype(np.int64)
    n = A.shape[0]
    if A.dtype == object or not _fits_int64(A):
        A = np.array([[int(x) for x in row] for row in A.tolist()], dtype=object).reshape(n, n)
        eye = np.eye(n, dtype=np.int64).astype(object)
    else:
        A = A.astype(np.int64)
        eye = np.eye(n, dtype=np.int64)
    coeffs = [1]
    Mk = eye * 0
    for k in range(1, n + 1):
        Mk = A @ Mk + coeffs[-1] * eye
        tr = int(np.trace(A @ Mk))
        if tr % k:
            raise ArithmeticError("Faddeev-LeVerrier division was not exact")
        coeffs.append(-tr // k)
    return IntPoly(tuple(coeffs))


def verify_poly_relation(H: Hypergraph) -> bool:
    """Exact check that the incidence-graph, Laplacian and dual-Laplacian
    characteristic polynomials determine each other."""
    if any(d < 1 for d in H.degrees):
        raise HypergraphError("every vertex must have degree >= 1")
    nu, e = H.n, H.num_edges
    psi_b = char_poly(incidence_adjacency(H))
    psi_q = char_poly(signless_laplacian(H))
    psi_qd = char_poly(dual_laplacian(H))
    first = psi_b.shift(nu) == psi_q.compose_square().shift(e)
    second = psi_q.shift(e) == psi_qd.shift(nu)
    return bool(first and second)


def format_matrix(M) -> str:
    A = np.asarray(M)
    lines = []
    for row in A:
        if A.dtype.kind in "iu":
            lines.append(" ".join(str(int(x)) for x in row))
        else:
            lines.append(" ".join(f"{_clean(float(x)):.9f}" for x in row))
    return "\n".join(lines) + "\n"
