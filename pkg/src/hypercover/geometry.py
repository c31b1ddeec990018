"""Finite fields of small order and the explicit hypergraph families.

Field elements are integers in ``range(q)``.  For the extension fields
GF(4), GF(8), GF(9) an element encodes the polynomial ``sum c_i x^i`` as
``sum c_i p^i``, reduced modulo a fixed irreducible polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .hypercore import Hypergraph, HypergraphError

__all__ = ["FiniteField", "field", "complete_uniform", "projective_plane", "affine_plane", "is_prime"]

# low-to-high coefficients of the monic irreducible modulus
_MODULI = {
    4: (2, (1, 1, 1)),      # x^2 + x + 1
    8: (2, (1, 1, 0, 1)),   # x^3 + x + 1
    9: (3, (1, 0, 1)),      # x^2 + 1
}


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class FiniteField:
    q: int
    p: int
    add_table: tuple[tuple[int, ...], ...]
    mul_table: tuple[tuple[int, ...], ...]

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.add_table[a].index(0)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.mul_table[a].index(1)

    def dot(self, xs, ys) -> int:
        acc = 0
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc


def _digits(a: int, p: int, deg: int) -> list[int]:
    out = []
    for _ in range(deg):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds: list[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(ds))


def _extension_tables(q: int) -> tuple[int, list[list[int]], list[list[int]]]:
    p, modulus = _MODULI[q]
    deg = len(modulus) - 1
    add = [[_undigits([(x + y) % p for x, y in zip(_digits(a, p, deg), _digits(b, p, deg))], p)
            for b in range(q)] for a in range(q)]
    mul = []
    for a in range(q):
        row = []
        for b in range(q):
            da, db = _digits(a, p, deg), _digits(b, p, deg)
            prod = [0] * (2 * deg - 1)
            for i, x in enumerate(da):
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
            # reduce using x^deg = -(lower terms of the modulus)
            for top in range(len(prod) - 1, deg - 1, -1):
                c = prod[top]
                if c:
                    prod[top] = 0
                    for i in range(deg):
                        prod[top - deg + i] = (prod[top - deg + i] - c * modulus[i]) % p
            row.append(_undigits(prod[:deg], p))
        mul.append(row)
    return p, add, mul


def field(q: int) -> FiniteField:
    """GF(q) for prime ``q`` or ``q`` in {4, 8, 9}."""
    if is_prime(q):
        p = q
        add = [[(a + b) % q for b in range(q)] for a in range(q)]
        mul = [[(a * b) % q for b in range(q)] for a in range(q)]
    elif q in _MODULI:
        p, add, mul = _extension_tables(q)
    else:
        raise HypergraphError(f"unsupported field order {q}")
    return FiniteField(q, p, tuple(map(tuple, add)), tuple(map(tuple, mul)))


def complete_uniform(d: int) -> Hypergraph:
    """All d-subsets of a (d+1)-set, in lexicographic order."""
    if d < 2:
        raise HypergraphError("d must be at least 2")
    return Hypergraph(d + 1, tuple(combinations(range(d + 1), d)))


def _canonical_points(F: FiniteField) -> list[tuple[int, int, int]]:
    # first nonzero coordinate equal to 1
    return [v for v in product(F.elements, repeat=3) if any(v) and next(x for x in v if x) == 1]


def projective_plane(q: int) -> Hypergraph:
    """PG(2, q): points and lines are the canonical representatives of GF(q)^3 in
    lexicographic order; a point lies on a line when their dot product vanishes."""
    F = field(q)
    points = _canonical_points(F)
    edges = tuple(
        tuple(i for i, pt in enumerate(points) if F.dot(line, pt) == 0)
        for line in points
    )
    return Hypergraph(len(points), edges)


def affine_plane(q: int) -> Hypergraph:
    """AG(2, q) on points ``(x, y) -> x*q + y``.

    Lines ``y = m x + b`` for ``(m, b)`` in lexicographic order, followed by the
    verticals ``x = c``.
    """
    F = field(q)
    edges = []
    for m, b in product(F.elements, repeat=2):
        edges.append(tuple(sorted(x * q + F.add(F.mul(m, x), b) for x in F.elements)))
    for c in F.elements:
        edges.append(tuple(c * q + y for y in F.elements))
    return Hypergraph(q * q, tuple(edges))
