"""Exact integer polynomials and certified real-root isolation by Sturm sequences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

__all__ = ["IntPoly", "squarefree_decomposition", "sturm_sequence", "isolate_real_roots", "real_roots"]


def _trim(coeffs):
    i = 0
    while i < len(coeffs) - 1 and coeffs[i] == 0:
        i += 1
    return tuple(coeffs[i:])


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with exact integer coefficients, stored degree-descending."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = _trim(tuple(int(x) for x in self.coeffs)) if self.coeffs else (0,)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPoly:
        return cls((coeff,) + (0,) * degree)

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __add__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        a = (0,) * (m - len(a)) + a
        b = (0,) * (m - len(b)) + b
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(other * x for x in self.coeffs))
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> IntPoly:
        """Multiply by ``x**k``."""
        if self.is_zero():
            return self
        return IntPoly(self.coeffs + (0,) * k)

    def compose_square(self) -> IntPoly:
        """``p(x**2)``."""
        out: list[int] = []
        for c in self.coeffs[:-1]:
            out.extend((c, 0))
        out.append(self.coeffs[-1])
        return IntPoly(tuple(out))

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPoly:
        d = self.degree
        if d <= 0:
            return IntPoly((0,))
        return IntPoly(tuple(c * (d - i) for i, c in enumerate(self.coeffs[:-1])))

    def __str__(self) -> str:
        return "poly " + " ".join(str(c) for c in self.coeffs)


# Rational helpers work on degree-descending lists of Fractions/ints.


def _rdivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [0], a
    q = [Fraction(0)] * (len(a) - db)
    lead = Fraction(b[0])
    for i in range(len(q)):
        coef = a[i] / lead
        q[i] = coef
        if coef:
            for j in range(len(b)):
                a[i + j] -= coef * b[j]
    rem = list(_trim(a[len(q):])) if len(a) > len(q) else [0]
    return q, rem


def _primitive(p: list) -> list[int]:
    """Positive multiple of ``p`` with coprime integer coefficients and the same sign pattern."""
    fr = [Fraction(c) for c in p]
    den = reduce(lambda x, y: x * y // gcd(x, y), (f.denominator for f in fr), 1)
    ints = [int(f * den) for f in fr]
    g = reduce(gcd, (abs(c) for c in ints), 0)
    if g == 0:
        return [0]
    return [c // g for c in ints]


def _is_zero(p: list) -> bool:
    return all(c == 0 for c in p)


def _gcd(a: list, b: list) -> list[int]:
    a, b = _primitive(a), _primitive(b)
    while not _is_zero(b):
        _, r = _rdivmod(a, b)
        a, b = b, _primitive(r)
    if a[0] < 0:
        a = [-c for c in a]
    return a


def _exact_quotient(a: list, b: list) -> list:
    q, r = _rdivmod(a, b)
    if not _is_zero(r):
        raise ArithmeticError("inexact polynomial division")
    return q


def _deriv(p: list) -> list:
    d = len(p) - 1
    return [c * (d - i) for i, c in enumerate(p[:-1])] or [0]


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm: ``p = c * prod(f_i ** i)`` with squarefree, pairwise coprime ``f_i``.

    Constant factors are dropped; returned factors are primitive with positive leading coefficient.
    """
    if p.degree <= 0:
        return []
    f = list(p.coeffs)
    fp = _deriv(f)
    a = _gcd(f, fp)
    b = _exact_quotient(f, a)
    c = _exact_quotient(fp, a) if not _is_zero(fp) else [0]
    out: list[tuple[IntPoly, int]] = []
    i = 1
    while len(b) > 1:
        diff = _sub(c, _deriv(b))
        if _is_zero(diff):
            out.append((IntPoly(tuple(_normsign(b))), i))
            break
        g = _gcd(b, diff)
        if len(g) > 1:
            out.append((IntPoly(tuple(g)), i))
        b_next = _exact_quotient(b, g)
        c = _exact_quotient(diff, g)
        b = b_next
        i += 1
    return out


def _pad(p: list, m: int) -> list:
    return [0] * (m - len(p)) + list(p)


def _sub(a: list, b: list) -> list:
    m = max(len(a), len(b))
    a, b = _pad(a, m), _pad(b, m)
    return list(_trim([x - y for x, y in zip(a, b)]))


def _normsign(p: list) -> list[int]:
    p = _primitive(p)
    return [-c for c in p] if p[0] < 0 else p


def sturm_sequence(p: IntPoly) -> list[list[int]]:
    """Sturm chain of ``p`` with every member scaled to a primitive integer polynomial.

    Scaling by positive constants leaves sign variations unchanged.
    """
    seq = [_primitive(list(p.coeffs)), _primitive(_deriv(list(p.coeffs)))]
    while len(seq[-1]) > 1:
        _, r = _rdivmod(seq[-2], seq[-1])
        if _is_zero(r):
            break
        seq.append(_primitive([-c for c in r]))
    return seq


def _eval(p: list[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def _sign_changes(seq: list[list[int]], x: Fraction) -> int:
    changes = 0
    prev = 0
    for poly in seq:
        v = _eval(poly, x)
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            changes += 1
        prev = s
    return changes


def _cauchy_bound(p: list[int]) -> int:
    lead = abs(p[0])
    return 1 + max((abs(c) for c in p[1:]), default=0) // lead + 1


def isolate_real_roots(p: IntPoly, tol: float = 1e-12) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]`` each holding exactly one distinct real root of ``p``.

    Intervals are refined by exact bisection until narrower than ``tol`` and
    returned in descending order.
    """
    if p.degree <= 0:
        return []
    sq = squarefree_decomposition(p)
    core = IntPoly((1,))
    for f, _ in sq:
        core = core * f
    return _isolate_squarefree(list(core.coeffs), tol)


def _isolate_squarefree(f: list[int], tol: float) -> list[tuple[Fraction, Fraction]]:
    if len(f) <= 1:
        return []
    seq = sturm_sequence(IntPoly(tuple(f)))
    bound = Fraction(_cauchy_bound(f))
    stack = [(-bound, bound, _sign_changes(seq, -bound), _sign_changes(seq, bound))]
    found: list[tuple[Fraction, Fraction]] = []
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        count = vlo - vhi
        if count == 0:
            continue
        if count == 1:
            found.append(_refine(f, lo, hi, tol))
            continue
        mid = (lo + hi) / 2
        vmid = _sign_changes(seq, mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    found.sort(key=lambda iv: iv[1], reverse=True)
    return found


def _refine(f: list[int], lo: Fraction, hi: Fraction, tol: float) -> tuple[Fraction, Fraction]:
    # single simple root in (lo, hi]
    fhi = _eval(f, hi)
    if fhi == 0:
        return hi, hi
    shi = fhi > 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = _eval(f, mid)
        if fm == 0:
            return mid, mid
        if (fm > 0) == shi:
            hi = mid
        else:
            lo = mid
    return lo, hi


def real_roots(p: IntPoly, tol: float = 1e-12) -> list[float]:
    """All real roots of ``p`` with multiplicity, descending."""
    roots: list[float] = []
    for factor, mult in squarefree_decomposition(p):
        for lo, hi in _isolate_squarefree(list(factor.coeffs), tol):
            roots.extend([float((lo + hi) / 2)] * mult)
    roots.sort(reverse=True)
    return roots
