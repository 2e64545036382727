"""Cyclotomic polynomial pairs and the hypergeometric group generators.

For monic f, g of degree n with companion matrices A, B (ones on the
subdiagonal, negated coefficients in the last column) the group is
generated by ``h_inf = A`` and ``h_0 = B^-1``; ``h_1 = (h_0 h_inf)^-1`` is
a reflection, and a transvection exactly when f(0) = g(0).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

from .linalg import RatMatrix
from .poly import IntPoly, euler_phi, indices_with_totient_at_most, product_of_cyclotomics

__all__ = [
    "PolyPair",
    "HypergroupData",
    "UnsupportedDegree",
    "enumerate_pairs",
    "cyclotomic_products",
    "build_group",
    "companion",
    "coeff_and_criterion",
    "parse_pair",
]


class UnsupportedDegree(ValueError):
    pass


def _fmt_indices(ks: tuple[int, ...]) -> str:
    c = Counter(ks)
    return "*".join(f"C{k}" if m == 1 else f"C{k}^{m}" for k, m in sorted(c.items()))


@dataclass(frozen=True)
class PolyPair:
    """Two monic cyclotomic products of equal even degree.

    ``f_indices`` / ``g_indices`` are sorted tuples of cyclotomic indices with
    repetition, e.g. ``(1, 1, 4)`` for (t-1)^2 (t^2+1).
    """

    f_indices: tuple[int, ...]
    g_indices: tuple[int, ...]
    nr: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "f_indices", tuple(sorted(self.f_indices)))
        object.__setattr__(self, "g_indices", tuple(sorted(self.g_indices)))
        nf = sum(euler_phi(k) for k in self.f_indices)
        ng = sum(euler_phi(k) for k in self.g_indices)
        if nf != ng:
            raise ValueError("f and g have different degrees")

    @property
    def n(self) -> int:
        return sum(euler_phi(k) for k in self.f_indices)

    @cached_property
    def f(self) -> IntPoly:
        return product_of_cyclotomics(self.f_indices)

    @cached_property
    def g(self) -> IntPoly:
        return product_of_cyclotomics(self.g_indices)

    @property
    def coprime(self) -> bool:
        return not set(self.f_indices) & set(self.g_indices)

    @property
    def delta_is_one(self) -> bool:
        return self.f(0) == self.g(0)

    @property
    def coeff(self) -> int:
        return coeff_and_criterion(self)[0]

    def swapped(self) -> "PolyPair":
        return PolyPair(self.g_indices, self.f_indices)

    def canonical(self) -> str:
        return f"{_fmt_indices(self.f_indices)} | {_fmt_indices(self.g_indices)}"

    def __str__(self) -> str:
        return self.canonical()

    def check(self) -> None:
        """Raise ValueError unless the pair is admissible."""
        if self.n % 2 or self.n < 4:
            raise UnsupportedDegree(f"degree {self.n} is not an even integer >= 4")
        if not self.coprime:
            raise ValueError(f"{self}: f and g share a cyclotomic factor")
        if not self.delta_is_one:
            raise ValueError(f"{self}: f(0) != g(0)")


_TOKEN = re.compile(r"^C(\d+)(?:\^(\d+))?$")


def _parse_side(text: str) -> tuple[int, ...]:
    out: list[int] = []
    for tok in text.replace(" ", "").split("*"):
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad factor token {tok!r}")
        out += [int(m.group(1))] * int(m.group(2) or 1)
    return tuple(sorted(out))


def parse_pair(text: str) -> PolyPair:
    """Inverse of :meth:`PolyPair.canonical`."""
    try:
        left, right = text.split("|")
    except ValueError:
        raise ValueError(f"expected 'F | G', got {text!r}") from None
    return PolyPair(_parse_side(left), _parse_side(right))


def cyclotomic_products(n: int) -> list[tuple[int, ...]]:
    """Sorted index multisets of all monic degree-n cyclotomic products."""
    ks = indices_with_totient_at_most(n)
    out: list[tuple[int, ...]] = []

    def rec(start, rem, cur):
        if rem == 0:
            out.append(tuple(cur))
            return
        for i in range(start, len(ks)):
            d = euler_phi(ks[i])
            if d <= rem:
                rec(i, rem - d, cur + [ks[i]])

    rec(0, n, [])
    return sorted(out)


def enumerate_pairs(n: int, ordered: bool = False) -> list[PolyPair]:
    """All admissible pairs of degree n, numbered from 1.

    Admissible: f, g coprime cyclotomic products with f(0) = g(0).  In the
    unordered convention each pair appears once with f the lexicographically
    smaller index multiset.  Numbering is by Coeff, then lexicographically by
    the index multisets of f and g.
    """
    if n % 2 or n < 2:
        raise UnsupportedDegree(f"degree must be even, got {n}")
    polys = [m for m in cyclotomic_products(n) if m.count(1) % 2 == 0]
    pairs = []
    for i, a in enumerate(polys):
        for j, b in enumerate(polys):
            if (j <= i and not ordered) or a == b:
                continue
            p = PolyPair(a, b)
            if p.coprime and p.delta_is_one:
                pairs.append(p)
    pairs.sort(key=lambda p: (p.coeff, p.f_indices, p.g_indices))
    return [PolyPair(p.f_indices, p.g_indices, nr=i + 1) for i, p in enumerate(pairs)]


def companion(f: IntPoly) -> RatMatrix:
    n = f.degree
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    # last column: -A_n, ..., -A_1 (A_k the coefficient of t^(n-k))
    for i in range(n):
        rows[i][n - 1] = -f.coeff(i)
    return RatMatrix(rows, den=1)


def coeff_and_criterion(pair: PolyPair) -> tuple[int, bool]:
    """|leading coefficient of f - g| and whether it is at most 2."""
    d = pair.f - pair.g
    c = abs(d.leading) if d.degree >= 0 else 0
    return c, c <= 2


@dataclass(frozen=True)
class HypergroupData:
    pair: PolyPair
    A: RatMatrix
    B: RatMatrix
    h_inf: RatMatrix
    h_0: RatMatrix
    h_1: RatMatrix

    @property
    def generators(self) -> list[RatMatrix]:
        return [self.h_inf, self.h_0]

    @property
    def n(self) -> int:
        return self.pair.n


def build_group(pair: PolyPair) -> HypergroupData:
    pair.check()
    A = companion(pair.f)
    B = companion(pair.g)
    h_inf = A
    h_0 = B.inverse()
    h_1 = (h_0 @ h_inf).inverse()
    I = RatMatrix.identity(pair.n)
    r = (h_1 - I).rank()
    d = h_1.det()
    assert r == 1, f"{pair}: rank(h_1 - 1) = {r}"
    assert d == 1, f"{pair}: det(h_1) = {d}"
    return HypergroupData(pair, A, B, h_inf, h_0, h_1)
