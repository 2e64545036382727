"""Univariate integer polynomials and cyclotomic polynomials."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "IntPoly",
    "cyclotomic",
    "cyclotomic_factorization",
    "euler_phi",
    "indices_with_totient_at_most",
    "divisors",
    "product_of_cyclotomics",
    "poly_gcd_is_one",
]


class IntPoly:
    """Polynomial with integer coefficients, stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        c = [int(x) for x in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c) if c else (0,)

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "IntPoly":
        return cls([0] * k + [a])

    @classmethod
    def one(cls) -> "IntPoly":
        return cls([1])

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    def __neg__(self) -> "IntPoly":
        return IntPoly(-x for x in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if isinstance(other, int):
            return IntPoly(other * x for x in self.coeffs)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Division by a monic (or +-1-leading) polynomial, exact over Z."""
        if other.leading not in (1, -1):
            raise ValueError("divisor must have leading coefficient +-1")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs)
        if dq < 0:
            return IntPoly([0]), IntPoly(r)
        q = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = r[k + len(other.coeffs) - 1] * other.leading
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return IntPoly(q), IntPoly(r[: len(other.coeffs) - 1] or [0])

    def __floordiv__(self, other: "IntPoly") -> "IntPoly":
        return self.divmod(other)[0]

    def __mod__(self, other: "IntPoly") -> "IntPoly":
        return self.divmod(other)[1]

    def divides(self, other: "IntPoly") -> bool:
        return other.divmod(self)[1].degree < 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reversal(self) -> "IntPoly":
        return IntPoly(reversed(self.coeffs))

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if a == 1 else f"{a}{mono}"
            terms.append((sign, body))
        if not terms:
            return "0"
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f"{sign}{body}"
        return s


def poly_gcd_is_one(f: IntPoly, g: IntPoly) -> bool:
    """Coprimality over Q via the Euclidean algorithm on rational coefficients."""
    from fractions import Fraction

    a = [Fraction(x) for x in f.coeffs]
    b = [Fraction(x) for x in g.coeffs]

    def trim(p):
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while not (len(b) == 1 and b[0] == 0):
        r = a[:]
        while len(r) >= len(b) and not (len(r) == 1 and r[0] == 0):
            c = r[-1] / b[-1]
            shift = len(r) - len(b)
            for j, x in enumerate(b):
                r[shift + j] -= c * x
            r.pop()
            if not r:
                r = [Fraction(0)]
            r = trim(r)
        a, b = b, r
    return len(a) == 1


@lru_cache(maxsize=None)
def divisors(k: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, k + 1) if k % d == 0)


@lru_cache(maxsize=None)
def euler_phi(k: int) -> int:
    return sum(1 for j in range(1, k + 1) if gcd(j, k) == 1)


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> IntPoly:
    """The k-th cyclotomic polynomial, by exact division of t^k - 1."""
    if k < 1:
        raise ValueError("k must be positive")
    p = IntPoly.monomial(k) - IntPoly.one()
    for d in divisors(k)[:-1]:
        q, r = p.divmod(cyclotomic(d))
        assert r.degree < 0
        p = q
    return p


def indices_with_totient_at_most(n: int) -> list[int]:
    """All k with phi(k) <= n (phi(k) >= sqrt(k/2) bounds the search)."""
    return [k for k in range(1, 2 * n * n + 3) if euler_phi(k) <= n]


def cyclotomic_factorization(f: IntPoly) -> Counter | None:
    """Multiset {k: multiplicity} with f = prod Phi_k^m, or None.

    Trial division by Phi_k for every k with phi(k) <= deg f.
    """
    if not f.is_monic() or f.degree < 0:
        return None
    rest = f
    out: Counter = Counter()
    for k in indices_with_totient_at_most(max(f.degree, 1)):
        ck = cyclotomic(k)
        while rest.degree >= ck.degree:
            q, r = rest.divmod(ck)
            if r.degree >= 0:
                break
            out[k] += 1
            rest = q
    if rest != IntPoly.one():
        return None
    return out


def product_of_cyclotomics(indices: Sequence[int]) -> IntPoly:
    out = IntPoly.one()
    for k in indices:
        out = out * cyclotomic(k)
    return out
