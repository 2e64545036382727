"""Exact matrices over Q, Z and Z/m.

Rational matrices are stored as an integer numerator matrix together with a
single positive common denominator, kept in lowest terms (the gcd of the
denominator with every numerator entry is 1).  Entries are exposed as
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "RatMatrix",
    "ModMatrix",
    "DenominatorNotInvertible",
    "rational_kernel",
    "span_dimension",
    "integer_rank",
    "hnf_mod",
    "standard_form",
    "primitive_vector",
]


class DenominatorNotInvertible(ArithmeticError):
    def __init__(self, p: int):
        super().__init__(f"a denominator is divisible by {p}")
        self.p = p


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RatMatrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("num", "den", "rows", "cols", "_hash")

    def __init__(self, rows: Iterable[Iterable], den: int | None = None):
        data = [list(r) for r in rows]
        if not data or not data[0]:
            raise ValueError("empty matrix")
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        if den is None:
            fr = [[_as_fraction(x) for x in r] for r in data]
            d = reduce(lcm, (x.denominator for r in fr for x in r), 1)
            num = [[x.numerator * (d // x.denominator) for x in r] for r in fr]
        else:
            d = int(den)
            num = [[int(x) for x in r] for r in data]
        self._set(num, d)

    def _set(self, num, d):
        if d <= 0:
            raise ValueError("denominator must be positive")
        if d != 1:
            g = reduce(gcd, (x for r in num for x in r), d)
            if g != 1:
                num = [[x // g for x in r] for r in num]
                d //= g
        self.num = tuple(tuple(r) for r in num)
        self.den = d
        self.rows = len(num)
        self.cols = len(num[0])
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls._raw([[int(i == j) for j in range(n)] for i in range(n)], 1)

    @classmethod
    def zeros(cls, r: int, c: int) -> "RatMatrix":
        return cls._raw([[0] * c for _ in range(r)], 1)

    @classmethod
    def from_numpy(cls, a) -> "RatMatrix":
        return cls._raw([[int(x) for x in r] for r in np.asarray(a)], 1)

    # -- access ---------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return Fraction(self.num[i][j], self.den)

    def entries(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.den) for x in r] for r in self.num]

    def is_integral(self) -> bool:
        return self.den == 1

    def int_rows(self) -> list[list[int]]:
        if self.den != 1:
            raise ValueError("matrix is not integral")
        return [list(r) for r in self.num]

    def to_numpy(self) -> np.ndarray:
        """Integer matrix as an object array (exact)."""
        return np.array(self.int_rows(), dtype=object)

    def max_abs_entry(self) -> Fraction:
        return Fraction(max(abs(x) for r in self.num for x in r), self.den)

    def flatten(self) -> list[Fraction]:
        return [Fraction(x, self.den) for r in self.num for x in r]

    def flatten_num(self) -> list[int]:
        """Row-major numerators; a positive multiple of :meth:`flatten`."""
        return [x for r in self.num for x in r]

    # -- arithmetic -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(Fraction(x, self.den)) for x in r) for r in self.num)
        return f"RatMatrix([{body}])"

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        bt = list(zip(*other.num))
        num = [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in self.num]
        return RatMatrix._raw(num, self.den * other.den)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        d = lcm(self.den, other.den)
        a, b = d // self.den, d // other.den
        num = [[a * x + b * y for x, y in zip(r, s)] for r, s in zip(self.num, other.num)]
        return RatMatrix._raw(num, d)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix._raw([[-x for x in r] for r in self.num], self.den)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def scale(self, c) -> "RatMatrix":
        c = _as_fraction(c)
        return RatMatrix._raw(
            [[x * c.numerator for x in r] for r in self.num], self.den * c.denominator
        )

    @property
    def T(self) -> "RatMatrix":
        return RatMatrix._raw([list(c) for c in zip(*self.num)], self.den)

    def __pow__(self, k: int) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("square matrix required")
        if k < 0:
            return self.inverse() ** (-k)
        result = RatMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return self.den == 1 and all(
            x == (i == j) for i, r in enumerate(self.num) for j, x in enumerate(r)
        )

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("square matrix required")
        return Fraction(_bareiss_det([list(r) for r in self.num]), self.den**self.rows)

    def inverse(self) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("square matrix required")
        n = self.rows
        a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
             for i, r in enumerate(self.num)]
        for c in range(n):
            piv = next((r for r in range(c, n) if a[r][c] != 0), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            a[c], a[piv] = a[piv], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        # (den * N)^-1 = N^-1 * den
        return RatMatrix([r[n:] for r in a]).scale(self.den)

    def rank(self) -> int:
        return integer_rank([list(r) for r in self.num])

    def mod(self, m: int) -> "ModMatrix":
        """Reduction modulo m; the denominator must be a unit mod m."""
        if m == 1:
            return ModMatrix(np.zeros((self.rows, self.cols), dtype=np.int64), 1)
        if gcd(self.den, m) != 1:
            raise DenominatorNotInvertible(next(p for p in _small_primes(m) if self.den % p == 0))
        inv = pow(self.den, -1, m)
        arr = np.array([[(x * inv) % m for x in r] for r in self.num], dtype=_dtype_for(m))
        return ModMatrix(arr, m)


def _small_primes(m: int):
    p = 2
    while p * p <= m:
        if m % p == 0:
            yield p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        yield m


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    a = [r[:] for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _dtype_for(m: int):
    # 6x6 products of residues must fit in int64
    return np.int64 if m < 1 << 28 else object


class ModMatrix:
    """Square or rectangular matrix over Z/m with entries in [0, m)."""

    __slots__ = ("a", "m")

    def __init__(self, a, m: int):
        if m < 1:
            raise ValueError("modulus must be positive")
        arr = np.asarray(a)
        if arr.dtype != object:
            arr = arr.astype(_dtype_for(m))
        self.a = arr % m
        self.m = m

    @property
    def shape(self):
        return self.a.shape

    def __matmul__(self, other: "ModMatrix") -> "ModMatrix":
        if self.m != other.m:
            raise ValueError("moduli differ")
        return ModMatrix(self.a @ other.a, self.m)

    def __eq__(self, other) -> bool:
        return isinstance(other, ModMatrix) and self.m == other.m and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash((self.m, self.a.tobytes()))

    def __repr__(self):
        return f"ModMatrix(m={self.m}, {self.a.tolist()})"

    def is_identity(self) -> bool:
        n = self.a.shape[0]
        return np.array_equal(self.a, np.eye(n, dtype=self.a.dtype) % self.m)

    def inverse(self) -> "ModMatrix":
        return ModMatrix(mod_inverse(self.a, self.m), self.m)

    def reduce(self, m2: int) -> "ModMatrix":
        if self.m % m2:
            raise ValueError(f"{m2} does not divide {self.m}")
        return ModMatrix(self.a % m2, m2)


def mod_inverse(a: np.ndarray, m: int) -> np.ndarray:
    """Inverse of a square matrix over Z/m (m arbitrary) by Gauss-Jordan.

    Pivots are chosen to be units mod m; for composite m this works whenever
    the matrix is invertible, by CRT on the prime-power parts.
    """
    n = a.shape[0]
    if m == 1:
        return np.zeros_like(a)
    parts = _prime_power_parts(m)
    if len(parts) > 1:
        res = np.zeros((n, n), dtype=object)
        for q in parts:
            inv_q = mod_inverse(np.asarray(a) % q, q).astype(object)
            e = (m // q) * pow(m // q, -1, q)
            res = (res + inv_q * e) % m
        return res.astype(_dtype_for(m))
    aug = [[int(x) % m for x in row] + [int(i == j) for j in range(n)]
           for i, row in enumerate(np.asarray(a).tolist())]
    for c in range(n):
        piv = next((r for r in range(c, n) if gcd(aug[r][c], m) == 1), None)
        if piv is None:
            raise ZeroDivisionError("matrix not invertible mod %d" % m)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, m)
        aug[c] = [(x * inv) % m for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % m for x, y in zip(aug[r], aug[c])]
    return np.array([r[n:] for r in aug], dtype=_dtype_for(m))


def _prime_power_parts(m: int) -> list[int]:
    out = []
    for p in _small_primes(m):
        q = 1
        while m % p == 0:
            m //= p
            q *= p
        out.append(q)
    return out


# -- echelon forms ---------------------------------------------------------

def _integer_echelon(rows: list[list[int]]) -> list[list[int]]:
    """Fraction-free row echelon form, each row divided by its content."""
    rows = [r[:] for r in rows if any(r)]
    out: list[list[int]] = []
    if not rows:
        return out
    ncols = len(rows[0])
    col = 0
    while rows and col < ncols:
        piv = next((i for i, r in enumerate(rows) if r[col] != 0), None)
        if piv is None:
            col += 1
            continue
        p = rows.pop(piv)
        out.append(p)
        nxt = []
        for r in rows:
            if r[col]:
                a, b = p[col], r[col]
                g = gcd(a, b)
                r = [(a // g) * x - (b // g) * y for x, y in zip(r, p)]
            if any(r):
                c = reduce(gcd, r)
                if c > 1:
                    r = [x // c for x in r]
                nxt.append(r)
        rows = nxt
        col += 1
    return out


def _clear_denominators(vec: Sequence) -> list[int]:
    fr = [_as_fraction(x) for x in vec]
    d = reduce(lcm, (x.denominator for x in fr), 1)
    return [int(x * d) for x in fr]


def integer_rank(rows: list[list[int]]) -> int:
    return len(_integer_echelon(rows))


def primitive_vector(vec: Sequence) -> list[int]:
    """Scale a nonzero rational vector to integers with gcd 1, first nonzero entry positive."""
    v = _clear_denominators(vec)
    c = reduce(gcd, v)
    if c == 0:
        raise ValueError("zero vector")
    v = [x // c for x in v]
    lead = next(x for x in v if x)
    return [-x for x in v] if lead < 0 else v


def rational_kernel(M: RatMatrix | Sequence[Sequence]) -> list[list[int]]:
    """Basis of the right null space {x : M x = 0}, as primitive integer vectors."""
    rows = [list(r) for r in M.num] if isinstance(M, RatMatrix) else [
        _clear_denominators(r) for r in M]
    ncols = len(rows[0])
    ech = _integer_echelon(rows)
    pivots = []
    for r in ech:
        pivots.append(next(j for j, x in enumerate(r) if x))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, pc in reversed(list(zip(ech, pivots))):
            s = sum(r[j] * x[j] for j in range(pc + 1, ncols))
            x[pc] = Fraction(-s, r[pc])
        basis.append(primitive_vector(x))
    return basis


def span_dimension(vectors: Iterable[Sequence], p: int | None = None) -> int:
    """Rank of a list of vectors (or matrices, flattened) over Q or F_p."""
    vecs = []
    for v in vectors:
        if isinstance(v, RatMatrix):
            v = v.flatten()
        vecs.append(list(v))
    if not vecs:
        return 0
    if len({len(v) for v in vecs}) != 1:
        raise ValueError("vectors of unequal length")
    if p is None:
        return integer_rank([_clear_denominators(v) for v in vecs])
    reduced = []
    for v in vecs:
        row = []
        for x in v:
            x = _as_fraction(x)
            if x.denominator % p == 0:
                raise DenominatorNotInvertible(p)
            row.append(x.numerator * pow(x.denominator, -1, p) % p)
        reduced.append(row)
    return rank_mod_p(reduced, p)


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def hnf_mod(rows: Sequence[Sequence[int]], D: int) -> tuple[tuple[int, ...], ...]:
    """Canonical upper-triangular Hermite basis of span(rows) + D*Z^n.

    The result has positive diagonal entries dividing D and entries above
    each pivot reduced into [0, pivot).  Two row sets span the same lattice
    (together with D*Z^n) iff their results coincide.
    """
    n = len(rows[0])
    work = [[int(x) % D for x in r] for r in rows]
    basis = []
    for c in range(n):
        # gcd-combine all candidate rows in column c together with D*e_c
        piv = [0] * n
        piv[c] = D
        rest = []
        for r in work:
            a, b = piv[c], r[c]
            if b == 0:
                rest.append(r)
                continue
            g, x, y = _xgcd(a, b)
            new_piv = [(x * u + y * v) % D for u, v in zip(piv, r)]
            new_piv[c] = g
            other = [((a // g) * v - (b // g) * u) % D for u, v in zip(piv, r)]
            other[c] = 0
            piv = new_piv
            rest.append(other)
        work = [r for r in rest if any(r)]
        g = piv[c]
        # the multiple (D/g) * piv lies in span of later columns
        mult = [(D // g) * v % D for v in piv]
        mult[c] = 0
        if any(mult):
            work.append(mult)
        basis.append(piv)
    for c in range(n):
        for r in range(c):
            q = basis[r][c] // basis[c][c]
            if q:
                basis[r] = [u - q * v for u, v in zip(basis[r], basis[c])]
    return tuple(tuple(r) for r in basis)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def standard_form(n: int) -> RatMatrix:
    """The block matrix [[0, 1_s], [-1_s, 0]] for n = 2s."""
    if n % 2:
        raise ValueError("degree must be even")
    s = n // 2
    rows = [[0] * n for _ in range(n)]
    for i in range(s):
        rows[i][s + i] = 1
        rows[s + i][i] = -1
    return RatMatrix._raw(rows, 1)
