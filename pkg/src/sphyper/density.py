"""Zariski density through a transvection, and the primes where reduction is not onto.

Density is decided by the enveloping algebra of N, the normal closure of a
transvection: the group is dense iff that algebra is all of M_n (absolute
irreducibility of N).  The algebra is found by spinning: start from 1, close
the span under right multiplication by the transvection and under
conjugation by the generators and their inverses.  Every spanning vector is
an element of N, so the same vectors serve for the reduction mod p.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from .congruence import FiniteMatrixGroup, OrbitBudgetExceeded, sp_order
from .factor import FactorizationIncomplete, factorint
from .linalg import RatMatrix, hnf_mod, mod_inverse

__all__ = [
    "DensityCertificate",
    "NotATransvection",
    "is_dense",
    "candidate_primes",
    "surjective_mod_p",
    "exceptional_primes",
    "denominator_lcm",
    "render_word",
]

DEFAULT_VECTOR_BUDGET = 1_000_000


class NotATransvection(ValueError):
    pass


# Word letters: +i / -i is generator i (1-based) or its inverse, 0 is the transvection.
def render_word(w: tuple) -> str:
    if not w:
        return "1"
    return " ".join("t" if x == 0 else (f"g{x}" if x > 0 else f"g{-x}^-1") for x in w)


@dataclass
class DensityCertificate:
    tau: RatMatrix
    basis_words: list[tuple]
    basis: list[RatMatrix]
    mu: int
    dimension: int
    Pi1: set[int] | None = None
    Pi: set[int] | None = None
    extra: list[RatMatrix] = field(default_factory=list, repr=False)

    @property
    def dense(self) -> bool:
        n = self.tau.rows
        return self.dimension == n * n


class _Span:
    """Incremental row echelon form over Q with primitive integer rows."""

    def __init__(self, width: int):
        self.rows: list[tuple[int, list[int]]] = []  # (pivot, row)
        self.width = width

    def add(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        for piv, r in self.rows:
            c = v[piv]
            if c:
                a = r[piv]
                v = [a * x - c * y for x, y in zip(v, r)]
                g = 0
                for x in v:
                    g = gcd(g, x)
                if g > 1:
                    v = [x // g for x in v]
        nz = next((i for i, x in enumerate(v) if x), None)
        if nz is None:
            return False
        self.rows.append((nz, v))
        return True

    def __len__(self):
        return len(self.rows)


def denominator_lcm(gens: Iterable[RatMatrix]) -> int:
    mu = 1
    for g in gens:
        mu = lcm(mu, g.den, g.inverse().den)
    return mu


def check_transvection(h: RatMatrix) -> None:
    N = h - RatMatrix.identity(h.rows)
    if N.rank() != 1 or any((N @ N).flatten_num()):
        raise NotATransvection("h - 1 must have rank 1 and square zero")


def is_dense(
    L_generators: Sequence[RatMatrix],
    h: RatMatrix,
    certificate: bool = False,
):
    """True iff the normal closure of h in <L_generators> is absolutely irreducible.

    With ``certificate=True`` returns (flag, DensityCertificate).
    """
    check_transvection(h)
    gens = list(L_generators)
    n = h.rows
    invs = [g.inverse() for g in gens]
    span = _Span(n * n)
    one = RatMatrix.identity(n)
    span.add(list(one.flatten_num()))
    basis, words = [one], [()]
    extra = []
    head = 0
    while head < len(basis) and len(basis) < n * n:
        X, w = basis[head], words[head]
        head += 1
        cands = [(X @ h, w + (0,))]
        for i, (s, si) in enumerate(zip(gens, invs)):
            cands.append((si @ X @ s, (-(i + 1),) + w + (i + 1,)))
            cands.append((s @ X @ si, (i + 1,) + w + (-(i + 1),)))
        for Y, yw in cands:
            if len(basis) < n * n and span.add(Y.flatten_num()):
                basis.append(Y)
                words.append(yw)
            elif len(extra) < 4 * n * n:
                extra.append(Y)
    dense = len(basis) == n * n
    if not certificate:
        return dense
    cert = DensityCertificate(h, words, basis, denominator_lcm(gens), len(basis), extra=extra)
    return dense, cert


def _content(vals: Iterable[int]) -> int:
    g = 0
    for x in vals:
        g = gcd(g, x)
    return g


def _bareiss(rows: list[list[int]]) -> int:
    a = [r[:] for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k]), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def candidate_primes(cert: DensityCertificate, h: RatMatrix | None = None, retries: int = 3, seed: int = 0) -> set[int]:
    """Primes outside of which the certificate reduces to a spanning set and 1 - tau stays nonzero.

    The determinant of the n^2 cleared basis vectors is replaced by the index
    of the lattice they span together with further elements of N, which
    divides it and has the same role.
    """
    if not cert.dense:
        raise ValueError("certificate does not span the full matrix algebra")
    tau = cert.tau if h is None else h
    n = tau.rows
    rows = [list(A.flatten_num()) for A in cert.basis]
    D = abs(_bareiss(rows))
    assert D != 0
    rng = random.Random(seed)
    pool = list(cert.extra)
    out: set[int] = set()
    for attempt in range(retries + 1):
        lat = hnf_mod(rows + [list(A.flatten_num()) for A in pool], D)
        index = 1
        for i, r in enumerate(lat):
            index *= r[i]
        try:
            out = set(factorint(index)) if index > 1 else set()
            break
        except FactorizationIncomplete:
            if attempt == retries:
                raise
            # more elements of N shrink the lattice index
            for _ in range(n * n):
                a, b = rng.sample(cert.basis, 2)
                pool.append(a @ b)
    I = RatMatrix.identity(n)
    diff = I - tau
    c = _content(diff.flatten_num())
    for m in (c, diff.den, cert.mu):
        if m > 1:
            out |= set(factorint(m))
    cert.Pi1 = out
    return out


def _spin_mod_p(gens: list[np.ndarray], tau: np.ndarray, p: int) -> int:
    """Dimension over F_p of the enveloping algebra of the normal closure of tau."""
    n = tau.shape[0]
    invs = [mod_inverse(g, p).astype(np.int64) for g in gens]
    rows: list[np.ndarray] = []
    pivots: list[int] = []

    def add(Y) -> bool:
        v = Y.reshape(-1).astype(np.int64) % p
        for piv, r in zip(pivots, rows):
            if v[piv]:
                v = (v - v[piv] * r) % p
        nz = np.flatnonzero(v)
        if not len(nz):
            return False
        v = (v * pow(int(v[nz[0]]), -1, p)) % p
        pivots.append(int(nz[0]))
        rows.append(v)
        return True

    one = np.eye(n, dtype=np.int64)
    basis = [one]
    add(one)
    head = 0
    while head < len(basis) and len(basis) < n * n:
        X = basis[head]
        head += 1
        for Y in [X @ tau % p] + [si @ X @ s % p for s, si in zip(gens, invs)] + [s @ X @ si % p for s, si in zip(gens, invs)]:
            if add(Y):
                basis.append(Y)
    return len(basis)


def surjective_mod_p(
    L_generators: Sequence[RatMatrix],
    p: int,
    transvection: RatMatrix | None = None,
    vector_budget: int = DEFAULT_VECTOR_BUDGET,
) -> bool:
    """Whether the reduction mod p of <L_generators> is all of Sp(n, p).

    Decided by the group order when p^n fits ``vector_budget`` and always for
    p in {2, 3}.  Otherwise, for p >= 5, the reduction is onto iff the
    reduced transvection is nontrivial and its normal closure is absolutely
    irreducible.
    """
    gens = list(L_generators)
    n = gens[0].rows
    if denominator_lcm(gens) % p == 0:
        raise ValueError(f"{p} divides a denominator")
    if p**n <= vector_budget or p < 5:
        G = FiniteMatrixGroup([g.mod(p).a for g in gens], p, n=n, orbit_budget=max(vector_budget, p**n))
        return G.order == sp_order(n, p)
    if transvection is None:
        raise OrbitBudgetExceeded(f"vectors mod {p}", vector_budget)
    tau = transvection.mod(p).a.astype(np.int64)
    if not ((tau - np.eye(n, dtype=np.int64)) % p).any():
        return False
    return _spin_mod_p([g.mod(p).a.astype(np.int64) for g in gens], tau, p) == n * n


def exceptional_primes(
    LZ_generators: Sequence[RatMatrix],
    lam: RatMatrix,
    vector_budget: int = DEFAULT_VECTOR_BUDGET,
    cert: DensityCertificate | None = None,
) -> set[int]:
    """Pi: primes p not dividing the denominators where the reduction is not Sp(n, p)."""
    gens = list(LZ_generators)
    if cert is None:
        dense, cert = is_dense(gens, lam, certificate=True)
        if not dense:
            raise ValueError("group is not dense")
    Pi1 = cert.Pi1 if cert.Pi1 is not None else candidate_primes(cert, lam)
    Pi = {p for p in Pi1 if cert.mu % p and not surjective_mod_p(gens, p, lam, vector_budget)}
    cert.Pi = Pi
    return Pi
