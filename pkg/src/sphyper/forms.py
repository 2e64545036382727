"""Invariant symplectic form, base change to the standard form, k-bar search."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import lcm

from .construct import HypergroupData
from .linalg import RatMatrix, rational_kernel, standard_form

__all__ = [
    "FormData",
    "FormNotUnique",
    "FormDegenerate",
    "NoIntegralCandidate",
    "KbarUnbounded",
    "invariant_form",
    "symplectic_basechange",
    "alternating_normal_form",
    "integral_power_order",
    "kbar",
    "normalize_group",
]


class FormNotUnique(ValueError):
    pass


class FormDegenerate(ValueError):
    pass


class KbarUnbounded(ValueError):
    pass


class NoIntegralCandidate(RuntimeError):
    pass


def invariant_form(H: HypergroupData | list[RatMatrix]) -> RatMatrix:
    """The primitive integral skew matrix Phi with x Phi x^T = Phi for all generators."""
    gens = H.generators if isinstance(H, HypergroupData) else list(H)
    n = gens[0].rows
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    columns = []
    for i, j in pairs:
        rows = [[0] * n for _ in range(n)]
        rows[i][j], rows[j][i] = 1, -1
        E = RatMatrix(rows, den=1)
        col = []
        for x in gens:
            col += (x @ E @ x.T - E).flatten()
        columns.append(col)
    system = [list(r) for r in zip(*columns)]
    ker = rational_kernel(system)
    if len(ker) != 1:
        raise FormNotUnique(f"space of invariant skew forms has dimension {len(ker)}")
    rows = [[0] * n for _ in range(n)]
    for (i, j), v in zip(pairs, ker[0]):
        rows[i][j], rows[j][i] = v, -v
    Phi = RatMatrix(rows, den=1)
    if Phi.det() == 0:
        raise FormDegenerate("invariant form is degenerate")
    return Phi


def _bil(x, Phi, y):
    n = len(x)
    return sum(x[i] * Phi[i][j] * y[j] for i in range(n) for j in range(n) if Phi[i][j])


def symplectic_basechange(Phi: RatMatrix) -> RatMatrix:
    """g with g J g^T = Phi, by symplectic Gram-Schmidt over Q.

    The rows of g^-1 form a hyperbolic basis e_1..e_s, f_1..f_s for the
    bilinear form (x, y) -> x Phi y^T.
    """
    n = Phi.rows
    s = n // 2
    P = Phi.entries()
    remaining = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    es, fs = [], []
    while remaining:
        e = remaining.pop(0)
        k = next((k for k, v in enumerate(remaining) if _bil(e, P, v) != 0), None)
        if k is None:
            raise FormDegenerate("form is degenerate")
        f = remaining.pop(k)
        c = _bil(e, P, f)
        f = [x / c for x in f]
        new = []
        for v in remaining:
            a, b = _bil(v, P, f), _bil(v, P, e)
            new.append([vi - a * ei + b * fi for vi, ei, fi in zip(v, e, f)])
        remaining = new
        es.append(e)
        fs.append(f)
    assert len(es) == s
    W = RatMatrix(es + fs)
    return W.inverse()


def alternating_normal_form(Phi: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Unimodular W and D = (d_1..d_s) with W Phi W^T = [[0, D], [-D, 0]]."""
    S = [list(r) for r in Phi.int_rows()]
    n = len(S)
    W = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap(a, b):
        S[a], S[b] = S[b], S[a]
        for r in S:
            r[a], r[b] = r[b], r[a]
        W[a], W[b] = W[b], W[a]

    def add(b, a, c):
        # basis vector b += c * basis vector a
        S[b] = [x + c * y for x, y in zip(S[b], S[a])]
        for r in S:
            r[b] += c * r[a]
        W[b] = [x + c * y for x, y in zip(W[b], W[a])]

    for t in range(0, n, 2):
        while True:
            best = min(
                ((abs(S[i][j]), i, j) for i in range(t, n) for j in range(t, n) if S[i][j]),
                default=None,
            )
            if best is None:
                raise FormDegenerate("form is degenerate")
            _, i, j = best
            if i != t:
                swap(t, i)
                if j == t:
                    j = i
            if j != t + 1:
                swap(t + 1, j)
            if S[t][t + 1] < 0:
                swap(t, t + 1)
            d = S[t][t + 1]
            for k in range(t + 2, n):
                q = S[t][k] // d
                if q:
                    add(k, t + 1, -q)
                q = S[t + 1][k] // d
                if q:
                    add(k, t, q)
            if all(S[t][k] == 0 and S[t + 1][k] == 0 for k in range(t + 2, n)):
                break
    order = list(range(0, n, 2)) + list(range(1, n, 2))
    D = [S[t][t + 1] for t in range(0, n, 2)]
    return RatMatrix([W[i] for i in order], den=1), D


def integral_power_order(x: RatMatrix, bound: int = 360) -> int | None:
    """Least k in 1..bound with x^k integral, else None."""
    p = x
    for k in range(1, bound + 1):
        if p.is_integral():
            return k
        p = p @ x
    return None


def kbar(gens: list[RatMatrix], bound: int = 360) -> int:
    out = 1
    for x in gens:
        k = integral_power_order(x, bound)
        if k is None:
            raise KbarUnbounded(f"no integral power up to {bound}")
        out = lcm(out, k)
    return out


@dataclass
class FormData:
    Phi: RatMatrix
    basechange_g: RatMatrix
    L_generators: list[RatMatrix]
    h: RatMatrix
    kbar: int
    J: RatMatrix
    candidate: int = 0
    elementary_divisors: list[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.J.rows


def _random_form_automorphism(D: list[int], rng: random.Random, steps: int) -> RatMatrix:
    """Product of integral transvections x -> x + c B(x, v) v for B = [[0,D],[-D,0]]."""
    s = len(D)
    n = 2 * s
    JD = [[0] * n for _ in range(n)]
    for i, d in enumerate(D):
        JD[i][s + i], JD[s + i][i] = d, -d
    JDm = RatMatrix(JD, den=1)
    V = RatMatrix.identity(n)
    for _ in range(steps):
        v = [rng.randint(-1, 1) for _ in range(n)]
        if not any(v):
            continue
        c = rng.choice((-1, 1))
        vm = RatMatrix([v], den=1)
        # rows x -> x + c (x JD v^T) v
        T = RatMatrix.identity(n) + (JDm @ vm.T @ vm).scale(c)
        V = T @ V
    return V


def _splits(D: list[int]):
    divs = [[a for a in range(1, d + 1) if d % a == 0] for d in D]
    for a in product(*divs):
        yield list(a), [d // x for d, x in zip(D, a)]


def normalize_group(
    H: HypergroupData,
    candidates: int = 16,
    seed: int = 0,
    kbar_bound: int = 360,
    Phi: RatMatrix | None = None,
) -> FormData:
    """Pick a base change g (g J g^T = Phi) whose conjugate group has minimal k-bar.

    Candidates are W' = diag(1/a, 1/b) V W where W brings Phi to the integral
    normal form [[0, D], [-D, 0]], a_i b_i = d_i, and V is an integral
    automorphism of that normal form (identity for the first candidates).
    """
    if candidates < 1:
        raise ValueError("candidates must be >= 1")
    if Phi is None:
        Phi = invariant_form(H)
    n = H.n
    s = n // 2
    J = standard_form(n)
    W, D = alternating_normal_form(Phi)
    rng = random.Random(seed)
    splits = list(_splits(D))
    plan = []
    for i in range(candidates):
        if i < len(splits):
            plan.append((splits[i], 0))
        else:
            plan.append((rng.choice(splits), rng.randint(1, 3 * n)))
    best = None
    for idx, ((a, b), steps) in enumerate(plan):
        V = _random_form_automorphism(D, rng, steps) if steps else RatMatrix.identity(n)
        scale = [[Fraction(0)] * n for _ in range(n)]
        for i in range(s):
            scale[i][i] = Fraction(1, a[i])
            scale[s + i][s + i] = Fraction(1, b[i])
        Wp = RatMatrix(scale) @ V @ W
        Wi = Wp.inverse()
        gens = [Wp @ x @ Wi for x in H.generators]
        try:
            k = kbar(gens, kbar_bound)
        except KbarUnbounded:
            continue
        size = max(x.max_abs_entry() for x in gens)
        key = (k, size, idx)
        if best is None or key < best[0]:
            best = (key, Wp, Wi, gens)
    if best is None:
        raise NoIntegralCandidate("every base-change candidate has unbounded k-bar")
    (k, _, idx), Wp, g, gens = best
    h = Wp @ H.h_1 @ g
    assert g @ J @ g.T == Phi
    return FormData(Phi, g, gens, h, k, J, candidate=idx, elementary_divisors=D)
