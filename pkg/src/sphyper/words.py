"""Words in elementary symplectic matrices for elements of Sp(n, Z).

Standard generators for n = 2s, with E_ij the matrix unit (0-based i, j < s):

* ``U_i  = 1 + E_{i,s+i}``                 and ``L_i = 1 + E_{s+i,i}``
* ``X_ij = 1 + E_{ij} - E_{s+j,s+i}``       for i != j
* ``U_ij = 1 + E_{i,s+j} + E_{j,s+i}``      and ``L_ij = 1 + E_{s+i,j} + E_{s+j,i}`` for i < j

Each preserves J = [[0, 1], [-1, 0]].  :func:`express` reduces g to the
identity by left multiplication, clearing one hyperbolic pair at a time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .linalg import RatMatrix, standard_form

__all__ = [
    "SymplecticWord",
    "NotSymplectic",
    "NotIntegral",
    "standard_generators",
    "express",
    "evaluate",
    "random_word",
    "export_words",
]


class NotSymplectic(ValueError):
    pass


class NotIntegral(ValueError):
    pass


@lru_cache(maxsize=None)
def standard_generators(n: int) -> tuple[tuple[str, RatMatrix], ...]:
    """Named generators, in the fixed order used for indices (1-based in words)."""
    if n % 2 or n < 2:
        raise ValueError("degree must be even and positive")
    s = n // 2
    out = []

    def mat(entries):
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
        for (i, j), v in entries.items():
            rows[i][j] += v
        return RatMatrix(rows, den=1)

    for i in range(s):
        out.append((f"U{i + 1}", mat({(i, s + i): 1})))
    for i in range(s):
        out.append((f"L{i + 1}", mat({(s + i, i): 1})))
    for i in range(s):
        for j in range(s):
            if i != j:
                out.append((f"X{i + 1}{j + 1}", mat({(i, j): 1, (s + j, s + i): -1})))
    for i in range(s):
        for j in range(i + 1, s):
            out.append((f"U{i + 1}{j + 1}", mat({(i, s + j): 1, (j, s + i): 1})))
    for i in range(s):
        for j in range(i + 1, s):
            out.append((f"L{i + 1}{j + 1}", mat({(s + i, j): 1, (s + j, i): 1})))
    return tuple(out)


@lru_cache(maxsize=None)
def _index(n: int) -> dict[str, int]:
    return {name: k + 1 for k, (name, _) in enumerate(standard_generators(n))}


@dataclass(frozen=True)
class SymplecticWord:
    n: int
    letters: tuple[tuple[int, int], ...]  # (1-based generator index, exponent)

    def __len__(self):
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(f"g{i}^{e}" for i, e in self.letters) if self.letters else "1"

    @property
    def target(self) -> RatMatrix:
        return evaluate(self)


def _mat_power(x: RatMatrix, e: int) -> RatMatrix:
    return x**e


def evaluate(word: SymplecticWord) -> RatMatrix:
    gens = standard_generators(word.n)
    out = RatMatrix.identity(word.n)
    for i, e in word.letters:
        out = out @ _mat_power(gens[i - 1][1], e)
    return out


class _Reducer:
    """Row operations on an integer matrix, each recorded as a generator power."""

    def __init__(self, rows: list[list[int]]):
        self.g = rows
        self.n = len(rows)
        self.s = self.n // 2
        self.ops: list[tuple[int, int]] = []
        self.idx = _index(self.n)

    def _addrow(self, dst, src, k):
        g = self.g
        g[dst] = [x + k * y for x, y in zip(g[dst], g[src])]

    def U(self, i, k):
        if k:
            self._addrow(i, self.s + i, k)
            self.ops.append((self.idx[f"U{i + 1}"], k))

    def L(self, i, k):
        if k:
            self._addrow(self.s + i, i, k)
            self.ops.append((self.idx[f"L{i + 1}"], k))

    def X(self, i, j, k):
        # (1 + E_ij - E_{s+j,s+i})^k = 1 + k E_ij - k E_{s+j,s+i}
        if k:
            self._addrow(i, j, k)
            self._addrow(self.s + j, self.s + i, -k)
            self.ops.append((self.idx[f"X{i + 1}{j + 1}"], k))

    def Usym(self, i, j, k):
        if k:
            a, b = min(i, j), max(i, j)
            self._addrow(a, self.s + b, k)
            self._addrow(b, self.s + a, k)
            self.ops.append((self.idx[f"U{a + 1}{b + 1}"], k))


def _check(g) -> list[list[int]]:
    if isinstance(g, RatMatrix):
        x = g
    else:
        x = RatMatrix([[int(v) if float(v).is_integer() else v for v in r] for r in g])
    if not x.is_integral():
        raise NotIntegral("matrix has non-integral entries")
    n = x.rows
    if n % 2 or x.cols != n:
        raise NotSymplectic("matrix is not square of even size")
    J = standard_form(n)
    if x @ J @ x.T != J:
        raise NotSymplectic("matrix does not preserve J")
    return [list(r) for r in x.int_rows()]


def express(g) -> SymplecticWord:
    """A word in the standard generators evaluating to g."""
    rows = _check(g)
    n = len(rows)
    s = n // 2
    R = _Reducer(rows)
    G = R.g
    for t in range(s):
        c = t
        # each pair (a_i, b_i) = (G[i][c], G[s+i][c]) -> (*, 0)
        for i in range(t, s):
            while G[s + i][c]:
                a, b = G[i][c], G[s + i][c]
                if not a:
                    R.U(i, 1)
                    R.L(i, -1)
                    break
                R.L(i, -(b // a))
                if G[s + i][c]:
                    R.U(i, -(G[i][c] // G[s + i][c]))
        # gcd of the a_i into position t
        for j in range(t + 1, s):
            while G[j][c]:
                a, b = G[t][c], G[j][c]
                if not a:
                    R.X(t, j, 1)
                    R.X(j, t, -1)
                    break
                R.X(j, t, -(b // a))
                if G[j][c]:
                    R.X(t, j, -(G[t][c] // G[j][c]))
        if G[t][c] == -1:
            # (a, b) = (-1, 0) -> (-1, -1) -> (1, -1) -> (1, 0)
            R.L(t, 1)
            R.U(t, -2)
            R.L(t, 1)
        assert G[t][c] == 1, "first column is not primitive"
        # column s+t: the symplectic pairing forces G[s+t][s+t] = 1
        f = s + t
        assert G[f][f] == 1
        for j in range(t + 1, s):
            R.X(t, j, G[s + j][f])
            R.Usym(t, j, -G[j][f])
        R.U(t, -G[t][f])
    if any(G[i][j] != int(i == j) for i in range(n) for j in range(n)):
        raise AssertionError("reduction did not reach the identity")
    # ops_m ... ops_1 g = 1  =>  g = ops_1^-1 ... ops_m^-1
    letters: list[tuple[int, int]] = []
    for i, e in R.ops:
        if letters and letters[-1][0] == i:
            e2 = letters[-1][1] - e
            letters.pop()
            if e2:
                letters.append((i, e2))
        else:
            letters.append((i, -e))
    return SymplecticWord(n, tuple(letters))


def random_word(n: int, length: int, rng: random.Random) -> SymplecticWord:
    k = len(standard_generators(n))
    return SymplecticWord(n, tuple((rng.randint(1, k), rng.choice((-1, 1))) for _ in range(length)))


def export_words(words: Sequence[SymplecticWord]) -> str:
    """Plain-text export: a header naming each generator, then one word per line."""
    if not words:
        return ""
    n = words[0].n
    lines = [f"# degree {n}", "# generators (row-major integer entries):"]
    for k, (name, m) in enumerate(standard_generators(n), start=1):
        flat = " ".join(str(x) for r in m.int_rows() for x in r)
        lines.append(f"# g{k} {name}: {flat}")
    lines += [str(w) for w in words]
    return "\n".join(lines) + "\n"
