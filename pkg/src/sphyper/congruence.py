"""Finite matrix groups over Z/m: orders, membership, level and index.

A group G <= GL(n, Z/M) is stored in two parts.

* Top: a stabilizer chain for the image of G mod rad(M), acting on row
  vectors over F_p for each prime p | M.  Base points are standard basis
  vectors e_j taken mod some prime; transversal elements are kept as
  matrices mod M.
* Layers: the kernel G ∩ Γ(rad M) is filtered by Γ(m_0) > Γ(m_1) > ... with
  m_0 = rad M, m_{l+1} = m_l * p_l and p_l | m_l.  Each quotient is an
  elementary abelian p_l-group embedded in F_p^{n x n} via g = 1 + m_l X,
  stored as an echelon basis with lifted group elements.

Orbits on (Z/p^a)^n are never formed, so moduli like 2^10 cost the same as 2
at the top.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .factor import factorint
from .linalg import ModMatrix, RatMatrix, mod_inverse, standard_form

__all__ = [
    "FiniteMatrixGroup",
    "MemoryBudgetExceeded",
    "OrbitBudgetExceeded",
    "LevelSearchExceeded",
    "ClosureReport",
    "sp_order",
    "sp_dim",
    "stabilizer_chain",
    "level_exponent",
    "closure_level_and_index",
    "format_factored",
]

DEFAULT_ORBIT_BUDGET = 2_000_000


class MemoryBudgetExceeded(MemoryError):
    def __init__(self, what: str, budget: int):
        super().__init__(f"{what} exceeds the budget of {budget} vector slots")
        self.budget = budget


OrbitBudgetExceeded = MemoryBudgetExceeded


class LevelSearchExceeded(RuntimeError):
    pass


def sp_dim(n: int) -> int:
    s = n // 2
    return 2 * s * s + s


def sp_order(n: int, m: int | dict[int, int]) -> int:
    """|Sp(n, Z/m)|; m may be given as {prime: exponent}."""
    fac = m if isinstance(m, dict) else factorint(m)
    s = n // 2
    out = 1
    for p, a in fac.items():
        if a == 0:
            continue
        out *= p ** ((a - 1) * sp_dim(n)) * p ** (s * s) * prod(p ** (2 * i) - 1 for i in range(1, s + 1))
    return out


def _dtype(m: int):
    return np.int64 if m < 1 << 28 else object


def _as_array(g, M: int) -> np.ndarray:
    if isinstance(g, ModMatrix):
        if g.m % M and M != 1:
            raise ValueError(f"matrix mod {g.m} cannot be reduced mod {M}")
        a = np.asarray(g.a)
    elif isinstance(g, RatMatrix):
        a = g.mod(M).a
    else:
        a = np.asarray(g)
    out = np.array(a.tolist(), dtype=object) % M
    return out.astype(_dtype(M))


@dataclass
class _Level:
    prime_index: int
    point: int  # base point is e_point mod primes[prime_index]
    projective: bool = False  # act on lines instead of vectors
    gens: list = field(default_factory=list)  # (g, g_inv, g mod p)
    keys: dict = field(default_factory=dict)  # vector key -> orbit index
    vecs: list = field(default_factory=list)
    u: list = field(default_factory=list)
    u_inv: list = field(default_factory=list)
    checked: list = field(default_factory=list)  # per generator: orbit points done


class _Layers:
    """Elementary abelian filtration of G ∩ Γ(rad M)."""

    def __init__(self, grp: "FiniteMatrixGroup"):
        self.grp = grp
        self.chain = grp.layer_chain  # list of (m_l, p_l)
        # per layer: list of (pivot, vec, [lift_inv^c for c in 0..p-1], lift)
        self.basis: list[list] = [[] for _ in self.chain]
        self.conjugators: list = []

    @property
    def dims(self) -> list[int]:
        return [len(b) for b in self.basis]

    def order(self) -> int:
        return prod(p ** len(b) for (_, p), b in zip(self.chain, self.basis))

    def _x(self, g, l):
        m, p = self.chain[l]
        d = g - self.grp.eye
        return ((d // m) % p).reshape(-1)

    def reduce(self, g):
        """Sift g (≡ 1 mod rad M); return None if absorbed, else (g', l, X)."""
        grp = self.grp
        for l, (m, p) in enumerate(self.chain):
            X = self._x(g, l)
            if not X.any():
                continue
            for piv, vec, inv_pows, _ in self.basis[l]:
                c = int(X[piv])
                if c:
                    X = (X - c * vec) % p
                    g = grp.mul(g, inv_pows[c])
            if X.any():
                return g, l, X
        return None

    def add(self, g) -> bool:
        """Insert g and close up; True if the structure grew."""
        grew = False
        queue = [g]
        while queue:
            r = self.reduce(queue.pop())
            if r is None:
                continue
            grew = True
            g, l, X = r
            self._insert(g, l, X, queue)
        return grew

    def _insert(self, g, l, X, queue):
        grp = self.grp
        m, p = self.chain[l]
        piv = int(np.flatnonzero(X)[0])
        c = int(X[piv])
        if c != 1:
            cinv = pow(c, -1, p)
            g = grp.power(g, cinv)
            X = (X * cinv) % p
        gi = grp.inv(g)
        inv_pows = [grp.eye]
        for _ in range(1, p):
            inv_pows.append(grp.mul(inv_pows[-1], gi))
        existing = [b[3] for b in self.basis[l]]
        self.basis[l].append((piv, X, inv_pows, g))
        queue.append(grp.power(g, p))
        for b in existing:
            queue.append(grp.commutator(g, b))
        for s, si in self.conjugators:
            queue.append(grp.mul(grp.mul(si, g), s))

    def add_conjugator(self, s, si):
        self.conjugators.append((s, si))
        queue = []
        for layer in self.basis:
            for *_, b in layer:
                queue.append(self.grp.mul(self.grp.mul(si, b), s))
        for q in queue:
            self.add(q)

    def lifts(self):
        for layer in self.basis:
            for *_, b in layer:
                yield b


class FiniteMatrixGroup:
    """Subgroup of GL(n, Z/M) given by generators, with exact order and membership."""

    def __init__(
        self,
        generators: Iterable,
        modulus: int,
        n: int | None = None,
        orbit_budget: int = DEFAULT_ORBIT_BUDGET,
        symplectic: bool = True,
    ):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        self.M = M = modulus
        gens = [_as_array(g, M) for g in generators]
        if n is None:
            if not gens:
                raise ValueError("degree unknown for an empty generating set")
            n = gens[0].shape[0]
        self.n = n
        self.orbit_budget = orbit_budget
        self.symplectic = symplectic
        self.fac = factorint(M) if M > 1 else {}
        self.primes = sorted(self.fac)
        self.rad = prod(self.primes) if self.primes else 1
        self.eye = np.eye(n, dtype=_dtype(M)) % max(M, 1)
        self.layer_chain = []
        m = self.rad
        for p in self.primes:
            for _ in range(self.fac[p] - 1):
                self.layer_chain.append((m, p))
                m *= p
        self._J = standard_form(n).mod(M).a if (symplectic and n % 2 == 0 and M > 1) else None
        self._pows = [np.array([p**i for i in range(n)], dtype=np.int64) for p in self.primes]
        self.max_order = sp_order(n, self.fac) if self._J is not None else None
        self.levels: list[_Level] = []
        self.layers = _Layers(self)
        self.generators: list[np.ndarray] = []
        self._slots = 0
        for g in gens:
            self.check_symplectic(g)
        for g in gens:
            self.add_generator(g)

    # -- arithmetic mod M ------------------------------------------------
    def mul(self, a, b):
        return (a @ b) % self.M

    def inv(self, a):
        if self._J is not None:
            # g J g^T = J  =>  g^-1 = -J g^T J
            return (-(self._J @ a.T @ self._J)) % self.M
        return mod_inverse(a, self.M)

    def power(self, a, k: int):
        out = self.eye
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def commutator(self, a, b):
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def check_symplectic(self, g) -> None:
        if self._J is None:
            return
        if not np.array_equal((g @ self._J @ g.T) % self.M, self._J):
            raise ValueError(f"generator does not preserve J mod {self.M}")

    def is_one_mod_rad(self, g) -> bool:
        return not ((g - self.eye) % self.rad).any()

    # -- stabilizer chain ---------------------------------------------------
    def _key(self, vec, lv: _Level):
        p = self.primes[lv.prime_index]
        if lv.projective:
            nz = np.flatnonzero(vec)
            if len(nz):
                vec = (vec * pow(int(vec[nz[0]]), -1, p)) % p
        return int(vec @ self._pows[lv.prime_index])

    def _image(self, level: _Level, g):
        p = self.primes[level.prime_index]
        return (g[level.point] % p).astype(np.int64)

    def _new_level(self, g) -> _Level:
        have = {(lv.prime_index, lv.point, lv.projective) for lv in self.levels}
        for pi, p in enumerate(self.primes):
            gp = (g % p).astype(np.int64)
            for j in range(self.n):
                row = gp[j]
                off = [k for k in range(self.n) if k != j and row[k]]
                if not off and int(row[j]) == 1:
                    continue
                # g fixes every existing base point, so this one is new:
                # the line <e_j> when g moves it, otherwise the vector e_j
                proj = bool(off) and p > 2
                assert (pi, j, proj) not in have
                lv = _Level(pi, j, proj)
                v = np.zeros(self.n, dtype=np.int64)
                v[j] = 1
                lv.keys[self._key(v, lv)] = 0
                lv.vecs.append(v)
                lv.u.append(self.eye)
                lv.u_inv.append(self.eye)
                self._slots += 1
                return lv
        raise AssertionError("element fixes every base candidate but is not trivial mod rad")

    def _add_strong(self, level_index: int, g):
        lv = self.levels[level_index]
        p = self.primes[lv.prime_index]
        gi = self.inv(g)
        lv.gens.append((g, gi, (g % p).astype(np.int64)))
        lv.checked.append(0)
        self._extend_orbit(lv, new_gen=len(lv.gens) - 1)

    def _extend_orbit(self, lv: _Level, new_gen: int):
        p = self.primes[lv.prime_index]
        # the new generator on old points, then every generator on new points
        frontier = list(range(len(lv.vecs)))
        gen_ids = [new_gen]
        while frontier:
            nxt = []
            for idx in frontier:
                v = lv.vecs[idx]
                for gid in gen_ids:
                    g, gi, gp = lv.gens[gid]
                    w = (v @ gp) % p
                    k = self._key(w, lv)
                    if k in lv.keys:
                        continue
                    lv.keys[k] = len(lv.vecs)
                    lv.vecs.append(w)
                    lv.u.append(self.mul(lv.u[idx], g))
                    lv.u_inv.append(self.mul(gi, lv.u_inv[idx]))
                    nxt.append(len(lv.vecs) - 1)
                    self._slots += 1
                    if self._slots > self.orbit_budget:
                        raise MemoryBudgetExceeded(f"orbit storage mod {self.M}", self.orbit_budget)
            frontier = nxt
            gen_ids = range(len(lv.gens))

    def _sift_top(self, g, start: int = 0):
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            k = self._key(self._image(lv, g), lv)
            idx = lv.keys.get(k)
            if idx is None:
                return g, i
            g = self.mul(g, lv.u_inv[idx])
        return g, len(self.levels)

    def _absorb(self, g, start: int) -> int | None:
        """Sift g from level `start`; extend the structure if needed.

        Returns the deepest top level that received a new strong generator,
        or None if only the layers (or nothing) changed.
        """
        g, j = self._sift_top(g, start)
        if j < len(self.levels):
            for lvl in range(start, j + 1):
                self._add_strong(lvl, g)
            return j
        if self.is_one_mod_rad(g):
            self.layers.add(g)
            return None
        self.levels.append(self._new_level(g))
        j = len(self.levels) - 1
        for lvl in range(start, j + 1):
            self._add_strong(lvl, g)
        return j

    def _saturated(self) -> bool:
        return self.max_order is not None and self.order == self.max_order

    def _complete(self, i: int):
        tick = 0
        while i >= 0:
            lv = self.levels[i]
            restart = None
            for gid in range(len(lv.gens)):
                g = lv.gens[gid][0]
                while lv.checked[gid] < len(lv.vecs):
                    tick += 1
                    if tick % 256 == 0 and self._saturated():
                        return
                    idx = lv.checked[gid]
                    lv.checked[gid] += 1
                    v = lv.vecs[idx]
                    p = self.primes[lv.prime_index]
                    w = (v @ lv.gens[gid][2]) % p
                    jdx = lv.keys[self._key(w, lv)]
                    h = self.mul(self.mul(lv.u[idx], g), lv.u_inv[jdx])
                    if np.array_equal(h, self.eye):
                        continue
                    r = self._absorb(h, i + 1)
                    if r is not None:
                        restart = r
                        break
                if restart is not None:
                    break
            if restart is not None:
                i = restart
            else:
                i -= 1

    def add_generator(self, g) -> bool:
        """Add a generator; return False if it was already a member."""
        g = _as_array(g, self.M) if not isinstance(g, np.ndarray) or g.dtype != self.eye.dtype else g % self.M
        if self.M == 1 or self.contains(g):
            return False
        self.check_symplectic(g)
        self.generators.append(g)
        self.layers.add_conjugator(g, self.inv(g))
        r = self._absorb(g, 0)
        if r is not None:
            self._complete(r)
        return True

    # -- queries ------------------------------------------------------------
    def contains(self, g) -> bool:
        if self.M == 1:
            return True
        g = _as_array(g, self.M) if not isinstance(g, np.ndarray) or g.dtype != self.eye.dtype else g % self.M
        g, j = self._sift_top(g)
        if j < len(self.levels) or not self.is_one_mod_rad(g):
            return False
        return self.layers.reduce(g) is None

    @property
    def top_order(self) -> int:
        return prod(len(lv.vecs) for lv in self.levels)

    @property
    def layer_dims(self) -> list[int]:
        return self.layers.dims

    @property
    def order(self) -> int:
        return self.top_order * self.layers.order()

    @property
    def orbit_sizes(self) -> list[int]:
        return [len(lv.vecs) for lv in self.levels]

    def reduce(self, m: int) -> "FiniteMatrixGroup":
        if self.M % m:
            raise ValueError(f"{m} does not divide {self.M}")
        return FiniteMatrixGroup([g % m for g in self.generators], m, n=self.n,
                                 orbit_budget=self.orbit_budget, symplectic=self.symplectic)


def stabilizer_chain(generators: Sequence, modulus: int | None = None, **kw) -> FiniteMatrixGroup:
    if modulus is None:
        modulus = generators[0].m
    return FiniteMatrixGroup(generators, modulus, **kw)


# -- level and index ------------------------------------------------------------

def _level_from_structure(grp: FiniteMatrixGroup, p: int, confirm: int) -> int | None:
    n = grp.n
    full = sp_dim(n)
    dims = grp.layer_dims  # layer l: Γ(p^(l+1)) / Γ(p^(l+2))
    top_full = grp.top_order == sp_order(n, p)
    E = grp.fac[p]
    for e in range(0, E):
        if e == 0 and not top_full:
            continue
        first = max(e, 1)
        # layers first..E-1 (1-based) must be full, with `confirm` of them present
        if first + confirm - 1 > E - 1:
            return None
        if all(dims[l - 1] == full for l in range(first, E)):
            return e
    return None


def level_exponent(
    gens: Sequence,
    p: int,
    cap: int = 8,
    orbit_budget: int = DEFAULT_ORBIT_BUDGET,
) -> int:
    """Smallest e with Γ(p^e) contained in the closure of <gens> in Sp(n, Z_p).

    Decided from the layer dimensions of the image mod p^E: layer l is full
    iff the image contains the whole kernel of reduction p^(l+1) -> p^l.
    For p in {2, 3} two consecutive full layers are required.
    """
    confirm = 2 if p in (2, 3) else 1
    E = 2 + confirm
    while True:
        grp = FiniteMatrixGroup(gens, p**E, orbit_budget=orbit_budget)
        e = _level_from_structure(grp, p, confirm)
        if e is not None:
            return e
        if E - confirm > cap:
            raise LevelSearchExceeded(f"level exponent at {p} exceeds {cap}")
        E = min(2 * E, cap + confirm + 1)


def format_factored(fac: dict[int, int]) -> str:
    parts = [f"{p}^{a}" if a > 1 else f"{p}" for p, a in sorted(fac.items()) if a]
    return "*".join(parts) if parts else "1"


@dataclass
class ClosureReport:
    level: dict[int, int]
    index: dict[int, int]
    Pi: list[int]
    exponents: dict[int, int]
    image_order: int
    coeff: int | None = None
    sv_arithmetic: bool | None = None

    @property
    def level_value(self) -> int:
        return prod(p**a for p, a in self.level.items())

    @property
    def index_value(self) -> int:
        return prod(p**a for p, a in self.index.items())

    def level_str(self) -> str:
        return format_factored(self.level)

    def index_str(self) -> str:
        return format_factored(self.index)


def closure_level_and_index(
    gens: Sequence,
    Pi: Iterable[int],
    cap: int = 8,
    orbit_budget: int = DEFAULT_ORBIT_BUDGET,
) -> ClosureReport:
    """Level M and index |Sp(n, Z/M) : image of <gens> mod M| of the arithmetic closure."""
    gens = list(gens)
    n = gens[0].rows if isinstance(gens[0], RatMatrix) else np.asarray(gens[0]).shape[0]
    primes = sorted(set(Pi) | {2, 3})
    exps = {p: level_exponent(gens, p, cap=cap, orbit_budget=orbit_budget) for p in primes}
    level = {p: e for p, e in exps.items() if e}
    M = prod(p**e for p, e in level.items())
    if M == 1:
        order = 1
    else:
        order = FiniteMatrixGroup(gens, M, n=n, orbit_budget=orbit_budget).order
    total = sp_order(n, level)
    assert total % order == 0
    index = factorint(total // order)
    return ClosureReport(level, index, sorted(set(Pi)), exps, order)
