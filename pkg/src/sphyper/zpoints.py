"""Integer points L_Z = L ∩ GL(n, Z) of an integral group L <= Sp(n, Q).

Cosets L_Z x are identified by the row lattice Z^n x, so the orbit of the
coset of 1 under right multiplication by the generators gives a transversal
and Schreier generators.  The lattice is keyed by its Hermite normal form.

A two-stage variant first walks cosets of K = L ∩ Sp(n, Z[1/sigma]) using
only the lattice at the primes dividing the denominators but not sigma, then
walks cosets of L_Z inside K.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from math import lcm, prod
from typing import Callable, Hashable, Sequence

from .factor import factorint
from .linalg import RatMatrix, hnf_mod, standard_form

__all__ = [
    "IntegerPointsData",
    "NotIntegral",
    "TransversalBudgetExceeded",
    "VerificationFailed",
    "Word",
    "lattice_key",
    "local_lattice_key",
    "integrality_scale",
    "coset_orbit",
    "integer_points",
    "verify_zpoints",
    "clearing_transvection",
]


class NotIntegral(ValueError):
    pass


class TransversalBudgetExceeded(MemoryError):
    pass


class VerificationFailed(AssertionError):
    pass


# A word is a tuple of nonzero ints: +i / -i stands for generator i-1 or its inverse.
Word = tuple


def _inv_word(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def evaluate_word(w: Word, gens: Sequence[RatMatrix], invs: Sequence[RatMatrix]) -> RatMatrix:
    out = RatMatrix.identity(gens[0].rows)
    for x in w:
        out = out @ (gens[x - 1] if x > 0 else invs[-x - 1])
    return out


def lattice_key(x: RatMatrix) -> Hashable:
    """Canonical form of the row lattice Z^n x (x of determinant ±1)."""
    d = x.den
    n = x.rows
    return d, hnf_mod(x.num, d**n)


def local_lattice_key(x: RatMatrix, primes: Sequence[int]) -> Hashable:
    """Canonical form of Z_q^n x for each q in ``primes``."""
    key = []
    n = x.rows
    for q in primes:
        dq = 1
        while x.den % (dq * q) == 0:
            dq *= q
        if dq == 1:
            key.append((q, 1))
            continue
        D = dq**n
        u = x.den // dq  # unit at q
        uinv = pow(u, -1, D)
        rows = [[(v * uinv) % D for v in r] for r in x.num]
        key.append((q, dq, hnf_mod(rows, D)))
    return tuple(key)


def clearing_transvection(h: RatMatrix) -> tuple[int, RatMatrix]:
    """(k, 1 + k(h - 1)) with k minimal such that the result is integral."""
    I = RatMatrix.identity(h.rows)
    k = (h - I).den
    return k, I + (h - I).scale(k)


def integrality_scale(
    L_generators: Sequence[RatMatrix],
    max_depth: int = 64,
    max_cosets: int = 1_000_000,
) -> int:
    """Smallest d with d*L integral, by walking products of generators.

    Products are deduplicated by their coset of integer points, so a walk
    that closes up is exact.  Otherwise the walk stops once a full round of
    multiplication by all generators and inverses leaves the denominator
    lcm unchanged.  Raises NotIntegral if neither happens within the budget.
    """
    gens = list(L_generators)
    gens += [g.inverse() for g in gens]
    d = 1
    one = RatMatrix.identity(gens[0].rows)
    seen = {lattice_key(one)}
    layer = [one]
    for _ in range(max_depth):
        new_layer = []
        before = d
        for x in layer:
            for s in gens:
                y = x @ s
                k = lattice_key(y)
                if k in seen:
                    continue
                seen.add(k)
                d = lcm(d, y.den)
                new_layer.append(y)
                if len(seen) > max_cosets:
                    raise NotIntegral(f"more than {max_cosets} cosets of integer points")
        if not new_layer or (d == before and len(seen) > 1 and _stable(new_layer, gens, d)):
            return d
        layer = new_layer
    raise NotIntegral(f"denominators did not stabilize within {max_depth} rounds")


def _stable(layer, gens, d) -> bool:
    return all((x @ s).den * 1 <= d and d % (x @ s).den == 0 for x in layer for s in gens)


@dataclass
class _Orbit:
    reps: list[RatMatrix]
    rep_words: list[Word]
    schreier: list[RatMatrix]
    schreier_words: list[Word]


def coset_orbit(
    generators: Sequence[RatMatrix],
    key: Callable[[RatMatrix], Hashable],
    max_cosets: int = 1_000_000,
    words: Sequence[Word] | None = None,
) -> _Orbit:
    """Transversal and Schreier generators of the subgroup {x : key(x) = key(1)}.

    ``key(x) == key(y)`` must hold exactly when x y^-1 lies in the subgroup.
    Schreier generators r_i s r_j^-1 equal to 1 are dropped.
    """
    n = generators[0].rows
    if words is None:
        words = [(i + 1,) for i in range(len(generators))]
    one = RatMatrix.identity(n)
    reps, rep_words, rep_inv = [one], [()], [one]
    index = {key(one): 0}
    schreier, schreier_words = [], []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for s, w in zip(generators, words):
            y = reps[i] @ s
            yw = rep_words[i] + tuple(w)
            k = key(y)
            j = index.get(k)
            if j is None:
                index[k] = len(reps)
                reps.append(y)
                rep_words.append(yw)
                rep_inv.append(y.inverse())
                queue.append(len(reps) - 1)
                if len(reps) > max_cosets:
                    raise TransversalBudgetExceeded(f"more than {max_cosets} cosets")
                continue
            z = y @ rep_inv[j]
            if not z.is_identity():
                schreier.append(z)
                schreier_words.append(yw + _inv_word(rep_words[j]))
    return _Orbit(reps, rep_words, schreier, schreier_words)


def _thin(elems, words, count, max_len, rng) -> tuple[list, list]:
    if len(elems) <= count:
        return list(elems), list(words)
    out, out_w = [], []
    for _ in range(count):
        k = rng.randint(1, max_len)
        picks = [rng.randrange(len(elems)) for _ in range(k)]
        x = elems[picks[0]]
        w = tuple(words[picks[0]])
        for p in picks[1:]:
            x = x @ elems[p]
            w += tuple(words[p])
        if not x.is_identity():
            out.append(x)
            out_w.append(w)
    return out, out_w


@dataclass
class IntegerPointsData:
    d: int
    sigma: int
    transversal_L_over_K: list[RatMatrix]
    transversal_K_over_LZ: list[RatMatrix]
    LZ_generators: list[RatMatrix]
    LZ_words: list[Word]
    index: int
    lam: RatMatrix
    k: int
    schreier_all: list[RatMatrix] = field(default_factory=list, repr=False)
    verified: bool = False

    @property
    def lambda_(self) -> RatMatrix:
        return self.lam


def integer_points(
    L_generators: Sequence[RatMatrix],
    h: RatMatrix,
    seed: int = 0,
    subproducts: int = 300,
    max_len: int = 8,
    max_cosets: int = 1_000_000,
    two_stage: bool = True,
) -> IntegerPointsData:
    """Generators of L ∩ Sp(n, Z), the index |L : L_Z| and an integral transvection."""
    gens = list(L_generators)
    n = gens[0].rows
    mu = 1
    for g in gens:
        mu = lcm(mu, g.den, g.inverse().den)
    primes = sorted(factorint(mu)) if mu > 1 else []
    rng = random.Random(seed)
    ext = gens + [g.inverse() for g in gens]
    ext_words = [(i + 1,) for i in range(len(gens))] + [(-(i + 1),) for i in range(len(gens))]

    # stage 1: K = elements integral at the largest denominator prime
    if two_stage and len(primes) > 1:
        local = primes[-1:]
        sigma = prod(primes[:-1])
        o1 = coset_orbit(ext, lambda x: local_lattice_key(x, local), max_cosets, ext_words)
        K_gens, K_words = _thin(o1.schreier, o1.schreier_words, subproducts, max_len, rng)
        T1 = o1.reps
    else:
        sigma = prod(primes) if primes else 1
        K_gens, K_words, T1 = ext, ext_words, [RatMatrix.identity(n)]
    if not K_gens:
        K_gens, K_words = [RatMatrix.identity(n)], [()]
    K_ext = K_gens + [g.inverse() for g in K_gens]
    K_ext_words = K_words + [_inv_word(w) for w in K_words]

    # stage 2: integer points inside K
    o2 = coset_orbit(K_ext, lattice_key, max_cosets, K_ext_words)
    Z_gens, Z_words = _thin(o2.schreier, o2.schreier_words, subproducts, max_len, rng)
    Z_gens = [g for g in Z_gens]
    for g in Z_gens:
        if not g.is_integral():
            raise AssertionError("Schreier generator is not integral")
    d = 1
    for x in T1:
        for y in o2.reps:
            d = lcm(d, (y @ x).den)
    k, lam = clearing_transvection(h)
    if not Z_gens:
        Z_gens, Z_words = [RatMatrix.identity(n)], [()]
    return IntegerPointsData(
        d=d,
        sigma=sigma,
        transversal_L_over_K=T1,
        transversal_K_over_LZ=o2.reps,
        LZ_generators=Z_gens,
        LZ_words=Z_words,
        index=len(T1) * len(o2.reps),
        lam=lam,
        k=k,
        schreier_all=o2.schreier,
    )


def verify_zpoints(data: IntegerPointsData, level_M: int, raise_on_failure: bool = False) -> bool:
    """Check mod level_M that every Schreier generator lies in <LZ_generators>."""
    from .congruence import FiniteMatrixGroup

    if level_M == 1:
        data.verified = True
        return True
    grp = FiniteMatrixGroup(data.LZ_generators, level_M, n=data.LZ_generators[0].rows)
    ok = all(grp.contains(s.mod(level_M).a) for s in data.schreier_all)
    data.verified = ok
    if not ok and raise_on_failure:
        raise VerificationFailed(f"a Schreier generator escapes the chosen subgroup mod {level_M}")
    return ok


def is_symplectic(x: RatMatrix) -> bool:
    J = standard_form(x.rows)
    return x @ J @ x.T == J
