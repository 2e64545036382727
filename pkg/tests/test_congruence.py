import itertools
import random

import numpy as np
import pytest

from sphyper.congruence import (
    FiniteMatrixGroup,
    MemoryBudgetExceeded,
    closure_level_and_index,
    format_factored,
    level_exponent,
    sp_dim,
    sp_order,
)
from sphyper.words import standard_generators

J4 = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])


def elementary(n, m):
    return [np.array(g.int_rows(), dtype=np.int64) % m for _, g in standard_generators(n)]


def all_symplectic_mod2():
    """Every 4x4 matrix over F_2 preserving J, by exhaustive search."""
    bits = np.array(list(itertools.product((0, 1), repeat=16)), dtype=np.int64).reshape(-1, 4, 4)
    prod = np.einsum("kij,jl,kml->kim", bits, J4, bits) % 2
    return bits[(prod == J4 % 2).all(axis=(1, 2))]


def closure_order(gens, m):
    """Order of <gens> mod m by breadth-first closure."""
    n = gens[0].shape[0]
    one = np.eye(n, dtype=np.int64)
    seen = {one.tobytes()}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = (x @ g) % m
                k = y.tobytes()
                if k not in seen:
                    seen.add(k)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def test_sp_order_formula():
    assert sp_order(2, 2) == 6
    assert sp_order(4, 2) == 720
    assert sp_order(4, 3) == 51840
    assert sp_order(6, 2) == 1451520
    assert sp_order(4, 4) == 720 * 2**10
    assert sp_order(4, 6) == 720 * 51840
    assert sp_order(6, {2: 1, 3: 1}) == sp_order(6, 6)
    assert sp_dim(4) == 10


def test_brute_force_sp4_2():
    elems = all_symplectic_mod2()
    assert len(elems) == 720
    G = FiniteMatrixGroup(elementary(4, 2), 2)
    assert G.order == 720
    assert all(G.contains(x) for x in elems[::37])


def test_level_two_kernel_count():
    """{1 + 2X mod 4 : XJ + JX^T = 0 mod 2} has p^(2s^2+s) elements for p = 2, s = 2."""
    bits = np.array(list(itertools.product((0, 1), repeat=16)), dtype=np.int64).reshape(-1, 4, 4)
    cond = (np.einsum("kij,jl->kil", bits, J4) + np.einsum("ij,klj->kil", J4, bits)) % 2 == 0
    X = bits[cond.all(axis=(1, 2))]
    elems = {((np.eye(4, dtype=np.int64) + 2 * x) % 4).tobytes() for x in X}
    assert len(elems) == 2 ** sp_dim(4) == 2**10
    for x in X[:50]:
        g = (np.eye(4, dtype=np.int64) + 2 * x) % 4
        assert ((g @ J4 @ g.T - J4) % 4 == 0).all()


def test_sp6_2():
    assert FiniteMatrixGroup(elementary(6, 2), 2).order == 1451520


def test_full_group_mod_composite():
    assert FiniteMatrixGroup(elementary(4, 12), 12).order == sp_order(4, 12)


def _random_subgroup(rng, p, k):
    gens = elementary(4, p)
    out = []
    for _ in range(k):
        x = np.eye(4, dtype=np.int64)
        for _ in range(rng.randint(1, 12)):
            x = (x @ rng.choice(gens)) % p
        out.append(x)
    return out


@pytest.mark.parametrize("p", [2, 3])
def test_random_subgroups_match_closure(p):
    rng = random.Random(p)
    for _ in range(10):
        gens = _random_subgroup(rng, p, rng.randint(1, 3))
        G = FiniteMatrixGroup(gens, p)
        assert G.order == closure_order(gens, p)


def test_membership_matches_closure():
    rng = random.Random(11)
    gens = _random_subgroup(rng, 3, 1)
    G = FiniteMatrixGroup(gens, 3)
    inside = (gens[0] @ gens[0]) % 3
    assert G.contains(inside)
    full = FiniteMatrixGroup(elementary(4, 3), 3)
    outside = next(g for g in elementary(4, 3) if not G.contains(g))
    assert full.contains(outside)


def test_reduce_is_compatible():
    rng = random.Random(2)
    gens = [np.array(g, dtype=np.int64) for g in _random_subgroup(rng, 36, 2)]
    G = FiniteMatrixGroup(gens, 36)
    assert G.reduce(6).order == FiniteMatrixGroup([g % 6 for g in gens], 6).order
    assert G.order % G.reduce(6).order == 0


def test_level_of_full_group():
    gens = [g for _, g in standard_generators(4)]
    rep = closure_level_and_index(gens, [5])
    assert rep.level_value == 1 and rep.index_value == 1
    assert level_exponent(gens, 2) == 0


def test_level_of_elementary_powers():
    """p-th powers of the elementary generators reach 8 of the 10 kernel directions mod p^2."""
    gens = [g for _, g in standard_generators(4)]
    sq = closure_level_and_index([g @ g for g in gens], [])
    assert sq.level == {2: 2}
    assert sq.index_value == 720 * 2**2
    cube = closure_level_and_index([g @ g @ g for g in gens], [])
    assert cube.level == {3: 2}
    assert cube.index_value == 51840 * 3**2


def test_budget_is_enforced():
    with pytest.raises(MemoryBudgetExceeded):
        FiniteMatrixGroup(elementary(6, 7), 7, orbit_budget=1000).order


def test_format_factored():
    assert format_factored({2: 8, 3: 14, 5: 2}) == "2^8*3^14*5^2"
    assert format_factored({}) == "1"
    assert format_factored({7: 1, 2: 1}) == "2*7"
