import random

import pytest

from sphyper.construct import PolyPair, build_group, enumerate_pairs
from sphyper.forms import (
    FormNotUnique,
    alternating_normal_form,
    invariant_form,
    kbar,
    normalize_group,
)
from sphyper.linalg import RatMatrix, standard_form


def _check_normalized(H, fd):
    n = H.n
    J = standard_form(n)
    g = fd.basechange_g
    assert g @ J @ g.T == fd.Phi
    for x in fd.L_generators:
        assert x @ J @ x.T == J
    assert fd.h @ J @ fd.h.T == J
    assert (fd.h - RatMatrix.identity(n)).rank() == 1


def test_form_is_invariant_and_skew(table_rows):
    for pair in table_rows.values():
        H = build_group(pair)
        Phi = invariant_form(H)
        assert Phi.T == Phi.scale(-1)
        for x in H.generators:
            assert x @ Phi @ x.T == Phi
        assert Phi.det() != 0


def test_normal_form_shape():
    rng = random.Random(3)
    for p in rng.sample(enumerate_pairs(6), 20):
        Phi = invariant_form(build_group(p))
        W, D = alternating_normal_form(Phi)
        s = len(D)
        target = [[0] * (2 * s) for _ in range(2 * s)]
        for i, d in enumerate(D):
            target[i][s + i], target[s + i][i] = d, -d
        assert W @ Phi @ W.T == RatMatrix(target)
        assert all(d > 0 for d in D)


def test_normalize_degree4_sample():
    rng = random.Random(0)
    for p in rng.sample(enumerate_pairs(4), 15):
        H = build_group(p)
        fd = normalize_group(H, candidates=4)
        _check_normalized(H, fd)
        assert fd.kbar == kbar(fd.L_generators)


def test_integral_rows_have_kbar_one(table_rows):
    for nr in (468, 534, 774, 819, 838):
        fd = normalize_group(build_group(table_rows[nr]))
        assert fd.kbar == 1
        assert all(x.is_integral() for x in fd.L_generators)


def test_reducible_input_has_no_unique_form():
    I = RatMatrix.identity(4)
    with pytest.raises(FormNotUnique):
        invariant_form([I])


def test_deterministic_choice(table_rows):
    H = build_group(table_rows[167])
    a = normalize_group(H, candidates=8, seed=5)
    b = normalize_group(H, candidates=8, seed=5)
    assert a.basechange_g == b.basechange_g and a.kbar == b.kbar
