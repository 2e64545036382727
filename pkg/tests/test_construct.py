import pytest

from sphyper.construct import (
    PolyPair,
    UnsupportedDegree,
    build_group,
    coeff_and_criterion,
    enumerate_pairs,
    parse_pair,
)
from sphyper.linalg import RatMatrix
from sphyper.poly import cyclotomic


def test_counts():
    assert len(enumerate_pairs(4)) == 121
    six = enumerate_pairs(6)
    assert len(six) == 916
    assert len(enumerate_pairs(6, ordered=True)) == 2 * 916


def test_numbering_is_sequential_and_sorted():
    ps = enumerate_pairs(6)
    assert [p.nr for p in ps] == list(range(1, len(ps) + 1))
    keys = [(p.coeff, p.f_indices, p.g_indices) for p in ps]
    assert keys == sorted(keys)


def test_enumerated_pairs_are_admissible():
    for p in enumerate_pairs(4):
        p.check()
        assert p.f(0) == p.g(0)


def test_parse_round_trip():
    for p in enumerate_pairs(4)[:40]:
        assert parse_pair(p.canonical()) == p
    assert parse_pair("C1^6 | C14") == PolyPair((1,) * 6, (14,))
    with pytest.raises(ValueError):
        parse_pair("C1^6, C14")


def test_coeff_on_table(table_rows):
    expected = {158: 1, 162: 1, 167: 1, 390: 2, 394: 2, 437: 3, 468: 3, 534: 3, 774: 5, 819: 6, 838: 7}
    for nr, pair in table_rows.items():
        c, sv = coeff_and_criterion(pair)
        assert c == expected[nr]
        assert sv == (c <= 2)


def test_build_group_relations(table_rows):
    for pair in table_rows.values():
        H = build_group(pair)
        I = RatMatrix.identity(pair.n)
        assert H.h_0 @ H.h_inf @ H.h_1 == I
        N = H.h_1 - I
        assert N.rank() == 1
        # characteristic polynomials: f(A) = 0 and g(B) = 0
        f, g = pair.f, pair.g
        for poly, X in ((f, H.A), (g, H.B)):
            acc = RatMatrix.zeros(pair.n, pair.n)
            power = I
            for k in range(poly.degree + 1):
                acc = acc + power.scale(poly.coeff(k))
                power = power @ X
            assert acc == RatMatrix.zeros(pair.n, pair.n)


def test_rejections():
    with pytest.raises(ValueError):
        build_group(PolyPair((1, 1), (1, 1)))
    with pytest.raises(UnsupportedDegree):
        enumerate_pairs(5)
    with pytest.raises(ValueError):
        PolyPair((1,), (3,))
    assert cyclotomic(3)(1) == 3
