from fractions import Fraction

import pytest

from sphyper.construct import PolyPair, build_group
from sphyper.density import (
    NotATransvection,
    candidate_primes,
    exceptional_primes,
    is_dense,
    render_word,
    surjective_mod_p,
)
from sphyper.forms import normalize_group
from sphyper.linalg import RatMatrix
from sphyper.words import standard_generators
from sphyper.zpoints import clearing_transvection, integer_points


def elementary(n):
    return [g for _, g in standard_generators(n)]


def test_full_group_is_dense():
    gens = elementary(4)
    dense, cert = is_dense(gens, gens[0], certificate=True)
    assert dense and cert.dimension == 16
    # candidates may include spurious primes; none survives the surjectivity check
    assert candidate_primes(cert) <= {2, 3}
    assert exceptional_primes(gens, gens[0], cert=cert) == set()


def test_abelian_group_is_not_dense():
    U1, U2 = elementary(4)[:2]
    assert not is_dense([U1, U2], U1)


def test_reducible_group_is_not_dense():
    # upper-triangular parabolic: fixes the span of the last s basis vectors
    gens = [g for name, g in standard_generators(4) if not name.startswith("L")]
    assert not is_dense(gens, gens[0])


def test_transvection_is_required():
    with pytest.raises(NotATransvection):
        is_dense(elementary(4), RatMatrix.identity(4))
    U1 = elementary(4)[0]
    with pytest.raises(NotATransvection):
        is_dense(elementary(4), U1 @ elementary(4)[1])


@pytest.mark.parametrize("pair", [PolyPair((1, 1, 1, 1), (5,)), PolyPair((1, 1, 1, 1), (10,))])
def test_degree4_reference_groups(pair):
    H = build_group(pair)
    assert is_dense(H.generators, H.h_1)


def test_certificate_words_evaluate_to_basis(table_rows):
    H = build_group(table_rows[468])
    dense, cert = is_dense(H.generators, H.h_1, certificate=True)
    assert dense
    gens = H.generators
    invs = [g.inverse() for g in gens]
    for w, B in list(zip(cert.basis_words, cert.basis))[:12]:
        X = RatMatrix.identity(6)
        for x in w:
            X = X @ (H.h_1 if x == 0 else gens[x - 1] if x > 0 else invs[-x - 1])
        assert X == B
    assert render_word((1, 0, -2)) == "g1 t g2^-1"


def test_surjectivity():
    gens = elementary(4)
    assert surjective_mod_p(gens, 2)
    assert surjective_mod_p(gens, 5)
    squares = [g @ g for g in gens]
    assert not surjective_mod_p(squares, 2)
    assert surjective_mod_p(squares, 3)


def test_fallback_agrees_with_order(table_rows):
    """For p >= 5 the irreducibility criterion must agree with the exact order."""
    H = build_group(table_rows[838])
    fd = normalize_group(H)
    data = integer_points(fd.L_generators, fd.h)
    for p in (5, 7, 11):
        by_order = surjective_mod_p(data.LZ_generators, p, data.lam, vector_budget=p**6)
        by_spin = surjective_mod_p(data.LZ_generators, p, data.lam, vector_budget=1)
        assert by_order == by_spin
    assert not surjective_mod_p(data.LZ_generators, 7, data.lam, vector_budget=1)


def test_pi_does_not_depend_on_transvection_power(table_rows):
    H = build_group(table_rows[774])
    fd = normalize_group(H)
    data = integer_points(fd.L_generators, fd.h)
    I = RatMatrix.identity(6)
    results = []
    for j in (1, 2, 3):
        lam = I + (data.lam - I).scale(j)
        results.append(exceptional_primes(data.LZ_generators, lam))
    assert results[0] == results[1] == results[2] == {2}


def test_clearing_transvection():
    h = RatMatrix([[1, 0], [Fraction(1, 6), 1]])
    k, lam = clearing_transvection(h)
    assert k == 6 and lam.is_integral()
