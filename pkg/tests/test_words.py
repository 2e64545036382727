import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sphyper.linalg import RatMatrix, standard_form
from sphyper.words import (
    NotIntegral,
    NotSymplectic,
    SymplecticWord,
    evaluate,
    export_words,
    express,
    random_word,
    standard_generators,
)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_generators_are_symplectic(n):
    J = standard_form(n)
    gens = standard_generators(n)
    s = n // 2
    assert len(gens) == 2 * s + s * (s - 1) + s * (s - 1)
    for _, g in gens:
        assert g @ J @ g.T == J


def test_identity_and_single_letters():
    assert express(RatMatrix.identity(4)).letters == ()
    for k, (_, g) in enumerate(standard_generators(4), start=1):
        assert evaluate(express(g)) == g


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([4, 6]), st.integers(0, 60), st.integers(0, 10**6))
def test_round_trip(n, length, seed):
    g = evaluate(random_word(n, length, random.Random(seed)))
    assert evaluate(express(g)) == g


def test_rejects_bad_input():
    with pytest.raises(NotIntegral):
        express(RatMatrix([[Fraction(1, 2), 0], [0, 2]]))
    with pytest.raises(NotSymplectic):
        express(RatMatrix([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))


def test_export_format():
    w = SymplecticWord(4, ((1, 2), (3, -1)))
    text = export_words([w])
    lines = text.splitlines()
    assert lines[0] == "# degree 4"
    assert lines[2].startswith("# g1 U1: ")
    assert lines[-1] == "g1^2 g3^-1"
    assert export_words([]) == ""
