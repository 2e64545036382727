from fractions import Fraction
import random

import numpy as np
from hypothesis import given, settings, strategies as st

from sphyper.linalg import RatMatrix, hnf_mod, mod_inverse, rank_mod_p, rational_kernel, standard_form

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(square(4))
def test_inverse_when_invertible(rows):
    A = RatMatrix(rows)
    if A.det() == 0:
        return
    assert (A @ A.inverse()).is_identity()
    assert (A.inverse() @ A).is_identity()


@given(square(3), square(3))
def test_det_is_multiplicative(a, b):
    A, B = RatMatrix(a), RatMatrix(b)
    assert (A @ B).det() == A.det() * B.det()


def test_fractions_are_normalized():
    A = RatMatrix([[Fraction(1, 2), Fraction(2, 4)], [0, 1]])
    assert A.den == 2
    assert A == RatMatrix([[1, 1], [0, 2]], den=2)
    assert A.scale(2).is_integral()


@given(st.lists(st.lists(small, min_size=5, max_size=5), min_size=1, max_size=4))
def test_kernel_vectors_are_annihilated(rows):
    M = RatMatrix(rows)
    ker = rational_kernel(M)
    assert len(ker) == 5 - M.rank()
    for v in ker:
        assert all(sum(r[j] * v[j] for j in range(5)) == 0 for r in rows)


def test_standard_form():
    J = standard_form(4)
    assert J @ J == RatMatrix.identity(4).scale(-1)
    assert J.T == J.scale(-1)


@given(st.lists(st.lists(st.integers(-50, 50), min_size=3, max_size=3), min_size=1, max_size=5),
       st.integers(0, 10**6))
def test_hnf_is_a_lattice_invariant(rows, seed):
    """Unimodular recombination and reordering of generators leave the form unchanged."""
    D = 360
    rng = random.Random(seed)
    mixed = [r[:] for r in rows]
    rng.shuffle(mixed)
    for _ in range(6):
        i, j = rng.randrange(len(mixed)), rng.randrange(len(mixed))
        if i != j:
            k = rng.randint(-3, 3)
            mixed[i] = [a + k * b for a, b in zip(mixed[i], mixed[j])]
    mixed.append([D * rng.randint(-2, 2) for _ in range(3)])
    assert hnf_mod(rows, D) == hnf_mod(mixed, D)


def test_hnf_index_and_shape():
    H = hnf_mod([[2, 0], [0, 3]], 12)
    assert H == ((2, 0), (0, 3))
    H = hnf_mod([[1, 1]], 4)
    # lattice Z(1,1) + 4Z^2
    assert H == ((1, 1), (0, 4))


@settings(max_examples=30)
@given(square(4), st.sampled_from([2, 3, 4, 9, 25]))
def test_mod_inverse(rows, m):
    a = np.array(rows, dtype=np.int64) % m
    det = int(round(np.linalg.det(a)))
    if np.gcd(det, m) != 1:
        return
    b = mod_inverse(a, m)
    assert ((a @ b) % m == np.eye(4, dtype=np.int64)).all()


def test_rank_mod_p():
    assert rank_mod_p([[1, 1], [1, 3]], 2) == 1
    assert rank_mod_p([[1, 1], [1, 3]], 3) == 2
