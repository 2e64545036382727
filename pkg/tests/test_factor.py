from math import prod

import pytest
from hypothesis import given, strategies as st

from sphyper.factor import FactorizationIncomplete, factorint, is_probable_prime, prime_factors

PRIMES = [2, 3, 5, 7, 11, 13, 10007, 65537, 999983, 1000003, 2147483647]


def test_small():
    assert factorint(1) == {}
    assert factorint(2) == {2: 1}
    assert factorint(360) == {2: 3, 3: 2, 5: 1}


@given(st.lists(st.sampled_from(PRIMES), min_size=1, max_size=6))
def test_products_of_known_primes(ps):
    n = prod(ps)
    fac = factorint(n)
    assert prod(p**e for p, e in fac.items()) == n
    assert set(fac) == set(ps)


def test_semiprime_needs_rho():
    p, q = 1000000007, 998244353
    assert factorint(p * q) == {p: 1, q: 1}


def test_primality():
    assert is_probable_prime(2**61 - 1)
    assert not is_probable_prime(561)
    assert not is_probable_prime(3215031751)


def test_incomplete_is_reported():
    n = (2**61 - 1) * (2**89 - 1)
    with pytest.raises(FactorizationIncomplete) as info:
        factorint(12 * n, effort=1000)
    assert info.value.cofactor == n
    assert info.value.partial == {2: 2, 3: 1}


def test_prime_factors_and_negative():
    assert prime_factors(2**8 * 3**14 * 5**2) == {2, 3, 5}
    with pytest.raises(ValueError):
        factorint(0)
