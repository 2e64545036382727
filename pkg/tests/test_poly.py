from hypothesis import given, strategies as st

from sphyper.poly import (
    IntPoly,
    cyclotomic,
    cyclotomic_factorization,
    divisors,
    euler_phi,
    poly_gcd_is_one,
    product_of_cyclotomics,
)


def test_small_cyclotomics():
    assert cyclotomic(1) == IntPoly([-1, 1])
    assert cyclotomic(2) == IntPoly([1, 1])
    assert cyclotomic(4) == IntPoly([1, 0, 1])
    assert cyclotomic(6) == IntPoly([1, -1, 1])
    assert cyclotomic(12) == IntPoly([1, 0, -1, 0, 1])


def test_product_over_divisors_is_t_k_minus_one():
    for k in range(1, 201):
        prod = IntPoly.one()
        for d in divisors(k):
            prod = prod * cyclotomic(d)
        assert prod == IntPoly.monomial(k) - IntPoly.one()


def test_degree_is_totient():
    for k in range(1, 60):
        assert cyclotomic(k).degree == euler_phi(k)


def test_cyclotomic_105_has_a_coefficient_two():
    assert -2 in cyclotomic(105).coeffs


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_division_identity(a, b):
    f, g = IntPoly(a), IntPoly(b + [1])
    q, r = f.divmod(g)
    assert q * g + r == f
    assert r.degree < g.degree


@given(st.lists(st.sampled_from([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18]), min_size=1, max_size=4))
def test_factorization_round_trip(ks):
    f = product_of_cyclotomics(ks)
    fac = cyclotomic_factorization(f)
    assert fac is not None
    assert sorted(fac.elements()) == sorted(ks)


def test_non_cyclotomic_rejected():
    assert cyclotomic_factorization(IntPoly([1, 1, 1, 1, 1, 1, 1, 1])) is not None  # t^8-1 / (t-1)
    assert cyclotomic_factorization(IntPoly([-1, 1, 1])) is None


def test_coprimality():
    assert poly_gcd_is_one(cyclotomic(3), cyclotomic(6))
    assert not poly_gcd_is_one(cyclotomic(3) * cyclotomic(2), cyclotomic(3))
