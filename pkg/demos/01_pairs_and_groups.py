"""
Cyclotomic pairs and their groups
=================================

A pair (f, g) of degree-n products of cyclotomic polynomials with no common
factor and f(0) = g(0) defines a group generated by two companion matrices.
This script enumerates the pairs, looks at one of them and builds its group.
"""
from collections import Counter

from sphyper.construct import build_group, coeff_and_criterion, enumerate_pairs, parse_pair
from sphyper.linalg import RatMatrix
from sphyper.poly import cyclotomic

###############################################################################
# Cyclotomic building blocks
# --------------------------
# Products over the divisors of k recover t^k - 1.

for k in (1, 2, 6, 14, 18):
    print(f"Phi_{k:<2d} = {cyclotomic(k)}")

###############################################################################
# Enumerating admissible pairs
# ----------------------------
# Pairs are listed once per unordered pair and numbered by Coeff, the absolute
# leading coefficient of f - g.

for n in (4, 6):
    pairs = enumerate_pairs(n)
    by_coeff = Counter(p.coeff for p in pairs)
    print(f"degree {n}: {len(pairs)} pairs, by Coeff: {dict(sorted(by_coeff.items()))}")

###############################################################################
# One pair in detail
# ------------------
# Pairs are written with ``Ck^m`` for the m-th power of the k-th cyclotomic
# polynomial.

pair = parse_pair("C1^6 | C14")
print("f =", pair.f)
print("g =", pair.g)
coeff, small = coeff_and_criterion(pair)
print(f"Coeff = {coeff}; arithmetic by the Coeff <= 2 criterion: {small}")

H = build_group(pair)
I = RatMatrix.identity(pair.n)
print("h_1 - 1 has rank", (H.h_1 - I).rank())
print("h_0 h_inf h_1 == 1:", H.h_0 @ H.h_inf @ H.h_1 == I)
