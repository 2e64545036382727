"""
Level and index of the arithmetic closure
=========================================

The closure of an integral group is determined by its images modulo prime
powers.  For each relevant prime the stabilizer chain of the image mod p^E
shows how deep the congruence kernel goes, which gives the level; the order
of the image mod the level gives the index.
"""
from sphyper.congruence import FiniteMatrixGroup, closure_level_and_index, sp_order
from sphyper.construct import build_group, parse_pair
from sphyper.density import exceptional_primes
from sphyper.forms import normalize_group
from sphyper.words import standard_generators
from sphyper.zpoints import integer_points

###############################################################################
# Finite images
# -------------

gens = [x for _, x in standard_generators(4)]
for m in (2, 3, 4, 12):
    G = FiniteMatrixGroup(gens, m)
    print(f"|Sp(4, Z/{m})| = {G.order} (formula {sp_order(4, m)})")

###############################################################################
# Squares of elementary matrices
# ------------------------------

rep = closure_level_and_index([x @ x for x in gens], [])
print("squares: level", rep.level_str(), "index", rep.index_str())

###############################################################################
# A degree-6 example
# ------------------

H = build_group(parse_pair("C1^6 | C18"))
fd = normalize_group(H)
z = integer_points(fd.L_generators, fd.h)
Pi = exceptional_primes(z.LZ_generators, z.lam)
rep = closure_level_and_index(z.LZ_generators, Pi)
print("Pi", sorted(Pi), "level", rep.level_str(), "index", rep.index_str())
print("exponent per prime:", rep.exponents)
