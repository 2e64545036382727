"""
Integer points of a rational group
==================================

For a group L inside Sp(n, Q) with bounded denominators, the integer points
L_Z have finite index.  Cosets of L_Z correspond to images of the standard
lattice, so an orbit computation gives the index and Schreier generators.
"""
from fractions import Fraction

from sphyper.construct import build_group, parse_pair
from sphyper.forms import normalize_group
from sphyper.linalg import RatMatrix
from sphyper.words import standard_generators
from sphyper.zpoints import integer_points

###############################################################################
# A group with a known answer
# ---------------------------
# Conjugating SL(2, Z) by diag(6, 1/6) gives a group whose integer points are
# the conjugate of Gamma_0(36), of index 36 * (3/2) * (4/3) = 72.

g = RatMatrix([[6, 0], [0, Fraction(1, 6)]])
gens = [g @ x @ g.inverse() for _, x in standard_generators(2)]
data = integer_points(gens, gens[0])
print("index:", data.index, "(expected 72)")
print("two-stage split:", len(data.transversal_L_over_K), "x", len(data.transversal_K_over_LZ),
      "with sigma =", data.sigma)

###############################################################################
# A hypergeometric group with non-integral generators
# ---------------------------------------------------

H = build_group(parse_pair("C1^2*C2^2*C4 | C3*C12"))
fd = normalize_group(H)
data = integer_points(fd.L_generators, fd.h)
print("k-bar", fd.kbar, "| L : L_Z | =", data.index, "d =", data.d)
print(len(data.LZ_generators), "generators of L_Z, all integral:",
      all(x.is_integral() for x in data.LZ_generators))
print("integral transvection uses k =", data.k)
