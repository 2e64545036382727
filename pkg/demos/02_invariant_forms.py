"""
Invariant forms and the move into Sp(n, Q)
==========================================

The two companion matrices preserve a unique skew form up to scaling.  A
rational base change turns it into the standard form J, and among several
candidate base changes we keep the one whose generators are closest to
integral (the k-bar heuristic).
"""
from sphyper.construct import build_group, parse_pair
from sphyper.forms import alternating_normal_form, invariant_form, normalize_group
from sphyper.linalg import standard_form

###############################################################################
# The form
# --------

H = build_group(parse_pair("C1^2*C2^2*C4 | C3*C12"))
Phi = invariant_form(H)
print("Phi =")
print(Phi)
W, D = alternating_normal_form(Phi)
print("elementary divisors:", D)

###############################################################################
# Choosing a base change
# ----------------------
# k-bar is the lcm over generators of the smallest power that is integral.

for candidates in (1, 4, 16):
    fd = normalize_group(H, candidates=candidates)
    print(f"{candidates:2d} candidates -> k-bar {fd.kbar} (picked candidate {fd.candidate})")

J = standard_form(6)
print("generators preserve J:", all(x @ J @ x.T == J for x in fd.L_generators))
print("denominators of the generators:", [x.den for x in fd.L_generators])
