"""
Zariski density and exceptional primes
======================================

Density is certified by spinning the enveloping algebra of the normal closure
of the transvection up to all of M_n.  The same spanning set bounds the primes
where reduction could fail to be onto Sp(n, p); each candidate is then checked
exactly.
"""
from sphyper.construct import build_group, enumerate_pairs, parse_pair
from sphyper.density import candidate_primes, exceptional_primes, is_dense, render_word, surjective_mod_p
from sphyper.forms import normalize_group
from sphyper.zpoints import integer_points

###############################################################################
# Dense and non-dense groups
# --------------------------

for text in ("C1^6 | C18", "C9 | C18", "C1^4 | C5"):
    H = build_group(parse_pair(text))
    print(f"{text:12s} dense: {is_dense(H.generators, H.h_1)}")

groups = [build_group(p) for p in enumerate_pairs(4)]
dense = sum(is_dense(G.generators, G.h_1) for G in groups)
print(f"degree 4: {dense} of {len(groups)} groups are dense")

###############################################################################
# The certificate
# ---------------
# Basis elements are words in the generators and the transvection ``t``.

H = build_group(parse_pair("C1^6 | C18"))
fd = normalize_group(H)
z = integer_points(fd.L_generators, fd.h)
ok, cert = is_dense(z.LZ_generators, z.lam, certificate=True)
print("last basis word:", render_word(cert.basis_words[-1]))
print("candidate primes:", sorted(candidate_primes(cert)))

###############################################################################
# Exact check at each candidate
# -----------------------------

for p in (2, 3, 5):
    print(f"onto Sp(6, {p}): {surjective_mod_p(z.LZ_generators, p, z.lam)}")
print("exceptional primes:", sorted(exceptional_primes(z.LZ_generators, z.lam)))
