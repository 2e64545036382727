"""
Words in elementary symplectic matrices
=======================================

Any element of Sp(n, Z) is a product of the elementary generators.  The
reduction works column by column with integer row operations.
"""
import random

from sphyper.construct import parse_pair
from sphyper.pipeline import analyze
from sphyper.linalg import RatMatrix
from sphyper.words import evaluate, export_words, express, random_word, standard_generators

print([name for name, _ in standard_generators(6)])

###############################################################################
# Round trip
# ----------

rng = random.Random(1)
g = evaluate(random_word(6, 80, rng))
w = express(g)
print("word length", len(w), "round trip ok:", evaluate(w) == g)

###############################################################################
# Exporting integer-point generators
# ----------------------------------

rep = analyze(parse_pair("C7 | C2^2*C3^2"))
words = [express(RatMatrix(x)) for x in rep.lz_generators[:3]]
print(export_words(words))
