"""Arithmeticity data for symplectic hypergeometric groups.

The pipeline for a pair of cyclotomic products (f, g):

1. :mod:`~sphyper.construct` builds the group from companion matrices.
2. :mod:`~sphyper.forms` finds the invariant form and conjugates into Sp(n, Q).
3. :mod:`~sphyper.density` tests Zariski density and finds the primes where
   reduction is not onto.
4. :mod:`~sphyper.zpoints` computes the integer points.
5. :mod:`~sphyper.congruence` computes level and index of the arithmetic closure.
6. :mod:`~sphyper.words` writes integer matrices as words in Sp(n, Z).

:func:`sphyper.pipeline.analyze` runs all of it.
"""

from .congruence import FiniteMatrixGroup, closure_level_and_index, level_exponent, sp_order
from .construct import PolyPair, build_group, enumerate_pairs, parse_pair
from .density import candidate_primes, exceptional_primes, is_dense, surjective_mod_p
from .forms import invariant_form, normalize_group
from .linalg import ModMatrix, RatMatrix
from .pipeline import PipelineConfig, RowReport, analyze, sweep
from .poly import IntPoly, cyclotomic
from .words import evaluate, express
from .zpoints import integer_points, verify_zpoints

__all__ = [
    "FiniteMatrixGroup",
    "IntPoly",
    "ModMatrix",
    "PipelineConfig",
    "PolyPair",
    "RatMatrix",
    "RowReport",
    "analyze",
    "build_group",
    "candidate_primes",
    "closure_level_and_index",
    "cyclotomic",
    "enumerate_pairs",
    "evaluate",
    "exceptional_primes",
    "express",
    "integer_points",
    "invariant_form",
    "is_dense",
    "level_exponent",
    "normalize_group",
    "parse_pair",
    "sp_order",
    "surjective_mod_p",
    "sweep",
    "verify_zpoints",
]
