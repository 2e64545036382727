"""Integer factorization with an effort cap, on top of sympy."""

from __future__ import annotations

from sympy import factorint as _sympy_factorint
from sympy import isprime

__all__ = ["FactorizationIncomplete", "factorint", "is_probable_prime", "prime_factors"]

DEFAULT_EFFORT = 1_000_000


class FactorizationIncomplete(ArithmeticError):
    def __init__(self, cofactor: int, partial: dict[int, int]):
        super().__init__(f"could not split composite cofactor {cofactor}")
        self.cofactor = cofactor
        self.partial = partial


def is_probable_prime(n: int) -> bool:
    return isprime(n)


def factorint(n: int, effort: int = DEFAULT_EFFORT) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}.

    ``effort`` caps trial division and the rho / p-1 steps.  A composite
    cofactor left after that raises FactorizationIncomplete.
    """
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    fac = _sympy_factorint(n, limit=effort)
    partial = {p: e for p, e in fac.items() if isprime(p)}
    rest = [p for p in fac if p not in partial]
    if rest:
        raise FactorizationIncomplete(rest[0], partial)
    return dict(sorted(fac.items()))


def prime_factors(n: int, **kw) -> set[int]:
    return set(factorint(n, **kw))
