"""Shared random generators for the test suite.

Everything takes an explicit random.Random so suites stay deterministic
under a seed.
"""

import random

from dividedops.diffop import DiffOp
from dividedops.laurent import LaurentPoly
from dividedops.scalars import PadicInt, Prime


def rand_poly(rng: random.Random, p, n, max_terms=3, span=3, allow_zero=True) -> LaurentPoly:
    pp = int(p)
    terms = {}
    for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
        exps = tuple(rng.randint(-span, span) for _ in range(n))
        terms[exps] = rng.randint(1, pp - 1)
    f = LaurentPoly(p, n, terms)
    if not allow_zero or f:
        return f
    return f


def rand_nonzero_poly(rng, p, n, max_terms=3, span=3) -> LaurentPoly:
    while True:
        f = rand_poly(rng, p, n, max_terms=max_terms, span=span, allow_zero=False)
        if f:
            return f


def rand_op(rng: random.Random, p, n, max_parts=3, max_order=3, span=3, max_terms=2) -> DiffOp:
    parts = {}
    for _ in range(rng.randint(0, max_parts)):
        while True:
            beta = tuple(rng.randint(0, max_order) for _ in range(n))
            if sum(beta) <= max_order:
                break
        f = rand_poly(rng, p, n, max_terms=max_terms, span=span, allow_zero=False)
        if f:
            parts[beta] = parts.get(beta, DiffOp.zero(p, n).parts.get(beta)) or f
    return DiffOp(p, n, parts)


def rand_shift_digits(rng: random.Random, p, n, precision) -> list[list[int]]:
    pp = int(p)
    return [[rng.randint(0, pp - 1) for _ in range(precision)] for _ in range(n)]


def rand_padic(rng: random.Random, p, precision) -> PadicInt:
    pp = int(p)
    return PadicInt(tuple(rng.randint(0, pp - 1) for _ in range(precision)), Prime(pp))


def rand_gl(rng: random.Random, n, lo=-2, hi=2) -> tuple[tuple[int, ...], ...]:
    """A random integer matrix with determinant +-1, entries in [lo, hi]."""
    from dividedops.autgroup import int_det

    while True:
        a = tuple(tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(n))
        if int_det(a) in (1, -1):
            return a
