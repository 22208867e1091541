"""Seeded random elements of GL_n(Z) built from elementary row operations."""

from __future__ import annotations

import random

from .exactmat import Mat

COEFF_RANGE = 3


def random_unimodular(n: int, ops: int, rng: random.Random) -> Mat:
    """Product of ``ops`` random elementary matrices applied to the identity.

    Each step is a row addition with coefficient in ``[-3, 3] \\ {0}``, a row
    swap, or a row negation, chosen uniformly (only negation exists for n = 1).
    """
    if n < 1 or ops < 0:
        raise ValueError("need n >= 1 and ops >= 0")
    m = Mat.identity(n).to_rows()
    kinds = ("add", "swap", "neg") if n > 1 else ("neg",)
    coeffs = [c for c in range(-COEFF_RANGE, COEFF_RANGE + 1) if c]
    for _ in range(ops):
        kind = rng.choice(kinds)
        if kind == "neg":
            i = rng.randrange(n)
            m[i] = [-x for x in m[i]]
            continue
        i, j = rng.sample(range(n), 2)
        if kind == "swap":
            m[i], m[j] = m[j], m[i]
        else:
            c = rng.choice(coeffs)
            m[i] = [x + c * y for x, y in zip(m[i], m[j])]
    return Mat.from_rows(m)


def random_corpus(n: int, ops: int, seed: int, count: int) -> list[Mat]:
    rng = random.Random(seed)
    return [random_unimodular(n, ops, rng) for _ in range(count)]


def random_integer_matrix(n: int, bound: int, rng: random.Random) -> Mat:
    return Mat.from_rows([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
