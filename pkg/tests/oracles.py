"""Slow, obviously-correct reference computations used only by the tests."""

import itertools
import random
from functools import reduce
from math import gcd

from torusrank.exactmat import Mat


def cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def minors_gcd(m: Mat, k: int) -> int:
    """gcd of all k x k minors, by exhaustive enumeration."""
    rows = m.to_rows()
    g = 0
    for ri in itertools.combinations(range(m.rows), k):
        for ci in itertools.combinations(range(m.cols), k):
            g = gcd(g, cofactor_det([[rows[i][j] for j in ci] for i in ri]))
    return g


def vec_gcd(*vecs):
    return reduce(gcd, (x for v in vecs for x in v), 0)


def smallest_k(v1, v2, v3, bound):
    """Smallest-|k| solution of gcd(v1, v3 + k v2) = gcd(v1, v2, v3) by enumeration."""
    target = vec_gcd(v1, v2, v3)
    for m in range(bound + 1):
        for k in ((0,) if m == 0 else (m, -m)):
            if vec_gcd(v1, [a + k * b for a, b in zip(v3, v2)]) == target:
                return k
    return None


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int) -> Mat:
    return Mat.from_rows([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def lattice_contains_by_solve(basis_cols, v) -> bool:
    """Membership via Fraction solve of a full-column-rank basis; for spot checks."""
    from fractions import Fraction

    n = len(v)
    k = len(basis_cols)
    aug = [[Fraction(basis_cols[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    r = 0
    piv_cols = []
    for c in range(k):
        p = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, n)):
        return False
    return all(aug[i][k].denominator == 1 for i in range(r))
