"""Integral-conjugation normal forms for square integer matrices.

Two reductions are provided, each returning the reduced matrix together with
an exact unimodular conjugator:

* :func:`to_type_h` clears column 1 below row 2 while keeping ``a[0,0]``.
* :func:`to_type_hn` takes a type-H0 matrix with entry gcd 1 to type H_n.

All conjugations use the orientation ``reduced = P @ original @ P_inv``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    DimensionError,
    FactorizationRefused,
    InternalConsistencyError,
    NotUnimodularError,
    PreconditionError,
)
from .exactmat import (
    Mat,
    det,
    gcd_entries,
    gcd_values,
    inverse_unimodular,
    prime_divisors,
    smith_normal_form,
    xgcd,
)

ENUMERATION_BOUND = 10 ** 6


class TypeTag(enum.Enum):
    GENERAL = "GENERAL"
    H = "H"
    H0 = "H0"
    HN = "HN"


@dataclass(frozen=True)
class UnimodChain:
    """Accumulated conjugator: ``reduced = p @ original @ p_inv``."""

    p: Mat
    p_inv: Mat

    @classmethod
    def identity(cls, n: int) -> UnimodChain:
        eye = Mat.identity(n)
        return cls(eye, eye)

    @classmethod
    def from_right_conjugator(cls, t: Mat, t_inv: Mat) -> UnimodChain:
        """Ingest a conjugation written ``t_inv @ A @ t``."""
        return cls(t_inv, t)

    def to_right_conjugator(self) -> tuple[Mat, Mat]:
        """Return ``(t, t_inv)`` with ``reduced = t_inv @ original @ t``."""
        return self.p_inv, self.p

    def then(self, x: Mat, x_inv: Mat) -> UnimodChain:
        """Append the step ``M -> x @ M @ x_inv``."""
        return UnimodChain(x @ self.p, self.p_inv @ x_inv)

    def compose(self, later: UnimodChain) -> UnimodChain:
        """Chain for applying ``self`` first and ``later`` second."""
        return UnimodChain(later.p @ self.p, self.p_inv @ later.p_inv)

    def conjugate(self, a: Mat) -> Mat:
        return self.p @ a @ self.p_inv

    def check(self) -> None:
        n = self.p.rows
        if self.p @ self.p_inv != Mat.identity(n):
            raise InternalConsistencyError("conjugator chain: p @ p_inv != I")
        if abs(det(self.p)) != 1:
            raise InternalConsistencyError("conjugator chain is not unimodular")


def _require_square3(a: Mat) -> int:
    if not a.is_square:
        raise DimensionError(f"expected a square matrix, got {a.rows}x{a.cols}")
    if a.rows < 3:
        raise PreconditionError(f"type-H normal forms need n >= 3, got n = {a.rows}")
    return a.rows


def classify(a: Mat) -> TypeTag:
    """Strongest shape tag of ``a``, read directly off its entries."""
    n = _require_square3(a)
    if any(a[i, 0] for i in range(2, n)):
        return TypeTag.GENERAL
    if a[0, 0] != 0:
        return TypeTag.H
    last = [a[i, n - 1] for i in range(n)]
    if gcd_values([a[1, 0], *last]) == 1:
        return TypeTag.HN
    return TypeTag.H0


def _swap_step(n: int, k: int) -> tuple[Mat, Mat]:
    # row 1 <- e_k, row k <- -e_1 (0-based); orthogonal so the inverse is the transpose
    rows = Mat.identity(n).to_rows()
    rows[1] = [int(j == k) for j in range(n)]
    rows[k] = [-int(j == 1) for j in range(n)]
    x = Mat.from_rows(rows)
    return x, x.T


def _bezout_step(n: int, k: int, a2: int, ak: int) -> tuple[Mat, Mat]:
    d, s, t = xgcd(a2, ak)
    y = Mat.identity(n).to_rows()
    y[1][1], y[1][k] = s, t
    y[k][1], y[k][k] = -ak // d, a2 // d
    y_inv = Mat.identity(n).to_rows()
    y_inv[1][1], y_inv[1][k] = a2 // d, -t
    y_inv[k][1], y_inv[k][k] = ak // d, s
    return Mat.from_rows(y), Mat.from_rows(y_inv)


def to_type_h(a: Mat) -> tuple[Mat, UnimodChain]:
    """Conjugate ``a`` to type H keeping the (1,1) entry.

    Rows 3..n of the first column are cleared in increasing order: a swap
    step makes the (2,1) entry nonzero if needed, then a Bezout step moves
    ``gcd(a21, ak1)`` to (2,1) and zeroes (k,1).
    """
    n = _require_square3(a)
    chain = UnimodChain.identity(n)
    h = a
    for k in range(2, n):
        if h[k, 0] == 0:
            continue
        if h[1, 0] == 0:
            x, x_inv = _swap_step(n, k)
            h = x @ h @ x_inv
            chain = chain.then(x, x_inv)
        y, y_inv = _bezout_step(n, k, h[1, 0], h[k, 0])
        h = y @ h @ y_inv
        chain = chain.then(y, y_inv)

    if chain.conjugate(a) != h or classify(h) is TypeTag.GENERAL or h[0, 0] != a[0, 0]:
        raise InternalConsistencyError("to_type_h postcondition failed")
    return h, chain


def _gcd_vecs(*vecs: Sequence[int]) -> int:
    return gcd_values(x for v in vecs for x in v)


def _enumerate_k(v1, v2, v3, target: int, bound: int = ENUMERATION_BOUND) -> int:
    g1 = _gcd_vecs(v1)
    for m in range(bound + 1):
        for k in ((m, -m) if m else (0,)):
            if _gcd_vecs([g1], [a + k * b for a, b in zip(v3, v2)]) == target:
                return k
    raise PreconditionError(f"no valid k with |k| <= {bound}")


def choose_k(v1: Sequence[int], v2: Sequence[int], v3: Sequence[int]) -> int:
    """Return ``k`` with ``gcd(v1, v3 + k*v2) == gcd(v1, v2, v3)``.

    The constructive choice: after dividing out ``d = gcd(v1, v2, v3)``, take
    the product of the primes dividing ``gcd(v1)`` that divide neither
    ``gcd(v3)`` nor ``gcd(v2)`` (or 1 when there are none). If ``gcd(v1)`` is
    too large to factor, fall back to searching ``|k| <= 10**6``.
    """
    if not (len(v1) == len(v2) == len(v3)):
        raise DimensionError("choose_k needs vectors of equal dimension")
    if not any(v1):
        raise PreconditionError("choose_k needs a nonzero v1")
    d = _gcd_vecs(v1, v2, v3)
    g1 = _gcd_vecs(v1) // d
    g2 = _gcd_vecs(v2) // d
    g3 = _gcd_vecs(v3) // d
    try:
        primes = prime_divisors(g1) if g1 > 1 else []
    except FactorizationRefused:
        return _enumerate_k(v1, v2, v3, d)
    k = 1
    for p in primes:
        if g3 % p == 0 or g2 % p == 0:
            continue
        k *= p
    if _gcd_vecs(v1, [a + k * b for a, b in zip(v3, v2)]) != d:
        raise InternalConsistencyError(f"choose_k produced invalid k = {k}")
    return k


def _case1_conjugator(h0: Mat) -> tuple[Mat, Mat]:
    n = h0.rows
    w = h0.submatrix(range(n), range(1, n))
    sd = smith_normal_form(w)
    if sd.diagonal[0] != 1:
        raise InternalConsistencyError("columns 2..n have gcd != 1 in case 1")
    # cyclic permutation sending column 1 of W C to the last position
    cyc = Mat.from_rows([[int(j == (i - 1) % (n - 1)) for j in range(n - 1)] for i in range(n - 1)])
    cd = sd.V @ cyc
    cd_inv = cyc.T @ sd.V_inv
    t = _block_diag_one(cd)
    t_inv = _block_diag_one(cd_inv)
    return t, t_inv


def _block_diag_one(m: Mat) -> Mat:
    k = m.rows
    rows = [[1] + [0] * k] + [[0] + list(m.row(i)) for i in range(k)]
    return Mat.from_rows(rows)


def _case2_conjugator(h0: Mat) -> tuple[Mat, Mat]:
    n = h0.rows
    cols = h0.columns()
    v1 = cols[0]
    ks = {}
    tilde = cols[1]
    for j in range(2, n):
        kj = choose_k(v1, tilde, cols[j])
        ks[j] = kj
        tilde = tuple(a + kj * b for a, b in zip(cols[j], tilde))
    # t[i][j] = prod_{l=i+1..j} k_l for 1 <= i < j (0-based), unit diagonal
    t = Mat.identity(n).to_rows()
    for i in range(1, n):
        prod = 1
        for j in range(i + 1, n):
            prod *= ks[j]
            t[i][j] = prod
    t_inv = Mat.identity(n).to_rows()
    for j in range(2, n):
        t_inv[j - 1][j] = -ks[j]
    return Mat.from_rows(t), Mat.from_rows(t_inv)


def to_type_hn(h0: Mat) -> tuple[Mat, UnimodChain]:
    """Conjugate a type-H0 matrix with entry gcd 1 to type H_n.

    Zero first column: Smith form of columns 2..n, rotated so the unimodular
    image of ``e1`` lands in the last column. Otherwise the first column is
    ``a21 * e2`` and columns 3..n are folded into one another with
    :func:`choose_k` multipliers by an upper unitriangular conjugator.
    """
    n = _require_square3(h0)
    tag = classify(h0)
    if tag not in (TypeTag.H0, TypeTag.HN):
        raise PreconditionError(f"to_type_hn needs a type-H0 matrix, got {tag.value}")
    if gcd_entries(h0) != 1:
        raise PreconditionError(f"to_type_hn needs entry gcd 1, got {gcd_entries(h0)}")
    if tag is TypeTag.HN:
        return h0, UnimodChain.identity(n)

    if not any(h0.column(0)):
        t, t_inv = _case1_conjugator(h0)
    else:
        if h0[1, 0] == 0:
            raise InternalConsistencyError("type-H0 matrix with nonzero first column but a21 = 0")
        t, t_inv = _case2_conjugator(h0)
    chain = UnimodChain.from_right_conjugator(t, t_inv)
    hn = chain.conjugate(h0)
    if t @ t_inv != Mat.identity(n) or classify(hn) is not TypeTag.HN:
        raise InternalConsistencyError("to_type_hn postcondition failed")
    return hn, chain


def require_unimodular(a: Mat) -> int:
    """Return ``det(a)`` after checking it is +-1."""
    if not a.is_square:
        raise DimensionError(f"expected a square matrix, got {a.rows}x{a.cols}")
    d = det(a)
    if abs(d) != 1:
        raise NotUnimodularError(f"matrix is not in GL_n(Z): det = {d}")
    return d


__all__ = [
    "TypeTag", "UnimodChain", "classify", "to_type_h", "choose_k", "to_type_hn",
    "require_unimodular", "inverse_unimodular",
]
