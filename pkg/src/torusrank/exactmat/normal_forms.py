"""Smith and Hermite normal forms with unimodular transformation witnesses."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DimensionError, NotExtendableError, NotUnimodularError
from .matrix import Mat


@dataclass(frozen=True)
class SmithDecomp:
    """``U @ X @ V == D`` with ``D`` diagonal, nonnegative, and ``D[i,i] | D[i+1,i+1]``.

    The exact inverses of both transforms are carried along so callers never
    need to solve a linear system.
    """

    U: Mat
    D: Mat
    V: Mat
    U_inv: Mat
    V_inv: Mat

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


@dataclass(frozen=True)
class HermiteForm:
    """Column-style Hermite normal form ``X @ U == H``.

    ``H`` is lower echelon: pivot ``k`` sits at ``(pivot_rows[k], k)``, is
    positive, and every entry to its left in the same row lies in
    ``[0, pivot)``. Columns past ``rank`` are zero.
    """

    H: Mat
    U: Mat
    pivot_rows: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def pivots(self) -> list[int]:
        return [self.H[r, k] for k, r in enumerate(self.pivot_rows)]

    def basis(self) -> list[tuple[int, ...]]:
        return [self.H.column(k) for k in range(self.rank)]

    def index(self) -> int:
        """Index of the column lattice in Z^n, or 0 if it is not of full rank."""
        if self.rank < self.H.rows:
            return 0
        out = 1
        for p in self.pivots():
            out *= p
        return out

    def contains(self, v) -> bool:
        """Exact lattice membership of ``v`` in the column span of ``H``."""
        if len(v) != self.H.rows:
            raise DimensionError("vector dimension does not match lattice")
        return _reduce_mod_hnf(list(v), self.H, self.pivot_rows) is not None


def _reduce_mod_hnf(v, h: Mat, pivot_rows) -> list[int] | None:
    """Express v in the HNF basis; return coefficients or None if not a member."""
    v = list(v)
    coeffs = []
    start = 0
    for k, r in enumerate(pivot_rows):
        if any(v[i] for i in range(start, r)):
            return None
        p = h[r, k]
        if v[r] % p:
            return None
        q = v[r] // p
        coeffs.append(q)
        if q:
            col = h.column(k)
            v = [a - q * b for a, b in zip(v, col)]
        start = r + 1
    if any(v[start:]):
        return None
    return coeffs


def smith_normal_form(x: Mat) -> SmithDecomp:
    m, n = x.shape
    a = x.to_rows()
    u = Mat.identity(m).to_rows()
    u_inv = Mat.identity(m).to_rows()
    v = Mat.identity(n).to_rows()
    v_inv = Mat.identity(n).to_rows()

    # Row/column primitives keep all four transforms in sync.
    def row_add(dst, src, q):  # row_dst += q * row_src
        if not q:
            return
        a[dst] = [p + q * r for p, r in zip(a[dst], a[src])]
        u[dst] = [p + q * r for p, r in zip(u[dst], u[src])]
        for row in u_inv:
            row[src] -= q * row[dst]

    def row_swap(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in u_inv:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        a[i] = [-p for p in a[i]]
        u[i] = [-p for p in u[i]]
        for row in u_inv:
            row[i] = -row[i]

    def col_add(dst, src, q):  # col_dst += q * col_src
        if not q:
            return
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]
        v_inv[src] = [p - q * r for p, r in zip(v_inv[src], v_inv[dst])]

    def col_swap(i, j):
        if i == j:
            return
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            # bring the smallest entry of row t / column t to the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
            _, bi, bj = min(cand)
            row_swap(t, bi)
            col_swap(t, bj)
            piv = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    row_add(i, t, -(a[i][t] // piv))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, n):
                if a[t][j]:
                    col_add(j, t, -(a[t][j] // piv))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            row_neg(t)

    return SmithDecomp(
        U=Mat.from_rows(u), D=Mat.from_rows(a), V=Mat.from_rows(v),
        U_inv=Mat.from_rows(u_inv), V_inv=Mat.from_rows(v_inv),
    )


def hermite_normal_form(x: Mat) -> HermiteForm:
    n, m = x.shape
    # column-major working copies: h[j] is column j of H, w[j] column j of U
    h = [list(c) for c in x.columns()]
    w = [list(c) for c in Mat.identity(m).columns()]

    def col_sub(dst, src, q):  # col_dst -= q * col_src
        if q:
            h[dst] = [p - q * r for p, r in zip(h[dst], h[src])]
            w[dst] = [p - q * r for p, r in zip(w[dst], w[src])]

    def col_swap(i, j):
        h[i], h[j] = h[j], h[i]
        w[i], w[j] = w[j], w[i]

    pivot_rows = []
    pc = 0
    for r in range(n):
        if pc == m:
            break
        while True:
            nz = [j for j in range(pc, m) if h[j][r]]
            if not nz:
                break
            col_swap(pc, min(nz, key=lambda j: abs(h[j][r])))
            piv = h[pc][r]
            done = True
            for j in range(pc + 1, m):
                if h[j][r]:
                    col_sub(j, pc, h[j][r] // piv)
                    done = done and h[j][r] == 0
            if done:
                break
        if h[pc][r] == 0:
            continue
        if h[pc][r] < 0:
            h[pc] = [-p for p in h[pc]]
            w[pc] = [-p for p in w[pc]]
        piv = h[pc][r]
        for j in range(pc):
            col_sub(j, pc, h[j][r] // piv)
        pivot_rows.append(r)
        pc += 1

    return HermiteForm(H=Mat.from_columns(h), U=Mat.from_columns(w), pivot_rows=tuple(pivot_rows))


def inverse_unimodular(a: Mat) -> Mat:
    """Exact inverse of a matrix in GL_n(Z)."""
    if not a.is_square:
        raise DimensionError("inverse of a non-square matrix")
    sd = smith_normal_form(a)
    if sd.diagonal != [1] * a.rows:
        raise NotUnimodularError("matrix is not unimodular")
    # U A V = I  =>  A^-1 = V U
    return sd.V @ sd.U


def extend_to_basis(y: Mat) -> Mat:
    """Complete the columns of ``y`` to a unimodular matrix.

    The first ``y.cols`` columns of the result are exactly the columns of ``y``.
    Requires every determinantal divisor of ``y`` to be 1.
    """
    n, m = y.shape
    if m > n:
        raise NotExtendableError(f"{m} columns cannot be part of a basis of Z^{n}")
    sd = smith_normal_form(y)
    if sd.diagonal != [1] * m:
        raise NotExtendableError(
            f"columns are not extendable to a basis (invariant factors {sd.diagonal})"
        )
    # y V = first m columns of U^-1; swap those for y itself (det changes by det V^-1 = +-1)
    cols = y.columns() + sd.U_inv.columns()[m:]
    return Mat.from_columns(cols)
