"""Independent verification: orbit subgroups, generation checks, bounded search.

Nothing here relies on the gcd criterion. Orbit subgroups are computed from
the Krylov columns ``v, Av, ..., A^(n-1) v`` (enough by Cayley-Hamilton, since
the characteristic polynomial is monic with integer coefficients) and compared
against Z^n with a Hermite normal form.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .errors import DimensionError, FactorizationRefused
from .exactmat import ColVec, HermiteForm, Mat, det, gcd_values, hermite_normal_form, prime_divisors
from .witness import OrbitSet

PRUNING_PRIMES = (2, 3, 5, 7)


def krylov_columns(a: Mat, v: Sequence[int], length: int | None = None) -> list[ColVec]:
    """``[v, Av, ..., A^(length-1) v]``; ``length`` defaults to ``n``."""
    if not a.is_square:
        raise DimensionError("orbit computations need a square matrix")
    if len(v) != a.rows:
        raise DimensionError(f"vector of dim {len(v)} for {a.rows}x{a.rows} matrix")
    out = [tuple(v)]
    for _ in range((a.rows if length is None else length) - 1):
        out.append(a.apply(out[-1]))
    return out


def orbit_subgroup_basis(a: Mat, s: OrbitSet | Iterable[Sequence[int]], powers: int | None = None) -> HermiteForm:
    """HNF whose column lattice is the orbit subgroup generated by ``s`` under ``a``."""
    cols = [c for v in s for c in krylov_columns(a, v, powers)]
    if not cols:
        raise DimensionError("empty orbit set")
    return hermite_normal_form(Mat.from_columns(cols))


def _spans_everything(hf: HermiteForm) -> bool:
    return hf.rank == hf.H.rows and all(p == 1 for p in hf.pivots())


def is_generating(a: Mat, s: OrbitSet | Iterable[Sequence[int]]) -> bool:
    return _spans_everything(orbit_subgroup_basis(a, s))


def canonical_vectors(n: int, bound: int) -> list[ColVec]:
    """Nonzero vectors in ``[-bound, bound]^n`` whose first nonzero entry is positive.

    Ordered by sup norm, then l1 norm, then descending lexicographically, so
    ``e1`` comes first.
    """
    out = []
    for v in itertools.product(range(bound, -bound - 1, -1), repeat=n):
        first = next((x for x in v if x), 0)
        if first > 0:
            out.append(v)
    out.sort(key=lambda v: (max(map(abs, v)), sum(map(abs, v))))
    return out


def _rank(cols: list[ColVec]) -> int:
    return hermite_normal_form(Mat.from_columns(cols)).rank


class _ModPSpan:
    """Row-reduced basis of a subspace of F_p^n, keyed by pivot position."""

    __slots__ = ("p", "rows")

    def __init__(self, p: int, rows: dict[int, list[int]] | None = None):
        self.p = p
        self.rows = rows if rows is not None else {}

    def dim(self) -> int:
        return len(self.rows)

    def add(self, vec: Sequence[int]) -> "_ModPSpan":
        p = self.p
        rows = dict(self.rows)
        v = [x % p for x in vec]
        for piv, r in rows.items():
            if v[piv]:
                c = v[piv]
                v = [(x - c * y) % p for x, y in zip(v, r)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return self
        inv = pow(v[piv], -1, p)
        v = [x * inv % p for x in v]
        for q, r in list(rows.items()):
            if r[piv]:
                c = r[piv]
                rows[q] = [(x - c * y) % p for x, y in zip(r, v)]
        rows[piv] = v
        return _ModPSpan(p, rows)

    def merge(self, other: "_ModPSpan") -> "_ModPSpan":
        out = self
        for r in other.rows.values():
            out = out.add(r)
        return out


def brute_min_upper(
    a: Mat, entry_bound: int, max_size: int
) -> tuple[int, OrbitSet] | None:
    """Smallest generating orbit set found with entries in ``[-entry_bound, entry_bound]``.

    Sets of size 1, 2, ..., ``max_size`` are enumerated in lexicographic
    order over canonical vectors (first nonzero entry positive). The answer
    is an upper bound on the minimal orbit count only; ``None`` proves nothing
    beyond the search box.

    Two exact necessary conditions prune the enumeration without ever
    discarding a generating set: the ranks of the individual orbit lattices
    must add up to at least ``n``, and the reductions mod ``p`` must span
    ``F_p^n`` for each ``p`` in ``PRUNING_PRIMES`` and each prime dividing
    every single-vector Krylov determinant in the box. The choice of primes
    only affects speed.
    """
    if not a.is_square:
        raise DimensionError("brute_min_upper needs a square matrix")
    n = a.rows
    vecs = canonical_vectors(n, entry_bound)
    krylov = [krylov_columns(a, v) for v in vecs]
    dets = [det(Mat.from_columns(k)) for k in krylov]

    for v, d in zip(vecs, dets):
        if abs(d) == 1:
            return 1, OrbitSet((v,))
    if max_size < 2:
        return None

    ranks = [n if d else _rank(k) for k, d in zip(krylov, dets)]
    g = gcd_values(dets)
    try:
        primes = set(prime_divisors(g)) if g > 1 else set()
    except FactorizationRefused:
        primes = set()
    primes = sorted(primes | set(PRUNING_PRIMES))
    spans = [[_span_of(p, k) for p in primes] for k in krylov]
    max_rank = max(ranks)
    max_dims = [max(sp[i].dim() for sp in spans) for i in range(len(primes))]

    for size in range(2, max_size + 1):
        found = _dfs(a, n, size, vecs, krylov, ranks, spans, max_rank, max_dims)
        if found is not None:
            return size, OrbitSet(tuple(vecs[i] for i in found))
    return None


def _span_of(p: int, cols: list[ColVec]) -> _ModPSpan:
    sp = _ModPSpan(p)
    for c in cols:
        sp = sp.add(c)
    return sp


def _dfs(a, n, size, vecs, krylov, ranks, spans, max_rank, max_dims):
    nprimes = len(max_dims)

    def rec(start, chosen, rank_sum, cur_spans):
        left = size - len(chosen)
        if rank_sum + left * max_rank < n:
            return None
        if any(cur_spans[q].dim() + left * max_dims[q] < n for q in range(nprimes)):
            return None
        if left == 1:
            for i in range(start, len(vecs)):
                if rank_sum + ranks[i] < n:
                    continue
                if any(cur_spans[q].dim() + spans[i][q].dim() < n for q in range(nprimes)):
                    continue
                if any(cur_spans[q].merge(spans[i][q]).dim() < n for q in range(nprimes)):
                    continue
                cols = [c for j in chosen + [i] for c in krylov[j]]
                if _spans_everything(hermite_normal_form(Mat.from_columns(cols))):
                    return chosen + [i]
            return None
        for i in range(start, len(vecs) - left + 1):
            new_spans = [cur_spans[q].merge(spans[i][q]) for q in range(nprimes)]
            res = rec(i + 1, chosen + [i], rank_sum + ranks[i], new_spans)
            if res is not None:
                return res
        return None

    start_spans = [_ModPSpan(spans[0][q].p) for q in range(nprimes)] if vecs else []
    return rec(0, [], 0, start_spans)
