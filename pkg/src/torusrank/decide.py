"""Full-rank decision for the mapping torus Z^n x|_A Z.

The group has rank ``m_A + 1`` where ``m_A`` is the least number of
``A``-orbits generating Z^n. For ``n >= 3`` and ``A`` in GL_n(Z),
``m_A == n`` exactly when ``d = gcd(A - a11*I) != 1``.
"""

from __future__ import annotations

import enum
import hashlib
import itertools
from dataclasses import dataclass

from .errors import DimensionError, PreconditionError
from .exactmat import ColVec, Mat, det, gcd_entries
from .reduce import UnimodChain, require_unimodular
from .witness import OrbitSet, WitnessTrace, run_pipeline


class Verdict(str, enum.Enum):
    FULL_RANK = "FULL_RANK"
    NOT_FULL_RANK = "NOT_FULL_RANK"


@dataclass(frozen=True)
class ModDObstruction:
    """Every entry of ``A - a11*I`` is divisible by ``d`` (``d == 0``: ``A = a11*I``)."""

    d: int

    @property
    def note(self) -> str:
        if self.d == 0:
            return "A is the scalar matrix a11*I; every orbit is a single line"
        return f"A = a11*I (mod {self.d}); orbits collapse to lines mod {self.d}"


@dataclass(frozen=True)
class OrbitWitness:
    orbit_set: OrbitSet
    witness_hash: str
    chain: UnimodChain | None = None
    reduced: Mat | None = None
    trace: WitnessTrace | None = None
    verified: bool = True


@dataclass(frozen=True)
class Decision:
    n: int
    verdict: Verdict
    d: int
    certificate: ModDObstruction | OrbitWitness

    @property
    def rank_statement(self) -> str:
        if self.verdict is Verdict.FULL_RANK:
            return f"rank(Z^{self.n} x| Z) = {self.n + 1}"
        return f"rank(Z^{self.n} x| Z) <= {self.n}"


def witness_hash(a: Mat, vectors) -> str:
    """SHA-256 binding a witness to its input matrix."""
    h = hashlib.sha256()
    h.update(f"{a.rows}:".encode())
    h.update(",".join(map(str, a.entries)).encode())
    for v in vectors:
        h.update(b"|")
        h.update(",".join(map(str, v)).encode())
    return h.hexdigest()


def criterion_gcd(a: Mat) -> int:
    """``gcd(A - a11*I)``, the quantity the decision turns on."""
    if not a.is_square:
        raise DimensionError(f"expected a square matrix, got {a.rows}x{a.cols}")
    return gcd_entries(a.shift(a[0, 0]))


def decide_full_rank(a: Mat, verify: bool = True) -> Decision:
    if not a.is_square:
        raise DimensionError(f"expected a square matrix, got {a.rows}x{a.cols}")
    n = a.rows
    require_unimodular(a)
    if n == 2:
        raise PreconditionError("the gcd criterion requires n >= 3 (n = 2 is not decided here)")
    d = criterion_gcd(a)
    if n == 1:
        # one orbit always generates Z; gcd(A - a11) = 0 agrees with FULL_RANK
        return Decision(1, Verdict.FULL_RANK, d, ModDObstruction(d))
    if d != 1:
        return Decision(n, Verdict.FULL_RANK, d, ModDObstruction(d))
    pw = run_pipeline(a, verify=verify)
    cert = OrbitWitness(
        orbit_set=pw.orbit_set,
        witness_hash=witness_hash(a, pw.orbit_set.vectors),
        chain=pw.chain,
        reduced=pw.reduced,
        trace=pw.trace,
        verified=pw.verified,
    )
    return Decision(n, Verdict.NOT_FULL_RANK, d, cert)


def check_obstruction(a: Mat, d: int) -> bool:
    """Replay a mod-d certificate: ``d != 1`` and ``A = a11*I (mod d)`` entrywise."""
    if d == 1 or d < 0:
        return False
    shifted = a.shift(a[0, 0])
    if d == 0:
        return shifted.is_zero()
    return all(x % d == 0 for x in shifted.entries)


def cyclic_search(a: Mat, bound: int) -> ColVec | None:
    """Look for ``v`` in ``[-bound, bound]^n`` whose orbit alone generates Z^n.

    A hit proves ``m_A = 1`` (rank 2). A miss is inconclusive.
    """
    if not a.is_square:
        raise DimensionError(f"expected a square matrix, got {a.rows}x{a.cols}")
    n = a.rows
    vecs = sorted(
        itertools.product(range(-bound, bound + 1), repeat=n),
        key=lambda v: (sum(map(abs, v)), [-x for x in v]),
    )
    for v in vecs:
        if not any(v):
            continue
        cols = [v]
        for _ in range(n - 1):
            cols.append(a.apply(cols[-1]))
        if abs(det(Mat.from_columns(cols))) == 1:
            return tuple(v)
    return None
