"""Generating orbit sets of size n-1 for matrices whose shifted entry gcd is 1.

The construction works on a type-H_n matrix ``A``: choose ``v = s*e1 + t*en``
so that the 2x2 minors of ``Y = [v, A v]`` are coprime, complete ``Y`` to a
basis ``{v, Av, u3, ..., un}``, and return ``{v, u3, ..., un}``. The full
pipeline reduces an arbitrary ``A`` in GL_n(Z) to that situation and pulls the
set back to the original coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    DimensionError,
    InternalConsistencyError,
    OutsideHypothesesError,
    PreconditionError,
)
from .exactmat import ColVec, Mat, extend_to_basis, gcd_entries, gcd_values, prime_divisors, xgcd
from .reduce import TypeTag, UnimodChain, choose_k, classify, require_unimodular, to_type_h, to_type_hn

CASE_LABELS = ("I", "II", "III-c1zero", "III-case1", "III-case2")


@dataclass(frozen=True)
class OrbitSet:
    """A finite nonempty set of integer vectors of a common dimension."""

    vectors: tuple[ColVec, ...]

    def __post_init__(self):
        vecs = tuple(tuple(int(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        if not vecs:
            raise PreconditionError("an orbit set must be nonempty")
        if len({len(v) for v in vecs}) != 1:
            raise DimensionError("orbit set vectors have differing dimensions")
        if len(set(vecs)) != len(vecs):
            raise PreconditionError("orbit set contains duplicate vectors")

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def mapped(self, x: Mat) -> OrbitSet:
        return OrbitSet(tuple(x.apply(v) for v in self.vectors))


@dataclass(frozen=True)
class WitnessTrace:
    case_label: str
    s: int
    t: int
    minors: tuple[tuple[str, int], ...]
    c_values: tuple[int, int, int, int] | None = None
    prime_sets: dict = field(default_factory=dict)

    def minor_gcd(self) -> int:
        return gcd_values(v for _, v in self.minors)

    def to_json(self) -> dict:
        return {
            "case_label": self.case_label,
            "s": str(self.s),
            "t": str(self.t),
            "minors": [[name, str(v)] for name, v in self.minors],
            "c_values": None if self.c_values is None else [str(c) for c in self.c_values],
            "prime_sets": {k: [str(p) for p in v] for k, v in self.prime_sets.items()},
        }


def _record_minors(a: Mat, s: int, t: int) -> tuple[tuple[str, int], ...]:
    n = a.rows
    a21, a1n, a2n, ann = a[1, 0], a[0, n - 1], a[1, n - 1], a[n - 1, n - 1]
    out = [
        ("f1", a21 * s * s + a2n * s * t),
        ("f1'", -(a21 * s * t + a2n * t * t)),
        ("f2", ann * s * t - a1n * t * t),
    ]
    for j in range(2, n - 1):
        ajn = a[j, n - 1]
        out.append((f"f{j + 1}", ajn * s * t))
        out.append((f"f{j + 1}'", -ajn * t * t))
    return tuple(out)


def _product(primes: Sequence[int]) -> int:
    out = 1
    for p in primes:
        out *= p
    return out


def _congruent_pm1(a1n: int, ann: int) -> int | None:
    """``s0`` with ``ann*s0 - a1n = +-1``, or None; modulus 0 means equality."""
    if ann == 0:
        return 0 if a1n in (1, -1) else None
    for eps in (1, -1):
        if (a1n + eps) % ann == 0:
            return (a1n + eps) // ann
    return None


def select_st(a: Mat) -> WitnessTrace:
    """Pick ``(s, t)`` making the 2x2 minors of ``[v, A v]`` coprime.

    Cases are tried in the order I, II, III. The returned trace records the
    minors actually evaluated; their gcd is 1.
    """
    if classify(a) is not TypeTag.HN:
        raise PreconditionError("select_st needs a type-H_n matrix")
    n = a.rows
    a21, a1n, a2n, ann = a[1, 0], a[0, n - 1], a[1, n - 1], a[n - 1, n - 1]
    middle = [a[j, n - 1] for j in range(1, n - 1)]  # a_2n .. a_{n-1,n}
    c_values = None
    prime_sets: dict = {}

    if a21 == 0 and not any(middle):
        s0 = _congruent_pm1(a1n, ann)
        if s0 is None:
            raise OutsideHypothesesError(
                f"a21 = 0, a_2n..a_(n-1)n = 0 but a1n = {a1n} is not +-1 mod ann = {ann}"
            )
        label, s, t = "I", s0, 1
    elif a21 == 0:
        d = gcd_values(middle)
        k = choose_k([d], [ann], [-a1n])
        label, s, t = "II", k, 1
    elif a1n == 0 and a2n == 0:
        label, s, t = "III-c1zero", 1, 1
    else:
        c1, k, ell = xgcd(a1n, a2n)
        c2 = ell * a21 - k * ann
        num = a1n * a21 + a2n * ann
        if num % c1:
            raise InternalConsistencyError(f"c1 = {c1} does not divide {num}")
        c3 = num // c1
        c4 = gcd_values(a[j, n - 1] for j in range(2, n - 1)) if n > 3 else 0
        c_values = (c1, c2, c3, c4)
        if c3 == 0 and c4 == 0:
            g, t0, s0 = xgcd(c1, c2)
            if g != 1:
                raise InternalConsistencyError(f"gcd(c1, c2) = {g} in case III-1")
            kk = choose_k([a21], [c2], [t0])
            s, t = s0 - kk * c1, t0 + kk * c2
            label = "III-case1"
        else:
            primes = prime_divisors(gcd_values([c3, c4]))
            p1 = [p for p in primes if c1 % p]
            p2 = [p for p in primes if c1 % p == 0 and a21 % p]
            p3 = [p for p in primes if c1 % p == 0 and a21 % p == 0]
            prime_sets = {"P": primes, "P1": p1, "P2": p2, "P3": p3}
            s, t = _product(p1), _product(p2)
            label = "III-case2"

    trace = WitnessTrace(label, s, t, _record_minors(a, s, t), c_values, prime_sets)
    if trace.minor_gcd() != 1:
        raise InternalConsistencyError(f"case {label}: recorded minors have gcd {trace.minor_gcd()}")
    return trace


def orbit_vector(n: int, s: int, t: int) -> ColVec:
    return (s,) + (0,) * (n - 2) + (t,)


def all_2x2_minors_gcd(y: Mat) -> int:
    """Brute-force d_2 of an ``n x 2`` matrix."""
    return gcd_values(
        y[i, 0] * y[j, 1] - y[j, 0] * y[i, 1] for i, j in itertools.combinations(range(y.rows), 2)
    )


def build_orbit_witness(a: Mat, verify: bool = True) -> tuple[OrbitSet, WitnessTrace]:
    """Generating orbit set ``{v, u3, ..., un}`` for a type-H_n matrix."""
    from .oracle import is_generating

    trace = select_st(a)
    n = a.rows
    v = orbit_vector(n, trace.s, trace.t)
    y = Mat.from_columns([v, a.apply(v)])
    basis = extend_to_basis(y)
    orbit = OrbitSet((v,) + tuple(basis.columns()[2:]))
    if verify and not is_generating(a, orbit):
        raise InternalConsistencyError("orbit witness failed generation replay")
    return orbit, trace


@dataclass(frozen=True)
class PipelineWitness:
    """Everything produced while building a witness for an input in GL_n(Z).

    ``chain`` maps the input to ``reduced + a11*I``:
    ``chain.p @ a @ chain.p_inv - a11*I == reduced`` (type H_n).
    """

    orbit_set: OrbitSet
    chain: UnimodChain
    reduced: Mat
    reduced_orbit_set: OrbitSet
    trace: WitnessTrace
    verified: bool


def run_pipeline(a: Mat, verify: bool = True) -> PipelineWitness:
    from .oracle import is_generating

    if not a.is_square:
        raise DimensionError(f"expected a square matrix, got {a.rows}x{a.cols}")
    n = a.rows
    if n < 3:
        raise PreconditionError(f"the witness pipeline needs n >= 3, got n = {n}")
    require_unimodular(a)
    a11 = a[0, 0]
    if gcd_entries(a.shift(a11)) != 1:
        raise PreconditionError(
            f"gcd(A - a11*I) = {gcd_entries(a.shift(a11))} != 1; no witness of size n-1 exists"
        )

    h, p_chain = to_type_h(a)
    h0 = h.shift(h[0, 0])
    hn, q_chain = to_type_hn(h0)
    chain = p_chain.compose(q_chain)

    middle_zero = hn[1, 0] == 0 and not any(hn[j, n - 1] for j in range(1, n - 1))
    if middle_zero and _congruent_pm1(hn[0, n - 1], hn[n - 1, n - 1]) is None:
        raise InternalConsistencyError("degenerate branch reached but a1n is not +-1 mod ann")

    reduced_set, trace = build_orbit_witness(hn, verify=verify)
    # the same set generates for hn + a11*I; pull back through the conjugator
    orbit = reduced_set.mapped(chain.p_inv)
    if len(orbit) != n - 1:
        raise InternalConsistencyError("witness has the wrong size")
    if verify:
        chain.check()
        if chain.conjugate(a).shift(a11) != hn:
            raise InternalConsistencyError("conjugator chain does not reproduce the reduced matrix")
        if not is_generating(a, orbit):
            raise InternalConsistencyError("pulled-back witness is not generating")
    return PipelineWitness(orbit, chain, hn, reduced_set, trace, verify)


def full_pipeline_witness(a: Mat) -> OrbitSet:
    """Verified generating orbit set of size ``n-1`` for ``a`` in GL_n(Z), n >= 3,
    with ``gcd(a - a11*I) == 1``."""
    return run_pipeline(a, verify=True).orbit_set
