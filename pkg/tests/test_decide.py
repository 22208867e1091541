import random

import pytest

from torusrank.corpus import random_unimodular
from torusrank.decide import (
    ModDObstruction,
    OrbitWitness,
    Verdict,
    check_obstruction,
    criterion_gcd,
    cyclic_search,
    decide_full_rank,
)
from torusrank.errors import NotUnimodularError, PreconditionError
from torusrank.exactmat import Mat, inverse_unimodular
from torusrank.oracle import is_generating

THREE_CYCLE = Mat.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def test_identity_full_rank_d0():
    dec = decide_full_rank(Mat.identity(3))
    assert dec.verdict is Verdict.FULL_RANK and dec.d == 0
    assert isinstance(dec.certificate, ModDObstruction)
    assert dec.rank_statement == "rank(Z^3 x| Z) = 4"


def test_reflection_full_rank_d2():
    dec = decide_full_rank(Mat.diag([1, 1, -1]))
    assert dec.verdict is Verdict.FULL_RANK and dec.d == 2


def test_three_cycle_not_full_rank():
    dec = decide_full_rank(THREE_CYCLE)
    assert dec.verdict is Verdict.NOT_FULL_RANK and dec.d == 1
    cert = dec.certificate
    assert isinstance(cert, OrbitWitness) and len(cert.orbit_set) == 2
    assert is_generating(THREE_CYCLE, cert.orbit_set)
    assert dec.rank_statement == "rank(Z^3 x| Z) <= 3"


def test_n1_trivially_full_rank():
    for x in (1, -1):
        dec = decide_full_rank(Mat.from_rows([[x]]))
        assert dec.verdict is Verdict.FULL_RANK


def test_n2_rejected():
    with pytest.raises(PreconditionError, match="n >= 3"):
        decide_full_rank(Mat.identity(2))


def test_not_unimodular_rejected():
    with pytest.raises(NotUnimodularError):
        decide_full_rank(Mat.diag([1, 1, 2]))


def test_verdict_strings_frozen():
    assert Verdict.FULL_RANK.value == "FULL_RANK"
    assert Verdict.NOT_FULL_RANK.value == "NOT_FULL_RANK"


def test_shift_invariance_of_d():
    rng = random.Random(0)
    for _ in range(50):
        a = random_unimodular(rng.choice([3, 4]), rng.randint(0, 20), rng)
        for lam in range(-5, 6):
            assert criterion_gcd(a.shift(-lam)) == criterion_gcd(a)


def test_conjugation_invariance_of_verdict():
    rng = random.Random(1)
    for _ in range(40):
        a = random_unimodular(3, rng.randint(0, 20), rng)
        x = random_unimodular(3, rng.randint(0, 20), rng)
        b = x @ a @ inverse_unimodular(x)
        assert decide_full_rank(a).verdict is decide_full_rank(b).verdict


def test_obstruction_soundness():
    rng = random.Random(2)
    seen = 0
    for _ in range(300):
        a = random_unimodular(3, rng.randint(0, 8), rng)
        dec = decide_full_rank(a)
        if dec.verdict is Verdict.FULL_RANK:
            seen += 1
            assert check_obstruction(a, dec.d)
        else:
            assert is_generating(a, dec.certificate.orbit_set)
    assert seen > 0


def test_check_obstruction_rejects_bad_claims():
    assert not check_obstruction(THREE_CYCLE, 1)
    assert not check_obstruction(THREE_CYCLE, 2)
    assert not check_obstruction(Mat.diag([1, 1, -1]), 0)
    assert check_obstruction(Mat.diag([1, 1, -1]), 2)


def test_cyclic_search_examples():
    assert cyclic_search(THREE_CYCLE, 1) == (1, 0, 0)
    assert cyclic_search(Mat.identity(3), 2) is None
    for c0 in (1, -1):
        for c1 in (-2, 0, 3):
            for c2 in (-1, 0, 2):
                # companion of x^3 - c2 x^2 - c1 x - c0
                comp = Mat.from_rows([[0, 0, c0], [1, 0, c1], [0, 1, c2]])
                assert cyclic_search(comp, 1) == (1, 0, 0)
