import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import cofactor_det, lattice_contains_by_solve, minors_gcd, random_matrix
from torusrank.errors import DimensionError, FactorizationRefused, NotExtendableError
from torusrank.exactmat import (
    Mat,
    det,
    extend_to_basis,
    factorize,
    gcd_entries,
    hermite_normal_form,
    inverse_unimodular,
    mat_mul,
    smith_normal_form,
    xgcd,
)
from torusrank.corpus import random_unimodular

A3 = Mat.from_rows([[0, 1, 2], [5, 0, 0], [0, 3, 4]])


def small_matrices(max_rows=5, max_cols=5, bound=12):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                min_size=r, max_size=r,
            ).map(Mat.from_rows)
        )
    )


# -- Mat / mat_mul -------------------------------------------------------------

def test_identity_product():
    assert Mat.identity(3) @ A3 == A3


def test_involution():
    s = Mat.from_rows([[0, 1], [1, 0]])
    assert s @ s == Mat.identity(2)


def test_hand_product():
    a = Mat.from_rows([[2, 0], [0, 3]])
    b = Mat.from_rows([[1, 1], [1, 1]])
    assert mat_mul(a, b) == Mat.from_rows([[2, 2], [3, 3]])


def test_mul_dimension_mismatch():
    with pytest.raises(DimensionError):
        Mat.identity(2) @ Mat.identity(3)


def test_ragged_and_non_integer_rejected():
    with pytest.raises(DimensionError):
        Mat.from_rows([[1, 2], [3]])
    with pytest.raises(TypeError):
        Mat.from_rows([[1.5]])
    with pytest.raises(TypeError):
        Mat.from_rows([[True]])


def test_big_entries_stay_exact():
    big = 10 ** 40 + 7
    a = Mat.from_rows([[big, 1], [0, big]])
    assert (a @ a)[0, 0] == big * big
    assert det(a) == big * big


def test_shift():
    assert A3.shift(2) == Mat.from_rows([[-2, 1, 2], [5, -2, 0], [0, 3, 2]])


# -- det -----------------------------------------------------------------------

def test_det_identity_and_zero():
    for n in range(1, 6):
        assert det(Mat.identity(n)) == 1
        assert det(Mat.zeros(n, n)) == 0


def test_det_frozen_6x6():
    # value from cofactor expansion (tests/oracles.py), seed 20261016
    m = random_matrix(random.Random(20261016), 6, 6, 10)
    assert det(m) == 1800543


def test_det_non_square():
    with pytest.raises(DimensionError):
        det(Mat.zeros(2, 3))


@given(small_matrices(max_rows=5, max_cols=5))
def test_det_matches_cofactor(m):
    if m.is_square:
        assert det(m) == cofactor_det(m.to_rows())


def test_det_multiplicative():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(1, 5)
        a, b = random_matrix(rng, n, n, 7), random_matrix(rng, n, n, 7)
        assert det(a @ b) == det(a) * det(b)


# -- gcd -----------------------------------------------------------------------

def test_gcd_entries_examples():
    assert gcd_entries(Mat.zeros(3, 3)) == 0
    assert gcd_entries(Mat.from_rows([[2, 4], [6, 8]])) == 2
    assert gcd_entries(Mat.identity(3)) == 1
    assert gcd_entries(Mat.from_rows([[-6, 0], [0, -9]])) == 3


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(-10 ** 6, 10 ** 6))
def test_xgcd(a, b):
    g, x, y = xgcd(a, b)
    assert g >= 0 and x * a + y * b == g
    from math import gcd
    assert g == gcd(a, b)


def test_gcd_invariant_under_unimodular_multiplication():
    rng = random.Random(5)
    for _ in range(100):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        x = random_matrix(rng, n, m, 9).scale(rng.choice([1, 2, 3, 6]))
        left = random_unimodular(n, rng.randint(0, 12), rng)
        right = random_unimodular(m, rng.randint(0, 12), rng)
        assert gcd_entries(left @ x @ right) == gcd_entries(x)


# -- Smith normal form -----------------------------------------------------------

def _check_snf(x, sd):
    assert sd.U @ x @ sd.V == sd.D
    assert abs(det(sd.U)) == 1 and abs(det(sd.V)) == 1
    assert sd.U @ sd.U_inv == Mat.identity(x.rows)
    assert sd.V @ sd.V_inv == Mat.identity(x.cols)
    for i in range(sd.D.rows):
        for j in range(sd.D.cols):
            if i != j:
                assert sd.D[i, j] == 0
    diag = sd.diagonal
    assert all(v >= 0 for v in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else b % a == 0


def test_snf_identity():
    for n in range(1, 5):
        sd = smith_normal_form(Mat.identity(n))
        assert sd.D == sd.U == sd.V == Mat.identity(n)


def test_snf_coprime_diagonal():
    assert smith_normal_form(Mat.from_rows([[2, 0], [0, 3]])).diagonal == [1, 6]


def test_snf_frozen_examples():
    # invariant factors from minor enumeration (tests/oracles.py)
    x = Mat.from_rows([[2, 4, 6], [4, 10, 8], [6, 8, 30], [0, 2, 4], [8, 6, 2]])
    assert smith_normal_form(x).diagonal == [2, 2, 2]
    y = Mat.from_rows([[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]])
    assert smith_normal_form(y).diagonal == [1, 10, 30, 0]


@settings(max_examples=60)
@given(small_matrices(max_rows=5, max_cols=5, bound=9))
def test_snf_determinantal_divisors(x):
    sd = smith_normal_form(x)
    _check_snf(x, sd)
    prod = 1
    for k, dk in enumerate(sd.diagonal, start=1):
        prod *= dk
        assert prod == minors_gcd(x, k)


def test_snf_zero_matrix():
    sd = smith_normal_form(Mat.zeros(3, 2))
    _check_snf(Mat.zeros(3, 2), sd)
    assert sd.rank == 0


# -- Hermite normal form -------------------------------------------------------

def _check_hnf(x, hf):
    assert x @ hf.U == hf.H
    assert abs(det(hf.U)) == 1
    for k, r in enumerate(hf.pivot_rows):
        piv = hf.H[r, k]
        assert piv > 0
        assert all(hf.H[i, k] == 0 for i in range(r))
        assert all(0 <= hf.H[r, j] < piv for j in range(k))
    assert all(not any(hf.H.column(j)) for j in range(hf.rank, hf.H.cols))
    assert list(hf.pivot_rows) == sorted(set(hf.pivot_rows))


def test_hnf_identity():
    hf = hermite_normal_form(Mat.identity(4))
    assert hf.H == hf.U == Mat.identity(4)


def test_hnf_single_column():
    hf = hermite_normal_form(Mat.from_rows([[2], [4]]))
    assert hf.H == Mat.from_rows([[2], [4]])
    hf = hermite_normal_form(Mat.from_rows([[-2], [-4]]))
    assert hf.H == Mat.from_rows([[2], [4]])


def test_hnf_index_two():
    x = Mat.from_columns([[1, 1], [1, -1]])
    hf = hermite_normal_form(x)
    assert hf.index() == abs(det(x)) == 2
    assert not hf.contains((1, 0)) and hf.contains((2, 0)) and hf.contains((1, 1))


@settings(max_examples=60)
@given(small_matrices(max_rows=5, max_cols=6, bound=9))
def test_hnf_contract(x):
    hf = hermite_normal_form(x)
    _check_hnf(x, hf)
    basis = hf.basis()
    # input columns lie in the HNF lattice; the converse is X @ U == H
    for c in x.columns():
        assert hf.contains(c)
        if basis:
            assert lattice_contains_by_solve(basis, c)
    if basis:
        # the reduced form is a fixed point
        assert hermite_normal_form(Mat.from_columns(basis)).H == Mat.from_columns(basis)


# -- extend_to_basis / inverse ---------------------------------------------------

def test_extend_examples():
    out = extend_to_basis(Mat.from_columns([[1, 0, 0], [0, 1, 0]]))
    assert abs(det(out)) == 1 and out.columns()[:2] == [(1, 0, 0), (0, 1, 0)]
    out = extend_to_basis(Mat.from_rows([[1], [0], [0]]))
    assert abs(det(out)) == 1 and out.column(0) == (1, 0, 0)
    y = Mat.from_rows([[1, 0], [1, 1], [2, 3]])
    out = extend_to_basis(y)
    assert abs(det(out)) == 1 and out.columns()[:2] == y.columns()


def test_extend_rejects_non_primitive():
    with pytest.raises(NotExtendableError):
        extend_to_basis(Mat.from_rows([[2], [0], [0]]))
    with pytest.raises(NotExtendableError):
        extend_to_basis(Mat.from_columns([[1, 1, 0], [1, -1, 0]]))


def test_extend_random_primitive():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(2, 6)
        m = rng.randint(1, n)
        u = random_unimodular(n, rng.randint(1, 25), rng)
        y = Mat.from_columns(u.columns()[:m])
        out = extend_to_basis(y)
        assert abs(det(out)) == 1 and out.columns()[:m] == y.columns()


def test_inverse_unimodular():
    rng = random.Random(9)
    for _ in range(50):
        u = random_unimodular(rng.randint(1, 6), rng.randint(0, 20), rng)
        assert u @ inverse_unimodular(u) == Mat.identity(u.rows)


# -- factorize -----------------------------------------------------------------

def test_factorize_examples():
    assert factorize(1) == []
    assert factorize(12) == [2, 2, 3]
    assert factorize(97) == [97]


def test_factorize_two_32bit_primes():
    p, q = 4294967291, 4294967279
    assert sorted(factorize(p * q)) == [q, p]


def test_factorize_multiply_back():
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randrange(1, 2 ** 62)
        fs = factorize(n)
        prod = 1
        for f in fs:
            prod *= f
        assert prod == n


def test_factorize_cap(monkeypatch):
    with pytest.raises(FactorizationRefused):
        factorize(2 ** 129)
    monkeypatch.setenv("TORUSRANK_FACTOR_CAP", "100")
    with pytest.raises(FactorizationRefused):
        factorize(101)
    assert factorize(100) == [2, 2, 5, 5]


def test_snf_agrees_with_sympy():
    # independent implementation as a cross-check of the invariant factors
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    rng = random.Random(17)
    for _ in range(60):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        x = random_matrix(rng, r, c, 9)
        ref = sympy_snf(sympy.Matrix(x.to_rows()), domain=sympy.ZZ)
        ref_diag = [abs(int(ref[i, i])) for i in range(min(r, c))]
        assert smith_normal_form(x).diagonal == ref_diag
