from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from scrtool import linalg
from scrtool.errors import NonSquareError, SingularMatrixError
from scrtool.stableset import load_fixture

from oracles import cofactor_det, gcd_all

C3 = ((1, 1, 0), (0, 1, 1), (1, 0, 1))


def square(n, lo=-6, hi=6):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


def test_primitive_part_examples():
    assert linalg.primitive_part((2, 4, 6)) == (2, (1, 2, 3))
    assert linalg.primitive_part((1, 1, 1)) == (1, (1, 1, 1))
    assert linalg.primitive_part((0, 0)) == (0, (0, 0))


def test_determinant_examples():
    assert linalg.determinant(linalg.identity(3)) == 1
    assert linalg.determinant(C3) == 2
    assert linalg.determinant(load_fixture("fish_in_net").basis) == 18


def test_determinant_rejects_non_square():
    with pytest.raises(NonSquareError):
        linalg.determinant(((1, 2),))


def test_rank_examples():
    assert linalg.rank(linalg.identity(4)) == 4
    assert linalg.rank(((1, 2), (1, 2))) == 1
    frac_k3 = C3 + ((-1, 0, 0), (0, -1, 0), (0, 0, -1))
    assert linalg.rank(frac_k3) == 3


def test_snf_examples():
    U, D, V = linalg.smith_normal_form(linalg.identity(3))
    assert D == linalg.identity(3)
    assert linalg.smith_normal_form(((2, 0), (0, 4)))[1] == ((2, 0), (0, 4))
    assert [linalg.smith_normal_form(C3)[1][i][i] for i in range(3)] == [1, 1, 2]


def test_solve_rational_examples():
    assert linalg.solve_rational(linalg.identity(3), (1, 4, 3)) == (1, 4, 3)
    gt = load_fixture("giles_trotter")
    half = Fraction(1, 2)
    assert linalg.solve_rational(gt.basis, gt.normal) == (half,) * 8 + (0, 0)
    fish = load_fixture("fish_in_net")
    t, s = Fraction(1, 3), Fraction(2, 3)
    assert linalg.solve_rational(fish.basis, fish.normal) == (
        s, s, s, t, t, t, t, s, t, t, s, t, s, 0, 0, 0, 0)


def test_solve_rational_singular():
    with pytest.raises(SingularMatrixError):
        linalg.solve_rational(((1, 2), (2, 4)), (1, 1))


def test_json_shape():
    from scrtool.io import matrix_json, vector_json
    assert matrix_json(((1, -2),)) == {"rows": [["1", "-2"]]}
    assert vector_json((10 ** 30,)) == {"vec": [str(10 ** 30)]}


@given(st.integers(1, 5).flatmap(square))
def test_determinant_matches_cofactor(M):
    assert linalg.determinant(M) == cofactor_det(M)


@given(st.integers(1, 5).flatmap(square), st.data())
def test_solve_rational_roundtrip(M, data):
    assume(linalg.determinant(M) != 0)
    v = data.draw(st.lists(st.integers(-20, 20), min_size=len(M), max_size=len(M)))
    lam = linalg.solve_rational(M, v)
    assert linalg.vec_mat(lam, M) == tuple(Fraction(x) for x in v)


@given(st.integers(1, 4).flatmap(square))
def test_adjugate_inverse(M):
    assume(linalg.determinant(M) != 0)
    d, T = linalg.adjugate_inverse(M)
    n = len(M)
    assert linalg.mat_mul(T, M) == tuple(tuple(d * int(i == j) for j in range(n)) for i in range(n))


@given(st.integers(1, 4).flatmap(square))
def test_snf_properties(M):
    assume(linalg.determinant(M) != 0)
    U, D, V = linalg.smith_normal_form(M)
    assert linalg.mat_mul(linalg.mat_mul(U, M), V) == D
    assert abs(linalg.determinant(U)) == 1 and abs(linalg.determinant(V)) == 1
    diag = [D[i][i] for i in range(len(D))]
    assert all(x > 0 for x in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D)) if i != j)


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6))
def test_primitive_part_properties(v):
    g, w = linalg.primitive_part(v)
    assert g == gcd_all(v)
    if any(v):
        assert all(x % g == 0 for x in v)
        assert tuple(g * x for x in w) == tuple(v)
        assert linalg.primitive_part(w)[0] == 1
