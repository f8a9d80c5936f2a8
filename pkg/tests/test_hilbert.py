import pytest
from hypothesis import given
from hypothesis import strategies as st

from scrtool import linalg
from scrtool.errors import NonPrimitiveError, NotPointedError, SingularMatrixError
from scrtool.hilbert import (SimplicialCone, cone_contains, is_pointed,
                             minimal_hilbert_basis_pointed, minimal_hilbert_basis_simplicial,
                             parallelepiped_points)

from oracles import box_parallelepiped, cramer_lambda, hilbert_oracle

C3 = ((1, 1, 0), (0, 1, 1), (1, 0, 1))
C5 = tuple(tuple(int(j in (i, (i + 1) % 5)) for j in range(5)) for i in range(5))


def cone_basis(n, entry=4, max_det=50):
    row = st.lists(st.integers(-entry, entry), min_size=n, max_size=n)
    return st.lists(row, min_size=n, max_size=n).map(lambda m: tuple(map(tuple, m))).filter(
        lambda B: all(any(r) and linalg.is_primitive(r) for r in B)
        and 0 < abs(linalg.determinant(B)) <= max_det)


def test_parallelepiped_examples():
    assert parallelepiped_points(SimplicialCone(linalg.identity(3))) == [(0, 0, 0)]
    assert sorted(parallelepiped_points(SimplicialCone(C3))) == [(0, 0, 0), (1, 1, 1)]
    # frozen from the box oracle
    assert sorted(box_parallelepiped(((1, 0), (1, 2)))) == [(0, 0), (1, 1)]
    assert sorted(parallelepiped_points(SimplicialCone(((1, 0), (1, 2))))) == [(0, 0), (1, 1)]


def test_simplicial_examples():
    assert set(minimal_hilbert_basis_simplicial(linalg.identity(4)).elements) == set(linalg.identity(4))
    assert set(minimal_hilbert_basis_simplicial(C3).elements) == set(C3) | {(1, 1, 1)}
    B = ((0, 1, 0), (1, 1, 1), (1, 2, 3))
    assert set(minimal_hilbert_basis_simplicial(B).elements) - set(B) == {(1, 2, 2)}


def test_simplicial_witness():
    res = minimal_hilbert_basis_simplicial(C3)
    w = res.witness((1, 1, 1))
    assert w.check() and all(x == linalg.parse_frac("1/2") for x in w.lam)


def test_simplicial_validation():
    with pytest.raises(SingularMatrixError):
        SimplicialCone(((1, 0), (-1, 0)))
    with pytest.raises(NonPrimitiveError):
        SimplicialCone(((2, 0), (0, 1)))


def test_pointed_examples():
    assert set(minimal_hilbert_basis_pointed(linalg.identity(3)).elements) == set(linalg.identity(3))
    assert set(minimal_hilbert_basis_pointed(C5).elements) == set(C5) | {(1,) * 5}
    gens = ((0, 1, 0), (1, 0, 0), (1, 2, 3))
    expected = set(gens) | {(1, 1, 1), (1, 2, 2)}
    # the three generators are a basis, so the box oracle applies
    assert hilbert_oracle(gens) == expected
    assert set(minimal_hilbert_basis_pointed(gens).elements) == expected


def test_pointed_non_simplicial_square():
    gens = ((1, 0), (1, 1), (1, 2), (1, 3))
    assert set(minimal_hilbert_basis_pointed(gens).elements) == {(1, 0), (1, 3), (1, 1), (1, 2)}
    gens = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1))
    # every basis of these four has determinant +-1
    assert set(minimal_hilbert_basis_pointed(gens).elements) == set(gens)


def test_not_pointed():
    assert not is_pointed(((1, 0), (-1, 0), (0, 1)))
    with pytest.raises(NotPointedError):
        minimal_hilbert_basis_pointed(((1, 0), (-1, 0), (0, 1)))


def test_cone_contains_examples():
    assert cone_contains(((1, 0), (0, 1)), (3, 5))
    assert not cone_contains(((1, 0), (0, 1)), (-1, 0))
    assert cone_contains(((1, 2), (2, 1)), (1, 1))


@given(st.sampled_from([2, 3]).flatmap(lambda n: cone_basis(n, 4, 20)))
def test_oracle_equivalence(B):
    assert set(minimal_hilbert_basis_simplicial(B).elements) == hilbert_oracle(B)


@given(st.sampled_from([2, 3, 4]).flatmap(lambda n: cone_basis(n, 5, 50)))
def test_cardinality(B):
    pts = parallelepiped_points(SimplicialCone(B))
    assert len(pts) == len(set(pts)) == abs(linalg.determinant(B))


@given(st.sampled_from([2, 3]).flatmap(lambda n: cone_basis(n, 4, 20)))
def test_generation_minimality_primitivity(B):
    H = minimal_hilbert_basis_simplicial(B).elements
    n = len(B)
    assert all(linalg.is_primitive(h) for h in H)
    bound = max(linalg.inf_norm(r) for r in B)
    assert all(linalg.inf_norm(h) < n * bound for h in H)

    def representable(p, gens):
        # subtract generators while staying in the cone; sum(lambda) drops each step
        if not any(p):
            return True
        for g in gens:
            q = tuple(a - b for a, b in zip(p, g))
            if all(x >= 0 for x in cramer_lambda(B, q)) and representable(q, gens):
                return True
        return False

    pts = [p for p in parallelepiped_points(SimplicialCone(B)) if any(p)]
    for p in pts:
        assert representable(p, H)
    for h in H:
        rest = [g for g in H if g != h]
        assert not representable(h, rest)


@given(cone_basis(3, 3, 20))
def test_simplicial_agrees_with_pointed(B):
    assert set(minimal_hilbert_basis_simplicial(B).elements) == set(minimal_hilbert_basis_pointed(B).elements)
