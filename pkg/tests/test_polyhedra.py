from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scrtool import linalg
from scrtool.errors import EmptyPolyhedronError, RankDeficientError
from scrtool.polyhedra import (INFEASIBLE, UNBOUNDED, InequalitySystem, LatticeBox,
                               VRepresentation, extreme_rays, ilp_optimum, in_convex_cone_hull,
                               integer_hull, lattice_points, lp_feasible, lp_optimum,
                               same_polyhedron, vertex_enumeration)
from scrtool.stableset import complete_graph, cycle_graph, frac_system, stable_sets

from oracles import lattice_points_in_box

SQUARE = InequalitySystem(((-1, 0), (0, -1), (1, 0), (0, 1)), (0, 0, 1, 1))
TRI2 = InequalitySystem(((-1, 0), (1, 4), (1, -4)), (0, 4, 0))
J2 = InequalitySystem(((1, 0, 0), (0, 1, 0), (1, 2, 3)), (0, 0, 1))
half, third = Fraction(1, 2), Fraction(1, 3)


def cube(n, lo=0, hi=1):
    rows = [tuple(-int(i == j) for j in range(n)) for i in range(n)]
    rows += [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return InequalitySystem(tuple(rows), (-lo,) * n + (hi,) * n)


def systems(n=2, extra=3, bound=3):
    """Bounded random systems: a box plus a few random rows."""
    row = st.lists(st.integers(-3, 3), min_size=n, max_size=n).filter(
        lambda r: any(r) and linalg.is_primitive(r))
    return st.lists(st.tuples(row, st.integers(-2, 6)), min_size=1, max_size=extra).map(
        lambda rs: InequalitySystem(cube(n, -bound, bound).A + tuple(tuple(r) for r, _ in rs),
                                    cube(n, -bound, bound).b + tuple(b for _, b in rs)))


def test_vertex_examples():
    V = vertex_enumeration(SQUARE)
    assert len(V.vertices) == 4 and V.rays == ()
    assert vertex_enumeration(TRI2).vertices == ((0, 0), (0, 1), (2, half))


def test_k5_q1_fractional_vertices():
    S = frac_system(complete_graph(5)).system
    tri = [tuple(int(i in t) for i in range(5)) for t in
           [(a, b, c) for a in range(5) for b in range(a + 1, 5) for c in range(b + 1, 5)]]
    Q1 = InequalitySystem(S.A + tuple(tri), S.b + (1,) * len(tri))
    frac = set(vertex_enumeration(Q1).fractional_vertices())
    expected = {tuple(Fraction(0) if i == z else third for i in range(5)) for z in range(5)}
    expected.add((third,) * 5)
    assert frac == expected


def test_lp_examples():
    assert lp_optimum((1, 1), SQUARE) == 2
    V = vertex_enumeration(J2)
    assert V.vertices == ((0, 0, third),)
    # (-3, 0, 1) is a recession direction with positive x3, so the LP is unbounded
    assert (-3, 0, 1) in V.rays
    assert lp_optimum((0, 0, 1), J2) is UNBOUNDED
    assert lp_optimum((0, 0, -1), J2) is UNBOUNDED
    assert lp_optimum((1, 2, 3), J2) == 1
    with pytest.raises(RankDeficientError):
        lp_optimum((-1, 0), InequalitySystem(((-1, 0),), (0,)))
    assert lp_optimum((1, 0), InequalitySystem(((-1, 0), (0, -1)), (0, 0))) is UNBOUNDED
    empty = InequalitySystem(((1, 0), (-1, 0), (0, 1), (0, -1)), (0, -1, 0, 0))
    assert lp_optimum((1, 0), empty) is INFEASIBLE
    with pytest.raises(EmptyPolyhedronError):
        vertex_enumeration(empty)


def test_lattice_point_examples():
    assert lattice_points(TRI2) == [(0, 0), (0, 1)]
    k3 = frac_system(complete_graph(3)).system
    assert lattice_points(k3) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert len(lattice_points(SQUARE)) == 4


def test_ilp_examples():
    assert ilp_optimum((1, 1, 1), frac_system(complete_graph(3)).system) == 1
    assert ilp_optimum((1,) * 5, frac_system(complete_graph(5)).system) == 1
    # frozen from a brute-force scan of [-3,0]^2 x [-3,1] plus the ray check
    pts = lattice_points_in_box(J2.A, J2.b, -3, 1)
    assert max(x + 2 * y + 2 * z for x, y, z in pts) == 0
    assert all(r[0] + 2 * r[1] + 2 * r[2] <= 0 for r in extreme_rays(J2.A))
    assert ilp_optimum((1, 2, 2), J2) == 0
    assert ilp_optimum((1, 0, 0), J2) == 0
    assert ilp_optimum((-1, 0, 0), J2) is UNBOUNDED


def test_hull_examples():
    k3 = frac_system(complete_graph(3)).system
    assert integer_hull(k3).vertices == ((0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0))
    assert integer_hull(TRI2).vertices == ((0, 0), (0, 1))
    c5 = integer_hull(frac_system(cycle_graph(5)).system)
    assert len(c5.vertices) == 11 == len(stable_sets(cycle_graph(5)))


def test_hull_of_unbounded_family():
    H = integer_hull(InequalitySystem(((1, 0, 0), (0, 1, 0), (1, 3, 5)), (0, 0, 2)))
    assert H.vertices == ((-3, 0, 1), (0, -1, 1), (0, 0, 0)) and not H.box_limited
    assert H.rays


def test_hull_box_limited_flag():
    H = integer_hull(SQUARE, LatticeBox.cube(2, -5, 5))
    assert H.box_limited and len(H.vertices) == 4


def test_same_polyhedron_examples():
    V = vertex_enumeration(SQUARE)
    assert same_polyhedron(V, vertex_enumeration(SQUARE))
    halfsq = VRepresentation(tuple(tuple(x * half for x in v) for v in V.vertices))
    assert not same_polyhedron(V, halfsq)


def test_lp_feasible():
    x = lp_feasible(((1, 1),), (2,))
    assert x is not None and all(v >= 0 for v in x)
    assert lp_feasible(((1, 1),), (-1,)) is None


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_hypercube_roundtrip(n):
    V = vertex_enumeration(cube(n))
    assert set(V.vertices) == set(product((0, 1), repeat=n)) and V.rays == ()


@given(systems(2) | systems(3, extra=2, bound=2))
def test_vertex_and_lp_properties(S):
    try:
        V = vertex_enumeration(S)
    except EmptyPolyhedronError:
        return
    n = S.n
    for v in V.vertices:
        assert S.contains(v)
        tight = [a for a, b in zip(S.A, S.b) if linalg.dot(a, v) == b]
        assert linalg.rank(tight) == n
    for c in [(1,) * n, tuple(range(1, n + 1)), (-1,) + (0,) * (n - 1)]:
        lp = lp_optimum(c, S, V)
        ip = ilp_optimum(c, S)
        if ip is not INFEASIBLE:
            assert ip <= lp


@given(systems(2) | systems(3, extra=2, bound=2))
def test_lattice_points_and_hull(S):
    pts = lattice_points(S, LatticeBox.cube(S.n, -3, 3))
    assert pts == lattice_points_in_box(S.A, S.b, -3, 3)
    H = integer_hull(S)
    assert set(map(tuple, H.vertices)) <= set(pts)
    for p in pts[:10]:
        assert in_convex_cone_hull(p, H.vertices, H.rays)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2).filter(any),
                min_size=2, max_size=5))
def test_rays_primitive_and_recessive(rows):
    A = tuple(map(tuple, rows))
    if linalg.rank(A) < 2:
        return
    for r in extreme_rays(A):
        assert linalg.is_primitive(r)
        assert all(linalg.dot(a, r) <= 0 for a in A)
