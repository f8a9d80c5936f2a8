import random
from itertools import combinations

import pytest

from scrtool import linalg
from scrtool.errors import GraphParseError, NotFoundError
from scrtool.hilbert import minimal_hilbert_basis_simplicial
from scrtool.ibn import Configuration, ibn_round, ibn_run
from scrtool.repro import random_graph
from scrtool.stableset import (FIXTURES, Graph, NormalClass, antihole_graph,
                               antihole_witness_basis, complete_graph, cycle_graph, frac_system,
                               graph_configuration, known_normals, line_graph, load_fixture,
                               odd_circuits, parse_graph, path_graph, petersen_graph,
                               predicted_round1, product_graph, product_normal, stability_number,
                               stable_sets, verify_certificate, wheel_graph, wheel_witness_basis)


def brute_alpha(G):
    for size in range(G.n, 0, -1):
        for S in combinations(range(G.n), size):
            if all(not G.adjacent(a, b) for a, b in combinations(S, 2)):
                return size
    return 0


def test_parse_edgelist():
    G = parse_graph("3\n1 2\n2 3\n1 3")
    assert G == complete_graph(3)


def test_parse_dimacs():
    text = "c a five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n"
    assert parse_graph(text) == cycle_graph(5)
    assert parse_graph(text, "dimacs") == cycle_graph(5)


@pytest.mark.parametrize("text,line", [
    ("3\n1 2\n2 1\n", 3),
    ("3\n1 1\n", 2),
    ("3\n1 4\n", 2),
    ("3\n1 x\n", 2),
    ("p edge 3 2\ne 1 2\n", None),
])
def test_parse_errors(text, line):
    with pytest.raises(GraphParseError) as exc:
        parse_graph(text)
    if line is not None:
        assert f"line {line}" in str(exc.value)


def test_edgelist_roundtrip():
    G = petersen_graph()
    assert parse_graph(G.to_edgelist()) == G


def test_frac_system_sizes():
    assert frac_system(complete_graph(3)).system.m == 6
    assert frac_system(cycle_graph(5)).system.m == 10
    S = frac_system(Graph.from_edges(4, [])).system
    assert S.m == 4
    from scrtool.closure import scr_of_system
    assert scr_of_system(S).scr == 0


def test_odd_circuits_examples():
    assert odd_circuits(complete_graph(3)) == [(0, 1, 2)]
    assert len(odd_circuits(cycle_graph(5))) == 1
    k4 = odd_circuits(complete_graph(4))
    assert len(k4) == 4 and all(len(c) == 3 for c in k4)
    assert odd_circuits(path_graph(6)) == []


def test_predicted_round1_examples():
    P = path_graph(5)
    assert predicted_round1(P) == graph_configuration(P)
    k3 = predicted_round1(complete_graph(3))
    assert set(k3.vectors) - set(graph_configuration(complete_graph(3)).vectors) == {(1, 1, 1)}
    k5 = predicted_round1(complete_graph(5))
    extra = set(k5.vectors) - set(graph_configuration(complete_graph(5)).vectors)
    assert len(extra) == 11 and (1,) * 5 in extra


def test_stability_number():
    assert stability_number(complete_graph(6)) == 1
    assert stability_number(cycle_graph(5)) == 2
    assert brute_alpha(petersen_graph()) == 4
    assert stability_number(petersen_graph()) == 4
    rng = random.Random(3)
    for _ in range(20):
        G = random_graph(rng, 9)
        assert stability_number(G) == brute_alpha(G)
        assert max(sum(s) for s in stable_sets(G)) == brute_alpha(G)


def test_known_normals():
    assert known_normals(complete_graph(5), NormalClass.CLIQUE) == [((1,) * 5, 1)]
    assert known_normals(cycle_graph(7), "odd_hole") == [((1,) * 7, 3)]
    wheel = known_normals(wheel_graph(5), NormalClass.ODD_WHEEL)
    assert ((2, 1, 1, 1, 1, 1), 2) in wheel
    assert known_normals(antihole_graph(7), NormalClass.ODD_ANTIHOLE) == [((1,) * 7, 2)]
    assert known_normals(antihole_graph(8), NormalClass.RANK) == [((1,) * 8, brute_alpha(antihole_graph(8)))]
    with pytest.raises(NotFoundError):
        known_normals(path_graph(4), NormalClass.ODD_HOLE)


def test_wheel_witness():
    B, v = wheel_witness_basis(2)
    assert len(B) == 4 and v == (1, 1, 1, 1)
    B, v = wheel_witness_basis(3)
    assert v == (2, 1, 1, 1, 1, 1)
    assert v in minimal_hilbert_basis_simplicial(B).elements


@pytest.mark.parametrize("n", [6, 8])
def test_antihole_witness(n):
    B, v = antihole_witness_basis(n)
    if n == 6:
        assert linalg.determinant(B) == -5
    assert v == (1,) * n
    assert v in minimal_hilbert_basis_simplicial(B).elements


def test_line_and_product_graphs():
    assert line_graph(complete_graph(3)) == complete_graph(3)
    assert line_graph(path_graph(3)) == path_graph(2)
    P = product_graph(cycle_graph(5), cycle_graph(7))
    assert P.n == 12 and len(P.edges) == 47
    assert product_normal((1,) * 5, 2, (1,) * 7, 3) == ((3,) * 5 + (2,) * 7, 6)


def test_even_clique_witness():
    three = ((0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 0))
    assert tuple(sum(c) // 2 for c in zip(*three)) == (1, 1, 1, 1)
    A1 = ibn_round(graph_configuration(complete_graph(4)))
    assert all(r in A1 for r in three)
    B = three + ((0, 0, 0, -1),)
    assert (1, 1, 1, 1) in minimal_hilbert_basis_simplicial(B).elements
    log = ibn_run(graph_configuration(complete_graph(4)), max_rounds=2)
    assert (1, 1, 1, 1) in log.config(2)
    # K6: two five-cliques and one edge, completed with negated units
    three6 = ((0, 1, 1, 1, 1, 1), (1, 0, 1, 1, 1, 1), (1, 1, 0, 0, 0, 0))
    A1 = predicted_round1(complete_graph(6))
    assert all(r in A1 for r in three6)
    B6 = three6 + ((0, 0, 0, -1, 0, 0), (0, 0, 0, 0, -1, 0), (0, 0, 0, 0, 0, -1))
    assert (1,) * 6 in minimal_hilbert_basis_simplicial(B6).elements


def test_padding_k3_in_k4():
    k3 = ibn_round(graph_configuration(complete_graph(3)))
    k4 = ibn_round(graph_configuration(complete_graph(4)))
    padded = {v + (0,) for v in k3.vectors}
    assert padded <= set(k4.vectors)


NAMED = [complete_graph(3), complete_graph(4), complete_graph(5), complete_graph(6),
         cycle_graph(5), cycle_graph(7), wheel_graph(5), path_graph(5)]


@pytest.mark.parametrize("G", NAMED, ids=lambda g: f"n{g.n}m{len(g.edges)}")
def test_round1_oracle_named(G):
    cfg = graph_configuration(G)
    out = ibn_round(cfg, cap=None)
    assert out == predicted_round1(G)
    assert all(min(v) >= 0 for v in set(out.vectors) - {tuple(-int(i == j) for j in range(G.n)) for i in range(G.n)})


def test_round1_oracle_random():
    rng = random.Random(11)
    for _ in range(30):
        G = random_graph(rng, 7)
        assert ibn_round(graph_configuration(G), cap=None) == predicted_round1(G)


def test_round2_nonnegative_small():
    G = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])
    log = ibn_run(graph_configuration(G), max_rounds=2, cap=None)
    neg = {tuple(-int(i == j) for j in range(5)) for i in range(5)}
    for cfg in log.configs:
        assert all(min(v) >= 0 for v in set(cfg.vectors) - neg)


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_verify(name):
    c = load_fixture(name)
    assert verify_certificate(c).ok


def test_fish_determinant_and_perturbations():
    c = load_fixture("fish_in_net")
    assert linalg.determinant(c.basis) == 18
    n = len(c.basis)
    assert not any(verify_certificate(c.perturbed(r, k)).ok for r in range(n) for k in range(n))


def test_giles_trotter_perturbations():
    c = load_fixture("giles_trotter")
    n = len(c.basis)
    assert not any(verify_certificate(c.perturbed(r, k, -1)).ok for r in range(n) for k in range(n))


def test_certificate_json_roundtrip():
    from scrtool.stableset import FacetCertificate
    c = load_fixture("giles_trotter")
    assert FacetCertificate.from_json(c.to_json()) == c


def test_certificate_failure_named():
    c = load_fixture("ziegler7")
    chk = verify_certificate(c.perturbed(0, 0))
    assert not chk.ok and chk.failed
    assert Configuration(c.basis).rank() == 7
