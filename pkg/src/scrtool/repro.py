"""Named reproduction suites, one per acceptance criterion."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import linalg
from .closure import chvatal_first_closure, scr_of_system, small_closure
from .errors import UnknownSuiteError
from .hilbert import minimal_hilbert_basis_simplicial
from .ibn import Configuration, ibn_round, iter_rounds
from .polyhedra import (InequalitySystem, LatticeBox, integer_hull, lattice_points,
                        vertex_enumeration)
from .stableset import (Graph, complete_graph, cycle_graph, frac_system, graph_configuration,
                        load_fixture, petersen_graph, predicted_round1, verify_certificate,
                        wheel_graph)
from .supernormal import (is_supernormal, is_unimodular, lowerbound_family, lowerbound_system,
                          odd_circuit_incidence, predict_Rk, search_round1_witness)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    seconds: float
    limit: float
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed and self.seconds < self.limit

    def line(self) -> str:
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.name} ({self.seconds:.2f}s, limit {self.limit:g}s)"

    def to_json(self, stable: bool = False) -> dict:
        out = {"suite": self.name, "passed": self.ok, "limit_seconds": self.limit,
               "details": self.details}
        if not stable:
            out["seconds"] = round(self.seconds, 3)
        return out


# every IBN log produced by a suite is recorded here so the property suite
# can re-check the norm bound on all of them
_RUN_LOGS: list = []


def _record(log):
    _RUN_LOGS.append(log)
    return log


def _rounds(cfg, max_rounds, cap=None):
    log = None
    for log in iter_rounds(cfg, max_rounds=max_rounds, cap=cap):
        pass
    return _record(log)


ONES = lambda n: (1,) * n  # noqa: E731


def suite_oddcircuit(**_) -> tuple[bool, dict]:
    details = {}
    ok = True
    for k in range(1, 5):
        cfg = odd_circuit_incidence(k)
        m = 2 * k + 1
        log = _rounds(cfg, 1)
        added = sorted(set(log.configs[1].vectors) - set(cfg.vectors))
        sup = is_supernormal(log.configs[1], cap=None)
        uni = is_unimodular(log.configs[1], cap=None)
        det = uni.certificate.get("determinant")
        good = added == [ONES(m)] and sup.verdict and not uni.verdict and abs(det) == 2
        details[f"k={k}"] = {"added": added, "supernormal": sup.verdict,
                             "unimodular": uni.verdict, "determinant": det, "ok": good}
        ok &= good
    return ok, details


def _facet_check(j: int) -> bool:
    S = lowerbound_system(j)
    box = LatticeBox.cube(3, -3 * j, 3 * j)
    a = (1, j, j)
    pts = lattice_points(S, box)
    if any(linalg.dot(a, p) > 0 for p in pts):
        return False
    tight = [(0, -1, 1), (0, 0, 0), (-j, 0, 1)]
    if not all(S.contains(p) and linalg.dot(a, p) == 0 for p in tight):
        return False
    diffs = [tuple(x - y for x, y in zip(p, tight[1])) for p in (tight[0], tight[2])]
    return linalg.rank(diffs) == 2


def suite_lowerbound(j: int | None = None, **_) -> tuple[bool, dict]:
    js = [j] if j else [2, 3, 4, 5]
    details = {}
    ok = True
    for jj in js:
        log = _rounds(lowerbound_family(jj), jj + 1)
        preds = all(log.configs[k] == predict_Rk(jj, k) for k in range(1, jj))
        fix = log.fixpoint_round == jj - 1
        res = scr_of_system(lowerbound_system(jj), max_k=jj + 1, cap=None)
        facet = _facet_check(jj)
        good = preds and fix and res.scr == jj - 1 and facet
        details[f"j={jj}"] = {"predict_Rk": preds, "fixpoint_round": log.fixpoint_round,
                              "scr": res.scr, "facet": facet, "ok": good}
        ok &= good
    return ok, details


def random_graph(rng: random.Random, n_max: int = 7) -> Graph:
    n = rng.randint(3, n_max)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
    return Graph.from_edges(n, edges)


def round1_graphs(seed: int = 0, count: int = 30) -> list:
    named = [("K3", complete_graph(3)), ("K4", complete_graph(4)), ("K5", complete_graph(5)),
             ("C5", cycle_graph(5)), ("C7", cycle_graph(7)), ("W5", wheel_graph(5)),
             ("Petersen", petersen_graph())]
    rng = random.Random(seed)
    named += [(f"random{i}", random_graph(rng)) for i in range(count)]
    return named


def suite_round1(seed: int = 0, **_) -> tuple[bool, dict]:
    details = {}
    ok = True
    for name, G in round1_graphs(seed):
        cfg = graph_configuration(G)
        got = ibn_round(cfg, cap=None)
        _record_round(cfg, got)
        good = got == predicted_round1(G)
        details[name] = {"n": G.n, "size": len(got), "ok": good}
        ok &= good
    return ok, details


def _record_round(cfg, out):
    from .ibn import RoundLog
    _RUN_LOGS.append(RoundLog(configs=[cfg, out]))


def k5_third_vertices() -> set:
    third = Fraction(1, 3)
    out = {tuple(Fraction(0) if i == z else third for i in range(5)) for z in range(5)}
    out.add((third,) * 5)
    return out


def suite_k5(**_) -> tuple[bool, dict]:
    S = frac_system(complete_graph(5)).system
    C = chvatal_first_closure(S)
    frac = set(vertex_enumeration(C).fractional_vertices())
    closure_ok = frac == k5_third_vertices()
    rep = small_closure(S, 1, cap=None)
    res = scr_of_system(S, cap=None)
    if res.log is not None:
        _record(res.log)
    ok = closure_ok and rep.hull_equal and res.scr == 1
    return ok, {"chvatal_fractional_vertices": sorted(frac), "closure_ok": closure_ok,
                "small_closure_hull_equal": rep.hull_equal, "scr": res.scr}


def _certificate_suite(name: str) -> tuple[bool, dict]:
    c = load_fixture(name)
    chk = verify_certificate(c)
    det = linalg.determinant(c.basis)
    lam_ok = linalg.vec_mat(c.lam, c.basis) == tuple(Fraction(x) for x in c.normal)
    n = len(c.basis)
    survivors = []
    for r in range(n):
        for col in range(n):
            if verify_certificate(c.perturbed(r, col)).ok:
                survivors.append((r, col))
    ok = chk.ok and lam_ok and not survivors
    details = {"verified": chk.ok, "failed": chk.failed, "determinant": det,
               "lambda_exact": lam_ok, "perturbations": n * n,
               "perturbations_verifying": survivors}
    if name == "fish_in_net":
        ok &= det == 18
    return ok, details


def suite_clawfree(**_) -> tuple[bool, dict]:
    a, da = _certificate_suite("giles_trotter")
    b, db = _certificate_suite("fish_in_net")
    return a and b, {"giles_trotter": da, "fish_in_net": db}


def suite_fish(**_):
    return _certificate_suite("fish_in_net")


def suite_giles_trotter(**_):
    return _certificate_suite("giles_trotter")


NONTERM = ((0, 3, 1), (1, 1, 1), (2, 5, 5), (1, 4, 3))


def u_vec(k: int) -> tuple:
    return (k, 2 * k + 2, 2 * k + 1)


def v_vec(k: int) -> tuple:
    return (k, 2 * k + 1, 2 * k)


def suite_nonterm(**_) -> tuple[bool, dict]:
    log = _rounds(Configuration(NONTERM), 4)
    no_fix = log.rounds_completed == 4 and not log.fixpoint_reached
    members = {}
    for k in range(1, 4):
        a = v_vec(k) in minimal_hilbert_basis_simplicial(((0, 3, 1), (1, 1, 1), u_vec(k))).elements
        b = u_vec(k + 1) in minimal_hilbert_basis_simplicial(((0, 3, 1), (2, 5, 5), v_vec(k))).elements
        members[f"k={k}"] = {"v_k": a, "u_k+1": b}
    mem_ok = all(m["v_k"] and m["u_k+1"] for m in members.values())
    final = log.final
    present = all(x in final for x in (v_vec(1), u_vec(2), v_vec(2), u_vec(3)))
    added = [sorted(r.added) for r in log.rounds]
    return no_fix and mem_ok and present, {"no_fixpoint": no_fix, "memberships": members,
                                           "contains_v1_u2_v2_u3": present, "added": added}


def random_plane_configuration(rng: random.Random, size: int | None = None) -> Configuration:
    while True:
        m = size or rng.randint(2, 6)
        vecs = set()
        while len(vecs) < m:
            v = (rng.randint(-9, 9), rng.randint(-9, 9))
            if v != (0, 0) and linalg.is_primitive(v):
                vecs.add(v)
        cfg = Configuration(tuple(vecs))
        if cfg.rank() == 2:
            return cfg


def suite_n2(seed: int = 0, **_) -> tuple[bool, dict]:
    rng = random.Random(seed)
    bad = []
    for i in range(100):
        cfg = random_plane_configuration(rng)
        log = _rounds(cfg, 2)
        if log.config(2) != log.config(1):
            bad.append(i)
    return not bad, {"samples": 100, "failures": bad}


def triangle_system(j: int) -> InequalitySystem:
    return InequalitySystem(((-1, 0), (1, 2 * j), (1, -2 * j)), (0, 2 * j, 0))


def suite_triangle(**_) -> tuple[bool, dict]:
    details = {}
    ok = True
    for j in range(2, 6):
        S = triangle_system(j)
        H = integer_hull(S)
        seg = H.vertices == ((0, 0), (0, 1)) and not H.rays
        res = scr_of_system(S, cap=None)
        if res.log is not None:
            _record(res.log)
        frac = vertex_enumeration(chvatal_first_closure(S)).fractional_vertices()
        good = seg and res.scr == 1 and bool(frac)
        details[f"j={j}"] = {"hull_segment": seg, "scr": res.scr,
                             "chvatal_fractional_vertices": list(frac), "ok": good}
        ok &= good
    return ok, details


def suite_ziegler(**_) -> tuple[bool, dict]:
    c = load_fixture("ziegler7")
    H = minimal_hilbert_basis_simplicial(c.basis)
    w = H.witness(c.normal)
    ok = w is not None
    return ok, {"normal": c.normal, "member": ok, "lambda": w.lam if w else None,
                "determinant": linalg.determinant(c.basis)}


def cube_generators(n: int, units: bool = True) -> list:
    gens = [tuple(v) for v in product((-1, 1), repeat=n)]
    if units:
        gens += [tuple(s * int(i == k) for k in range(n)) for i in range(n) for s in (1, -1)]
    return gens


def ziegler_provenance(budget: int = 10 ** 6, seed: int = 0, units: bool = False) -> dict:
    """Search round-one witnesses for the seven basis vectors (reported only).

    ``budget`` is shared evenly by the seven targets.  With ``units`` the
    signed unit vectors join the generating set.
    """
    c = load_fixture("ziegler7")
    gens = cube_generators(len(c.normal), units=units)
    per = budget // len(c.basis)
    out = {}
    for v in c.basis:
        found = search_round1_witness(v, gens, budget=per, seed=seed)
        out[",".join(map(str, v))] = None if found is None else {
            "basis_rows": found[0], "lambda": found[1]}
    return {"generators": "pm1+units" if units else "pm1", "budget": budget,
            "found": sum(x is not None for x in out.values()), "targets": len(out),
            "witnesses": out}


def _simplicial_oracle(B) -> set:
    """Hilbert basis of a simplicial cone by box scan and Cramer's rule."""
    n = len(B)
    d = linalg.determinant(B)
    lo = [sum(min(0, B[i][c]) for i in range(n)) for c in range(n)]
    hi = [sum(max(0, B[i][c]) for i in range(n)) for c in range(n)]
    cols = linalg.transpose(B)

    def lam(p):
        # solve lam @ B = p: Cramer on the transposed system B^T lam = p
        out = []
        for i in range(n):
            M = [list(r) for r in cols]
            for r in range(n):
                M[r][i] = p[r]
            out.append(Fraction(linalg.determinant(M), d))
        return tuple(out)

    pts = {}
    for p in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        if not any(p):
            continue
        l = lam(p)
        if all(0 <= x < 1 for x in l):
            pts[p] = l
    for i, g in enumerate(B):
        pts[tuple(g)] = tuple(Fraction(int(i == k)) for k in range(n))
    keep = set()
    for p, lp in pts.items():
        red = any(q != p and all(a <= b for a, b in zip(lq, lp)) for q, lq in pts.items())
        if not red:
            keep.add(p)
    return keep


def random_simplicial_cone(rng: random.Random, n: int, max_det: int = 20, entry: int = 4):
    while True:
        B = tuple(tuple(rng.randint(-entry, entry) for _ in range(n)) for _ in range(n))
        if not all(any(r) and linalg.is_primitive(r) for r in B):
            continue
        d = linalg.determinant(B)
        if d != 0 and abs(d) <= max_det:
            return B


def suite_properties(seed: int = 0, **_) -> tuple[bool, dict]:
    # make sure there are runs to check even when called alone
    if not _RUN_LOGS:
        suite_oddcircuit()
        suite_nonterm()
        suite_lowerbound()
    norm_bad = []
    checked = 0
    for log in _RUN_LOGS:
        base = log.configs[0]
        n = base.dim
        amax = max(linalg.inf_norm(a) for a in base.vectors)
        for k in range(1, len(log.configs)):
            for v in log.configs[k].vectors:
                checked += 1
                if not linalg.inf_norm(v) < n ** k * amax:
                    norm_bad.append((k, v))
    neg_bad = []
    rng = random.Random(seed)
    graphs = [G for _, G in round1_graphs(seed, 10) if G.n <= 7]
    for G in graphs:
        cfg = graph_configuration(G)
        out = ibn_round(cfg, cap=None)
        for v in set(out.vectors) - set(cfg.vectors):
            if min(v) < 0:
                neg_bad.append(v)
    hb_bad = []
    for i in range(200):
        n = 2 if i % 2 == 0 else 3
        B = random_simplicial_cone(rng, n)
        if set(minimal_hilbert_basis_simplicial(B).elements) != _simplicial_oracle(B):
            hb_bad.append(B)
    ok = not norm_bad and not neg_bad and not hb_bad
    return ok, {"norm_vectors_checked": checked, "norm_violations": norm_bad[:10],
                "nonnegativity_violations": neg_bad[:10], "hilbert_samples": 200,
                "hilbert_mismatches": hb_bad[:10]}


SUITES = {
    "oddcircuit": (suite_oddcircuit, 10.0),
    "lowerbound": (suite_lowerbound, 60.0),
    "round1": (suite_round1, 300.0),
    "k5": (suite_k5, 60.0),
    "clawfree": (suite_clawfree, 30.0),
    "fish": (suite_fish, 30.0),
    "giles-trotter": (suite_giles_trotter, 30.0),
    "nonterm": (suite_nonterm, 30.0),
    "n2": (suite_n2, 120.0),
    "triangle": (suite_triangle, 60.0),
    "ziegler": (suite_ziegler, 10.0),
    "properties": (suite_properties, 300.0),
}

# the order of ``repro all``; fish and giles-trotter are covered by clawfree
ALL = ("oddcircuit", "lowerbound", "round1", "k5", "clawfree", "nonterm", "n2",
       "triangle", "ziegler", "properties")


def run_suite(name: str, **kwargs) -> SuiteResult:
    if name not in SUITES:
        raise UnknownSuiteError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}, all")
    fn, limit = SUITES[name]
    t0 = time.perf_counter()
    passed, details = fn(**kwargs)
    return SuiteResult(name, bool(passed), time.perf_counter() - t0, limit, details)


def run_all(**kwargs) -> list:
    return [run_suite(name, **kwargs) for name in ALL]
