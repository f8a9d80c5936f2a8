"""Stable sets: graphs, FRAC(G), odd circuits, facet normals and certificates.

Vertices are stored as ``0..n-1``; text formats use the conventional labels
``1..n`` and :func:`parse_graph` shifts them down.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from . import linalg
from .errors import CapExceededError, GraphParseError, NotFoundError, TooLargeError
from .hilbert import minimal_hilbert_basis_simplicial
from .ibn import Configuration
from .polyhedra import InequalitySystem


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} out of range")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def neighbors(self, v: int) -> set:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def complement(self) -> "Graph":
        return Graph(self.n, frozenset(e for e in combinations(range(self.n), 2) if e not in self.edges))

    def induced(self, verts: Sequence[int]) -> "Graph":
        verts = list(verts)
        pos = {v: i for i, v in enumerate(verts)}
        return Graph(len(verts), frozenset((pos[a], pos[b]) for a, b in self.edges
                                           if a in pos and b in pos))

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        G.add_edges_from(self.edges)
        return G

    def to_edgelist(self) -> str:
        lines = [str(self.n)] + [f"{a + 1} {b + 1}" for a, b in self.sorted_edges()]
        return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# named graphs


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def wheel_graph(rim: int) -> Graph:
    """Hub 0 joined to every vertex of a circuit on ``1..rim``."""
    edges = {(0, i) for i in range(1, rim + 1)}
    edges |= {(i, i % rim + 1) for i in range(1, rim + 1)}
    return Graph(rim + 1, frozenset(edges))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, frozenset(outer + inner + spokes))


def antihole_graph(n: int) -> Graph:
    return cycle_graph(n).complement()


# --------------------------------------------------------------------------
# parsing


class GraphFormat(enum.Enum):
    EDGELIST = "edgelist"
    DIMACS = "dimacs"


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise GraphParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_graph(text: str, fmt: GraphFormat | str | None = None) -> Graph:
    """Read a graph from an edge list (first line ``n``) or DIMACS text."""
    lines = text.splitlines()
    if fmt is None:
        fmt = GraphFormat.DIMACS if any(l.strip().startswith("p ") for l in lines) else GraphFormat.EDGELIST
    fmt = GraphFormat(fmt)
    n = None
    declared = None
    edges: set = set()

    def add(u, v, lineno):
        if n is None:
            raise GraphParseError("edge before vertex count", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphParseError(f"vertex out of range 1..{n}", lineno)
        if u == v:
            raise GraphParseError(f"loop at vertex {u}", lineno)
        e = (min(u, v) - 1, max(u, v) - 1)
        if e in edges:
            raise GraphParseError(f"duplicate edge {u} {v}", lineno)
        edges.add(e)

    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if fmt is GraphFormat.DIMACS:
            if tok[0] == "c":
                continue
            if tok[0] == "p":
                if n is not None:
                    raise GraphParseError("second problem line", lineno)
                if len(tok) != 4 or tok[1] not in ("edge", "col"):
                    raise GraphParseError("expected 'p edge <n> <m>'", lineno)
                n, declared = _ints(tok[2:], lineno)
            elif tok[0] == "e":
                if len(tok) != 3:
                    raise GraphParseError("expected 'e <u> <v>'", lineno)
                add(*_ints(tok[1:], lineno), lineno)
            else:
                raise GraphParseError(f"unknown line type {tok[0]!r}", lineno)
        else:
            if n is None:
                if len(tok) != 1:
                    raise GraphParseError("first line must hold the vertex count", lineno)
                (n,) = _ints(tok, lineno)
                if n < 1:
                    raise GraphParseError("vertex count must be positive", lineno)
            else:
                if len(tok) != 2:
                    raise GraphParseError("expected two vertex labels", lineno)
                add(*_ints(tok, lineno), lineno)
    if n is None:
        raise GraphParseError("no vertex count found", len(lines) or 1)
    if declared is not None and declared != len(edges):
        raise GraphParseError(f"problem line declares {declared} edges, found {len(edges)}", None)
    return Graph(n, frozenset(edges))


# --------------------------------------------------------------------------
# FRAC(G) and round one


def unit(n: int, i: int, s: int = 1) -> tuple:
    return tuple(s if j == i else 0 for j in range(n))


def char_vector(n: int, verts: Iterable[int]) -> tuple:
    vs = set(verts)
    return tuple(int(j in vs) for j in range(n))


@dataclass(frozen=True)
class StableSetSystem:
    system: InequalitySystem
    graph: Graph


def frac_system(G: Graph) -> StableSetSystem:
    if G.n < 1:
        raise ValueError("graph needs at least one vertex")
    rows = [char_vector(G.n, e) for e in G.sorted_edges()]
    rhs = [1] * len(rows)
    rows += [unit(G.n, i, -1) for i in range(G.n)]
    rhs += [0] * G.n
    return StableSetSystem(InequalitySystem(tuple(rows), tuple(rhs)), G)


def graph_configuration(G: Graph) -> Configuration:
    """Edge vectors together with the negated unit vectors."""
    return Configuration(frac_system(G).system.A)


def _canonical_cycle(c: Sequence[int]) -> tuple:
    i = c.index(min(c))
    c = list(c[i:]) + list(c[:i])
    if len(c) > 2 and c[-1] < c[1]:
        c = [c[0]] + c[:0:-1]
    return tuple(c)


def odd_circuits(G: Graph, max_len: int | None = None, cap: int | None = None) -> list:
    """Odd circuits as vertex sequences, one per circuit, sorted."""
    bound = G.n if max_len is None else min(max_len, G.n)
    if bound < 3:
        return []
    out = set()
    for cyc in nx.simple_cycles(G.to_networkx(), length_bound=bound):
        if len(cyc) >= 3 and len(cyc) % 2 == 1:
            out.add(_canonical_cycle(cyc))
            if cap is not None and len(out) > cap:
                raise CapExceededError(f"more than {cap} odd circuits", partial=sorted(out))
    return sorted(out, key=lambda c: (len(c), c))


def predicted_round1(G: Graph, cap: int | None = None) -> Configuration:
    """The graph configuration together with e(C) for every odd circuit C."""
    base = frac_system(G).system.A
    extra = {char_vector(G.n, c) for c in odd_circuits(G, cap=cap)}
    return Configuration(tuple(base) + tuple(extra))


def stability_number(G: Graph) -> int:
    if G.n > 30:
        raise TooLargeError("stability_number is limited to 30 vertices")
    nbr = [0] * G.n
    for a, b in G.edges:
        nbr[a] |= 1 << b
        nbr[b] |= 1 << a
    memo: dict[int, int] = {}

    def alpha(mask: int) -> int:
        if mask == 0:
            return 0
        if mask in memo:
            return memo[mask]
        # branch on a vertex of maximum degree within the mask
        best_v, best_d = -1, -1
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            d = bin(nbr[v] & mask).count("1")
            if d > best_d:
                best_v, best_d = v, d
            m ^= low
        v = best_v
        if best_d == 0:
            res = bin(mask).count("1")
        else:
            res = max(alpha(mask & ~(1 << v)), 1 + alpha(mask & ~(1 << v) & ~nbr[v]))
        memo[mask] = res
        return res

    return alpha((1 << G.n) - 1)


def stable_sets(G: Graph) -> list:
    """Characteristic vectors of all stable sets (brute force, small graphs)."""
    if G.n > 20:
        raise TooLargeError("stable_sets is limited to 20 vertices")
    out = []
    for mask in range(1 << G.n):
        verts = [i for i in range(G.n) if mask >> i & 1]
        if all(not G.adjacent(a, b) for a, b in combinations(verts, 2)):
            out.append(char_vector(G.n, verts))
    return sorted(out)


# --------------------------------------------------------------------------
# facet normals


class NormalClass(enum.Enum):
    CLIQUE = "clique"
    ODD_HOLE = "odd_hole"
    ODD_ANTIHOLE = "odd_antihole"
    ODD_WHEEL = "odd_wheel"
    RANK = "rank"


def _holes(G: Graph, min_len: int) -> list:
    """Chordless odd circuits of length at least ``min_len``."""
    out = []
    for c in odd_circuits(G):
        if len(c) < min_len:
            continue
        k = len(c)
        chord = any(G.adjacent(c[i], c[j]) for i in range(k) for j in range(i + 2, k)
                    if not (i == 0 and j == k - 1))
        if not chord:
            out.append(c)
    return out


def known_normals(G: Graph, cls: NormalClass | str, H: Sequence[int] | None = None) -> list:
    """``(normal, rhs)`` pairs of one classical family of valid inequalities."""
    cls = NormalClass(cls)
    n = G.n
    found = set()
    if cls is NormalClass.CLIQUE:
        for K in nx.find_cliques(G.to_networkx()):
            if len(K) >= 2:
                found.add((char_vector(n, K), 1))
    elif cls is NormalClass.ODD_HOLE:
        for c in _holes(G, 5):
            found.add((char_vector(n, c), len(c) // 2))
    elif cls is NormalClass.ODD_ANTIHOLE:
        for c in _holes(G.complement(), 5):
            found.add((char_vector(n, c), 2))
    elif cls is NormalClass.ODD_WHEEL:
        for hub in range(n):
            nb = sorted(G.neighbors(hub))
            sub = G.induced(nb)
            for c in odd_circuits(sub):
                rim = [nb[i] for i in c]
                coef = (len(rim) - 1) // 2
                v = list(char_vector(n, rim))
                v[hub] = coef
                found.add((tuple(v), coef))
    else:
        if H is None:
            H = range(n)
        H = sorted(set(H))
        if not H:
            raise NotFoundError("empty vertex set for a rank inequality")
        found.add((char_vector(n, H), stability_number(G.induced(H))))
    if not found:
        raise NotFoundError(f"graph has no {cls.value} substructure")
    return sorted(found)


def wheel_witness_basis(k: int) -> tuple[tuple, tuple]:
    """Basis of triangles plus ``-e_0`` whose half row sum is the odd wheel normal.

    The wheel has hub 0 and rim ``1..2k-1``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    rim = 2 * k - 1
    n = rim + 1
    rows = [char_vector(n, (0, i, i % rim + 1)) for i in range(1, rim + 1)]
    rows.append(unit(n, 0, -1))
    total = [sum(col) for col in zip(*rows)]
    normal = tuple(x // 2 for x in total)
    return tuple(rows), normal


def antihole_witness_basis(n: int) -> tuple[tuple, tuple]:
    """``J - I`` (rows are the odd circuits missing one vertex) and the all-ones normal."""
    if n < 6 or n % 2:
        raise ValueError("n must be even and at least 6")
    rows = tuple(tuple(int(i != j) for j in range(n)) for i in range(n))
    return rows, (1,) * n


def line_graph(G: Graph) -> Graph:
    E = G.sorted_edges()
    adj = [(i, j) for i, j in combinations(range(len(E)), 2) if set(E[i]) & set(E[j])]
    return Graph(len(E), frozenset(adj))


def product_graph(G1: Graph, G2: Graph) -> Graph:
    """Disjoint union of G1 and G2 plus every edge between them."""
    off = G1.n
    edges = set(G1.edges)
    edges |= {(a + off, b + off) for a, b in G2.edges}
    edges |= {(u, off + v) for u in range(G1.n) for v in range(G2.n)}
    return Graph(G1.n + G2.n, frozenset(edges))


def product_normal(a1: Sequence[int], b1: int, a2: Sequence[int], b2: int) -> tuple[tuple, int]:
    """Combine facet inequalities of two graphs into one for their product graph."""
    return tuple(b2 * x for x in a1) + tuple(b1 * x for x in a2), b1 * b2


# --------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class FacetCertificate:
    normal: tuple
    rhs: int | None
    basis: tuple
    lam: tuple
    round_claimed: int = 2
    row_claims: tuple = ()
    name: str = ""
    determinant: int | None = None

    @classmethod
    def from_json(cls, data: dict) -> "FacetCertificate":
        lam = data.get("lambda")
        basis = linalg.as_mat(data["basis"])
        normal = linalg.as_vec(data["normal"])
        if lam is None:
            lam = linalg.solve_rational(basis, normal)
        return cls(
            normal=normal,
            rhs=data.get("rhs"),
            basis=basis,
            lam=tuple(linalg.parse_frac(x) for x in lam),
            round_claimed=data.get("round_claimed", 2),
            row_claims=tuple(data.get("row_claims", ())),
            name=data.get("name", ""),
            determinant=data.get("determinant"),
        )

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "normal": list(self.normal),
            "rhs": self.rhs,
            "basis": [list(r) for r in self.basis],
            "lambda": [linalg.frac_str(x) for x in self.lam],
            "round_claimed": self.round_claimed,
            "row_claims": list(self.row_claims),
        }
        if self.determinant is not None:
            out["determinant"] = self.determinant
        return out

    def perturbed(self, row: int, col: int, delta: int = 1) -> "FacetCertificate":
        B = [list(r) for r in self.basis]
        B[row][col] += delta
        return FacetCertificate(self.normal, self.rhs, tuple(map(tuple, B)), self.lam,
                                self.round_claimed, self.row_claims, self.name, self.determinant)


@dataclass
class CertificateCheck:
    ok: bool
    failed: str | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _check_row_claim(row: tuple, claim: dict) -> str | None:
    kind = claim.get("kind")
    n = len(row)
    if kind == "edge":
        if sorted(row) != [0] * (n - 2) + [1, 1]:
            return "not an edge vector"
    elif kind == "neg_unit":
        if sorted(row) != [-1] + [0] * (n - 1):
            return "not a negated unit vector"
    elif kind == "odd_circuit":
        if any(x not in (0, 1) for x in row):
            return "not a 0/1 vector"
        support = sum(row)
        if support < 3 or support % 2 == 0:
            return "support is not an odd circuit size"
        if "length" in claim and claim["length"] != support:
            return f"support size {support} differs from claimed length {claim['length']}"
        if "vertices" in claim:
            vs = list(claim["vertices"])
            if len(vs) > 1 and vs[0] == vs[-1]:
                vs = vs[:-1]
            if len(set(vs)) != len(vs):
                return "circuit repeats a vertex"
            if char_vector(n, [v - 1 for v in vs]) != row:
                return "row is not the characteristic vector of the listed circuit"
    elif kind in (None, "round1_of_pm1_cube"):
        pass
    else:
        return f"unknown claim {kind!r}"
    return None


def verify_certificate(c: FacetCertificate) -> CertificateCheck:
    """Check that ``c.normal`` is a minimal Hilbert basis element of ``cone(c.basis)``."""
    B = c.basis
    if len(B) != len(B[0]) or len(c.normal) != len(B) or len(c.lam) != len(B):
        return CertificateCheck(False, "dimensions")
    det = linalg.determinant(B)
    details = {"determinant": det}
    if det == 0:
        return CertificateCheck(False, "determinant is zero", details)
    if c.determinant is not None and abs(det) != abs(c.determinant):
        return CertificateCheck(False, f"determinant {det} differs from stated {c.determinant}", details)
    if linalg.vec_mat(c.lam, B) != tuple(Fraction(x) for x in c.normal):
        return CertificateCheck(False, "lambda @ basis != normal", details)
    if not all(0 <= x < 1 for x in c.lam):
        return CertificateCheck(False, "lambda not in [0,1)", details)
    for i, row in enumerate(B):
        if not linalg.is_primitive(row):
            return CertificateCheck(False, f"row {i + 1} is not primitive", details)
    if c.normal not in minimal_hilbert_basis_simplicial(B).elements:
        return CertificateCheck(False, "normal is not in the minimal Hilbert basis", details)
    for i, (row, claim) in enumerate(zip(B, c.row_claims)):
        err = _check_row_claim(row, claim)
        if err:
            return CertificateCheck(False, f"row {i + 1}: {err}", details)
    return CertificateCheck(True, None, details)


FIXTURES = ("giles_trotter", "fish_in_net", "ziegler7")


def load_fixture(name: str) -> FacetCertificate:
    key = name.replace("-", "_")
    if key not in FIXTURES:
        raise NotFoundError(f"unknown fixture {name!r}")
    text = resources.files("scrtool").joinpath("data").joinpath(f"{key}.json").read_text()
    return FacetCertificate.from_json(json.loads(text))
