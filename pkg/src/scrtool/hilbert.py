"""Minimal Hilbert bases of simplicial and pointed rational cones.

A simplicial cone is spanned by the rows of a nonsingular integer matrix.  Its
lattice points are the points of the half-open fundamental parallelepiped plus
nonnegative integer combinations of the generators, so its minimal Hilbert
basis consists of the generators together with the parallelepiped points that
are not the sum of two nonzero lattice points of the cone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from . import linalg
from .errors import NotFullRankError, NotPointedError, NonPrimitiveError, SingularMatrixError


@dataclass(frozen=True)
class Witness:
    """Certificate that ``element == lam @ basis_rows``."""

    element: tuple
    basis_rows: tuple
    lam: tuple

    def check(self) -> bool:
        return linalg.vec_mat(self.lam, self.basis_rows) == tuple(Fraction(x) for x in self.element)

    def to_json(self) -> dict:
        return {
            "element": [str(x) for x in self.element],
            "basis_rows": [[str(x) for x in r] for r in self.basis_rows],
            "lambda": [linalg.frac_str(x) for x in self.lam],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Witness":
        return cls(
            element=linalg.as_vec(data["element"]),
            basis_rows=linalg.as_mat(data["basis_rows"]),
            lam=tuple(linalg.parse_frac(x) for x in data["lambda"]),
        )


@dataclass(frozen=True)
class SimplicialCone:
    basis: tuple

    def __post_init__(self):
        basis = linalg.as_mat(self.basis)
        object.__setattr__(self, "basis", basis)
        if len(basis) != len(basis[0]):
            raise SingularMatrixError("a simplicial cone needs a square basis")
        for row in basis:
            if not linalg.is_primitive(row):
                raise NonPrimitiveError(f"basis row {row} is not primitive")
        if linalg.determinant(basis) == 0:
            raise SingularMatrixError("basis rows are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class HilbertBasisResult:
    elements: tuple
    witnesses: tuple = field(default=(), compare=False)

    def witness(self, v) -> Witness | None:
        v = tuple(v)
        return next((w for w in self.witnesses if w.element == v), None)

    def __contains__(self, v) -> bool:
        return tuple(v) in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def to_json(self) -> dict:
        return {
            "elements": [[str(x) for x in e] for e in self.elements],
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _sort_key(v):
    return (sum(v), v)


def _par_data(basis: tuple) -> tuple[int, list[tuple[tuple, tuple]]]:
    """Parallelepiped points of ``cone(basis)`` with their scaled coefficients.

    Returns ``(d, [(point, lam_num), ...])`` where ``d = |det(basis)|`` and
    ``point == lam_num @ basis / d`` with ``0 <= lam_num[i] < d``.  The cosets
    of the row lattice are walked through the Smith form: ``U B V = D`` maps
    ``Z^n / Z^n B`` onto ``prod Z/d_i`` via ``z -> z V``.
    """
    n = len(basis)
    U, D, V = linalg.smith_normal_form(basis)
    d, T = linalg.adjugate_inverse(basis)
    if d < 0:
        d, T = -d, tuple(tuple(-x for x in r) for r in T)
    # V is unimodular, so T_V @ V == s * I with s = +-1 and V^{-1} == s * T_V
    s, TV = linalg.adjugate_inverse(V)
    Vinv = tuple(tuple(s * x for x in r) for r in TV)
    # image of each coset generator in lambda-numerator space, reduced mod d
    gens = [tuple(x % d for x in linalg.vec_mat(Vinv[i], T)) for i in range(n)]
    orders = [D[i][i] for i in range(n)]
    out = []
    for y in product(*(range(o) for o in orders)):
        lam = [0] * n
        for yi, g in zip(y, gens):
            if yi:
                for j in range(n):
                    lam[j] += yi * g[j]
        lam = tuple(x % d for x in lam)
        pt = linalg.vec_mat(lam, basis)
        pt = tuple(x // d for x in pt)
        out.append((pt, lam))
    return d, out


def parallelepiped_points(cone: SimplicialCone) -> list[tuple]:
    """All lattice points ``lam @ basis`` with ``0 <= lam_i < 1``, origin included."""
    _, data = _par_data(cone.basis)
    pts = sorted((p for p, _ in data), key=_sort_key)
    return pts


def _irreducible(data: list[tuple[tuple, tuple]]) -> list[tuple[tuple, tuple]]:
    # q reduces p iff lam_q <= lam_p componentwise (q != p); a reducer has a
    # strictly smaller coefficient sum, and reducibility is transitive, so it
    # suffices to test against irreducible points seen earlier.
    nonzero = [(p, lam) for p, lam in data if any(lam)]
    nonzero.sort(key=lambda t: (sum(t[1]), t[0]))
    keep: list[tuple[tuple, tuple]] = []
    for p, lam in nonzero:
        if not any(all(a <= b for a, b in zip(lq, lam)) for _, lq in keep):
            keep.append((p, lam))
    return keep


@lru_cache(maxsize=1 << 16)
def _simplicial_cached(basis: tuple) -> HilbertBasisResult:
    n = len(basis)
    d, data = _par_data(basis)
    witnesses = []
    for i, row in enumerate(basis):
        unit = tuple(Fraction(int(i == j)) for j in range(n))
        witnesses.append(Witness(row, basis, unit))
    for p, lam in _irreducible(data):
        witnesses.append(Witness(p, basis, tuple(Fraction(x, d) for x in lam)))
    witnesses.sort(key=lambda w: _sort_key(w.element))
    return HilbertBasisResult(tuple(w.element for w in witnesses), tuple(witnesses))


def minimal_hilbert_basis_simplicial(cone: SimplicialCone | Sequence) -> HilbertBasisResult:
    if not isinstance(cone, SimplicialCone):
        cone = SimplicialCone(cone)
    return _simplicial_cached(cone.basis)


def cone_contains(gens: Iterable[Sequence[int]], v: Sequence[int]) -> bool:
    """True iff ``v`` is a nonnegative rational combination of ``gens``."""
    from .polyhedra import lp_feasible

    gens = [tuple(g) for g in gens]
    v = tuple(v)
    if not any(v):
        return True
    if not gens:
        return False
    cols = linalg.transpose(gens)
    return lp_feasible(cols, v) is not None


def is_pointed(gens: Sequence[Sequence[int]]) -> bool:
    """A cone is pointed iff 0 is not a nontrivial nonnegative combination."""
    from .polyhedra import lp_feasible

    gens = [tuple(g) for g in gens]
    n = len(gens[0])
    rows = [tuple(g[i] for g in gens) for i in range(n)]
    rows.append(tuple(1 for _ in gens))
    return lp_feasible(rows, (0,) * n + (1,)) is None


def minimal_hilbert_basis_pointed(gens: Iterable[Sequence[int]]) -> HilbertBasisResult:
    """Minimal Hilbert basis of a full-dimensional pointed cone.

    The union of the simplicial Hilbert bases over every basis contained in
    ``gens`` is a Hilbert basis of the whole cone; reducible members are then
    discarded.  An element ``h`` is reducible iff ``h - g`` lies in the cone for
    some other member ``g``.
    """
    gens = sorted({linalg.as_vec(g) for g in gens})
    if not gens:
        raise NotFullRankError("empty generating set")
    n = len(gens[0])
    for g in gens:
        if not linalg.is_primitive(g):
            raise NonPrimitiveError(f"generator {g} is not primitive")
    if linalg.rank(gens) < n:
        raise NotFullRankError("generators do not span the ambient space")
    if not is_pointed(gens):
        raise NotPointedError("cone contains a line")

    found: dict[tuple, Witness] = {}
    for sub in combinations(gens, n):
        if linalg.determinant(sub) == 0:
            continue
        res = _simplicial_cached(tuple(sub))
        for w in res.witnesses:
            found.setdefault(w.element, w)

    cands = sorted(found, key=_sort_key)
    keep = []
    for h in cands:
        reducible = False
        for g in cands:
            if g == h:
                continue
            diff = tuple(a - b for a, b in zip(h, g))
            if cone_contains(gens, diff):
                reducible = True
                break
        if not reducible:
            keep.append(h)
    return HilbertBasisResult(tuple(keep), tuple(found[h] for h in keep))
