"""Exact H-form and V-form computations on rational polyhedra.

Everything is over ``int`` and ``Fraction``.  Vertices come from solving every
nonsingular n-subset of rows, extreme rays from the homogeneous analogue, and
integer hulls from lattice-point enumeration followed by an exact
extreme-point test.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor
from typing import Iterable, Sequence

from . import linalg
from .errors import EmptyPolyhedronError, NonPrimitiveError, RankDeficientError, TooLargeError

try:
    import numpy as np

    from . import _intbatch
except ImportError:  # pragma: no cover
    np = None


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


UNBOUNDED = LPStatus.UNBOUNDED
INFEASIBLE = LPStatus.INFEASIBLE
AUTO = "auto"

DEFAULT_MAX_POINTS = 2_000_000


# --------------------------------------------------------------------------
# exact Phase-I simplex


def lp_feasible(rows: Sequence[Sequence], rhs: Sequence) -> tuple | None:
    """Find ``x >= 0`` with ``rows @ x == rhs`` or return ``None``.

    Phase-I simplex on a Fraction tableau with Bland's rule, so it always
    terminates.  The returned point is a basic feasible solution.
    """
    m = len(rows)
    if m == 0:
        return ()
    ncols = len(rows[0])
    tab = []
    for r, b in zip(rows, rhs):
        r = [Fraction(x) for x in r]
        b = Fraction(b)
        if b < 0:
            r = [-x for x in r]
            b = -b
        tab.append(r + [Fraction(int(i == len(tab))) for i in range(m)] + [b])
    width = ncols + m
    basis = [ncols + i for i in range(m)]
    # objective: minimise sum of artificials, stored as reduced costs
    cost = [Fraction(0)] * (width + 1)
    for r in tab:
        for j in range(ncols):
            cost[j] -= r[j]
        cost[width] -= r[width]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i, r in enumerate(tab):
            if r[enter] > 0:
                ratio = r[width] / r[enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # cannot happen in phase I (bounded below by 0)
            break
        _pivot(tab, cost, best[1], enter)
        basis[best[1]] = enter
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * ncols
    for i, bj in enumerate(basis):
        if bj < ncols:
            x[bj] = tab[i][width]
    return tuple(x)


def _pivot(tab, cost, r, c):
    prow = tab[r]
    pv = prow[c]
    if pv != 1:
        prow[:] = [x / pv for x in prow]
    nz = [j for j, x in enumerate(prow) if x]
    for i, row in enumerate(tab):
        if i != r:
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
    f = cost[c]
    if f:
        for j in nz:
            cost[j] -= f * prow[j]


def in_convex_cone_hull(p: Sequence, points: Sequence[Sequence], rays: Sequence[Sequence] = ()) -> bool:
    """True iff ``p`` lies in ``conv(points) + cone(rays)``."""
    if not points:
        return False
    n = len(p)
    cols = [tuple(q) for q in points] + [tuple(r) for r in rays]
    rows = [tuple(c[i] for c in cols) for i in range(n)]
    rows.append(tuple([1] * len(points) + [0] * len(rays)))
    return lp_feasible(rows, tuple(p) + (1,)) is not None


# --------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class InequalitySystem:
    """``{x : A x <= b}`` with primitive integer rows."""

    A: tuple
    b: tuple

    def __post_init__(self):
        A = linalg.as_mat(self.A)
        b = linalg.as_vec(self.b)
        if len(b) != len(A):
            raise ValueError(f"A has {len(A)} rows but b has {len(b)} entries")
        for row in A:
            if not linalg.is_primitive(row):
                raise NonPrimitiveError(f"row {row} is not primitive")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return len(self.A[0])

    @property
    def m(self) -> int:
        return len(self.A)

    def contains(self, x: Sequence) -> bool:
        return all(linalg.dot(a, x) <= bi for a, bi in zip(self.A, self.b))

    def to_json(self) -> dict:
        return {"A": [[str(v) for v in r] for r in self.A], "b": [str(v) for v in self.b]}

    @classmethod
    def from_json(cls, data: dict) -> "InequalitySystem":
        return cls(data["A"], data["b"])


@dataclass(frozen=True)
class VRepresentation:
    vertices: tuple
    rays: tuple = ()
    box_limited: bool = field(default=False, compare=False)

    def __post_init__(self):
        verts = sorted({tuple(Fraction(x) for x in v) for v in self.vertices})
        rays = sorted({linalg.primitive_part(linalg.as_vec(r))[1] for r in self.rays})
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "rays", tuple(rays))

    def fractional_vertices(self) -> tuple:
        return tuple(v for v in self.vertices if any(x.denominator != 1 for x in v))

    def is_integral(self) -> bool:
        return not self.fractional_vertices()

    def to_json(self) -> dict:
        return {
            "vertices": [[linalg.frac_str(x) for x in v] for v in self.vertices],
            "rays": [[str(x) for x in r] for r in self.rays],
            "box_limited": self.box_limited,
        }

    @classmethod
    def from_json(cls, data: dict) -> "VRepresentation":
        return cls(
            tuple(tuple(linalg.parse_frac(x) for x in v) for v in data["vertices"]),
            tuple(linalg.as_vec(r) for r in data.get("rays", [])),
            bool(data.get("box_limited", False)),
        )


@dataclass(frozen=True)
class LatticeBox:
    lower: tuple
    upper: tuple

    def __post_init__(self):
        lo, hi = linalg.as_vec(self.lower), linalg.as_vec(self.upper)
        if len(lo) != len(hi):
            raise ValueError("box bounds have different dimensions")
        if any(l > u for l, u in zip(lo, hi)):
            raise ValueError("box lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def cube(cls, n: int, lo: int, hi: int) -> "LatticeBox":
        return cls((lo,) * n, (hi,) * n)

    def size(self) -> int:
        s = 1
        for l, u in zip(self.lower, self.upper):
            s *= u - l + 1
        return s


# --------------------------------------------------------------------------
# vertices and rays


def _require_full_rank(S: InequalitySystem):
    if linalg.rank(S.A) < S.n:
        raise RankDeficientError(f"constraint matrix has rank < {S.n}")


def _subset_solutions(A, b, n):
    """Yield ``(x_num, d)`` with ``x = x_num / d`` for nonsingular n-subsets.

    ``d > 0``.  Feasibility is not checked here.
    """
    m = len(A)
    subsets = combinations(range(m), n)
    maxsq = max(sum(x * x for x in r) for r in A)
    if np is not None and n >= 2 and _intbatch.fits_int64(maxsq, n):
        all_sub = list(subsets)
        idx = np.array(all_sub, dtype=np.int64).reshape(-1, n)
        An = np.array(A, dtype=np.int64)
        bmax = max(abs(x) for x in b)
        # x_num = T b; |T| below the Hadamard bound, so check the product too
        bound = (maxsq + 1) ** ((n + 1) / 2) * (bmax + 1) * n
        if bound < 2 ** 62:
            bn = np.array(b, dtype=np.int64)
            for s in range(0, len(idx), _intbatch.CHUNK):
                sub = idx[s:s + _intbatch.CHUNK]
                d, T = _intbatch.batch_adjugate(An[sub])
                keep = d != 0
                sub, d, T = sub[keep], d[keep], T[keep]
                xnum = np.einsum("kij,kj->ki", T, bn[sub])
                neg = d < 0
                xnum[neg] = -xnum[neg]
                d = np.abs(d)
                for xs, dd in zip(xnum.tolist(), d.tolist()):
                    yield tuple(xs), dd
            return
        subsets = iter(all_sub)
    for sub in subsets:
        M = [A[i] for i in sub]
        try:
            d, T = linalg.adjugate_inverse(M)
        except Exception:
            continue
        xnum = tuple(linalg.dot(T[i], [b[j] for j in sub]) for i in range(n))
        if d < 0:
            d, xnum = -d, tuple(-x for x in xnum)
        yield xnum, d


def _vertices(S: InequalitySystem) -> list:
    A, b, n = S.A, S.b, S.n
    seen = {}
    for xnum, d in _subset_solutions(A, b, n):
        key = (xnum, d)
        if key in seen:
            continue
        ok = all(linalg.dot(a, xnum) <= bi * d for a, bi in zip(A, b))
        seen[key] = ok
    out = set()
    for (xnum, d), ok in seen.items():
        if ok:
            out.add(tuple(Fraction(x, d) for x in xnum))
    return sorted(out)


def extreme_rays(A: Sequence[Sequence[int]]) -> list:
    """Extreme rays of the pointed cone ``{x : A x <= 0}`` as primitive vectors."""
    n = len(A[0])
    if n == 1:
        cands = [(1,), (-1,)]
    else:
        cands = []
        for sub in combinations(range(len(A)), n - 1):
            c = linalg.cofactor_vector([A[i] for i in sub], n)
            if any(c):
                cands.append(linalg.primitive_part(c)[1])
    out = set()
    for c in cands:
        for r in (c, tuple(-x for x in c)):
            if r in out:
                continue
            if all(linalg.dot(a, r) <= 0 for a in A):
                # extreme iff the tight rows have rank n-1
                tight = [a for a in A if linalg.dot(a, r) == 0]
                if tight and linalg.rank(tight) == n - 1:
                    out.add(r)
                elif n == 1:
                    out.add(r)
    return sorted(out)


def vertex_enumeration(S: InequalitySystem) -> VRepresentation:
    _require_full_rank(S)
    verts = _vertices(S)
    if not verts:
        raise EmptyPolyhedronError("no feasible point")
    return VRepresentation(tuple(verts), tuple(extreme_rays(S.A)))


def lp_optimum(c: Sequence[int], S: InequalitySystem, V: VRepresentation | None = None):
    """Maximum of ``c x`` over ``S``: a Fraction, ``UNBOUNDED`` or ``INFEASIBLE``."""
    _require_full_rank(S)
    if V is None:
        try:
            V = vertex_enumeration(S)
        except EmptyPolyhedronError:
            return INFEASIBLE
    if any(linalg.dot(c, r) > 0 for r in V.rays):
        return UNBOUNDED
    return max(linalg.dot(c, v) for v in V.vertices)


# --------------------------------------------------------------------------
# lattice points


def auto_box(S: InequalitySystem, V: VRepresentation | None = None) -> LatticeBox:
    """A box holding every vertex of the integer hull.

    For a polytope this is the bounding box of its vertices.  With extreme
    rays ``r_i`` the integer hull equals ``conv((Q + Z) ∩ Z^n) + cone(r_i)``
    where ``Q`` is the convex hull of the vertices and ``Z`` the zonotope
    ``{sum mu_i r_i : 0 <= mu_i <= 1}``, so the bounding box of ``Q + Z``
    suffices.
    """
    if V is None:
        V = vertex_enumeration(S)
    n = S.n
    lo = [floor(min(v[i] for v in V.vertices)) for i in range(n)]
    hi = [ceil(max(v[i] for v in V.vertices)) for i in range(n)]
    for r in V.rays:
        for i in range(n):
            if r[i] < 0:
                lo[i] += r[i]
            else:
                hi[i] += r[i]
    return LatticeBox(tuple(lo), tuple(hi))


def _resolve_box(S, box, V=None) -> LatticeBox:
    if box is None or box == AUTO:
        return auto_box(S, V)
    if not isinstance(box, LatticeBox):
        box = LatticeBox(*box)
    if len(box.lower) != S.n:
        raise ValueError("box dimension does not match the system")
    return box


def iter_lattice_points(S: InequalitySystem, box: LatticeBox, max_points: int = DEFAULT_MAX_POINTS):
    """Depth-first scan of ``box`` with interval pruning per prefix."""
    A, b, n = S.A, S.b, S.n
    lo, hi = box.lower, box.upper
    # suffix minima of a_j x_j over the free part of the box
    suffix = []
    for a in A:
        s = [0] * (n + 1)
        for j in range(n - 1, -1, -1):
            s[j] = s[j + 1] + min(a[j] * lo[j], a[j] * hi[j])
        suffix.append(s)
    m = len(A)
    count = 0
    x = [0] * n

    def rec(k, partial):
        nonlocal count
        if k == n:
            count += 1
            if count > max_points:
                raise TooLargeError(f"more than {max_points} lattice points")
            yield tuple(x)
            return
        l, u = lo[k], hi[k]
        for i in range(m):
            ak = A[i][k]
            if ak == 0:
                continue
            slack = b[i] - partial[i] - suffix[i][k + 1]
            if ak > 0:
                u = min(u, slack // ak)
            else:
                l = max(l, -(slack // -ak))
            if l > u:
                return
        for v in range(l, u + 1):
            x[k] = v
            nxt = [partial[i] + A[i][k] * v for i in range(m)]
            yield from rec(k + 1, nxt)

    yield from rec(0, [0] * m)


def lattice_points(S: InequalitySystem, box=AUTO, max_points: int = DEFAULT_MAX_POINTS) -> list:
    B = _resolve_box(S, box)
    return sorted(iter_lattice_points(S, B, max_points))


def ilp_optimum(c: Sequence[int], S: InequalitySystem, box=AUTO, points: Sequence | None = None):
    """Maximum of ``c x`` over the integer points of ``S``."""
    V = None
    if box is None or box == AUTO:
        try:
            V = vertex_enumeration(S)
        except EmptyPolyhedronError:
            return INFEASIBLE
    if points is None:
        points = lattice_points(S, _resolve_box(S, box, V))
    if not points:
        return INFEASIBLE
    if V is None:
        rays = extreme_rays(S.A)
    else:
        rays = V.rays
    if any(linalg.dot(c, r) > 0 for r in rays):
        return UNBOUNDED
    return max(linalg.dot(c, p) for p in points)


def _cheap_non_extreme(p, S: InequalitySystem, pset, rays) -> bool:
    n = len(p)
    for r in rays:
        q = tuple(a - d for a, d in zip(p, r))
        if q in pset or S.contains(q):
            return True
    if n <= 4:
        dirs = product((-1, 0, 1), repeat=n)
    else:
        dirs = (tuple(int(i == j) for j in range(n)) for i in range(n))
    for d in dirs:
        if not any(d):
            continue
        # each direction pair checked once
        first = next(x for x in d if x)
        if first < 0:
            continue
        up = tuple(a + e for a, e in zip(p, d))
        dn = tuple(a - e for a, e in zip(p, d))
        if (up in pset or S.contains(up)) and (dn in pset or S.contains(dn)):
            return True
    return False


def extreme_points(points: Sequence[Sequence[int]], rays: Sequence[Sequence[int]] = (),
                   S: InequalitySystem | None = None) -> list:
    """Points of ``points`` that are vertices of ``conv(points) + cone(rays)``."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 1:
        return pts
    n = len(pts[0])
    rays = [tuple(r) for r in rays]
    pset = set(pts)
    cand = pts
    if S is not None:
        cand = [p for p in pts if not _cheap_non_extreme(p, S, pset, rays)]
    if not rays:
        lo = [min(p[i] for p in pts) for i in range(n)]
        hi = [max(p[i] for p in pts) for i in range(n)]
    out = []
    for p in cand:
        # vertices of the bounding box of a point set are always extreme
        if not rays and all(p[i] in (lo[i], hi[i]) for i in range(n)):
            out.append(p)
            continue
        others = [q for q in cand if q != p]
        if not in_convex_cone_hull(p, others, rays):
            out.append(p)
    return out


def integer_hull(S: InequalitySystem, box=AUTO, max_points: int = DEFAULT_MAX_POINTS) -> VRepresentation:
    """V-form of the convex hull of the integer points of ``S``.

    With ``box=AUTO`` the result is exact, also for unbounded systems.  With an
    explicit box the output is flagged ``box_limited`` since hull vertices
    outside the box would be missed.
    """
    _require_full_rank(S)
    rays = extreme_rays(S.A)
    if box is None or box == AUTO:
        try:
            V = vertex_enumeration(S)
        except EmptyPolyhedronError:
            return VRepresentation((), ())
        B = auto_box(S, V)
        limited = False
    else:
        B = _resolve_box(S, box)
        limited = True
    pts = lattice_points(S, B, max_points)
    if not pts:
        return VRepresentation((), (), limited)
    verts = extreme_points(pts, rays, S)
    return VRepresentation(tuple(verts), tuple(rays), limited)


def same_polyhedron(P: VRepresentation, Q: VRepresentation) -> bool:
    return P.vertices == Q.vertices and P.rays == Q.rays


def system_from_rows(rows: Iterable[Sequence[int]], rhs: Iterable[int]) -> InequalitySystem:
    return InequalitySystem(tuple(map(tuple, rows)), tuple(rhs))
