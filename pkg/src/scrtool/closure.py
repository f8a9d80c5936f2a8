"""Tightening, small Chvátal closures and the small Chvátal rank of a system."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import floor

from . import linalg
from .errors import CapExceededError, EmptyHullError, NotPointedError
from .hilbert import minimal_hilbert_basis_pointed
from .ibn import DEFAULT_CAP, Configuration, RoundLog, iter_rounds
from .polyhedra import (AUTO, InequalitySystem, VRepresentation, integer_hull, same_polyhedron,
                        vertex_enumeration)


@dataclass
class ClosureReport:
    k: int
    system: InequalitySystem
    dropped_normals: tuple = ()
    hull_equal: bool = False
    vertices: VRepresentation | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "system": self.system.to_json(),
            "dropped_normals": [[str(x) for x in a] for a in self.dropped_normals],
            "hull_equal": self.hull_equal,
        }
        if self.vertices is not None:
            out["vform"] = self.vertices.to_json()
        return out


@dataclass
class ScrResult:
    scr: int | None
    max_k: int
    per_k: list
    tight_rhs: tuple
    hull: VRepresentation | None = None
    log: RoundLog | None = field(default=None, repr=False)
    truncated: bool = False

    @property
    def exceeded(self) -> bool:
        return self.scr is None

    def to_json(self) -> dict:
        return {
            "scr": self.scr if self.scr is not None else f"EXCEEDED({self.max_k})",
            "max_k": self.max_k,
            "tight_rhs": [str(x) for x in self.tight_rhs],
            "hull": self.hull.to_json() if self.hull is not None else None,
            "per_k": [r.to_json() for r in self.per_k],
            "truncated": self.truncated,
        }


class _HullCache:
    """Integer hull of a fixed system plus the ILP maxima derived from it."""

    def __init__(self, S: InequalitySystem, box=AUTO):
        self.S = S
        self.box = box
        self._hull = None

    @property
    def hull(self) -> VRepresentation:
        if self._hull is None:
            H = integer_hull(self.S, self.box)
            if not H.vertices:
                raise EmptyHullError("the system has no integer point")
            self._hull = H
        return self._hull

    def max_over_hull(self, a):
        """``max a.x`` over the integer points, or ``None`` when unbounded."""
        H = self.hull
        if any(linalg.dot(a, r) > 0 for r in H.rays):
            return None
        return int(max(linalg.dot(a, v) for v in H.vertices))


def tighten(S: InequalitySystem, _cache: _HullCache | None = None) -> tuple[tuple, bool]:
    """Best integer right-hand sides ``beta`` and whether ``S`` already uses them."""
    cache = _cache or _HullCache(S)
    beta = []
    for a in S.A:
        m = cache.max_over_hull(a)
        # a.x <= b_i holds on S, so the maximum is finite
        assert m is not None
        beta.append(m)
    beta = tuple(beta)
    return beta, beta == S.b


def _closure_system(cfg: Configuration, cache: _HullCache):
    rows, rhs, dropped = [], [], []
    for a in cfg.vectors:
        m = cache.max_over_hull(a)
        if m is None:
            dropped.append(a)
        else:
            rows.append(a)
            rhs.append(m)
    return InequalitySystem(tuple(rows), tuple(rhs)), tuple(dropped)


def small_closure(S: InequalitySystem, k: int, log: RoundLog | None = None,
                  cap: int | None = DEFAULT_CAP, compare: bool = True,
                  box=AUTO, _cache: _HullCache | None = None) -> ClosureReport:
    """The k-th small closure: every round-k normal with its ILP maximum over ``S``."""
    cache = _cache or _HullCache(S, box)
    if log is None or len(log.configs) <= k and not log.fixpoint_reached:
        log = None
        for log in iter_rounds(Configuration(S.A), max_rounds=k, cap=cap):
            pass
        if log is None:
            log = RoundLog(configs=[Configuration(S.A)])
    if log.truncated and len(log.configs) <= k:
        raise CapExceededError(f"IBN round {len(log.configs)} hit the basis cap", partial=log)
    cfg = log.config(k)
    system, dropped = _closure_system(cfg, cache)
    report = ClosureReport(k, system, dropped)
    if compare:
        V = vertex_enumeration(system)
        report.vertices = V
        report.hull_equal = same_polyhedron(V, cache.hull)
    return report


def chvatal_first_closure(S: InequalitySystem) -> InequalitySystem:
    """One classical Chvátal round, computed vertex by vertex.

    At each vertex ``v`` the Hilbert basis ``h`` of the cone of tight rows
    yields the cut ``h.x <= floor(h.v)``.  For each normal only the smallest
    right-hand side is kept.
    """
    V = vertex_enumeration(S)
    best: dict[tuple, int] = {}
    for a, bi in zip(S.A, S.b):
        best[a] = min(best.get(a, bi), bi)
    seen_cones: dict[tuple, tuple] = {}
    for v in V.vertices:
        active = tuple(sorted(a for a, bi in zip(S.A, S.b) if linalg.dot(a, v) == bi))
        if active not in seen_cones:
            try:
                seen_cones[active] = minimal_hilbert_basis_pointed(active).elements
            except NotPointedError:
                seen_cones[active] = active
        for h in seen_cones[active]:
            r = floor(linalg.dot(h, v))
            if h not in best or r < best[h]:
                best[h] = r
    rows = sorted(best)
    return InequalitySystem(tuple(rows), tuple(best[a] for a in rows))


def scr_of_system(S: InequalitySystem, max_k: int = 5, cap: int | None = DEFAULT_CAP,
                  threads: int = 1, box=AUTO) -> ScrResult:
    """Smallest k whose small closure equals the integer hull of ``S``.

    Closures are compared as V-forms (vertex sets and primitive ray sets).
    ``scr`` is ``None`` when no k up to ``max_k`` works or a round was cut
    short by ``cap``; ``truncated`` tells the two apart.
    """
    cache = _HullCache(S, box)
    beta, _ = tighten(S, cache)
    cfg0 = Configuration(S.A)
    per_k = []

    def check(k, cfg):
        system, dropped = _closure_system(cfg, cache)
        V = vertex_enumeration(system)
        rep = ClosureReport(k, system, dropped, same_polyhedron(V, cache.hull), V)
        per_k.append(rep)
        return rep.hull_equal

    result = ScrResult(None, max_k, per_k, beta, cache.hull)
    if check(0, cfg0):
        result.scr = 0
        return result
    if max_k == 0:
        return result
    log = None
    for log in iter_rounds(cfg0, max_rounds=max_k, cap=cap, threads=threads):
        if log.rounds[-1].truncated:
            result.truncated = True
            break
        k = len(log.configs) - 1
        if log.fixpoint_reached:
            # nothing new: S^(k) repeats, so it can never reach the hull
            break
        if check(k, log.configs[-1]):
            result.scr = k
            break
    result.log = log
    return result
