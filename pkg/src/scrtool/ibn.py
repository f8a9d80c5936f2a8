"""Iterated basis normalization.

Each round replaces a configuration by the union of the minimal Hilbert bases
of all its basis cones, i.e. the cones spanned by n linearly independent
members.  Rounds repeat until nothing new appears or a limit is hit.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain, combinations, islice
from typing import Iterable, Iterator, Sequence

from . import linalg
from .errors import CapExceededError, NotFullRankError
from .hilbert import Witness, _simplicial_cached

try:
    import numpy as np

    from . import _intbatch
except ImportError:  # pragma: no cover
    np = None

DEFAULT_CAP = 10 ** 6
DEFAULT_MAX_ROUNDS = 10


@dataclass(frozen=True)
class Configuration:
    """A finite set of primitive integer vectors of a common dimension.

    Stored deduplicated and in lexicographic order.  Non-primitive input is
    divided by its gcd with a warning.
    """

    vectors: tuple

    def __post_init__(self):
        vecs = set()
        dim = None
        for v in self.vectors:
            v = linalg.as_vec(v)
            if dim is None:
                dim = len(v)
            elif len(v) != dim:
                raise ValueError("vectors have different dimensions")
            g, w = linalg.primitive_part(v)
            if g == 0:
                raise ValueError("the zero vector is not allowed")
            if g != 1:
                warnings.warn(f"normalizing non-primitive vector {v} to {w}", stacklevel=3)
            vecs.add(w)
        if not vecs:
            raise ValueError("empty configuration")
        object.__setattr__(self, "vectors", tuple(sorted(vecs)))

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def __contains__(self, v):
        return tuple(v) in set(self.vectors)

    def rank(self) -> int:
        return linalg.rank(self.vectors)

    def union(self, other: Iterable) -> "Configuration":
        return Configuration(tuple(self.vectors) + tuple(tuple(v) for v in other))

    def to_json(self) -> dict:
        return {"vectors": [[str(x) for x in v] for v in self.vectors]}

    @classmethod
    def from_json(cls, data) -> "Configuration":
        if isinstance(data, dict):
            data = data.get("vectors", data.get("rows"))
        return cls(tuple(tuple(int(x) for x in v) for v in data))


def _require_rank(cfg: Configuration):
    if cfg.rank() < cfg.dim:
        raise NotFullRankError(f"configuration has rank < {cfg.dim}")


class BasisEnumeration:
    """Iterator over basis index tuples of a configuration.

    After iteration ``count`` holds the number of bases yielded and
    ``truncated`` tells whether ``cap`` stopped the scan early.
    """

    def __init__(self, cfg: Configuration, cap: int | None = None):
        self.cfg = cfg
        self.cap = cap
        self.count = 0
        self.truncated = False

    def __iter__(self) -> Iterator[tuple]:
        vecs = self.cfg.vectors
        for sub in combinations(range(len(vecs)), self.cfg.dim):
            if linalg.determinant([vecs[i] for i in sub]) == 0:
                continue
            if self.cap is not None and self.count >= self.cap:
                self.truncated = True
                return
            self.count += 1
            yield sub


def enumerate_bases(cfg: Configuration, cap: int | None = None) -> BasisEnumeration:
    return BasisEnumeration(cfg, cap)


@dataclass
class RoundRecord:
    k: int
    added: tuple
    witnesses: dict
    bases_examined: int
    cone_computations: int
    truncated: bool = False

    def to_json(self) -> dict:
        return {
            "round": self.k,
            "added": [[str(x) for x in v] for v in self.added],
            "witnesses": [self.witnesses[v].to_json() for v in self.added],
            "bases_examined": self.bases_examined,
            "cone_computations": self.cone_computations,
            "truncated": self.truncated,
        }


@dataclass
class RoundLog:
    """History of an IBN run; ``configs[k]`` is the configuration after round k."""

    configs: list
    rounds: list = field(default_factory=list)
    fixpoint_reached: bool = False
    max_rounds_reached: bool = False

    @property
    def rounds_completed(self) -> int:
        return sum(1 for r in self.rounds if not r.truncated)

    @property
    def truncated(self) -> bool:
        return any(r.truncated for r in self.rounds)

    @property
    def final(self) -> Configuration:
        return self.configs[-1]

    @property
    def fixpoint_round(self) -> int | None:
        """Smallest k with configs[k] == configs[k+1], if observed."""
        for k in range(len(self.configs) - 1):
            if self.configs[k] == self.configs[k + 1]:
                return k
        return None

    def config(self, k: int) -> Configuration:
        if k < len(self.configs):
            return self.configs[k]
        if self.fixpoint_reached:
            return self.configs[-1]
        raise IndexError(f"round {k} was not computed")

    def to_json(self) -> dict:
        return {
            "initial": self.configs[0].to_json()["vectors"],
            "rounds": [r.to_json() for r in self.rounds],
            "final": self.final.to_json()["vectors"],
            "fixpoint_reached": self.fixpoint_reached,
            "fixpoint_round": self.fixpoint_round,
            "rounds_completed": self.rounds_completed,
            "max_rounds_reached": self.max_rounds_reached,
            "truncated": self.truncated,
        }


# --------------------------------------------------------------------------
# one round


def _subset_stream(m: int, n: int, fresh: frozenset | None):
    it = combinations(range(m), n)
    if fresh is None:
        return it
    return (s for s in it if not fresh.isdisjoint(s))


class _RoundState:
    def __init__(self, cfg: Configuration, cap: int | None):
        self.cfg = cfg
        self.known = set(cfg.vectors)
        self.found: dict[tuple, Witness] = {}
        self.examined = 0
        self.cone_computations = 0
        self.cap = cap
        self.truncated = False

    def add(self, v: tuple, w: Witness):
        if v not in self.known and v not in self.found:
            self.found[v] = w


def _process_python(state: _RoundState, subs: Sequence[tuple]) -> bool:
    vecs = state.cfg.vectors
    for sub in subs:
        basis = tuple(vecs[i] for i in sub)
        d = linalg.determinant(basis)
        if d == 0:
            continue
        if state.cap is not None and state.examined >= state.cap:
            state.truncated = True
            return False
        state.examined += 1
        if abs(d) == 1:
            continue
        state.cone_computations += 1
        res = _simplicial_cached(basis)
        for w in res.witnesses:
            state.add(w.element, w)
    return True


def _batch_kernel(V: "np.ndarray", idx: "np.ndarray"):
    """Determinants plus the determinant-two shortcut for one chunk."""
    B = V[idx]
    ad = np.abs(_intbatch.batch_det(B))
    two = ad == 2
    g = None
    pts = None
    if two.any():
        B2 = B[two]
        _, T = _intbatch.batch_adjugate(B2)
        # the quotient lattice has order two: every row of T mod 2 is zero or
        # the coefficient vector (times 2) of the one interior point
        g = (T % 2).max(axis=1)
        pts = np.einsum("ki,kij->kj", g, B2) // 2
    return ad, two, g, pts


def _process_batch(state: _RoundState, V, idx_chunks, threads: int) -> bool:
    vecs = state.cfg.vectors
    half = Fraction(1, 2)
    if threads > 1:
        pool = ThreadPoolExecutor(threads)
        results = pool.map(lambda ix: (ix, _batch_kernel(V, ix)), idx_chunks)
    else:
        pool = None
        results = ((ix, _batch_kernel(V, ix)) for ix in idx_chunks)
    try:
        for idx, (ad, two, g, pts) in results:
            nonsing = np.nonzero(ad)[0]
            if state.cap is not None and state.examined + len(nonsing) > state.cap:
                room = state.cap - state.examined
                stop = int(nonsing[room]) if room < len(nonsing) else len(ad)
                state.truncated = True
            else:
                stop = len(ad)
            state.examined += int(np.count_nonzero(ad[:stop]))
            # walk the interesting positions in enumeration order
            two_pos = np.nonzero(two)[0]
            big = np.nonzero(ad[:stop] >= 3)[0]
            events = []
            if len(two_pos):
                keep = two_pos < stop
                tp = two_pos[keep]
                gp, pp = g[keep], pts[keep]
                if len(tp):
                    _, first = np.unique(pp, axis=0, return_index=True)
                    for j in sorted(first.tolist()):
                        events.append((int(tp[j]), "two", gp[j], pp[j]))
                state.cone_computations += len(tp)
            for p in big.tolist():
                events.append((p, "big", None, None))
            events.sort(key=lambda e: e[0])
            for pos, kind, gv, pv in events:
                sub = tuple(int(i) for i in idx[pos])
                basis = tuple(vecs[i] for i in sub)
                if kind == "two":
                    v = tuple(int(x) for x in pv)
                    if v not in state.known and v not in state.found:
                        lam = tuple(half if x else Fraction(0) for x in gv.tolist())
                        state.add(v, Witness(v, basis, lam))
                else:
                    state.cone_computations += 1
                    for w in _simplicial_cached(basis).witnesses:
                        state.add(w.element, w)
            if state.truncated:
                return False
    finally:
        if pool is not None:
            pool.shutdown(wait=False, cancel_futures=True)
    return True


def _index_chunks(m: int, n: int, fresh, size: int):
    stream = _subset_stream(m, n, fresh)
    while True:
        block = list(islice(stream, size))
        if not block:
            return
        yield np.fromiter(chain.from_iterable(block), dtype=np.int64,
                          count=len(block) * n).reshape(len(block), n)


def _round(cfg: Configuration, cap: int | None, fresh: frozenset | None = None,
           threads: int = 1, use_numpy: bool = True) -> _RoundState:
    n = cfg.dim
    m = len(cfg)
    state = _RoundState(cfg, cap)
    maxsq = max(sum(x * x for x in v) for v in cfg.vectors)
    if use_numpy and np is not None and n >= 2 and _intbatch.fits_int64(maxsq, n):
        V = np.array(cfg.vectors, dtype=np.int64)
        chunks = _index_chunks(m, n, fresh, _intbatch.chunk_size(n))
        _process_batch(state, V, chunks, max(1, threads))
    else:
        _process_python(state, _subset_stream(m, n, fresh))
    return state


def ibn_round(cfg: Configuration, cap: int | None = DEFAULT_CAP, threads: int = 1) -> Configuration:
    """``cfg`` together with the minimal Hilbert bases of all its basis cones.

    ``cap`` bounds the number of bases examined; exceeding it raises
    :class:`CapExceededError` whose ``partial`` holds the union so far.
    """
    if not isinstance(cfg, Configuration):
        cfg = Configuration(cfg)
    _require_rank(cfg)
    st = _round(cfg, cap, threads=threads)
    out = cfg.union(st.found)
    if st.truncated:
        raise CapExceededError(f"more than {cap} bases; round incomplete", partial=out)
    return out


def iter_rounds(cfg: Configuration, max_rounds: int = DEFAULT_MAX_ROUNDS, cap: int | None = DEFAULT_CAP,
                threads: int = 1, incremental: bool = True) -> Iterator[RoundLog]:
    """Run IBN lazily, yielding the (shared, growing) log after every round."""
    if not isinstance(cfg, Configuration):
        cfg = Configuration(cfg)
    _require_rank(cfg)
    log = RoundLog(configs=[cfg])
    fresh = None
    for k in range(1, max_rounds + 1):
        cur = log.configs[-1]
        st = _round(cur, cap, fresh, threads)
        added = tuple(sorted(st.found))
        log.rounds.append(RoundRecord(k, added, dict(st.found), st.examined,
                                      st.cone_computations, st.truncated))
        if st.truncated:
            yield log
            return
        nxt = cur.union(added)
        log.configs.append(nxt)
        if not added:
            log.fixpoint_reached = True
            yield log
            return
        if incremental:
            pos = {v: i for i, v in enumerate(nxt.vectors)}
            fresh = frozenset(pos[v] for v in added)
        if k == max_rounds:
            log.max_rounds_reached = True
        yield log


def ibn_run(cfg: Configuration, max_rounds: int = DEFAULT_MAX_ROUNDS, cap: int | None = DEFAULT_CAP,
            threads: int = 1, incremental: bool = True) -> RoundLog:
    """Iterate rounds until a fixpoint, ``max_rounds`` or the basis cap.

    With ``incremental`` only bases containing a vector added in the previous
    round are examined; the others were already handled and cannot produce
    anything new.  A truncated round is recorded but its partial output is
    not appended to ``configs``.
    """
    log = None
    for log in iter_rounds(cfg, max_rounds, cap, threads, incremental):
        pass
    if log is None:  # max_rounds == 0
        c = cfg if isinstance(cfg, Configuration) else Configuration(cfg)
        log = RoundLog(configs=[c], max_rounds_reached=True)
    return log


def witness_for(log: RoundLog, v: Sequence[int]) -> Witness | None:
    v = tuple(v)
    if v in log.configs[0]:
        return Witness(v, (v,), (Fraction(1),))
    for r in log.rounds:
        if v in r.witnesses:
            return r.witnesses[v]
    return None
