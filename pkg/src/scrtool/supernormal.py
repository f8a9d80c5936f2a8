"""Unimodularity, supernormality and SCR-zero deciders, plus two matrix families."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil

from . import linalg
from .errors import NonPrimitiveError, RankDeficientError
from .hilbert import minimal_hilbert_basis_simplicial
from .ibn import DEFAULT_CAP, Configuration, _round
from .polyhedra import InequalitySystem, vertex_enumeration

try:
    import numpy as np

    from . import _intbatch
except ImportError:  # pragma: no cover
    np = None


@dataclass
class Decision:
    verdict: bool
    certificate: dict = field(default_factory=dict)
    complete: bool = True

    def __bool__(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "complete": self.complete,
                "certificate": _jsonable(self.certificate)}


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return linalg.frac_str(x)
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x)
    return x


def _as_config(cfg, strict: bool) -> Configuration:
    if isinstance(cfg, Configuration):
        out = cfg
    else:
        vecs = [linalg.as_vec(v) for v in cfg]
        if strict:
            for v in vecs:
                if not linalg.is_primitive(v):
                    raise NonPrimitiveError(f"vector {v} is not primitive")
        out = Configuration(tuple(vecs))
    if out.rank() < out.dim:
        raise RankDeficientError(f"configuration has rank < {out.dim}")
    return out


def is_unimodular(cfg, cap: int | None = DEFAULT_CAP) -> Decision:
    """True iff every basis of ``cfg`` has determinant +-1."""
    cfg = _as_config(cfg, strict=False)
    vecs = cfg.vectors
    n = cfg.dim
    checked = 0
    maxsq = max(sum(x * x for x in v) for v in vecs)
    subsets = combinations(range(len(vecs)), n)
    if np is not None and n >= 2 and _intbatch.fits_int64(maxsq, n):
        V = np.array(vecs, dtype=np.int64)
        step = _intbatch.chunk_size(n)
        while True:
            block = [s for _, s in zip(range(step), subsets)]
            if not block:
                break
            idx = np.array(block, dtype=np.int64)
            d = _intbatch.batch_det(V[idx])
            bad = np.nonzero(np.abs(d) > 1)[0]
            nonsing = np.abs(d) > 0
            limit = len(block)
            if bad.size:
                limit = int(bad[0])
            if cap is not None and checked + int(nonsing[:limit].sum()) > cap:
                return Decision(True, {"bases_checked": cap}, complete=False)
            checked += int(nonsing[:limit].sum())
            if bad.size:
                sub = block[limit]
                rows = tuple(vecs[i] for i in sub)
                return Decision(False, {"basis_rows": rows, "determinant": linalg.determinant(rows)})
    else:
        for sub in subsets:
            rows = tuple(vecs[i] for i in sub)
            d = linalg.determinant(rows)
            if d == 0:
                continue
            if abs(d) != 1:
                return Decision(False, {"basis_rows": rows, "determinant": d})
            checked += 1
            if cap is not None and checked >= cap:
                return Decision(True, {"bases_checked": checked}, complete=False)
    return Decision(True, {"bases_checked": checked})


def is_supernormal(cfg, cap: int | None = DEFAULT_CAP) -> Decision:
    """True iff one IBN round adds nothing.

    A false verdict names a basis together with a minimal Hilbert basis element
    of its cone that is missing from ``cfg``.
    """
    cfg = _as_config(cfg, strict=True)
    st = _round(cfg, cap)
    if st.found:
        v = min(st.found, key=lambda u: (sum(abs(x) for x in u), u))
        w = st.found[v]
        return Decision(False, {"basis_rows": w.basis_rows, "missing": v, "lambda": w.lam},
                        complete=not st.truncated)
    return Decision(True, {"bases_checked": st.examined}, complete=not st.truncated)


def verify_counterexample(cfg, dec: Decision) -> bool:
    """Re-check a false supernormality verdict from its certificate alone."""
    cfg = _as_config(cfg, strict=True)
    c = dec.certificate
    rows = tuple(tuple(r) for r in c["basis_rows"])
    v = tuple(c["missing"])
    if any(r not in cfg for r in rows) or v in cfg:
        return False
    if linalg.determinant(rows) == 0:
        return False
    return v in minimal_hilbert_basis_simplicial(rows).elements


def _tight_witness(cfg: Configuration, basis_rows: tuple, max_mult: int = 1 << 20):
    """A right-hand side making ``Q_b`` tight with a fractional vertex.

    The rows of a basis with |det| > 1 get a unit vector ``e_i`` chosen so
    that the solution ``x*`` is fractional; every other row gets a slack that
    grows with ``M`` until the system verifies tight.
    """
    from .closure import tighten

    d, T = linalg.adjugate_inverse(basis_rows)
    n = cfg.dim
    i = next(i for i in range(n) if any(T[r][i] % d for r in range(n)))
    b_basis = {row: int(k == i) for k, row in enumerate(basis_rows)}
    # x* solves basis_rows @ x = e_i, i.e. column i of the inverse
    xstar = tuple(Fraction(T[r][i], d) for r in range(n))
    M = 1
    while M <= max_mult:
        rhs = []
        for a in cfg.vectors:
            if a in b_basis:
                rhs.append(b_basis[a])
            else:
                rhs.append(ceil(linalg.dot(a, xstar)) + M * sum(abs(x) for x in a))
        S = InequalitySystem(cfg.vectors, tuple(rhs))
        beta, tight = tighten(S)
        if tight:
            V = vertex_enumeration(S)
            frac = V.fractional_vertices()
            if xstar in frac:
                return S, xstar, M
        M *= 2
    return None


def scr_zero_decision(cfg, cap: int | None = DEFAULT_CAP) -> Decision:
    """SCR zero for every right-hand side, decided through supernormality.

    For a false verdict the certificate also holds a concrete tight system
    whose polyhedron has a fractional vertex.
    """
    dec = is_supernormal(cfg, cap)
    if dec.verdict:
        return dec
    cfg = _as_config(cfg, strict=True)
    wit = _tight_witness(cfg, tuple(dec.certificate["basis_rows"]))
    if wit is not None:
        S, xstar, M = wit
        dec.certificate["system"] = {"A": S.A, "b": S.b}
        dec.certificate["fractional_vertex"] = xstar
        dec.certificate["multiplier"] = M
    else:
        dec.certificate["system"] = None
    return dec


def odd_circuit_rows(k: int) -> tuple:
    """Circulant rows ``e_i + e_{i+1}`` of the circuit on ``2k+1`` nodes, in cyclic order."""
    if k < 1:
        raise ValueError("k must be at least 1")
    m = 2 * k + 1
    return tuple(tuple(int(j in (i, (i + 1) % m)) for j in range(m)) for i in range(m))


def odd_circuit_incidence(k: int) -> Configuration:
    return Configuration(odd_circuit_rows(k))


def lowerbound_family(j: int) -> Configuration:
    if j < 2:
        raise ValueError("j must be at least 2")
    return Configuration(((1, 0, 0), (0, 1, 0), (1, j, 2 * j - 1)))


def lowerbound_system(j: int) -> InequalitySystem:
    """The family with right-hand side ``(0, 0, j-1)``."""
    if j < 2:
        raise ValueError("j must be at least 2")
    return InequalitySystem(((1, 0, 0), (0, 1, 0), (1, j, 2 * j - 1)), (0, 0, j - 1))


def predict_Rk(j: int, k: int) -> Configuration:
    """Closed-form prediction of round ``k`` for :func:`lowerbound_family`."""
    if j < 2:
        raise ValueError("j must be at least 2")
    if not 1 <= k <= j - 1:
        raise ValueError(f"k must lie in 1..{j - 1}")
    vecs = [(0, 1, 0)]
    for x in range(0, j + 1):
        for y in range(x, 2 * j):
            if 2 * x <= y + k + 1 and j * y <= (2 * j - 1) * x:
                vecs.append((1, x, y))
    return Configuration(tuple(vecs))


def search_round1_witness(target, gens, budget: int = 10 ** 6, seed: int = 0, starts: int = 2000,
                          max_steps: int = 60):
    """Randomized search for a basis of ``gens`` whose minimal Hilbert basis holds ``target``.

    Random bases with ``target`` in their cone seed a descent that swaps one
    row at a time, keeping ``lambda >= 0`` and lowering ``sum(lambda)`` until
    every coefficient is below one.  Candidates are screened in int64 batches
    and the final answer is re-checked exactly.  ``budget`` bounds the number
    of bases evaluated.  Returns ``(basis_rows, lambda)`` or ``None``; failure
    proves nothing.
    """
    if np is None:  # pragma: no cover
        return None
    target = tuple(target)
    n = len(target)
    pool_l = [tuple(g) for g in gens if linalg.dot(g, target) > 0]
    if len(pool_l) < n:
        return None
    pool = np.array(pool_l, dtype=np.int64)
    P = len(pool)
    maxsq = int((pool * pool).sum(axis=1).max())
    if not _intbatch.fits_int64(maxsq, n):
        return None
    t = np.array(target, dtype=np.int64)
    rng = np.random.default_rng(seed)
    eps = 1e-9

    def coeffs(B):
        # float lambda is only a ranking screen; exactness comes from the final check
        d = _intbatch.batch_det(B)
        ok = d != 0
        lam = np.full((len(B), n), -1.0)
        if ok.any():
            d2, T = _intbatch.batch_adjugate(B[ok])
            lam[ok] = np.einsum("j,kjl->kl", t, T) / d2[:, None]
        return ok & (lam >= -eps).all(axis=1), lam

    used = 0
    swaps = n * P
    while used < budget:
        idx = np.argsort(rng.random((starts, P)), axis=1)[:, :n]
        used += starts
        ok, lam = coeffs(pool[idx])
        good = np.nonzero(ok)[0]
        if not good.size:
            continue
        k = good[np.argmin(lam[good].sum(axis=1))]
        cur, cur_lam = idx[k].copy(), lam[k]
        for _ in range(max_steps):
            if cur_lam.max() < 1 - eps:
                rows = tuple(tuple(int(x) for x in r) for r in pool[cur])
                if target in minimal_hilbert_basis_simplicial(rows).elements:
                    return rows, linalg.solve_rational(rows, target)
                break
            if used + swaps > budget:
                break
            cand = np.repeat(cur[None, :], swaps, axis=0)
            cand[np.arange(swaps), np.repeat(np.arange(n), P)] = np.tile(np.arange(P), n)
            used += swaps
            ok, lam = coeffs(pool[cand])
            s = lam.sum(axis=1)
            better = np.nonzero(ok & (s < cur_lam.sum() - eps))[0]
            if not better.size:
                break
            top = better[np.argsort(s[better])][:max(1, better.size // 4)]
            k = rng.choice(top)
            cur, cur_lam = cand[k], lam[k]
    return None
