"""Batched fraction-free Gauss-Jordan over int64 arrays.

Used to screen many small square integer matrices at once.  Every
intermediate value of fraction-free elimination on ``[B | I]`` is a minor of
that matrix, so Hadamard's bound on the rows decides up front whether int64
is exact.  Callers must go through :func:`fits_int64` and fall back to the
pure-Python routines otherwise; results are additionally verified.
"""

from __future__ import annotations

import numpy as np

_LIMIT = 1 << 61
CHUNK = 40000


def chunk_size(n: int) -> int:
    return max(1000, 3_000_000 // (2 * n * n))


def fits_int64(max_row_sq: int, n: int) -> bool:
    """True when minors of ``[B | I]`` times two stay below 2**62."""
    return (max_row_sq + 1) ** n < _LIMIT


def batch_adjugate(B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(d, T)`` with ``T[k] @ B[k] == d[k] * I`` for each matrix.

    ``d[k] == 0`` marks a singular matrix (its ``T[k]`` is meaningless).
    ``|d[k]| == |det B[k]|``.
    """
    B = np.asarray(B, dtype=np.int64)
    N, n, _ = B.shape
    ds, Ts = [], []
    step = chunk_size(n)
    for s in range(0, N, step):
        d, T = _adjugate_chunk(B[s:s + step])
        ds.append(d)
        Ts.append(T)
    if not ds:
        return np.zeros(0, np.int64), np.zeros((0, n, n), np.int64)
    return np.concatenate(ds), np.concatenate(Ts)


def batch_det(B: np.ndarray) -> np.ndarray:
    """Determinants by batched Bareiss elimination (exact under :func:`fits_int64`)."""
    B = np.asarray(B, dtype=np.int64)
    N, n, _ = B.shape
    out = np.empty(N, np.int64)
    step = chunk_size(n)
    for s in range(0, N, step):
        out[s:s + step] = _det_chunk(B[s:s + step])
    return out


def _det_chunk(B: np.ndarray) -> np.ndarray:
    A = B.copy()
    N, n, _ = A.shape
    rows = np.arange(N)
    sign = np.ones(N, np.int64)
    prev = np.ones(N, np.int64)
    alive = np.ones(N, bool)
    for k in range(n - 1):
        nz = A[:, k:, k] != 0
        has = nz.any(axis=1)
        alive &= has
        p = k + nz.argmax(axis=1)
        swap = p != k
        if swap.any():
            idx = rows[swap]
            tmp = A[idx, k, k:].copy()
            A[idx, k, k:] = A[idx, p[swap], k:]
            A[idx, p[swap], k:] = tmp
            sign[swap] = -sign[swap]
        piv = A[:, k, k].copy()
        piv[~has] = 1
        sub = A[:, k + 1:, k + 1:]
        colk = A[:, k + 1:, k]
        rowk = A[:, k, k + 1:]
        A[:, k + 1:, k + 1:] = (piv[:, None, None] * sub
                                - colk[:, :, None] * rowk[:, None, :]) // prev[:, None, None]
        prev = piv
    d = sign * A[:, n - 1, n - 1]
    d[~alive] = 0
    return d


def _adjugate_chunk(B: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    N, n, _ = B.shape
    eye = np.broadcast_to(np.eye(n, dtype=np.int64), (N, n, n))
    A = np.concatenate([B, eye], axis=2)
    rows = np.arange(N)
    prev = np.ones(N, np.int64)
    singular = np.zeros(N, bool)
    for k in range(n):
        nz = A[:, k:, k] != 0
        has = nz.any(axis=1)
        singular |= ~has
        p = k + nz.argmax(axis=1)
        swap = p != k
        if swap.any():
            idx = rows[swap]
            tmp = A[idx, k, :].copy()
            A[idx, k, :] = A[idx, p[swap], :]
            A[idx, p[swap], :] = tmp
        piv = A[:, k, k].copy()
        # keep singular matrices numerically harmless; they are discarded
        piv[~has] = 1
        A[~has, k, k] = 1
        colk = A[:, :, k].copy()
        rowk = A[:, k, :].copy()
        with np.errstate(over="ignore"):
            A = (piv[:, None, None] * A - colk[:, :, None] * rowk[:, None, :]) // prev[:, None, None]
        A[:, k, :] = rowk
        prev = piv
    d = prev.copy()
    d[singular] = 0
    T = np.ascontiguousarray(A[:, :, n:])
    ok = ~singular
    if ok.any():
        chk = T[ok] @ B[ok]
        want = d[ok][:, None, None] * np.eye(n, dtype=np.int64)
        if not np.array_equal(chk, want):
            raise ArithmeticError("int64 batch elimination failed verification")
    return d, T
