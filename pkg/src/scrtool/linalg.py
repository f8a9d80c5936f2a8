"""Exact integer and rational linear algebra.

Vectors are tuples of Python ints (or ``Fraction`` for rational vectors) and
matrices are tuples of row tuples.  Everything is exact; nothing here ever
touches floating point.  Row-vector convention throughout: a solution ``lam``
of ``solve_rational(M, v)`` satisfies ``lam @ M == v``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import NonSquareError, SingularMatrixError

IntVec = tuple  # tuple[int, ...]
IntMat = tuple  # tuple[IntVec, ...]
RatVec = tuple  # tuple[Fraction, ...]


def as_vec(v: Iterable) -> IntVec:
    return tuple(int(x) for x in v)


def as_mat(rows: Iterable[Iterable]) -> IntMat:
    m = tuple(as_vec(r) for r in rows)
    if not m or not m[0]:
        raise ValueError("matrix must have at least one row and one column")
    width = len(m[0])
    if any(len(r) != width for r in m):
        raise ValueError("matrix rows have unequal length")
    return m


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(M: Sequence[Sequence]) -> tuple:
    return tuple(zip(*M))


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_mat(lam: Sequence, M: Sequence[Sequence]) -> tuple:
    """Row vector times matrix."""
    ncols = len(M[0])
    out = [0] * ncols
    for c, row in zip(lam, M):
        if c:
            for j in range(ncols):
                out[j] += c * row[j]
    return tuple(out)


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    Bt = transpose(B)
    return tuple(tuple(dot(r, c) for c in Bt) for r in A)


def inf_norm(v: Sequence[int]) -> int:
    return max((abs(x) for x in v), default=0)


def primitive_part(v: Sequence[int]) -> tuple[int, IntVec]:
    """Split ``v`` into ``(g, w)`` with ``g`` the gcd of the entries and ``v == g*w``.

    The zero vector gives ``g == 0`` and is returned unchanged.
    """
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return 0, tuple(v)
    return g, tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    return primitive_part(v)[0] == 1


def _check_square(M) -> int:
    n = len(M)
    if n == 0 or any(len(r) != n for r in M):
        raise NonSquareError(f"expected a square matrix, got {n} rows of lengths "
                             f"{sorted({len(r) for r in M})}")
    return n


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n = _check_square(M)
    a = [list(r) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (akk * ai[j] - aik * rowk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(M: Sequence[Sequence[int]]) -> int:
    if not M:
        return 0
    a = [list(r) for r in M]
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            row = a[i]
            for j in range(c, ncols):
                row[j] = (piv * row[j] - aic * a[r][j]) // prev
        prev = piv
        r += 1
    return r


def adjugate_inverse(M: Sequence[Sequence[int]]) -> tuple[int, IntMat]:
    """Return ``(d, T)`` with ``T @ M == d * I`` and ``T`` integral.

    Fraction-free Gauss-Jordan on ``[M | I]``.  ``d`` equals ``det(M)`` up to
    sign (row swaps), and ``M^{-1} == T / d``.
    """
    n = _check_square(M)
    a = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(M)]
    width = 2 * n
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                raise SingularMatrixError("matrix is singular")
            a[k], a[p] = a[p], a[k]
        akk = a[k][k]
        rowk = a[k]
        for i in range(n):
            if i == k:
                continue
            ai = a[i]
            aik = ai[k]
            for j in range(width):
                if j != k:
                    ai[j] = (akk * ai[j] - aik * rowk[j]) // prev
            ai[k] = 0
        prev = akk
    return prev, tuple(tuple(r[n:]) for r in a)


def solve_rational(M: Sequence[Sequence[int]], v: Sequence[int]) -> RatVec:
    """Exact ``lam`` with ``lam @ M == v``."""
    d, T = adjugate_inverse(M)
    if len(v) != len(M):
        raise ValueError("dimension mismatch")
    num = vec_mat(v, T)
    return tuple(Fraction(x, d) for x in num)


def cofactor_vector(rows: Sequence[Sequence[int]], n: int) -> IntVec:
    """Generalized cross product of ``n-1`` vectors in ``Z^n``.

    The result is orthogonal to every input row and is zero exactly when the
    rows are linearly dependent.
    """
    out = []
    for i in range(n):
        minor = [r[:i] + r[i + 1:] for r in rows]
        d = determinant(minor) if minor else 1
        out.append(-d if i % 2 else d)
    return tuple(out)


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat, IntMat]:
    """Return unimodular ``U, V`` and diagonal ``D`` with ``U @ M @ V == D``.

    Diagonal entries are positive and each divides the next.  Only square
    nonsingular input is accepted.
    """
    n = _check_square(M)
    if determinant(M) == 0:
        raise SingularMatrixError("smith_normal_form needs a nonsingular matrix")
    A = [list(r) for r in M]
    U = [list(r) for r in identity(n)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for X in (A, V):
            for r in X:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for X in (A, U):
            rs, rd = X[src], X[dst]
            for c in range(n):
                rd[c] += q * rs[c]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for X in (A, V):
            for r in X:
                r[dst] += q * r[src]

    for t in range(n):
        while True:
            piv = min(((abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, n)
                       if A[i][j] != 0))
            _, pi, pj = piv
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, n):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, n)
                        if any(A[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return (tuple(map(tuple, U)), tuple(map(tuple, A)), tuple(map(tuple, V)))


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s) if not isinstance(s, str) else Fraction(s.strip())
