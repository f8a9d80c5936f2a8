"""Brute-force oracles, deliberately independent of the package internals."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product


def cofactor_det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * M[0][j] * cofactor_det(minor)
    return total


def cramer_lambda(B, v):
    """Solve lam @ B = v by Cramer's rule on B^T."""
    n = len(B)
    d = cofactor_det([list(r) for r in B])
    cols = [[B[i][j] for i in range(n)] for j in range(n)]  # B^T
    out = []
    for i in range(n):
        M = [row[:] for row in cols]
        for r in range(n):
            M[r][i] = v[r]
        out.append(Fraction(cofactor_det(M), d))
    return tuple(out)


def box_parallelepiped(B):
    """Lattice points of the half-open parallelepiped, by scanning its bounding box."""
    n = len(B)
    lo = [sum(min(0, B[i][c]) for i in range(n)) for c in range(n)]
    hi = [sum(max(0, B[i][c]) for i in range(n)) for c in range(n)]
    pts = {}
    for p in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        lam = cramer_lambda(B, p)
        if all(0 <= x < 1 for x in lam):
            pts[p] = lam
    return pts


def hilbert_oracle(B):
    pts = {p: l for p, l in box_parallelepiped(B).items() if any(p)}
    n = len(B)
    for i, g in enumerate(B):
        pts[tuple(g)] = tuple(Fraction(int(i == k)) for k in range(n))
    return {p for p, lp in pts.items()
            if not any(q != p and all(a <= b for a, b in zip(lq, lp)) for q, lq in pts.items())}


def count_bases(vecs):
    n = len(vecs[0])
    return sum(1 for s in combinations(vecs, n) if cofactor_det([list(r) for r in s]) != 0)


def lattice_points_in_box(A, b, lo, hi):
    n = len(A[0])
    return sorted(p for p in product(range(lo, hi + 1), repeat=n)
                  if all(sum(a * x for a, x in zip(row, p)) <= bi for row, bi in zip(A, b)))


def gcd_all(v):
    from math import gcd
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
