"""Exact integer row reduction: Hermite normal form and integer kernels."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def hermite_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows, echelon with positive pivots and entries above
    each pivot reduced into ``[0, pivot)``.
    """
    A = [list(r) for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    p = 0
    pivots = []
    for col in range(ncols):
        while True:
            nz = [i for i in range(p, len(A)) if A[i][col]]
            if not nz:
                break
            i = min(nz, key=lambda i: abs(A[i][col]))
            A[p], A[i] = A[i], A[p]
            piv = A[p][col]
            done = True
            for j in range(p + 1, len(A)):
                if A[j][col]:
                    q = A[j][col] // piv
                    A[j] = [a - q * b for a, b in zip(A[j], A[p])]
                    if A[j][col]:
                        done = False
            if done:
                break
        if p < len(A) and A[p][col]:
            if A[p][col] < 0:
                A[p] = [-a for a in A[p]]
            for j in range(p):
                q = A[j][col] // A[p][col]
                if q:
                    A[j] = [a - q * b for a, b in zip(A[j], A[p])]
            pivots.append(col)
            p += 1
            if p == len(A):
                break
    return A[:p]


def integer_kernel(A: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis (in Hermite form) of ``{c in Z^ncols : A c = 0}``.

    Row-reduces ``[A^T | I]`` by unimodular operations; the identity part of
    the rows whose ``A^T`` part vanishes spans the kernel, which is therefore
    saturated in ``Z^ncols``.
    """
    t = len(A)
    aug = [[A[r][i] for r in range(t)] + [1 if j == i else 0 for j in range(ncols)] for i in range(ncols)]
    p = 0
    for col in range(t):
        while True:
            nz = [i for i in range(p, ncols) if aug[i][col]]
            if not nz:
                break
            i = min(nz, key=lambda i: abs(aug[i][col]))
            aug[p], aug[i] = aug[i], aug[p]
            piv = aug[p][col]
            done = True
            for j in range(p + 1, ncols):
                if aug[j][col]:
                    q = aug[j][col] // piv
                    aug[j] = [a - q * b for a, b in zip(aug[j], aug[p])]
                    if aug[j][col]:
                        done = False
            if done:
                break
        if p < ncols and aug[p][col]:
            p += 1
    kernel = [row[t:] for row in aug[p:]]
    return hermite_rows(kernel)


def lattice_coordinates(basis: Sequence[Sequence[int]], v: Sequence) -> list | None:
    """Integer coordinates of ``v`` in a Hermite-form ``basis``, or ``None``.

    ``v`` may hold Fractions; non-integral coordinates mean non-membership.
    """
    v = list(v)
    coords = []
    for row in basis:
        col = next(j for j, a in enumerate(row) if a)
        q = Fraction(v[col]) / row[col]
        if q.denominator != 1:
            return None
        q = q.numerator
        coords.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    if any(v):
        return None
    return coords
