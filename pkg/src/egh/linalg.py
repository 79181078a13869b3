"""Exact dense linear algebra over the prime field GF(p).

Matrices are ``numpy.int64`` arrays with entries in ``[0, p)``.  Row
reduction is done in row blocks: each block is first reduced against the
basis found so far with a single matrix product, and only the leftover rows
go through the pivot loop.  Products are exact: they run in float64 when
every partial sum stays below 2**53, in int64 when it stays below 2**63, and
on Python integers otherwise.

The pivot loop is compiled with numba when it is importable; the numpy loop
is kept as the fallback and as a cross-check in the tests.
"""

from __future__ import annotations

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

_FLOAT_EXACT = 2**53
_INT64_SAFE = 2**63 - 1
_BLOCK = 32
# matrices this small go through the pivot loop in one piece
_WHOLE = 12_000


def as_matrix(M, p: int, ncols: int | None = None) -> np.ndarray:
    """Copy ``M`` into a fresh int64 array reduced mod ``p``."""
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(0, ncols if ncols is not None else 0) if A.size == 0 else A.reshape(1, -1)
    if A.size == 0 and ncols is not None:
        A = A.reshape(A.shape[0], ncols)
    return A % p


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Return ``A @ B mod p`` exactly."""
    inner = A.shape[1]
    if inner == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    bound = inner * (p - 1) ** 2
    if bound < _FLOAT_EXACT:
        C = np.rint(A.astype(np.float64) @ B.astype(np.float64))
        return C.astype(np.int64) % p
    if bound <= _INT64_SAFE:
        return (A @ B) % p
    C = A.astype(object) @ B.astype(object)
    return np.array(C % p, dtype=np.int64)


def _gauss_jordan(A, p):
    # in place on a C-contiguous int64 array with entries in [0, p), p < 2**31
    m, n = A.shape
    piv = np.empty(min(m, n), np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        k = -1
        for i in range(r, m):
            if A[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(c, n):
                t = A[r, j]
                A[r, j] = A[k, j]
                A[k, j] = t
        inv = 1
        b = A[r, c]
        e = p - 2
        while e:
            if e & 1:
                inv = inv * b % p
            b = b * b % p
            e >>= 1
        for j in range(c, n):
            A[r, j] = A[r, j] * inv % p
        for i in range(r + 1, m):
            f = A[i, c]
            if f != 0:
                for j in range(c, n):
                    A[i, j] = (A[i, j] - f * A[r, j]) % p
        piv[r] = c
        r += 1
    for t in range(r - 1, 0, -1):
        c = piv[t]
        for i in range(t):
            f = A[i, c]
            if f != 0:
                for j in range(c, n):
                    A[i, j] = (A[i, j] - f * A[t, j]) % p
    return r, piv[:r]


if numba is not None:
    _gauss_jordan_jit = numba.njit(cache=True)(_gauss_jordan)
else:  # pragma: no cover
    _gauss_jordan_jit = None


def _rref_compiled(X: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = np.ascontiguousarray(X, dtype=np.int64)
    r, piv = _gauss_jordan_jit(A, p)
    return A[:r].copy(), [int(c) for c in piv]


def _rref_numpy(X: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    # X is already reduced mod p; returns RREF rows sorted by pivot.
    rows: list[np.ndarray] = []
    pivots: list[int] = []
    X = X[np.any(X, axis=1)]
    while X.shape[0]:
        row = X[0]
        c = int(np.flatnonzero(row)[0])
        row = row * pow(int(row[c]), -1, p) % p
        X = X[1:]
        if X.shape[0]:
            col = X[:, c]
            hit = np.flatnonzero(col)
            if hit.size:
                X[hit] = (X[hit] - np.outer(col[hit], row)) % p
            X = X[np.any(X, axis=1)]
        rows.append(row)
        pivots.append(c)
    if not rows:
        return np.zeros((0, X.shape[1]), dtype=np.int64), []
    order = np.argsort(pivots)
    R = np.array(rows, dtype=np.int64)[order]
    pivots = [pivots[i] for i in order]
    for i in range(len(pivots) - 1, 0, -1):
        col = R[:i, pivots[i]]
        hit = np.flatnonzero(col)
        if hit.size:
            R[hit] = (R[hit] - np.outer(col[hit], R[i])) % p
    return R, pivots


_rref_small = _rref_compiled if _gauss_jordan_jit is not None else _rref_numpy


def reduce_rows(X: np.ndarray, R: np.ndarray, pivots, p: int) -> np.ndarray:
    """Reduce the rows of ``X`` modulo the row space of the RREF matrix ``R``.

    The result has zeros in every pivot column; it is zero exactly for the
    rows lying in the row space.
    """
    if len(pivots) == 0 or X.shape[0] == 0:
        return X % p
    coeffs = X[:, list(pivots)]
    return (X - matmul_mod(coeffs, R, p)) % p


def rref(M, p: int, ncols: int | None = None) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form of ``M`` over GF(p).

    Returns ``(R, pivots)`` where ``R`` has exactly ``rank`` rows, every pivot
    entry is 1 and is the only nonzero entry of its column, and ``pivots`` is
    strictly increasing.
    """
    A = as_matrix(M, p, ncols)
    ncols = A.shape[1]
    if A.size <= _WHOLE:
        R, pivots = _rref_small(A, p)
        return R.reshape(len(pivots), ncols), tuple(pivots)
    R = np.zeros((0, ncols), dtype=np.int64)
    pivots: list[int] = []
    for start in range(0, A.shape[0], _BLOCK):
        if len(pivots) == ncols:
            break
        X = reduce_rows(A[start:start + _BLOCK], R, pivots, p)
        Y, new = _rref_small(X, p)
        if not new:
            continue
        if pivots:
            R = (R - matmul_mod(R[:, new], Y, p)) % p
        R = np.vstack([R, Y])
        pivots = pivots + new
        order = np.argsort(pivots, kind="stable")
        R = R[order]
        pivots = [pivots[i] for i in order]
    return R, tuple(pivots)


def rank(M, p: int, ncols: int | None = None) -> int:
    return len(rref(M, p, ncols)[1])


def nullspace(M, p: int, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of ``{x : M x = 0}``."""
    A = as_matrix(M, p, ncols)
    n = A.shape[1]
    R, pivots = rref(A, p)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    N = np.zeros((len(free), n), dtype=np.int64)
    N[np.arange(len(free)), free] = 1
    if pivots:
        N[:, list(pivots)] = (-R[:, free].T) % p
    return N


def left_kernel(M, p: int, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of ``{y : y M = 0}``."""
    A = as_matrix(M, p, ncols)
    return nullspace(A.T.copy(), p)
