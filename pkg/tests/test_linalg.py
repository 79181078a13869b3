import numpy as np
import pytest
from hypothesis import given, strategies as st

from egh import linalg


def naive_rref(M, p):
    # textbook Gauss-Jordan on Python ints, one pivot at a time
    A = [[int(x) % p for x in row] for row in M]
    rows, cols = len(A), (len(A[0]) if A else 0)
    r, piv = 0, []
    for c in range(cols):
        k = next((i for i in range(r, rows) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        piv.append(c)
        r += 1
    return A[:r], tuple(piv)


def low_rank(rng, m, n, r, p):
    if r == 0:
        return np.zeros((m, n), dtype=np.int64)
    return (rng.integers(0, p, (m, r)) @ rng.integers(0, p, (r, n))) % p


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 7, 101, 65521, 2**31 - 1]),
       st.integers(0, 40), st.integers(1, 40))
def test_rref_matches_naive(seed, p, m, n):
    rng = np.random.default_rng(seed)
    M = rng.integers(0, p, (m, n)) if p > 2**20 else low_rank(rng, m, n, int(rng.integers(0, min(m, n) + 1)), p)
    R, piv = linalg.rref(M, p, n)
    R0, piv0 = naive_rref(M.tolist(), p)
    assert piv == piv0
    assert R.tolist() == R0


@pytest.mark.parametrize("shape", [(300, 120), (120, 300), (500, 60)])
def test_blocked_path_matches_numpy_loop(shape):
    rng = np.random.default_rng(1)
    m, n = shape
    M = low_rank(rng, m, n, min(m, n) - 7, 101)
    assert M.size > linalg._WHOLE
    R, piv = linalg.rref(M, 101, n)
    R2, piv2 = linalg._rref_numpy(M.copy(), 101)
    assert piv == tuple(piv2)
    assert np.array_equal(R, R2)


def test_rref_shapes_and_invariants():
    R, piv = linalg.rref(np.zeros((0, 4), dtype=np.int64), 5, 4)
    assert R.shape == (0, 4) and piv == ()
    R, piv = linalg.rref([[0, 2, 4], [0, 1, 2]], 5, 3)
    assert piv == (1,) and R.tolist() == [[0, 1, 2]]


@given(st.integers(0, 2**32 - 1), st.integers(1, 30), st.integers(1, 30))
def test_nullspace_and_left_kernel(seed, m, n):
    p = 101
    rng = np.random.default_rng(seed)
    M = low_rank(rng, m, n, int(rng.integers(0, min(m, n) + 1)), p)
    N = linalg.nullspace(M, p)
    r = linalg.rank(M, p, n)
    assert N.shape == (n - r, n)
    assert not ((M @ N.T) % p).any()
    K = linalg.left_kernel(M, p)
    assert K.shape == (m - r, m)
    assert not ((K @ M) % p).any()


def test_matmul_mod_paths_agree():
    rng = np.random.default_rng(3)
    for p in (101, 2**31 - 1):
        A, B = rng.integers(0, p, (7, 50)), rng.integers(0, p, (50, 5))
        exact = (A.astype(object) @ B.astype(object)) % p
        assert linalg.matmul_mod(A, B, p).tolist() == exact.tolist()


def test_reduce_rows_zero_exactly_on_row_space():
    p = 7
    R, piv = linalg.rref([[1, 2, 3, 4], [0, 1, 1, 1]], p, 4)
    inside = np.array([[2, 5, 7, 9]]) % p  # 2*r1 + r2
    outside = np.array([[0, 0, 1, 0]])
    assert not linalg.reduce_rows(inside, R, piv, p).any()
    assert linalg.reduce_rows(outside, R, piv, p).any()
