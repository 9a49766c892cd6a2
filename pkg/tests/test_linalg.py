import itertools

import numpy as np

from rlk import linalg as la
from rlk.field import FieldSpec

F = FieldSpec(5)
rng = np.random.default_rng(1)


def test_rank_and_nullspace_random():
    for _ in range(40):
        M = rng.integers(0, 5, size=(3, 4))
        N = la.nullspace(F, M)
        assert la.rank(F, M) + len(N) == 4
        if len(N):
            assert not np.any(F.matmul(M, N.T))


def test_nullspace_counts_brute_force():
    M = np.array([[1, 2, 0], [2, 4, 0]])
    zeros = sum(1 for v in itertools.product(range(5), repeat=3) if not np.any(F.matmul(M, np.array(v))))
    assert zeros == 5 ** len(la.nullspace(F, M))


def test_inverse_and_det():
    for _ in range(40):
        A = rng.integers(0, 5, size=(4, 4))
        if la.det(F, A) == 0:
            assert not la.is_invertible(F, A)
            continue
        assert np.array_equal(F.matmul(A, la.inverse(F, A)), np.eye(4, dtype=np.int64))


def test_solve():
    A = np.array([[1, 1], [0, 2]])
    x = la.solve(F, A, np.array([3, 4]))
    assert np.array_equal(F.matmul(A, x), np.array([3, 4]))
