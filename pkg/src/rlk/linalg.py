"""Exact row reduction over a FieldSpec.

Matrices are int64 numpy arrays of element codes.  Everything here is
written against the FieldSpec vector ops, so it works unchanged over
extension fields; prime fields take the fast modular path inside those ops.
"""
from __future__ import annotations

import numpy as np

from .field import FieldSpec


def as_mat(M, ncols=None) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(-1, ncols if ncols is not None else A.shape[0]) if A.size else \
            np.zeros((0, ncols or 0), dtype=np.int64)
    return A


def rref(F: FieldSpec, M) -> tuple[np.ndarray, list]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("rref needs a 2-d array")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = F.mul(A[r], F.inv(A[r, c]))
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            A[nzr] = F.sub(A[nzr], F.mul(col[nzr, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(F: FieldSpec, M) -> int:
    A = np.asarray(M)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: FieldSpec, M, ncols=None) -> np.ndarray:
    """Rows spanning {v : M v = 0}, in canonical (rref) form."""
    A = np.asarray(M, dtype=np.int64)
    n = A.shape[1] if A.ndim == 2 and A.shape[0] else (ncols if ncols is not None else A.shape[-1])
    if A.size == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = F.neg(R[r, f])
    if len(basis) == 0:
        return basis
    return rref(F, basis)[0]


def row_space(F: FieldSpec, M, ncols: int) -> np.ndarray:
    A = np.asarray(M, dtype=np.int64).reshape(-1, ncols)
    if A.shape[0] == 0:
        return A
    return rref(F, A)[0]


def solve(F: FieldSpec, A, b):
    """One solution x of A x = b (free variables zero) or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, piv = rref(F, aug)
    n = A.shape[1]
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, pc in enumerate(piv):
        x[pc] = R[r, n]
    return x


def inverse(F: FieldSpec, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref(F, aug)
    if piv[:n] != list(range(n)):
        raise np.linalg.LinAlgError("singular matrix")
    return R[:, n:]


def det(F: FieldSpec, A) -> int:
    A = np.array(A, dtype=np.int64, copy=True)
    n = A.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if len(nz) == 0:
            return 0
        k = c + nz[0]
        if k != c:
            A[[c, k]] = A[[k, c]]
            d = int(F.neg(d))
        piv = A[c, c]
        d = int(F.mul(d, piv))
        inv = F.inv(piv)
        for r in range(c + 1, n):
            if A[r, c]:
                A[r] = F.sub(A[r], F.mul(F.mul(A[r, c], inv), A[c]))
    return d


def is_invertible(F: FieldSpec, A) -> bool:
    A = np.asarray(A)
    return A.shape[0] == A.shape[1] and rank(F, A) == A.shape[0]


def complement_coords(F: FieldSpec, sub_rref: np.ndarray, pivots: list, v: np.ndarray) -> np.ndarray:
    """Reduce v modulo the row space whose rref and pivots are given."""
    v = np.array(v, dtype=np.int64, copy=True)
    for r, pc in enumerate(pivots):
        if v[pc]:
            v = F.sub(v, F.mul(v[pc], sub_rref[r]))
    return v
