"""Depth-first solver for systems of quadratic equations over F_p.

Every polynomial in the current free variables t is stored homogenized as an
upper-triangular (m+1) x (m+1) matrix M with value  t~^T M t~,  t~ = (1, t).
Linear equations are eliminated by row reduction at every node; the search
branches on one variable at a time over all of F_p, so exhausting the tree
proves there is no solution.

The unknowns are the entries of a square matrix with a prescribed block
upper-triangular shape; a solution must make every diagonal block invertible.
"""
from __future__ import annotations

import numpy as np

from . import linalg as la
from .field import FieldSpec


class BudgetExceeded(RuntimeError):
    pass


def fold(M, p):
    """Upper-triangular normal form of a stack of quadratic forms."""
    U = np.triu(M + np.swapaxes(M, -1, -2), 1)
    d = np.diagonal(M, axis1=-2, axis2=-1)
    idx = np.arange(M.shape[-1])
    U[..., idx, idx] = d
    return U % p


def substitute(M, S, p):
    """M' = S^T M S for t~ = S t~'."""
    if M.shape[0] == 0:
        return np.zeros((0, S.shape[1], S.shape[1]), dtype=np.int64)
    Mf = M.astype(np.float64)
    Sf = S.astype(np.float64)
    out = np.einsum("ai,kab,bj->kij", Sf, Mf, Sf, optimize=True)
    return fold(np.rint(out).astype(np.int64) % p, p)


class MatrixSearch:
    """Find X (n x n over F_p) with X[r, c] = 0 outside `allowed`, all
    diagonal blocks invertible, and every polynomial in `polys` vanishing.

    polys are given over the original variables (the allowed positions, in
    row-major order) as (k, N+1, N+1) arrays."""

    def __init__(self, F: FieldSpec, n: int, blocks: list, polys, budget: int = 10 ** 9, seed: int = 0):
        if not F.is_prime_field:
            raise ValueError("polynomial search needs a prime field")
        self.F = F
        self.p = F.p
        self.n = n
        self.blocks = blocks  # list of (lo, hi) index ranges on the diagonal
        self.block_of = np.zeros(n, dtype=np.int64)
        for b, (lo, hi) in enumerate(blocks):
            self.block_of[lo:hi] = b
        self.positions = [(r, c) for r in range(n) for c in range(n)
                          if self.block_of[r] <= self.block_of[c]]
        self.nvars = len(self.positions)
        self.is_diag = np.array([self.block_of[r] == self.block_of[c] for r, c in self.positions])
        self.polys = fold(np.asarray(polys, dtype=np.int64) % self.p, self.p)
        self.budget = budget
        self.nodes = 0
        self.rng = np.random.default_rng(seed)
        # rows of E for the entries of each diagonal block
        pos_index = {rc: k for k, rc in enumerate(self.positions)}
        self.block_rows = [[[pos_index[(r, c)] for c in range(lo, hi)] for r in range(lo, hi)]
                           for lo, hi in blocks]

    # -- helpers --------------------------------------------------------------
    def var_index(self, r, c):
        return self.positions.index((r, c))

    def matrix(self, u):
        X = np.zeros((self.n, self.n), dtype=np.int64)
        for k, (r, c) in enumerate(self.positions):
            X[r, c] = u[k]
        return X

    def _eliminate(self, polys, E, free):
        """Repeatedly solve the linear members; returns None on contradiction."""
        p = self.p
        F = self.F
        while True:
            if polys.shape[0]:
                nz = np.any(polys.reshape(polys.shape[0], -1), axis=1)
                polys = polys[nz]
            if polys.shape[0] == 0:
                return polys, E, free
            quad = np.any(polys[:, 1:, 1:].reshape(polys.shape[0], -1), axis=1)
            lin = ~quad
            if not lin.any():
                return polys, E, free
            Lp = polys[lin]
            A = Lp[:, 0, 1:]
            c = Lp[:, 0, 0]
            if not np.any(A):
                return None
            # off-diagonal variables first, so diagonal ones stay free
            m = len(free)
            order = sorted(range(m), key=lambda v: (self.is_diag[free[v]], v))
            aug = np.concatenate([A[:, order], c[:, None]], axis=1)
            R, piv = la.rref(F, aug)
            if m in piv:
                return None
            piv_vars = [order[k] for k in piv]
            keep = [v for v in range(m) if v not in set(piv_vars)]
            S = np.zeros((m + 1, len(keep) + 1), dtype=np.int64)
            S[0, 0] = 1
            for j, v in enumerate(keep):
                S[v + 1, j + 1] = 1
            col_of = {v: k for k, v in enumerate(order)}
            for r, v in enumerate(piv_vars):
                S[v + 1, 0] = (-R[r, m]) % p
                for j, w in enumerate(keep):
                    S[v + 1, j + 1] = (-R[r, col_of[w]]) % p
            polys = substitute(polys[quad], S, p)
            E = (E @ S) % p
            free = [free[v] for v in keep]

    def _block_dets(self, E):
        """Determinants of constant diagonal blocks (None for non-constant)."""
        out = []
        for rows in self.block_rows:
            sub = E[np.array(rows)]
            if np.any(sub[..., 1:]):
                out.append(None)
            else:
                out.append(la.det(self.F, sub[..., 0]))
        return out

    def _fix(self, polys, E, free, v, val):
        m = len(free)
        S = np.zeros((m + 1, m), dtype=np.int64)
        S[0, 0] = 1
        S[v + 1, 0] = val
        j = 1
        for w in range(m):
            if w != v:
                S[w + 1, j] = 1
                j += 1
        return substitute(polys, S, self.p), (E @ S) % self.p, free[:v] + free[v + 1:]

    def _leaf(self, E, free, samples=48):
        """No constraints left: look for values making T invertible."""
        m = len(free)
        T = self.rng.integers(0, self.p, size=(samples, m))
        Tt = np.concatenate([np.ones((samples, 1), dtype=np.int64), T], axis=1)
        U = (Tt @ E.T) % self.p
        for u in U:
            ok = True
            for rows in self.block_rows:
                if la.det(self.F, u[np.array(rows)]) == 0:
                    ok = False
                    break
            if ok:
                return u
        return None

    def _choose(self, polys, free):
        occ = np.zeros(len(free), dtype=np.int64)
        Q = polys[:, 1:, 1:] != 0
        occ += Q.sum(axis=(0, 1)) + Q.sum(axis=(0, 2))
        best = max(range(len(free)), key=lambda v: (occ[v] > 0, self.is_diag[free[v]], occ[v], -v))
        return best

    # -- search ---------------------------------------------------------------
    def solve(self):
        N = self.nvars
        E = np.zeros((N, N + 1), dtype=np.int64)
        E[:, 1:] = np.eye(N, dtype=np.int64)
        return self._dfs(self.polys, E, list(range(N)))

    def _dfs(self, polys, E, free):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.nodes)
        res = self._eliminate(polys, E, free)
        if res is None:
            return None
        polys, E, free = res
        dets = self._block_dets(E)
        if any(d == 0 for d in dets if d is not None):
            return None
        if polys.shape[0] == 0:
            u = self._leaf(E, free)
            if u is not None:
                return u
            if all(d is not None for d in dets):
                return None
            # branch on a free variable feeding an undetermined diagonal block
            rows = [r for b, rws in enumerate(self.block_rows) if dets[b] is None
                    for row in rws for r in row]
            cols = np.nonzero(np.any(E[np.array(rows)][:, 1:], axis=0))[0]
            v = int(cols[0])
        else:
            v = self._choose(polys, free)
        for val in range(self.p):
            sub = self._fix(polys, E, free, v, val)
            u = self._dfs(*sub)
            if u is not None:
                return u
        return None
