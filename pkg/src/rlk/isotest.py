"""Isomorphism testing for restricted Lie algebras.

decide_iso works in three phases:

1. invariants: fingerprints, then a lattice of characteristic subspaces
   grown in lockstep on both sides.  Any dimension or coincidence mismatch
   is a certificate of non-isomorphism (the recipe that produced it).
2. the lattice fixes a flag that every isomorphism must respect, so in
   adapted bases the unknown matrix is block upper triangular and must
   carry the remaining lattice members onto their partners.
3. an exhaustive search (polysolve) over the remaining entries under the
   bracket and p-map equations.  Exhausting the tree proves there is no
   isomorphism; hitting the node budget gives Inconclusive.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .liealg import LieAlgebra, Subspace
from .polysolve import BudgetExceeded, MatrixSearch
from .restricted import (RestrictedAlgebra, fingerprint, fingerprint_diff, p_image,
                         p_preimage)

DEFAULT_BUDGET = 10 ** 9


def default_budget() -> int:
    env = os.environ.get("RLK_BUDGET")
    return int(float(env)) if env else DEFAULT_BUDGET


def pmap_apply(R: RestrictedAlgebra, V):
    """x^[p] for the rows of V (class < p regime)."""
    F = R.F
    return F.matmul(F.frob(np.asarray(V, dtype=np.int64)), R.P.T)


def verify_iso_witness(R1: RestrictedAlgebra, R2: RestrictedAlgebra, T) -> bool:
    """T (columns = images of the basis of R1) is an isomorphism R1 -> R2."""
    F = R1.F
    T = np.asarray(T, dtype=np.int64)
    n = R1.dim
    if T.shape != (n, n) or R2.dim != n or not la.is_invertible(F, T):
        return False
    cols = T.T  # cols[i] = T x_i
    I, J = np.triu_indices(n, 1)
    lhs = F.matmul(R1.alg.sc[I, J], T.T)  # T [x_i, x_j], as rows
    rhs = R2.alg.bracket(cols[I], cols[J])
    if not np.array_equal(lhs, rhs):
        return False
    lhs = F.matmul(T, R1.P).T  # rows: T(x_i^[p])
    rhs = pmap_apply(R2, cols)  # (T x_i)^[p]
    return bool(np.array_equal(lhs, rhs))


@dataclass
class IsoResult:
    verdict: str  # "yes" | "no" | "inconclusive" | "unsupported"
    witness: np.ndarray | None = None
    certificate: dict = field(default_factory=dict)
    nodes: int = 0

    def __bool__(self):
        return self.verdict == "yes"

    def to_json(self):
        return {"verdict": self.verdict,
                "witness": None if self.witness is None else self.witness.tolist(),
                "certificate": self.certificate, "nodes": self.nodes}


# ---------------------------------------------------------------------------
class _Mismatch(Exception):
    def __init__(self, recipe, d1, d2):
        super().__init__(recipe)
        self.recipe, self.d1, self.d2 = recipe, d1, d2


class _Lattice:
    """Characteristic subspaces of R1 and R2 built by the same recipes."""

    def __init__(self, R1, R2, marks=(), cap=80):
        self.R = (R1, R2)
        self.members = []  # (S1, S2, recipe)
        self.index = ({}, {})
        self.cap = cap
        L1, L2 = R1.alg, R2.alg
        self.add(L1.zero(), L2.zero(), "0")
        self.add(L1.whole(), L2.whole(), "L")
        for k, (a, b) in enumerate(zip(L1.lower_central_series(), L2.lower_central_series())):
            self.add(a, b, f"lcs[{k}]")
        for k, (a, b) in enumerate(zip(L1.derived_series(), L2.derived_series())):
            self.add(a, b, f"der[{k}]")
        for k, (a, b) in enumerate(zip(L1.upper_central_series(), L2.upper_central_series())):
            self.add(a, b, f"ucs[{k}]")
        for k, (a, b) in enumerate(marks):
            self.add(a, b, f"mark[{k}]")

    def add(self, S1, S2, recipe):
        if S1.dim != S2.dim:
            raise _Mismatch(recipe, S1.dim, S2.dim)
        k1 = self.index[0].get(S1)
        k2 = self.index[1].get(S2)
        if k1 != k2:
            what = lambda k: "new" if k is None else self.members[k][2]
            raise _Mismatch(f"{recipe} coincides with {what(k1)} vs {what(k2)}", S1.dim, S2.dim)
        if k1 is not None:
            return False
        if len(self.members) >= self.cap:
            return False
        k = len(self.members)
        self.members.append((S1, S2, recipe))
        self.index[0][S1] = k
        self.index[1][S2] = k
        return True

    def _unary(self, S, side, op):
        R = self.R[side]
        L = R.alg
        if op == "C":
            return L.centralizer(S)
        if op == "P":
            return p_image(R, S)
        if op == "Pinv":
            return p_preimage(R, S)
        if op == "ad":
            return L.bracket_space(L.whole(), S)
        raise KeyError(op)

    def _binary(self, A, B, side, op):
        L = self.R[side].alg
        if op == "+":
            return A + B
        if op == "&":
            return A.intersect(B)
        if op == "[]":
            return L.bracket_space(A, B)
        raise KeyError(op)

    def close(self, rounds=3):
        """Apply the unary and binary operations until nothing new appears;
        each round only pairs involving a member from the last round are tried."""
        done = 0
        for _ in range(rounds):
            start = len(self.members)
            for k in range(start):
                S1, S2, rec = self.members[k]
                if k >= done:
                    for op in ("C", "P", "Pinv", "ad"):
                        self.add(self._unary(S1, 0, op), self._unary(S2, 1, op), f"{op}({rec})")
                for j in range(k):
                    if j < done and k < done:
                        continue
                    T1, T2, rec2 = self.members[j]
                    for op in ("+", "&", "[]"):
                        self.add(self._binary(S1, T1, 0, op), self._binary(S2, T2, 1, op),
                                 f"({rec} {op} {rec2})")
            done = start
            if len(self.members) == start:
                break

    def flag(self):
        """A chain of lattice members refined by every member."""
        chain = [self.members[0][:2], self.members[1][:2]]
        changed = True
        while changed:
            changed = False
            for S1, S2, rec in self.members:
                for a in range(len(chain) - 1):
                    (A1, A2), (B1, B2) = chain[a], chain[a + 1]
                    W1 = A1 + B1.intersect(S1)
                    W2 = A2 + B2.intersect(S2)
                    if W1.dim != W2.dim:
                        raise _Mismatch(f"flag refinement by {rec}", W1.dim, W2.dim)
                    if A1.dim < W1.dim < B1.dim:
                        chain.insert(a + 1, (W1, W2))
                        changed = True
                        break
        return chain


def _adapted_basis(F, chain, side):
    """Columns extend each flag member to the next."""
    cols = []
    for S in (c[side] for c in chain[1:]):
        cur = Subspace(F, S.n, np.array(cols)) if cols else Subspace(F, S.n)
        for v in S.basis:
            if not cur.contains(v):
                cols.append(v)
                cur = cur + Subspace(F, S.n, [v])
    return np.array(cols, dtype=np.int64).T


def _transport(R: RestrictedAlgebra, B, Binv) -> RestrictedAlgebra:
    F = R.F
    alg = R.alg.change_basis(B)
    P = F.matmul(Binv, F.matmul(R.P, B))
    return RestrictedAlgebra(alg, P)


def _build_polys(A1, A2, positions, sub_constraints, fixed, forms=()):
    """Equations on X (allowed entries only) for an isomorphism A1 -> A2."""
    F = A1.F
    p = F.p
    n = A1.dim
    vi = {rc: k + 1 for k, rc in enumerate(positions)}
    N = len(positions) + 1
    polys = []

    def new():
        M = np.zeros((N, N), dtype=np.int64)
        polys.append(M)
        return M

    sc1, sc2 = A1.alg.sc, A2.alg.sc
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                M = new()
                for l in range(n):
                    c = sc1[i, j, l]
                    if c and (k, l) in vi:
                        M[0, vi[(k, l)]] += c
                for a in range(n):
                    if (a, i) not in vi:
                        continue
                    for b in range(n):
                        c = sc2[a, b, k]
                        if c and (b, j) in vi:
                            x, y = sorted((vi[(a, i)], vi[(b, j)]))
                            M[x, y] -= c
    P1, P2 = A1.P, A2.P
    for k in range(n):
        for i in range(n):
            M = new()
            for l in range(n):
                if P1[l, i] and (k, l) in vi:
                    M[0, vi[(k, l)]] += P1[l, i]
                if P2[k, l] and (l, i) in vi:
                    M[0, vi[(l, i)]] -= P2[k, l]
    for Nrows, basis in sub_constraints:
        for a in Nrows:
            for s in basis:
                M = new()
                for r in range(n):
                    for c in range(n):
                        if a[r] and s[c] and (r, c) in vi:
                            M[0, vi[(r, c)]] += a[r] * s[c]
    for a, s, val in forms:
        M = new()
        M[0, 0] -= val
        for r in range(n):
            for c in range(n):
                if a[r] and s[c] and (r, c) in vi:
                    M[0, vi[(r, c)]] += a[r] * s[c]
    for v1, v2 in fixed:
        for r in range(n):
            M = new()
            M[0, 0] -= v2[r]
            for c in range(n):
                if v1[c] and (r, c) in vi:
                    M[0, vi[(r, c)]] += v1[c]
    polys = [M % p for M in polys if np.any(M % p)]
    if not polys:
        return np.zeros((0, N, N), dtype=np.int64)
    return np.array(polys)


def decide_iso(R1: RestrictedAlgebra, R2: RestrictedAlgebra, budget: int | None = None,
               marks=(), fixed=(), entries=(), use_fingerprint=True, seed: int = 0) -> IsoResult:
    """Yes(witness) | No(certificate) | Inconclusive.

    marks: pairs of subspaces (S1, S2) that the isomorphism must match;
    fixed: pairs of vectors (v1, v2) with T v1 = v2 required;
    entries: triples (u, w, c) with u^T T w = c required."""
    F = R1.F
    if R1.dim != R2.dim:
        return IsoResult("no", certificate={"reason": "dimension", "dims": [R1.dim, R2.dim]})
    if R1.F != R2.F:
        raise ValueError("algebras over different fields")
    budget = default_budget() if budget is None else budget
    L1, L2 = R1.alg, R2.alg
    marks = [(S1 if isinstance(S1, Subspace) else L1.span(S1),
              S2 if isinstance(S2, Subspace) else L2.span(S2)) for S1, S2 in marks]
    fixed = [(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) for a, b in fixed]
    for v1, v2 in fixed:
        marks.append((L1.span([v1]), L2.span([v2])))
    if use_fingerprint:
        d = fingerprint_diff(fingerprint(R1), fingerprint(R2))
        if d:
            return IsoResult("no", certificate={"reason": "fingerprint",
                                                "differences": [[k, str(a), str(b)] for k, a, b in d]})
    try:
        lat = _Lattice(R1, R2, marks)
        lat.close()
        chain = lat.flag()
    except _Mismatch as e:
        return IsoResult("no", certificate={"reason": "characteristic subspace",
                                            "recipe": e.recipe, "dims": [e.d1, e.d2]})
    if not F.is_prime_field:
        return IsoResult("unsupported", certificate={
            "reason": "search needs a prime field; invariants agree"})
    B1 = _adapted_basis(F, chain, 0)
    B2 = _adapted_basis(F, chain, 1)
    B1i, B2i = la.inverse(F, B1), la.inverse(F, B2)
    A1, A2 = _transport(R1, B1, B1i), _transport(R2, B2, B2i)
    dims = [c[0].dim for c in chain]
    blocks = [(dims[a], dims[a + 1]) for a in range(len(dims) - 1)]
    chain_ids = {c[0] for c in chain}
    subs = []
    for S1, S2, _ in lat.members:
        if S1 in chain_ids or S1.dim in (0, R1.dim):
            continue
        s = S1.image(B1i).basis
        Nr = S2.image(B2i).annihilator()
        subs.append((Nr, s))
    fixed_t = [(F.matmul(B1i, v1), F.matmul(B2i, v2)) for v1, v2 in fixed]
    search = MatrixSearch(F, R1.dim, blocks, np.zeros((0, 1, 1)), budget=budget, seed=seed)
    forms = [(F.matmul(B2.T, np.asarray(u, dtype=np.int64)), F.matmul(B1i, np.asarray(w, dtype=np.int64)),
              int(c) % F.p) for u, w, c in entries]
    search.polys = _build_polys(A1, A2, search.positions, subs, fixed_t, forms)
    try:
        u = search.solve()
    except BudgetExceeded:
        return IsoResult("inconclusive", certificate={"reason": "budget", "budget": budget},
                         nodes=search.nodes)
    if u is None:
        return IsoResult("no", certificate={"reason": "exhausted search", "nodes": search.nodes,
                                            "flag_dims": dims, "lattice_size": len(lat.members)},
                         nodes=search.nodes)
    X = search.matrix(u)
    T = F.matmul(B2, F.matmul(X, B1i))
    if not verify_iso_witness(R1, R2, T):
        raise AssertionError("search produced an invalid witness")
    for v1, v2 in fixed:
        if not np.array_equal(F.matmul(T, v1), v2):
            raise AssertionError("witness violates a fixed vector")
    for u, w, c in entries:
        if int(F.dot(np.asarray(u), F.matmul(T, np.asarray(w)))) != int(c) % F.p:
            raise AssertionError("witness violates an entry constraint")
    return IsoResult("yes", witness=T, nodes=search.nodes)


def abelian_iso(R1: RestrictedAlgebra, R2: RestrictedAlgebra) -> bool:
    """Over a prime field an abelian p-map is a linear operator; nilpotent
    operators are similar iff the ranks of all powers agree."""
    if not (R1.alg.is_abelian() and R2.alg.is_abelian()):
        raise ValueError("abelian_iso needs abelian algebras")
    if not R1.F.is_prime_field:
        raise NotImplementedError("semilinear similarity over extension fields is not supported")
    return rank_sequence(R1) == rank_sequence(R2)


def rank_sequence(R: RestrictedAlgebra) -> tuple:
    F = R.F
    out = []
    M = np.eye(R.dim, dtype=np.int64)
    for _ in range(R.dim + 1):
        M = F.matmul(R.P, M)
        r = la.rank(F, M)
        out.append(r)
        if r == 0:
            break
    return tuple(out)
