"""p-maps on Lie algebras: evaluation, Jacobson terms, verification,
p-nilpotency and isomorphism-invariant fingerprints."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .field import FieldSpec, dump_elem, parse_elem
from .liealg import LieAlgebra, Subspace


class UnsupportedRegime(ValueError):
    pass


class RestrictedAlgebra:
    """A Lie algebra with a p-map given by basis images.

    P is a dim x dim matrix whose column i is x_i^[p].
    """

    def __init__(self, alg: LieAlgebra, P, name: str | None = None, params: dict | None = None):
        self.alg = alg
        self.P = np.asarray(P, dtype=np.int64).reshape(alg.dim, alg.dim)
        self.name = name
        self.params = dict(params or {})

    @property
    def F(self) -> FieldSpec:
        return self.alg.F

    @property
    def dim(self) -> int:
        return self.alg.dim

    @classmethod
    def from_images(cls, alg: LieAlgebra, images: dict, name=None, params=None):
        """images maps a 1-based basis index to {k: coefficient}."""
        P = np.zeros((alg.dim, alg.dim), dtype=np.int64)
        for i, img in images.items():
            for k, c in img.items():
                P[k - 1, i - 1] = parse_elem(alg.F, c)
        return cls(alg, P, name, params)

    def images(self) -> dict:
        out = {}
        for i in range(self.dim):
            col = self.P[:, i]
            if np.any(col):
                out[i + 1] = {k + 1: dump_elem(self.F, c) for k, c in enumerate(col) if c}
        return out

    def to_json(self) -> dict:
        d = self.alg.to_json()
        d["pmap"] = {"images": {str(i): [dump_elem(self.F, c) for c in self.P[:, i - 1]]
                                for i in range(1, self.dim + 1)}}
        if self.name:
            d["name"] = self.name
        if self.params:
            d["params"] = {k: dump_elem(self.F, v) for k, v in self.params.items()}
        return d

    @classmethod
    def from_json(cls, d) -> "RestrictedAlgebra":
        alg = LieAlgebra.from_json(d)
        P = np.zeros((alg.dim, alg.dim), dtype=np.int64)
        for i, vec in d.get("pmap", {}).get("images", {}).items():
            if isinstance(vec, dict):
                for k, c in vec.items():
                    P[int(k) - 1, int(i) - 1] = parse_elem(alg.F, c)
            else:
                P[:, int(i) - 1] = [parse_elem(alg.F, c) for c in vec]
        params = {k: parse_elem(alg.F, v) for k, v in d.get("params", {}).items()}
        return cls(alg, P, d.get("name"), params)

    def __repr__(self):
        return f"RestrictedAlgebra({self.name or self.alg.name}, images={self.images()})"


# ---------------------------------------------------------------------------
def eval_pmap(R: RestrictedAlgebra, v) -> np.ndarray:
    """(sum a_i x_i)^[p] = sum a_i^p x_i^[p]; valid only when class < p,
    where every Jacobson correction is a commutator of length p."""
    if R.alg.nilpotency_class() >= R.F.p:
        raise UnsupportedRegime("nilpotency class >= p; use jacobson_sum directly")
    return _eval_semilinear(R.F, R.P, v)


def _eval_semilinear(F: FieldSpec, P, v):
    v = np.asarray(v, dtype=np.int64)
    return F.matmul(F.frob(v), np.asarray(P).T)


def jacobson_terms(L: LieAlgebra, x, y) -> np.ndarray:
    """All s_j(x, y), j = 1..p-1, stacked on axis -2.

    j s_j(x, y) is the coefficient of t^(j-1) in ad(tx + y)^(p-1)(x); the
    expansion is carried out literally, coefficient by coefficient.
    Batched over leading axes of x and y."""
    F = L.F
    p = F.p
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    shape = np.broadcast_shapes(x.shape, y.shape)
    x = np.broadcast_to(x, shape)
    y = np.broadcast_to(y, shape)
    # coeffs[k] is the t^k coefficient
    coeffs = [x]
    for _ in range(p - 1):
        nxt = [None] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            if c is None or not np.any(c):
                continue
            yc = L.bracket(y, c)
            xc = L.bracket(x, c)
            nxt[k] = yc if nxt[k] is None else F.add(nxt[k], yc)
            nxt[k + 1] = xc if nxt[k + 1] is None else F.add(nxt[k + 1], xc)
        coeffs = nxt
    out = []
    for j in range(1, p):
        inv_j = int(F.inv(F.from_int(j)))
        c = coeffs[j - 1]
        out.append(np.zeros(shape, dtype=np.int64) if c is None else F.mul(c, inv_j))
    return np.stack(out, axis=-2)


def compute_sj(L: LieAlgebra, x, y, j: int) -> np.ndarray:
    if not 1 <= j <= L.F.p - 1:
        raise ValueError("j must be in 1..p-1")
    return jacobson_terms(L, x, y)[..., j - 1, :]


def jacobson_sum(L: LieAlgebra, x, y) -> np.ndarray:
    return L.F.sum(jacobson_terms(L, x, y), axis=-2)


def ad_power(L: LieAlgebra, v, k: int) -> np.ndarray:
    A = L.ad(v)
    out = np.eye(L.dim, dtype=np.int64)
    for _ in range(k):
        out = L.F.matmul(A, out)
    return out


@dataclass
class VerifyReport:
    ok: bool
    checked: dict = field(default_factory=dict)
    violation: tuple | None = None
    note: str = ""

    def to_json(self):
        return {"ok": self.ok, "checked": self.checked,
                "violation": None if self.violation is None else [str(v) for v in self.violation],
                "note": self.note}


def verify_restricted(R: RestrictedAlgebra, exhaustive: bool = False,
                      exhaustive_limit: int = 10 ** 8, block=None) -> VerifyReport:
    """Check the three axioms.

    (a) ad(x_i^[p]) = (ad x_i)^p for every basis vector;
    (b) (x+y)^[p] = x^[p] + y^[p] + sum_j s_j(x, y) on basis pairs, with the
        Jacobson terms computed literally;
    (c) (l x_i)^[p] = l^p x_i^[p] for every scalar l.
    The exhaustive flag repeats (a) on every vector and (b) on every pair.
    """
    L, F = R.alg, R.F
    p = F.p
    checked = {}
    try:
        cls = L.nilpotency_class()
    except ValueError:
        return VerifyReport(False, checked, ("not nilpotent",), "outside supported regime")
    if cls >= p:
        return VerifyReport(False, checked, ("class >= p",), "outside supported regime")
    E = np.eye(R.dim, dtype=np.int64)
    for i in range(R.dim):
        lhs = L.ad(R.P[:, i])
        rhs = ad_power(L, E[i], p)
        if not np.array_equal(lhs, rhs):
            return VerifyReport(False, checked, ("a", i + 1))
    checked["a_basis"] = R.dim
    pv = lambda v: _eval_semilinear(F, R.P, v)
    pairs = [(i, j) for i in range(R.dim) for j in range(R.dim)]
    X = E[[i for i, _ in pairs]]
    Y = E[[j for _, j in pairs]]
    lhs = pv(F.add(X, Y))
    rhs = F.add(F.add(pv(X), pv(Y)), jacobson_sum(L, X, Y))
    bad = np.nonzero(np.any(lhs != rhs, axis=1))[0]
    if len(bad):
        i, j = pairs[bad[0]]
        return VerifyReport(False, checked, ("b", i + 1, j + 1))
    checked["b_basis_pairs"] = len(pairs)
    lam = F.elements()
    for i in range(R.dim):
        vals = pv(F.mul(lam[:, None], E[i][None, :]))
        want = F.mul(F.frob(lam)[:, None], R.P[:, i][None, :])
        if not np.array_equal(vals, want):
            return VerifyReport(False, checked, ("c", i + 1))
    checked["c_scalars"] = R.dim * F.q
    if exhaustive:
        total = F.q ** R.dim
        if total * total > exhaustive_limit:
            return VerifyReport(True, checked, None, "exhaustive check skipped (too large)")
        rep = exhaustive_check(R, block=block)
        checked.update(rep.checked)
        if not rep.ok:
            return rep
    return VerifyReport(True, checked)


def all_vectors(F: FieldSpec, dim: int) -> np.ndarray:
    """Every vector of F^dim, in lexicographic order of coordinates."""
    grids = np.meshgrid(*([F.elements()] * dim), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def exhaustive_check(R: RestrictedAlgebra, block=None, chunk: int = 25) -> VerifyReport:
    """Axiom (b) on all vector pairs and axiom (a) on all vectors.

    `block` restricts the first argument to a slice of the lexicographic
    vector list, so callers can split the work across processes."""
    L, F = R.alg, R.F
    V = all_vectors(F, R.dim)
    lo, hi = block if block is not None else (0, len(V))
    pv = lambda v: _eval_semilinear(F, R.P, v)
    PV = pv(V)
    pairs = 0
    for s in range(lo, hi, chunk):
        X = V[s:min(s + chunk, hi)]
        Xb = np.repeat(X, len(V), axis=0)
        Yb = np.tile(V, (len(X), 1))
        lhs = pv(F.add(Xb, Yb))
        rhs = F.add(F.add(np.repeat(PV[s:min(s + chunk, hi)], len(V), axis=0), np.tile(PV, (len(X), 1))),
                    jacobson_sum(L, Xb, Yb))
        bad = np.nonzero(np.any(lhs != rhs, axis=1))[0]
        if len(bad):
            k = bad[0]
            return VerifyReport(False, {"b_pairs": pairs}, ("b", Xb[k].tolist(), Yb[k].tolist()))
        pairs += len(Xb)
    # (a) for every vector in the block: ad(v^[p]) = (ad v)^p
    p = F.p
    for v, w in zip(V[lo:hi], PV[lo:hi]):
        if not np.array_equal(L.ad(w), ad_power(L, v, p)):
            return VerifyReport(False, {"b_pairs": pairs}, ("a", v.tolist()))
    return VerifyReport(True, {"b_pairs": pairs, "a_vectors": hi - lo})


# ---------------------------------------------------------------------------
def pmap_power_images(R: RestrictedAlgebra, k: int) -> np.ndarray:
    """Columns are x_i^{[p]^k}, iterating the semilinear extension."""
    F = R.F
    M = np.eye(R.dim, dtype=np.int64)
    for _ in range(k):
        M = _eval_semilinear(F, R.P, M.T).T
    return M


def is_p_nilpotent(R: RestrictedAlgebra):
    """(True, least n with x^{[p]^n} = 0 for all x) or (False, None)."""
    M = np.eye(R.dim, dtype=np.int64)
    for n in range(0, R.dim + 2):
        if not np.any(M):
            return True, n
        M = _eval_semilinear(R.F, R.P, M.T).T
    return False, None


def p_image(R: RestrictedAlgebra, S: Subspace) -> Subspace:
    """{s^[p] : s in S}, a subspace because the map is additive."""
    if S.dim == 0:
        return R.alg.zero()
    return R.alg.span(_eval_semilinear(R.F, R.P, S.basis))


def p_preimage(R: RestrictedAlgebra, S: Subspace) -> Subspace:
    """{x : x^[p] in S}.  Over extension fields x -> x^[p] is semilinear,
    so the kernel is taken of N P followed by undoing Frobenius."""
    F = R.F
    N = S.annihilator()
    M = F.matmul(N, R.P)
    if not np.any(M):
        return R.alg.whole()
    K = la.nullspace(F, M)  # vectors w with M w = 0, w = frob(x)
    return R.alg.span(F.inv_frob(K)) if len(K) else R.alg.zero()


def restricted_closure(R: RestrictedAlgebra, S: Subspace) -> Subspace:
    cur = S
    while True:
        nxt = cur + p_image(R, cur) + R.alg.bracket_space(cur, cur)
        if nxt == cur:
            return cur
        cur = nxt


def fingerprint(R: RestrictedAlgebra, depth: int = 0) -> dict:
    """Dimension invariants.  Every entry is preserved by isomorphisms of
    restricted algebras, so differing fingerprints certify non-isomorphism."""
    L = R.alg
    fp = {
        "dim": R.dim,
        "lcs": tuple(s.dim for s in L.lower_central_series()),
        "derived": tuple(s.dim for s in L.derived_series()),
        "center": L.center().dim,
        "ucs": tuple(s.dim for s in L.upper_central_series()),
    }
    chain = []
    S = L.whole()
    for _ in range(R.dim + 1):
        S = p_image(R, S)
        chain.append(S.dim)
        if S.dim == 0:
            break
    fp["p_chain"] = tuple(chain)
    kers = []
    K = L.zero()
    for _ in range(R.dim + 1):
        K = p_preimage(R, K)
        kers.append(K.dim)
        if K.dim == R.dim:
            break
    fp["p_kernels"] = tuple(kers)
    Z = L.center()
    D = L.bracket_space(L.whole(), L.whole())
    PL = p_image(R, L.whole())
    fp["dim_P(Z)"] = p_image(R, Z).dim
    fp["dim_P(L')"] = p_image(R, D).dim
    fp["dim_L'∩P(L)"] = D.intersect(PL).dim
    fp["dim_ker∩L'"] = p_preimage(R, L.zero()).intersect(D).dim
    fp["dim_ker∩Z"] = p_preimage(R, L.zero()).intersect(Z).dim
    C = restricted_closure(R, PL)
    fp["closure"] = C.dim
    if C.dim == L.dim:
        fp["quotient"] = "whole"
    elif 0 < C.dim and depth < R.dim and R.alg.is_ideal(C) and L.bracket_space(L.whole(), C).dim == 0:
        Q, proj, sec = L.quotient(C)
        Pq = R.F.matmul(proj, R.F.matmul(R.P, sec))
        fp["quotient"] = fingerprint(RestrictedAlgebra(Q, Pq), depth + 1)
    elif C.dim == 0:
        fp["quotient"] = None
    else:
        fp["quotient"] = "non-central closure"
    return fp


def fingerprint_key(fp) -> str:
    """A stable string form for bucketing."""
    import json
    return json.dumps(fp, sort_keys=True, default=list, ensure_ascii=False)


def fingerprint_diff(a: dict, b: dict, prefix="") -> list:
    out = []
    for k in sorted(set(a) | set(b)):
        va, vb = a.get(k), b.get(k)
        if isinstance(va, dict) and isinstance(vb, dict):
            out.extend(fingerprint_diff(va, vb, prefix + k + "."))
        elif va != vb:
            out.append((prefix + k, va, vb))
    return out


# ---------------------------------------------------------------------------
def enumerate_pmaps(L: LieAlgebra, budget: int = 10 ** 10, nilpotent_only: bool = False):
    """Stream every Frobenius-semilinear map L -> Z(L) as a RestrictedAlgebra,
    in lexicographic order of the image coordinates."""
    F = L.F
    if L.nilpotency_class() >= F.p:
        raise UnsupportedRegime("class >= p")
    Z = L.center()
    total = F.q ** (L.dim * Z.dim)
    if total > budget:
        raise OverflowError(f"{total} maps exceed the budget {budget}")
    for coords in itertools.product(range(F.q), repeat=L.dim * Z.dim):
        C = np.array(coords, dtype=np.int64).reshape(L.dim, Z.dim)
        P = F.matmul(C, Z.basis).T
        R = RestrictedAlgebra(L, P)
        if nilpotent_only and not is_p_nilpotent(R)[0]:
            continue
        yield R


def count_pmaps(L: LieAlgebra) -> int:
    return L.F.q ** (L.dim * L.center().dim)
