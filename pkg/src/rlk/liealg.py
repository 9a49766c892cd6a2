"""Lie algebras given by structure constants, subspaces, series and quotients.

Basis indices are 1-based in every external format (JSON, catalog
presentations) and 0-based inside numpy arrays.
"""
from __future__ import annotations

import numpy as np

from . import linalg as la
from .field import FieldSpec, dump_elem, parse_elem


class Subspace:
    """A subspace of F^n stored as its reduced echelon basis."""

    __slots__ = ("F", "n", "basis", "pivots")

    def __init__(self, F: FieldSpec, n: int, rows=None):
        self.F = F
        self.n = n
        if rows is None or n == 0 or np.size(rows) == 0:
            rows = np.zeros((0, n), dtype=np.int64)
        else:
            rows = np.asarray(rows, dtype=np.int64).reshape(-1, n)
        if rows.shape[0]:
            self.basis, self.pivots = la.rref(F, rows)
        else:
            self.basis, self.pivots = rows, []

    @classmethod
    def whole(cls, F, n):
        return cls(F, n, np.eye(n, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and \
            self.basis.shape == other.basis.shape and np.array_equal(self.basis, other.basis)

    def __hash__(self):
        return hash((self.n, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, basis={self.basis.tolist()})"

    def reduce(self, v):
        return la.complement_coords(self.F, self.basis, self.pivots, v)

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.F, self.n, np.concatenate([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.F, self.n)
        # v = a.A = b.B  <=>  (a, -b) in left kernel of [A; B]
        F = self.F
        M = np.concatenate([self.basis, other.basis]).T
        ker = la.nullspace(F, M)
        if len(ker) == 0:
            return Subspace(F, self.n)
        coeffs = ker[:, :self.dim]
        return Subspace(F, self.n, F.matmul(coeffs, self.basis))

    def image(self, M) -> "Subspace":
        """Image under a linear map given by a matrix acting on columns."""
        if self.dim == 0:
            return Subspace(self.F, np.asarray(M).shape[0])
        return Subspace(self.F, np.asarray(M).shape[0], self.F.matmul(self.basis, np.asarray(M).T))

    def annihilator(self) -> np.ndarray:
        """Rows N with N v = 0 exactly for v in the subspace."""
        if self.dim == 0:
            return np.eye(self.n, dtype=np.int64)
        return la.nullspace(self.F, self.basis)


class LieAlgebra:
    def __init__(self, F: FieldSpec, dim: int, sc, name: str | None = None):
        self.F = F
        self.dim = dim
        self.sc = np.asarray(sc, dtype=np.int64).reshape(dim, dim, dim)
        self.name = name
        self._scf = self.sc.reshape(dim * dim, dim).astype(np.float64)

    # ---- construction ---------------------------------------------------
    @classmethod
    def from_brackets(cls, F: FieldSpec, dim: int, brackets: dict, name=None) -> "LieAlgebra":
        """brackets maps 1-based (i, j), i < j, to {k: coefficient}."""
        sc = np.zeros((dim, dim, dim), dtype=np.int64)
        for (i, j), img in brackets.items():
            if not 1 <= i < j <= dim:
                raise ValueError(f"bad bracket index ({i},{j})")
            for k, c in img.items():
                c = parse_elem(F, c)
                sc[i - 1, j - 1, k - 1] = c
                sc[j - 1, i - 1, k - 1] = F.neg(c)
        return cls(F, dim, sc, name)

    def brackets(self) -> dict:
        out = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                v = self.sc[i, j]
                if np.any(v):
                    out[(i + 1, j + 1)] = {k + 1: dump_elem(self.F, c) for k, c in enumerate(v) if c}
        return out

    def to_json(self) -> dict:
        return {
            "field": self.F.to_json(),
            "dim": self.dim,
            "brackets": [{"i": i, "j": j, "k_coeffs": {str(k): c for k, c in img.items()}}
                         for (i, j), img in sorted(self.brackets().items())],
        }

    @classmethod
    def from_json(cls, d, F: FieldSpec | None = None) -> "LieAlgebra":
        F = F or FieldSpec.from_json(d["field"])
        br = {(int(b["i"]), int(b["j"])): {int(k): c for k, c in b["k_coeffs"].items()}
              for b in d.get("brackets", [])}
        return cls.from_brackets(F, int(d["dim"]), br, d.get("name"))

    def __repr__(self):
        return f"LieAlgebra({self.name or '?'}, dim={self.dim}, {self.F!r})"

    # ---- products ---------------------------------------------------------
    def bracket(self, u, v) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if u.shape[-1] != self.dim or v.shape[-1] != self.dim:
            raise ValueError("dimension mismatch")
        F = self.F
        if F.is_prime_field:
            # (u (x) v) @ C as a float matmul: entries stay far below 2^53
            shape = np.broadcast_shapes(u.shape, v.shape)
            uv = (u[..., :, None] * v[..., None, :]).reshape(shape[:-1] + (self.dim * self.dim,))
            out = uv.astype(np.float64) @ self._scf
            return out.astype(np.int64) % F.p
        shape = np.broadcast_shapes(u.shape, v.shape)
        acc = np.zeros(shape, dtype=np.int64)
        for i, j in zip(*np.nonzero(np.any(self.sc, axis=2))):
            coef = F.mul(u[..., i], v[..., j])
            acc = F.add(acc, F.mul(coef[..., None], self.sc[i, j]))
        return acc

    def ad(self, u) -> np.ndarray:
        """Matrix of ad u; column j is [u, x_j]."""
        return self.bracket(np.asarray(u)[None, :], np.eye(self.dim, dtype=np.int64)).T

    def basis_vec(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def is_abelian(self) -> bool:
        return not np.any(self.sc)

    def jacobi_violations(self) -> list:
        E = np.eye(self.dim, dtype=np.int64)
        bad = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    a = self.bracket(self.bracket(E[i], E[j]), E[k])
                    b = self.bracket(self.bracket(E[j], E[k]), E[i])
                    c = self.bracket(self.bracket(E[k], E[i]), E[j])
                    if np.any(self.F.add(self.F.add(a, b), c)):
                        bad.append((i + 1, j + 1, k + 1))
        return bad

    def is_antisymmetric(self) -> bool:
        return np.array_equal(self.sc, self.F.neg(np.transpose(self.sc, (1, 0, 2)))) and \
            not np.any(self.sc[np.arange(self.dim), np.arange(self.dim)])

    # ---- subspaces -------------------------------------------------------
    def whole(self) -> Subspace:
        return Subspace.whole(self.F, self.dim)

    def zero(self) -> Subspace:
        return Subspace(self.F, self.dim)

    def span(self, rows) -> Subspace:
        return Subspace(self.F, self.dim, rows)

    def bracket_space(self, A: Subspace, B: Subspace) -> Subspace:
        if A.dim == 0 or B.dim == 0:
            return self.zero()
        prods = self.bracket(A.basis[:, None, :], B.basis[None, :, :]).reshape(-1, self.dim)
        return self.span(prods)

    def centralizer(self, S: Subspace) -> Subspace:
        """{x : [x, s] = 0 for all s in S}."""
        if S.dim == 0:
            return self.whole()
        # [x, s] = -ad(s) x, so stack ad(s) for the basis of S
        M = np.concatenate([self.ad(s) for s in S.basis])
        return self.span(la.nullspace(self.F, M))

    def center(self) -> Subspace:
        return self.centralizer(self.whole())

    def lower_central_series(self) -> list:
        out = [self.whole()]
        while True:
            nxt = self.bracket_space(self.whole(), out[-1])
            if nxt == out[-1]:
                break
            out.append(nxt)
        return out

    def derived_series(self) -> list:
        out = [self.whole()]
        while True:
            nxt = self.bracket_space(out[-1], out[-1])
            if nxt == out[-1]:
                break
            out.append(nxt)
        return out

    def upper_central_series(self) -> list:
        out = [self.zero()]
        while True:
            # Z_{k+1} = {x : [x, L] in Z_k}
            Zk = out[-1]
            N = Zk.annihilator()
            M = np.concatenate([self.F.matmul(N, self._ad_right(j)) for j in range(self.dim)])
            nxt = self.span(la.nullspace(self.F, M, self.dim))
            if nxt == Zk:
                break
            out.append(nxt)
        return out

    def _ad_right(self, j: int) -> np.ndarray:
        """Matrix of x -> [x, x_j]."""
        return self.bracket(np.eye(self.dim, dtype=np.int64), self.basis_vec(j)).T

    def nilpotency_class(self) -> int:
        lcs = self.lower_central_series()
        if lcs[-1].dim != 0:
            raise ValueError("algebra is not nilpotent")
        return len(lcs) - 1

    def is_ideal(self, I: Subspace) -> bool:
        return I.contains_space(self.bracket_space(self.whole(), I))

    def quotient(self, I: Subspace):
        """L/I for a central ideal I; returns (Q, projection, section) with
        projection (dim Q x dim L) and section (dim L x dim Q) matrices."""
        if not self.is_ideal(I):
            raise ValueError("not an ideal")
        if self.bracket_space(self.whole(), I).dim != 0:
            raise ValueError("ideal is not central")
        F = self.F
        keep = [k for k in range(self.dim) if k not in I.pivots]
        m = len(keep)
        section = np.zeros((self.dim, m), dtype=np.int64)
        for c, k in enumerate(keep):
            section[k, c] = 1
        proj = np.zeros((m, self.dim), dtype=np.int64)
        for k in range(self.dim):
            v = I.reduce(self.basis_vec(k))
            proj[:, k] = v[keep]
        sc = np.zeros((m, m, m), dtype=np.int64)
        for a in range(m):
            for b in range(m):
                w = self.bracket(section[:, a], section[:, b])
                sc[a, b] = F.matmul(proj, w)
        name = f"{self.name}/I" if self.name else None
        return LieAlgebra(F, m, sc, name), proj, section

    def change_basis(self, B) -> "LieAlgebra":
        """Structure constants in the basis given by the columns of B."""
        F = self.F
        B = np.asarray(B, dtype=np.int64)
        Binv = la.inverse(F, B)
        n = self.dim
        sc = np.zeros_like(self.sc)
        for a in range(n):
            for b in range(n):
                sc[a, b] = F.matmul(Binv, self.bracket(B[:, a], B[:, b]))
        return LieAlgebra(F, n, sc, self.name)


# ---------------------------------------------------------------------------
# catalog of base algebras, exactly as presented (1-based indices)
PRESENTATIONS = {
    "L3_1": (3, {}),
    "L3_2": (3, {(1, 2): {3: 1}}),
    "L4_1": (4, {}),
    "L4_2": (4, {(1, 2): {3: 1}}),
    "L4_3": (4, {(1, 2): {3: 1}, (1, 3): {4: 1}}),
    "L5_1": (5, {}),
    "L5_2": (5, {(1, 2): {3: 1}}),
    "L5_3": (5, {(1, 2): {3: 1}, (1, 3): {4: 1}}),
    "L5_4": (5, {(1, 2): {5: 1}, (3, 4): {5: 1}}),
    "L5_5": (5, {(1, 2): {3: 1}, (1, 3): {5: 1}, (2, 4): {5: 1}}),
    "L5_6": (5, {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 3): {5: 1}}),
    "L5_7": (5, {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}}),
    "L5_8": (5, {(1, 2): {4: 1}, (1, 3): {5: 1}}),
    "L5_9": (5, {(1, 2): {3: 1}, (1, 3): {4: 1}, (2, 3): {5: 1}}),
}


def catalog(name: str, F: FieldSpec) -> LieAlgebra:
    if name not in PRESENTATIONS:
        raise KeyError(f"unknown algebra {name!r}")
    dim, br = PRESENTATIONS[name]
    return LieAlgebra.from_brackets(F, dim, br, name)
