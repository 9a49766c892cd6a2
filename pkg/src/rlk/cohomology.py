"""Restricted 2-cochains with trivial one-dimensional coefficients.

A cochain (phi, omega) is flattened as phi(x_i, x_j) for i < j in
lexicographic order, followed by omega(x_1), ..., omega(x_n).  Every
subspace (Z2, B2, H2 representatives) is kept in rref in that layout.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .field import FieldSpec, dump_elem, parse_elem
from .liealg import LieAlgebra
from .restricted import RestrictedAlgebra, UnsupportedRegime


def pair_index(n: int) -> list:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def cochain_len(n: int) -> int:
    return n * (n - 1) // 2 + n


class Cochain2:
    """theta = (phi, omega); phi is a skew matrix, omega the values omega(x_i)."""

    def __init__(self, F: FieldSpec, phi, omega):
        self.F = F
        self.phi = np.asarray(phi, dtype=np.int64)
        self.omega = np.asarray(omega, dtype=np.int64)
        n = len(self.omega)
        if self.phi.shape != (n, n):
            raise ValueError("phi must be n x n")
        if np.any(np.diag(self.phi)) or not np.array_equal(self.phi, F.neg(self.phi.T)):
            raise ValueError("phi must be skew-symmetric with zero diagonal")

    @property
    def dim(self) -> int:
        return len(self.omega)

    @classmethod
    def zero(cls, F, n):
        return cls(F, np.zeros((n, n), dtype=np.int64), np.zeros(n, dtype=np.int64))

    @classmethod
    def from_vector(cls, F: FieldSpec, n: int, v) -> "Cochain2":
        v = np.asarray(v, dtype=np.int64)
        phi = np.zeros((n, n), dtype=np.int64)
        for k, (i, j) in enumerate(pair_index(n)):
            phi[i, j] = v[k]
            phi[j, i] = F.neg(v[k])
        return cls(F, phi, v[len(v) - n:])

    def to_vector(self) -> np.ndarray:
        up = [self.phi[i, j] for i, j in pair_index(self.dim)]
        return np.concatenate([np.array(up, dtype=np.int64), self.omega])

    @classmethod
    def from_terms(cls, F: FieldSpec, n: int, deltas: dict | None = None, fs: dict | None = None):
        """deltas {(i, j): c} means sum c Delta_ij; fs {i: c} means sum c f_i (1-based)."""
        phi = np.zeros((n, n), dtype=np.int64)
        for (i, j), c in (deltas or {}).items():
            c = parse_elem(F, c)
            phi[i - 1, j - 1] = F.add(phi[i - 1, j - 1], c)
            phi[j - 1, i - 1] = F.sub(phi[j - 1, i - 1], c)
        omega = np.zeros(n, dtype=np.int64)
        for i, c in (fs or {}).items():
            omega[i - 1] = F.add(omega[i - 1], parse_elem(F, c))
        return cls(F, phi, omega)

    def __add__(self, other):
        return Cochain2(self.F, self.F.add(self.phi, other.phi), self.F.add(self.omega, other.omega))

    def scale(self, c):
        return Cochain2(self.F, self.F.mul(self.phi, c), self.F.mul(self.omega, c))

    def __eq__(self, other):
        return np.array_equal(self.phi, other.phi) and np.array_equal(self.omega, other.omega)

    def __hash__(self):
        return hash(self.to_vector().tobytes())

    def phi_eval(self, u, v):
        F = self.F
        return F.dot(F.matmul(np.asarray(u, dtype=np.int64)[None, :], self.phi)[0], v)

    def omega_eval(self, v):
        """Semilinear extension: omega(sum a_i x_i) = sum a_i^p omega(x_i)."""
        return self.F.dot(self.F.frob(np.asarray(v, dtype=np.int64)), self.omega)

    def label(self) -> str:
        F = self.F
        parts = []
        for i, j in pair_index(self.dim):
            c = self.phi[i, j]
            if c:
                parts.append(_coef(F, c) + f"D{i + 1}{j + 1}")
        ph = " + ".join(parts) or "0"
        parts = [_coef(F, c) + f"f{i + 1}" for i, c in enumerate(self.omega) if c]
        om = " + ".join(parts) or "0"
        return f"({ph}, {om})"

    def to_json(self):
        F = self.F
        return {"phi": [[dump_elem(F, c) for c in row] for row in self.phi],
                "omega": [dump_elem(F, c) for c in self.omega]}

    @classmethod
    def from_json(cls, F: FieldSpec, d):
        phi = [[parse_elem(F, c) for c in row] for row in d["phi"]]
        return cls(F, phi, [parse_elem(F, c) for c in d["omega"]])

    def __repr__(self):
        return f"Cochain2{self.label()}"


def _coef(F, c):
    if int(c) == 1:
        return ""
    return f"{dump_elem(F, c)}*"


# ---------------------------------------------------------------------------
def delta1(R: RestrictedAlgebra, psi) -> Cochain2:
    """phi(x_i, x_j) = psi([x_i, x_j]); omega(x_i) = psi(x_i^[p])."""
    F, L = R.F, R.alg
    psi = np.asarray(psi, dtype=np.int64)
    phi = F.sum(F.mul(L.sc, psi), axis=-1)
    omega = F.sum(F.mul(R.P.T, psi), axis=-1)
    return Cochain2(F, phi, omega)


def delta2_residual(L: LieAlgebra, phi) -> int:
    """Largest |value| (as a centred residue, 0 for a cocycle) of
    phi([x_i,x_j],x_k) + phi([x_j,x_k],x_i) + phi([x_k,x_i],x_j)."""
    F = L.F
    phi = np.asarray(phi, dtype=np.int64)
    # T[i,j,k] = phi([x_i,x_j], x_k)
    T = F.sum(F.mul(L.sc[..., :, None], phi[None, None, :, :]), axis=-2)
    s = F.add(F.add(T, np.transpose(T, (1, 2, 0))), np.transpose(T, (2, 0, 1)))
    if not np.any(s):
        return 0
    if F.is_prime_field:
        c = np.where(s > F.p // 2, F.p - s, s)
        return int(c.max())
    return 1


def _word_corrections(L: LieAlgebra, phi, x, y):
    """sum over words x_1 = x, x_2 = y, x_3..x_p in {x, y} of
    (1/#x) phi([x_1, ..., x_{p-1}], x_p), evaluated literally."""
    F = L.F
    p = F.p
    total = 0
    for tail in itertools.product((0, 1), repeat=p - 2):
        word = [0, 1] + list(tail)
        vecs = [x if w == 0 else y for w in word]
        acc = vecs[0]
        for v in vecs[1:p - 1]:
            acc = L.bracket(acc, v)
            if not np.any(acc):
                break
        if not np.any(acc):
            continue
        nx = word.count(0)
        val = F.dot(acc, F.matmul(phi, vecs[p - 1][:, None])[:, 0])
        total = F.add(total, F.mul(val, F.inv(F.from_int(nx))))
    return int(total)


def star_check(R: RestrictedAlgebra, phi, omega, samples: int = 0, seed: int = 0) -> bool:
    """omega extended semilinearly must satisfy the two-argument identity
    omega(x+y) = omega(x) + omega(y) + (word corrections) on basis pairs
    (plus random pairs if samples > 0).  Since omega is semilinear, this
    reduces to every correction vanishing, which is what we compute."""
    F, L = R.F, R.alg
    th = Cochain2(F, phi, omega)
    n = R.dim
    E = np.eye(n, dtype=np.int64)
    pairs = [(E[i], E[j]) for i in range(n) for j in range(n)]
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        pairs.append((rng.integers(0, F.q, n), rng.integers(0, F.q, n)))
    for x, y in pairs:
        lhs = th.omega_eval(F.add(x, y))
        rhs = F.add(th.omega_eval(x), th.omega_eval(y))
        rhs = F.add(rhs, _word_corrections(L, th.phi, x, y))
        if int(lhs) != int(rhs):
            return False
    # scalars: semilinear by construction, checked on one basis vector each
    lam = F.elements()
    for i in range(n):
        vals = th.omega_eval(F.mul(lam[:, None], E[i][None, :]))
        if not np.array_equal(vals, F.mul(F.frob(lam), omega[i])):
            return False
    return True


# ---------------------------------------------------------------------------
@dataclass
class CochainBasis:
    F: FieldSpec
    n: int
    tag: str
    rows: np.ndarray
    pivots: list = field(default_factory=list)
    psi: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return len(self.rows)

    def cochains(self) -> list:
        return [Cochain2.from_vector(self.F, self.n, r) for r in self.rows]

    def labels(self) -> list:
        return [c.label() for c in self.cochains()]

    def contains(self, v) -> bool:
        v = la.complement_coords(self.F, self.rows, self.pivots, _vec(v))
        return not np.any(v)

    def to_json(self):
        return {"tag": self.tag, "dim": self.dim,
                "basis": [c.to_json() for c in self.cochains()],
                "labels": self.labels()}


def _vec(v):
    return v.to_vector() if isinstance(v, Cochain2) else np.asarray(v, dtype=np.int64)


def _check_regime(R: RestrictedAlgebra):
    if R.alg.nilpotency_class() >= R.F.p:
        raise UnsupportedRegime("cohomology needs nilpotency class < p")


def z2_constraints(R: RestrictedAlgebra) -> np.ndarray:
    """Rows of the linear system cutting out Z2 in cochain coordinates."""
    F, L = R.F, R.alg
    n = R.dim
    idx = {pr: k for k, pr in enumerate(pair_index(n))}
    m = cochain_len(n)

    def phi_row(u, v):
        # coefficients of phi(u, v) in the phi_ij (i<j) coordinates
        row = np.zeros(m, dtype=np.int64)
        for (i, j), k in idx.items():
            c = F.sub(F.mul(u[i], v[j]), F.mul(u[j], v[i]))
            row[k] = c
        return row

    rows = []
    E = np.eye(n, dtype=np.int64)
    for i, j, k in itertools.combinations(range(n), 3):
        r = F.add(F.add(phi_row(L.sc[i, j], E[k]), phi_row(L.sc[j, k], E[i])),
                  phi_row(L.sc[k, i], E[j]))
        if np.any(r):
            rows.append(r)
    for i in range(n):
        for j in range(n):
            r = phi_row(E[i], R.P[:, j])
            if np.any(r):
                rows.append(r)
    if not rows:
        return np.zeros((0, m), dtype=np.int64)
    return la.rref(F, np.array(rows))[0]


def z2_basis(R: RestrictedAlgebra) -> CochainBasis:
    _check_regime(R)
    n = R.dim
    C = z2_constraints(R)
    N = la.nullspace(R.F, C, cochain_len(n)) if len(C) else np.eye(cochain_len(n), dtype=np.int64)
    rows, piv = la.rref(R.F, N) if len(N) else (N, [])
    return CochainBasis(R.F, n, "Z2", rows, piv)


def b2_basis(R: RestrictedAlgebra) -> CochainBasis:
    """Image of delta1; psi records a preimage of each rref row."""
    _check_regime(R)
    F, n = R.F, R.dim
    m = cochain_len(n)
    imgs = np.array([delta1(R, e).to_vector() for e in np.eye(n, dtype=np.int64)])
    # row reduce [images | identity] so each rref row carries its psi
    aug = np.concatenate([imgs, np.eye(n, dtype=np.int64)], axis=1)
    A, piv = la.rref(F, aug)
    keep = [r for r, pc in enumerate(piv) if pc < m]
    rows = A[keep, :m]
    psi = A[keep, m:]
    return CochainBasis(F, n, "B2", rows, [piv[r] for r in keep], psi)


def h2_basis(R: RestrictedAlgebra, Z: CochainBasis | None = None,
             B: CochainBasis | None = None) -> CochainBasis:
    """Canonical complement: Z2 rows reduced modulo B2, then rref."""
    F = R.F
    Z = Z or z2_basis(R)
    B = B or b2_basis(R)
    red = [la.complement_coords(F, B.rows, B.pivots, z) for z in Z.rows]
    red = [r for r in red if np.any(r)]
    if not red:
        return CochainBasis(F, R.dim, "H2", np.zeros((0, cochain_len(R.dim)), dtype=np.int64), [])
    rows, piv = la.rref(F, np.array(red))
    return CochainBasis(F, R.dim, "H2", rows, piv)


@dataclass
class Cohomology:
    R: RestrictedAlgebra
    Z: CochainBasis
    B: CochainBasis
    H: CochainBasis

    @property
    def dims(self):
        return self.Z.dim, self.B.dim, self.H.dim

    def in_z2(self, theta) -> bool:
        return self.Z.contains(theta)

    def in_b2(self, theta) -> bool:
        return self.B.contains(theta)

    def reduce(self, theta) -> np.ndarray:
        """Canonical representative of theta + B2."""
        return la.complement_coords(self.R.F, self.B.rows, self.B.pivots, _vec(theta))

    def h2_coords(self, theta) -> np.ndarray:
        """Coordinates of the class of theta in the H2 representative basis."""
        v = self.reduce(theta)
        return v[self.H.pivots]

    def from_coords(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=np.int64)
        if len(c) == 0:
            return np.zeros(cochain_len(self.R.dim), dtype=np.int64)
        return self.R.F.sum(self.R.F.mul(c[:, None], self.H.rows), axis=0)

    def projection(self) -> np.ndarray:
        """Matrix Q with coords(theta) = Q theta (as column vectors) for theta in Z2."""
        F = self.R.F
        m = cochain_len(self.R.dim)
        E = np.eye(m, dtype=np.int64)
        return np.array([self.h2_coords(e) for e in E], dtype=np.int64).T.reshape(self.H.dim, m)

    def coboundary_psi(self, theta):
        """psi with delta1(psi) = theta, or None when theta is not in B2."""
        F = self.R.F
        v = _vec(theta)
        if len(self.B.rows) == 0:
            return np.zeros(self.R.dim, dtype=np.int64) if not np.any(v) else None
        coeffs = la.solve(F, self.B.rows.T, v)
        if coeffs is None:
            return None
        return F.sum(F.mul(coeffs[:, None], self.B.psi), axis=0)


def cohomology(R: RestrictedAlgebra) -> Cohomology:
    Z = z2_basis(R)
    B = b2_basis(R)
    for r in B.rows:
        if not Z.contains(r):
            raise AssertionError("coboundary outside Z2")
    return Cohomology(R, Z, B, h2_basis(R, Z, B))


def components(R: RestrictedAlgebra, phi_multi, omega_multi, s: int) -> list:
    """Split an M-valued cochain (dim M = s) into s scalar cochains, each
    checked for membership in Z2(L, F)."""
    phi_multi = np.asarray(phi_multi, dtype=np.int64).reshape(s, R.dim, R.dim)
    omega_multi = np.asarray(omega_multi, dtype=np.int64).reshape(s, R.dim)
    Z = z2_basis(R)
    out = []
    for k in range(s):
        c = Cochain2(R.F, phi_multi[k], omega_multi[k])
        if delta2_residual(R.alg, c.phi) != 0 or not Z.contains(c):
            raise ValueError(f"component {k + 1} is not in Z2")
        out.append(c)
    return out
