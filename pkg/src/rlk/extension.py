"""Central extensions by a strongly abelian line, and factoring them back."""
from __future__ import annotations

import numpy as np

from . import linalg as la
from .cohomology import Cochain2, cohomology, delta1, z2_basis
from .liealg import LieAlgebra
from .restricted import RestrictedAlgebra, UnsupportedRegime


def build_extension(R: RestrictedAlgebra, theta: Cochain2, name=None, check=True) -> RestrictedAlgebra:
    """L_theta on x_1..x_n, z with [x_i, x_j] += phi_ij z and
    x_i^[p] += omega_i z; z is central with z^[p] = 0 and sits last."""
    F = R.F
    n = R.dim
    if check and not z2_basis(R).contains(theta):
        raise ValueError("theta is not a cocycle")
    sc = np.zeros((n + 1, n + 1, n + 1), dtype=np.int64)
    sc[:n, :n, :n] = R.alg.sc
    sc[:n, :n, n] = theta.phi
    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    P[:n, :n] = R.P
    P[n, :n] = theta.omega
    alg = LieAlgebra(F, n + 1, sc, name)
    return RestrictedAlgebra(alg, P, name)


def _line_coeff(F, z, w):
    """c with w = c z; raises if w is not on the line."""
    k = int(np.nonzero(z)[0][0])
    c = F.div(w[k], z[k])
    if not np.array_equal(F.mul(z, c), w):
        raise AssertionError("value leaves the central line")
    return int(c)


def factor_extension(K: RestrictedAlgebra, z):
    """Split K along a central line <z> with z^[p] = 0.

    Returns (R, theta, section, iso) where R = K/<z>, theta is computed from
    the canonical coordinate section, section is the dim K x dim R matrix of
    that section and iso maps K onto build_extension(R, theta)."""
    F, L = K.F, K.alg
    z = np.asarray(z, dtype=np.int64)
    if not np.any(z):
        raise ValueError("z must be nonzero")
    Zs = L.span([z])
    if L.bracket_space(L.whole(), Zs).dim:
        raise ValueError("z is not central")
    if L.nilpotency_class() >= F.p:
        raise UnsupportedRegime("nilpotency class >= p")
    pv = lambda v: F.matmul(F.frob(v)[None, :], K.P.T)[0]
    if np.any(pv(z)):
        raise ValueError("z^[p] is not zero")
    Q, proj, sec = L.quotient(Zs)
    m = Q.dim
    Pq = F.matmul(proj, F.matmul(K.P, sec))
    R = RestrictedAlgebra(Q, Pq, f"{K.name}/z" if K.name else None)
    phi = np.zeros((m, m), dtype=np.int64)
    for a in range(m):
        for b in range(m):
            w = F.sub(L.bracket(sec[:, a], sec[:, b]), F.matmul(sec, Q.sc[a, b]))
            phi[a, b] = _line_coeff(F, z, w)
    omega = np.zeros(m, dtype=np.int64)
    for a in range(m):
        w = F.sub(pv(sec[:, a]), F.matmul(sec, Pq[:, a]))
        omega[a] = _line_coeff(F, z, w)
    theta = Cochain2(F, phi, omega)
    if not z2_basis(R).contains(theta):
        raise AssertionError("factored cochain is not a cocycle")
    # K -> L_theta: sec[:, a] -> x_a, z -> new last vector
    B = np.concatenate([sec, z[:, None]], axis=1)
    iso = la.inverse(F, B)
    return R, theta, sec, iso


def coboundary_shift_witness(R: RestrictedAlgebra, theta: Cochain2, eta: Cochain2, psi=None):
    """Matrix of f: L_theta -> L_{theta+eta}, f(x_i) = x_i + psi(x_i) z, f(z) = z,
    where eta = delta1(psi).  Both the bracket and the p-map pick up exactly
    psi([x, y]) z and psi(x^[p]) z, which is eta."""
    F = R.F
    n = R.dim
    if psi is None:
        psi = cohomology(R).coboundary_psi(eta)
        if psi is None:
            raise ValueError("eta is not a coboundary")
    elif delta1(R, psi) != eta:
        raise ValueError("psi does not produce eta")
    T = np.eye(n + 1, dtype=np.int64)
    T[n, :n] = np.asarray(psi, dtype=np.int64)
    return T
