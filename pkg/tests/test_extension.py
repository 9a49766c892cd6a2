import numpy as np

from rlk.catalog import base_restricted
from rlk.cohomology import Cochain2, cohomology
from rlk.extension import build_extension, coboundary_shift_witness, factor_extension
from rlk.field import FieldSpec
from rlk.isotest import verify_iso_witness

F = FieldSpec(5)


def _random_cocycle(C, rng, n):
    c = rng.integers(0, 5, size=C.Z.dim)
    return Cochain2.from_vector(F, n, F.sum(F.mul(c[:, None], C.Z.rows), axis=0))


def test_factor_inverts_build():
    R = base_restricted("L4_2", "x3->x4", F)
    C = cohomology(R)
    rng = np.random.default_rng(0)
    z = np.zeros(5, dtype=np.int64)
    z[4] = 1
    for _ in range(5):
        theta = _random_cocycle(C, rng, 4)
        K = build_extension(R, theta)
        Rq, th, _, iso = factor_extension(K, z)
        assert np.array_equal(Rq.P, R.P)
        assert np.array_equal(C.h2_coords(th), C.h2_coords(theta))
        assert verify_iso_witness(K, build_extension(Rq, th), iso)


def test_coboundary_shift_is_isomorphism():
    R = base_restricted("L4_3", "trivial", F)
    C = cohomology(R)
    rng = np.random.default_rng(1)
    for _ in range(5):
        theta = _random_cocycle(C, rng, 4)
        e = rng.integers(0, 5, size=C.B.dim)
        eta = Cochain2.from_vector(F, 4, F.sum(F.mul(e[:, None], C.B.rows), axis=0))
        T = coboundary_shift_witness(R, theta, eta)
        assert verify_iso_witness(build_extension(R, theta), build_extension(R, theta + eta), T)


def test_non_cocycle_rejected():
    import pytest
    R = base_restricted("L4_3", "trivial", F)
    theta = Cochain2.from_terms(F, 4, {(1, 2): 1, (3, 4): 1})
    if not cohomology(R).in_z2(theta):
        with pytest.raises(ValueError):
            build_extension(R, theta)
