import numpy as np
import pytest

from rlk.catalog import H2_TABLE, base_restricted
from rlk.cohomology import Cochain2, cochain_len, cohomology
from rlk.extension import build_extension
from rlk.field import FieldSpec
from rlk.restricted import verify_restricted

F = FieldSpec(5)


@pytest.mark.parametrize("row", H2_TABLE, ids=[r[0] for r in H2_TABLE])
def test_printed_dimensions(row):
    _, base, pmap, z, b, h = row
    assert cohomology(base_restricted(base, pmap, F)).dims == (z, b, h)


def test_cocycle_condition_against_extension_axioms():
    """theta is a cocycle exactly when L_theta satisfies the restricted axioms."""
    R = base_restricted("L4_2", "x1->x4", F)
    C = cohomology(R)
    rng = np.random.default_rng(3)
    n = R.dim
    seen = {True: 0, False: 0}
    for k in range(60):
        if k % 2:
            c = rng.integers(0, 5, size=C.Z.dim)
            v = F.sum(F.mul(c[:, None], C.Z.rows), axis=0)
        else:
            v = rng.integers(0, 5, size=cochain_len(n))
        theta = Cochain2.from_vector(F, n, v)
        K = build_extension(R, theta, check=False)
        ok = verify_restricted(K).ok
        assert ok == C.in_z2(theta)
        seen[ok] += 1
    assert seen[True] and seen[False]


def test_b2_inside_z2_and_h2_coordinates():
    R = base_restricted("L4_3", "x1->x4", F)
    C = cohomology(R)
    assert all(C.Z.contains(b) for b in C.B.rows)
    for b in C.B.rows:
        assert not np.any(C.h2_coords(b))


def test_cochain_round_trip():
    v = np.arange(cochain_len(4)) % 5
    assert np.array_equal(Cochain2.from_vector(F, 4, v).to_vector(), v)
