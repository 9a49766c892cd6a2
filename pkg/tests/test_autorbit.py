import itertools

import numpy as np
import pytest

from rlk.autorbit import (closure_check, count_aut, family_for, load_families, orbits_on_slice,
                          verify_aut_family)
from rlk.catalog import ORBIT_LEMMAS, base_restricted
from rlk.cohomology import Cochain2
from rlk.field import FieldSpec
from rlk.liealg import catalog

F = FieldSpec(5)


def _brute_aut_L4_3(p):
    """Count automorphisms of L4_3 from the images a, b of the generators x1, x2."""
    V = np.array(list(itertools.product(range(p), repeat=4)), dtype=np.int64)
    L = catalog("L4_3", FieldSpec(p))
    sc = L.sc

    def br(u, v):
        return np.einsum("...i,...j,ijk->...k", u, v, sc) % p

    a = np.repeat(V, len(V), axis=0)
    b = np.tile(V, (len(V), 1))
    c = br(a, b)
    d = br(a, c)
    A = np.stack([a, b, c, d], axis=-1)  # columns are images
    ok = np.ones(len(a), dtype=bool)
    for i, j in itertools.combinations(range(4), 2):
        lhs = br(A[:, :, i], A[:, :, j])
        rhs = np.einsum("nkl,l->nk", A, sc[i, j]) % p
        ok &= np.all(lhs == rhs, axis=1)
    det = np.round(np.linalg.det(A[ok].astype(float))).astype(np.int64) % p
    return int(np.sum(det != 0))


def test_aut_L4_3_count_matches_brute_force():
    fam = family_for("L4_3")
    n = count_aut(fam, F)
    assert n == _brute_aut_L4_3(5) == 50000


@pytest.mark.parametrize("name", ["L3_2", "L4_1", "L4_3"])
def test_families_sound_and_complete(name):
    fam = family_for(name)
    rep = verify_aut_family(catalog(name, F), fam, F)
    assert rep.ok, rep.to_json()


def test_corrupted_family_is_caught():
    fam = family_for("L4_3")
    bad = fam.corrupted(3, 2)  # drops the a11*a32 term of [x1, x3] image
    rep = verify_aut_family(catalog("L4_3", F), bad, F, completeness=False)
    assert not (rep.sound_symbolic and rep.sound_numeric)


def test_closure():
    for fam in load_families().values():
        assert not closure_check(fam, F, pairs=100), fam.name


def test_orbit_methods_agree():
    lem = [lm for lm in ORBIT_LEMMAS if lm.lid == "lemma-L7-2"][0]
    R = base_restricted(lem.base, lem.pmap, F)
    theta = Cochain2.from_terms(F, 4, lem.phi)
    w = np.zeros(4, dtype=np.int64)
    w[lem.slot - 1] = 1
    fam = family_for(lem.base)
    a = orbits_on_slice(R, fam, theta, [w], method="enumerate")
    b = orbits_on_slice(R, fam, theta, [w], method="search")
    for s, t in itertools.product(range(5), repeat=2):
        assert a.same((s,), (t,)) == b.same((s,), (t,))
