import numpy as np
import pytest

from rlk.catalog import THEOREMS, theorem_entry
from rlk.field import FieldSpec
from rlk.restricted import RestrictedAlgebra, exhaustive_check, is_p_nilpotent, verify_restricted

F = FieldSpec(5)


@pytest.mark.parametrize("family", sorted(THEOREMS))
def test_theorem_instances_are_restricted(family):
    for e in THEOREMS[family]:
        for R in e.expand(F):
            assert verify_restricted(R).ok, R.name
            assert is_p_nilpotent(R)[0]


def test_bad_pmap_is_rejected():
    # x1 -> x1 is not allowed on a non-abelian algebra: ad(x1)^p = 0 but ad(x1) != 0
    R = theorem_entry("L5_2", 1).algebra(F)
    P = R.P.copy()
    P[0, 0] = 1
    bad = RestrictedAlgebra(R.alg, P, "bad")
    assert not verify_restricted(bad).ok


def test_exhaustive_block():
    R = theorem_entry("L5_4", 2).algebra(F)
    rep = exhaustive_check(R, block=(0, 50))
    assert rep.ok and rep.checked["b_pairs"] == 50 * F.q ** 5


def test_semilinear_over_extension_field():
    F25 = FieldSpec(5, 2)
    e = theorem_entry("L5_9", 9)
    for R in e.expand(F25)[:3]:
        assert verify_restricted(R).ok
