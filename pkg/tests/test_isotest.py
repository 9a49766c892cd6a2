import itertools

import numpy as np
import pytest

from rlk import linalg as la
from rlk.catalog import THEOREMS, theorem_entry
from rlk.field import FieldSpec
from rlk.isotest import decide_iso, verify_iso_witness
from rlk.liealg import LieAlgebra
from rlk.restricted import RestrictedAlgebra

F = FieldSpec(5)
rng = np.random.default_rng(7)


def _random_gl(n):
    while True:
        A = rng.integers(0, 5, size=(n, n))
        if la.is_invertible(F, A):
            return A


def _conjugate(R, A):
    """Transport R along A: brackets and p-map written in the basis A x_i."""
    n = R.dim
    Ai = la.inverse(F, A)
    sc = np.zeros_like(R.alg.sc)
    for i, j in itertools.product(range(n), repeat=2):
        sc[i, j] = F.matmul(Ai, R.alg.bracket(A[:, i], A[:, j]))
    L = LieAlgebra(F, n, sc)
    # prime field: P' = A^-1 P A
    return RestrictedAlgebra(L, F.matmul(Ai, F.matmul(R.P, A)), "conj")


@pytest.mark.parametrize("family", ["L5_2", "L5_3", "L5_8", "L5_9"])
def test_random_conjugates_are_found(family):
    for e in THEOREMS[family][:4]:
        R = e.expand(F)[0]
        S = _conjugate(R, _random_gl(5))
        res = decide_iso(R, S)
        assert res.verdict == "yes"
        assert verify_iso_witness(R, S, res.witness)


def test_abelian_plane_matches_similarity_classes():
    """On the abelian plane an isomorphism is a similarity P2 = A P1 A^-1."""
    L = LieAlgebra(F, 2, np.zeros((2, 2, 2), dtype=np.int64))
    gl = [np.array(m).reshape(2, 2) for m in itertools.product(range(5), repeat=4)]
    gl = [A for A in gl if la.is_invertible(F, A)]
    mats = [rng.integers(0, 5, size=(2, 2)) for _ in range(12)]
    for P1, P2 in itertools.combinations(mats, 2):
        brute = any(np.array_equal(F.matmul(A, P1), F.matmul(P2, A)) for A in gl)
        got = decide_iso(RestrictedAlgebra(L, P1), RestrictedAlgebra(L, P2))
        assert (got.verdict == "yes") == brute


def test_distinct_entries_have_certificates():
    R1, R2 = theorem_entry("L5_2", 3).algebra(F), theorem_entry("L5_2", 4).algebra(F)
    res = decide_iso(R1, R2)
    assert res.verdict == "no" and res.certificate["reason"]


def test_budget_gives_inconclusive():
    e = theorem_entry("L5_9", 9)
    R1 = e.algebra(F, {"xi": 1, "a": 1})
    R2 = e.algebra(F, {"xi": 1, "a": 2})
    assert decide_iso(R1, R2, budget=1).verdict == "inconclusive"


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("RLK_BUDGET", "1")
    e = theorem_entry("L5_9", 9)
    res = decide_iso(e.algebra(F, {"xi": 1, "a": 1}), e.algebra(F, {"xi": 1, "a": 2}))
    assert res.verdict == "inconclusive"
