import itertools

import numpy as np
import pytest

from rlk.field import FieldSpec
from rlk.liealg import PRESENTATIONS, catalog

F = FieldSpec(5)


@pytest.mark.parametrize("name", sorted(PRESENTATIONS))
def test_jacobi_and_skew(name):
    L = catalog(name, F)
    E = np.eye(L.dim, dtype=np.int64)
    for i, j in itertools.product(range(L.dim), repeat=2):
        assert np.array_equal(L.bracket(E[i], E[j]), F.neg(L.bracket(E[j], E[i])))
    for i, j, k in itertools.combinations(range(L.dim), 3):
        x, y, z = E[i], E[j], E[k]
        s = F.add(F.add(L.bracket(x, L.bracket(y, z)), L.bracket(y, L.bracket(z, x))),
                  L.bracket(z, L.bracket(x, y)))
        assert not np.any(s)


@pytest.mark.parametrize("name", sorted(PRESENTATIONS))
def test_nilpotent_below_p(name):
    assert catalog(name, F).nilpotency_class() < F.p


def test_unknown_name():
    with pytest.raises(KeyError):
        catalog("L9_9", F)
