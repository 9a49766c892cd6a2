import itertools

import numpy as np
import pytest

from rlk.field import FieldSpec, count_conic_solutions, parse_elem, solve_conic


@pytest.fixture(params=[(5, 1), (7, 1), (5, 2)], ids=["F5", "F7", "F25"])
def F(request):
    return FieldSpec(*request.param)


def test_field_axioms_exhaustive(F):
    E = F.elements()
    a, b = np.meshgrid(E, E)
    assert np.array_equal(F.add(a, b), F.add(b, a))
    assert np.array_equal(F.mul(a, b), F.mul(b, a))
    for x in F.nonzero():
        assert F.mul(x, F.inv(x)) == 1
    # distributivity on a slice
    for x, y, z in itertools.islice(itertools.product(E, repeat=3), 0, None, 7):
        assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))


def test_frobenius_is_automorphism(F):
    E = F.elements()
    for x, y in itertools.product(E[:10], E):
        assert F.frob(F.mul(x, y)) == F.mul(F.frob(x), F.frob(y))
        assert F.frob(F.add(x, y)) == F.add(F.frob(x), F.frob(y))
    assert all(F.inv_frob(F.frob(x)) == x for x in E)


def test_squares_match_brute_force(F):
    squares = {int(F.mul(x, x)) for x in F.nonzero()}
    assert {int(a) for a in F.nonzero() if F.is_kth_power(int(a), 2)} == squares


def test_conic_count_against_brute_force(F):
    E = F.elements()
    X, Y = np.meshgrid(E, E)
    for a in F.nonzero()[:6]:
        lhs = F.sub(F.mul(X, X), F.mul(a, F.mul(Y, Y)))
        for b in F.nonzero()[:4]:
            assert count_conic_solutions(F, int(a), int(b)) == int(np.sum(lhs == b))


def test_solve_conic_prime_field():
    F = FieldSpec(7)
    for a, b in itertools.product(range(1, 7), repeat=2):
        x, y = solve_conic(F, a, b)
        assert (x * x - a * y * y - b) % 7 == 0


def test_parse_elem_coefficients():
    F = FieldSpec(5, 2)
    assert parse_elem(F, [1, 2]) == F.from_coeffs([1, 2])
    assert parse_elem(F, 3) == F.from_int(3)


def test_bad_characteristic():
    with pytest.raises(ValueError):
        FieldSpec(9)
