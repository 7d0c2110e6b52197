import random
from fractions import Fraction

import pytest

from idforge.errors import DimensionMismatch
from idforge.linalg import ExactMatrix, solve_linear
from idforge.scalars import GF, QQ


def F(n, d=1):
    return Fraction(n, d)


def test_identity_system():
    A = ExactMatrix([[F(1), F(0)], [F(0), F(1)]])
    assert solve_linear(A, [F(3), F(5)]) == [F(3), F(5)]


def test_inconsistent_system():
    A = ExactMatrix([[F(1), F(1)], [F(2), F(2)]])
    assert solve_linear(A, [F(1), F(3)]) is None


def test_one_by_one():
    A = ExactMatrix([[F(2)]])
    assert solve_linear(A, [F(1)]) == [F(1, 2)]


def test_dimension_mismatch():
    A = ExactMatrix([[F(1), F(2)]])
    with pytest.raises(DimensionMismatch):
        solve_linear(A, [F(1), F(2)])
    with pytest.raises(DimensionMismatch):
        ExactMatrix([[F(1)], [F(1), F(2)]])


def _mat_vec(rows, x):
    return [sum((a * b for a, b in zip(row, x)), row[0] * 0) for row in rows]


@pytest.mark.parametrize("dom", [QQ, GF(11)])
def test_random_consistent_systems_verify_exactly(dom):
    rng = random.Random(3)
    for _ in range(25):
        m = rng.randint(1, 6)
        n = rng.randint(1, 6)
        rows = [[dom.sample(rng) for _ in range(n)] for _ in range(m)]
        x = [dom.sample(rng) for _ in range(n)]
        v = _mat_vec(rows, x)
        sol = solve_linear(ExactMatrix(rows), v)
        assert sol is not None
        assert _mat_vec(rows, sol) == v


def test_overdetermined_consistent():
    rows = [[F(1), F(2)], [F(3), F(4)], [F(4), F(6)]]
    x = [F(2), F(-1)]
    v = _mat_vec(rows, x)
    assert solve_linear(ExactMatrix(rows), v) == x


def test_underdetermined_deterministic_witness():
    # one equation, two unknowns: free variable pinned to 0
    A = ExactMatrix([[F(2), F(4)]])
    sol1 = solve_linear(A, [F(6)])
    sol2 = solve_linear(ExactMatrix([[F(2), F(4)]]), [F(6)])
    assert sol1 == sol2 == [F(3), F(0)]
