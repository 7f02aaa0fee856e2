import random

import pytest

from conftest import series
from novikov.covers import random_positive_series
from novikov.errors import FieldError
from novikov.grading import Grade
from novikov.group import GradedGroup
from novikov.lefschetz import CIRCLE
from novikov.linalg import SeriesMatrix, block_determinant_check, permutation_sign
from novikov.series import NovikovSeries

PLANE = GradedGroup(2, 0, (Grade.of(1), Grade.parse('r2')))
R = Grade.of(12)


def random_block(group, rng, n_rows, n_cols, unit_diagonal=False):
    """Positive entries; with ``unit_diagonal`` the diagonal gets constants ±1, 2 or 3."""
    def entry(r, c):
        x = random_positive_series(group, rng) if rng.random() < 0.6 else NovikovSeries.zero(group)
        if unit_diagonal and r == c:
            x = x + rng.choice((-1, 1, 2, 3))
        return x.truncate(R)
    return SeriesMatrix.build(group, 1, n_rows, n_cols, entry, R)


def test_permutation_sign():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([2, 0, 1]) == 1
    assert permutation_sign([]) == 1


def test_two_by_two_determinant():
    M = SeriesMatrix.build(CIRCLE, 1, 2, 2, lambda r, c: [[series('1'), series('t')],
                                                         [series('t'), series('1')]][r][c])
    assert M.determinant(Grade.of(8)).agrees(series('1 - t^2'))
    assert M.determinant(Grade.of(8)).agrees((M @ SeriesMatrix.identity(CIRCLE, 1, 2)).determinant(Grade.of(8)))


def test_singular_matrix():
    M = SeriesMatrix.build(CIRCLE, 1, 2, 2, lambda r, c: series('1 - t'), R)
    assert M.determinant(R).is_zero
    with pytest.raises(FieldError):
        M.inverse(R)
    with pytest.raises(FieldError):
        SeriesMatrix.build(CIRCLE, 1, 2, 3, lambda r, c: None).determinant()


def test_random_inverses_and_products():
    """30 random 3x3 pairs over Z^2 graded by (1, sqrt 2)."""
    rng = random.Random(11)
    one = SeriesMatrix.identity(PLANE, 1, 3, R)
    for _ in range(30):
        A = random_block(PLANE, rng, 3, 3, unit_diagonal=True)
        B = random_block(PLANE, rng, 3, 3, unit_diagonal=True)
        product = A @ A.inverse(R)
        for r in range(3):
            for c in range(3):
                assert product[r, c].agrees(one[r, c], R), (str(A), r, c)
        assert (A @ B).determinant(R).agrees(A.determinant(R) * B.determinant(R), R), (str(A), str(B))


@pytest.mark.parametrize('n, m', [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2)])
def test_block_determinants(n, m):
    """20 random block matrices per shape: ``det M = det(a) det(d - c a^-1 b)``."""
    rng = random.Random(10 * n + m)
    for _ in range(20):
        alpha = random_block(PLANE, rng, n, n, unit_diagonal=True)
        beta = random_block(PLANE, rng, n, m)
        gamma = random_block(PLANE, rng, m, n)
        delta = random_block(PLANE, rng, m, m, unit_diagonal=True)
        left, right = block_determinant_check(alpha, beta, gamma, delta, R)
        assert not left.is_zero
        assert left.agrees(right, R), (str(alpha), str(beta), str(gamma), str(delta))


def test_block_shapes_must_fit():
    rng = random.Random(3)
    alpha = random_block(CIRCLE, rng, 2, 2, unit_diagonal=True)
    with pytest.raises(FieldError):
        block_determinant_check(alpha, random_block(CIRCLE, rng, 1, 1), random_block(CIRCLE, rng, 1, 2),
                                random_block(CIRCLE, rng, 1, 1))
