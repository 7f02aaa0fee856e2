import pytest

from conftest import CAT_MAP
from novikov.errors import ScenarioError
from novikov.grading import Grade
from novikov.lefschetz import (characteristic_series, cover_fibre_maps, fibre_maps, lefschetz_numbers, lefschetz_zeta,
                               mapping_torus_torsion)


def torus(A):
    (a, b), (c, d) = A
    return fibre_maps([[[1]], A, [[a * d - b * c]]])


def test_lefschetz_numbers_of_the_cat_map():
    assert lefschetz_numbers(torus(CAT_MAP), 3) == [-1, -5, -16]


def test_cat_map_zeta():
    zeta = lefschetz_zeta(torus(CAT_MAP), Grade.of(8))
    assert str(zeta) == '1 - t - 2*t^2 - 3*t^3 - 4*t^4 - 5*t^5 - 6*t^6 - 7*t^7 + O(8)'
    assert str(characteristic_series(torus(CAT_MAP)[1])) == '1 - 3*t + t^2'


@pytest.mark.parametrize('A', [CAT_MAP, [[1, 1], [0, 1]], [[0, -1], [1, 0]], [[-1, 0], [0, -1]], [[3, 2], [1, 1]]])
def test_zeta_equals_torsion(A):
    """Counting fixed points through traces agrees with the product of characteristic polynomials."""
    H = torus(A)
    R = Grade.of(8)
    assert lefschetz_zeta(H, R).agrees(mapping_torus_torsion(H, R).series)


def test_unipotent_monodromy_has_trivial_zeta():
    assert str(lefschetz_zeta(torus([[1, 1], [0, 1]]), Grade.of(8))) == '1 + O(8)'


def test_cover_maps_are_powers():
    H = cover_fibre_maps(torus(CAT_MAP), 2)
    assert H[1].tolist() == [[5, 3], [3, 2]]
    assert lefschetz_numbers(H, 1) == lefschetz_numbers(torus(CAT_MAP), 2)[1:]


@pytest.mark.parametrize('rows', [[[[1, 2]]], [[[0.5]]], [['x']]])
def test_fibre_maps_reject(rows):
    with pytest.raises(ScenarioError):
        fibre_maps(rows)


def test_mapping_torus_needs_a_finite_truncation():
    with pytest.raises(ScenarioError):
        lefschetz_zeta(torus(CAT_MAP), None)
