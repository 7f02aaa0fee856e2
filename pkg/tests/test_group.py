import random

import pytest

from novikov.errors import GroupError
from novikov.grading import Grade
from novikov.group import CyclicQuotient, GradedGroup, kernel_of_quotient
from novikov.lefschetz import CIRCLE


def test_elements_and_grades():
    H = GradedGroup(2, 3, (Grade.of(1), Grade.parse('r2')))
    h = H.element((2, -1), 4)
    assert h.torsion == 1
    assert H.grade(h) == Grade.parse('2-r2')
    assert (h + (-h)).is_identity
    assert str(h) == 't^2*u^(-1)*s'
    assert str(H.identity) == '1'
    assert H.names == ('t', 'u')


def test_grading_must_be_injective():
    with pytest.raises(GroupError):
        GradedGroup(2, 0, (Grade.of(1), Grade.of(2)))
    with pytest.raises(GroupError):
        GradedGroup(1, 0, ())


def test_foreign_elements():
    H = GradedGroup(2, 0, (Grade.of(1), Grade.parse('r2')))
    with pytest.raises(GroupError):
        CIRCLE.grade(H.identity)
    with pytest.raises(GroupError):
        CIRCLE.element((1, 2))


def test_group_round_trip():
    H = GradedGroup(2, 4, (Grade.of(1), Grade.parse('r2')))
    assert GradedGroup.from_dict(H.to_dict()) == H


@pytest.mark.parametrize('m', [
    CyclicQuotient(2, (2,)),
    CyclicQuotient(3, (1, 0), 1),
    CyclicQuotient(4, (0,)),
])
def test_bad_quotients(m):
    H = GradedGroup(len(m.free_weights), 0, tuple(Grade.parse(w) for w in ('1', 'r2')[:len(m.free_weights)]))
    with pytest.raises(GroupError):
        m.check(H)


def test_circle_kernel():
    sub = kernel_of_quotient(CIRCLE, CyclicQuotient(2, (1,)))
    assert sub.index == 2
    assert sub.kernel.weights == (Grade.of(2),)
    t = CIRCLE.generator(0)
    assert sub.restrict_element(t * 4) == sub.kernel.element((2,))
    assert sub.restrict_element(t * 3) is None
    assert sub.split(t * 3) == (1, sub.kernel.element((1,)))
    assert sub.embed(sub.kernel.element((1,))) == t * 2


def test_kernel_decomposition_with_torsion():
    """Every h splits as c_j + iota(kappa); 200 random elements."""
    H = GradedGroup(2, 6, (Grade.of(1), Grade.parse('r2')))
    rng = random.Random(11)
    for m in (CyclicQuotient(3, (1, 2), 0), CyclicQuotient(2, (1, 0), 1), CyclicQuotient(3, (0, 1), 2)):
        sub = kernel_of_quotient(H, m)
        for _ in range(200):
            h = H.random_element(rng, 4)
            j, kappa = sub.split(h)
            assert m(h) == j
            assert sub.section[j] + sub.embed(kappa) == h
            assert H.grade(sub.embed(kappa)) == sub.kernel.grade(kappa)


def test_annihilating_quotient_keeps_torsion():
    H = GradedGroup(1, 4, (Grade.of(1),))
    sub = kernel_of_quotient(H, CyclicQuotient(2, (1,)))
    assert sub.kernel.torsion_order == 4
    assert sub.embed(sub.kernel.torsion_generator) == H.torsion_generator
