import logging

import pytest
import sympy

from conftest import geometric, series
from novikov import generate
from novikov.complex import BasedComplex, Generator, torsion
from novikov.errors import ComplexError, FieldError, GroupError, ScenarioError
from novikov.grading import Grade
from novikov.group import GradedGroup
from novikov.latour import embed_fraction, embedded_torsion, group_ring_torsion, latour_embed, series_to_expr
from novikov.lefschetz import CIRCLE

T = sympy.Symbol('t')


@pytest.fixture
def exact_circle(R):
    return generate.exact_circle(R)


def test_series_to_expr():
    assert sympy.expand(series_to_expr(series('1 - 2*t + t^3')) - (1 - 2 * T + T ** 3)) == 0
    H = GradedGroup(1, 2, (Grade.of(1),))
    assert sympy.expand(series_to_expr(series('1 + t*s', H), 2) - (1 - T)) == 0
    with pytest.raises(ComplexError):
        series_to_expr(series('1 + O(3)'))
    with pytest.raises(FieldError):
        series_to_expr(series('1 + t'), 3)


def test_group_ring_torsion_of_the_circle(exact_circle):
    value = group_ring_torsion(exact_circle.complex)[1]
    assert sympy.cancel(value - 1 / (1 - T)) == 0


def test_embedding_expands_fractions(R):
    assert str(embed_fraction(1 / (1 - T), CIRCLE, 1, R)) == geometric(16)
    backwards = GradedGroup(1, 0, (Grade.of(-1),))
    inverse = embed_fraction(1 / (1 - T), backwards, 1, R)
    assert (inverse * series('1 - t', backwards)).agrees(series('1', backwards))


@pytest.mark.parametrize('weight', ['1', '-1', '2', '1/2'])
def test_embedded_torsion_is_the_novikov_torsion(exact_circle, weight, R):
    target = GradedGroup(1, 0, (Grade.parse(weight),))
    C = latour_embed(exact_circle.complex, target, R)
    assert not embedded_torsion(exact_circle.complex, target, R).mismatches(torsion(C))


def test_embedding_with_torsion(R):
    H = GradedGroup(1, 2, (Grade.of(1),))
    gens = (Generator('p', 1, H.identity), Generator('q', 0, H.identity))
    C = BasedComplex(H, gens, {'p': {'q': series('1 - t*s', H)}})
    values = group_ring_torsion(C)
    assert sympy.cancel(values[1] - 1 / (1 - T)) == 0
    assert sympy.cancel(values[2] - 1 / (1 + T)) == 0
    for weight in ('1', '-1'):
        target = GradedGroup(1, 2, (Grade.parse(weight),))
        embedded = latour_embed(C, target, R)
        assert not embedded_torsion(C, target, R).mismatches(torsion(embedded))


def test_irrational_summands_are_skipped(R, caplog, monkeypatch):
    monkeypatch.setattr(logging.getLogger('novikov'), 'propagate', True)
    H = GradedGroup(1, 3, (Grade.of(1),))
    gens = (Generator('p', 1, H.identity), Generator('q', 0, H.identity))
    C = BasedComplex(H, gens, {'p': {'q': series('1 - t*s', H)}})
    with caplog.at_level(logging.WARNING, logger='novikov.latour'):
        values = group_ring_torsion(C)
    assert list(values) == [1]
    assert sympy.cancel(values[1] - 1 / (1 - T)) == 0
    assert 'Q(zeta_3)' in caplog.text
    embedded = embedded_torsion(C, H, R)
    assert [s.order for s in embedded.split] == [1]
    full = torsion(latour_embed(C, H, R))
    assert [s.order for s in full.split] == [1, 3]
    assert not full.restrict([1]).mismatches(embedded)


def test_embedding_needs_the_same_group(exact_circle):
    with pytest.raises(GroupError):
        latour_embed(exact_circle.complex, GradedGroup(2, 0, (Grade.of(1), Grade.parse('r2'))))
    with pytest.raises(ComplexError):
        latour_embed(BasedComplex(CIRCLE, (Generator('p', 1, CIRCLE.identity), Generator('q', 0, CIRCLE.identity)),
                                  {'p': {'q': series('1 - t + O(4)')}}), CIRCLE)


def test_latour_scenarios(exact_circle, circle_morse, R):
    scenario = generate.latour(exact_circle, [Grade.of(-1)], R)
    assert scenario.exact
    assert scenario.group.weights == (Grade.of(-1),)
    assert scenario.name == 'latour-exact-circle'
    with pytest.raises(ScenarioError):
        generate.latour(circle_morse, None, R)
    with pytest.raises(ScenarioError):
        generate.latour(exact_circle, [Grade.of(1), Grade.of(2)], R)
