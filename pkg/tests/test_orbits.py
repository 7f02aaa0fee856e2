import pytest

from conftest import geometric, series
from novikov.errors import OrbitError, ScenarioError
from novikov.grading import Grade
from novikov.lefschetz import CIRCLE
from novikov.orbits import (ClosedOrbit, FactorType, IrreducibleOrbitFactor, OrbitSet, expand_factor_to_orbits,
                            invariant_I, zeta_from_orbits, zeta_product)

t = CIRCLE.generator(0)


def test_circle_flow_orbits(circle_flow, R):
    orbits = circle_flow.flow_state(R).orbits
    assert [(o.homology_class, o.period, o.sign) for o in orbits] == [(t * k, k, 1) for k in range(1, 16)]
    assert str(zeta_from_orbits(orbits)) == geometric(16)


@pytest.mark.parametrize('kind', list(FactorType))
@pytest.mark.parametrize('k', [1, 2, 3])
def test_factors_expand_to_their_orbits(kind, k, R):
    f = IrreducibleOrbitFactor(t * k, kind)
    orbits = expand_factor_to_orbits(f, CIRCLE, R)
    assert zeta_from_orbits(orbits, R).agrees(zeta_product([f], CIRCLE, R))


def test_factor_series():
    R = Grade.of(6)
    assert str(IrreducibleOrbitFactor(t, FactorType.PLUS).series(CIRCLE, R)) == '1 + t + O(6)'
    assert str(IrreducibleOrbitFactor(t * 2, FactorType.PLUS_INVERSE).series(CIRCLE, R)) == '1 - t^2 + t^4 + O(6)'
    with pytest.raises(OrbitError):
        IrreducibleOrbitFactor(-t, FactorType.MINUS).series(CIRCLE, R)
    with pytest.raises(OrbitError):
        expand_factor_to_orbits(IrreducibleOrbitFactor(t, FactorType.MINUS), CIRCLE, None)


@pytest.mark.parametrize('text, kind', [('(1-h)^-1', FactorType.MINUS_INVERSE), ('(1 + h)^+1', FactorType.PLUS),
                                        ('(1+h)^1', FactorType.PLUS), ('(1 + h)^-1', FactorType.PLUS_INVERSE)])
def test_factor_type_parse(text, kind):
    assert FactorType.parse(text) is kind


def test_factor_type_parse_rejects():
    with pytest.raises(ScenarioError):
        FactorType.parse('(1-h)^2')


def test_non_integral_zeta_is_an_inconsistent_orbit_set():
    S = OrbitSet(CIRCLE, (ClosedOrbit(t, 2, 1),), Grade.of(8))
    with pytest.raises(OrbitError):
        zeta_from_orbits(S)


def test_orbit_validation():
    for orbit in (ClosedOrbit(-t), ClosedOrbit(CIRCLE.identity), ClosedOrbit(t, 0), ClosedOrbit(t, 1, 2)):
        with pytest.raises(OrbitError):
            OrbitSet(CIRCLE, (orbit,))


def test_orbits_beyond_completeness_are_dropped():
    S = OrbitSet(CIRCLE, (ClosedOrbit(t * 3), ClosedOrbit(t * 20)), Grade.of(16))
    assert len(S) == 1
    assert len(S.truncate(Grade.of(3))) == 0


def test_orbit_multiset_arithmetic():
    a = OrbitSet(CIRCLE, (ClosedOrbit(t), ClosedOrbit(t)), Grade.of(8))
    b = OrbitSet(CIRCLE, (ClosedOrbit(t),), Grade.of(4))
    rest = a - b
    assert len(rest) == 1
    assert rest.completeness == Grade.of(4)
    assert len(a + b) == 3
    with pytest.raises(OrbitError):
        b - a


def test_orbits_round_trip(circle_flow, R):
    S = circle_flow.flow_state(R).orbits
    assert OrbitSet.from_dict(S.to_dict(), CIRCLE, R) == S
    with pytest.raises(ScenarioError):
        OrbitSet.from_dict([{'class': 't + t^2'}], CIRCLE, R)


def test_both_circles_have_the_same_invariant(circle_morse, circle_flow, R):
    morse = circle_morse.flow_state(R)
    flow = circle_flow.flow_state(R)
    a = invariant_I(morse.complex, morse.orbits, R)
    b = invariant_I(flow.complex, flow.orbits, R)
    assert list(a.torsion.render()) == [('Q', geometric(16))]
    assert str(a.zeta) == '1 + O(16)'
    assert list(b.torsion.render()) == [('Q', '1')]
    assert str(b.zeta) == geometric(16)
    assert list(a.value.render()) == list(b.value.render()) == [('Q', geometric(16))]
    assert a.value.equivalent(b.value)


def test_zeta_of_a_log_sum():
    S = OrbitSet(CIRCLE, (ClosedOrbit(t, 1, -1), ClosedOrbit(t * 2, 2, -1)), Grade.of(3))
    assert zeta_from_orbits(S).agrees(series('1 - t + O(3)'))
