import random

import pytest

from conftest import series
from novikov.cyclotomic import CyclotomicNumber, split_group_algebra, totient
from novikov.errors import FieldError
from novikov.field import Ambiguity, FieldElement, SplitValue, canonicalize
from novikov.grading import Grade
from novikov.group import GradedGroup
from novikov.series import NovikovSeries

PLANE = GradedGroup(2, 0, (Grade.of(1), Grade.parse('r2')))


def test_field_element_parts():
    q = FieldElement(series('-2*t^3 - 2*t^4 + O(9)'))
    assert str(q.coefficient) == '-2'
    assert str(q.monomial) == 't^3'
    assert str(q.tail) == '1 + t + O(6)'
    assert q.reconstruct().agrees(q.series)


def test_zero_is_not_a_unit():
    with pytest.raises(FieldError):
        FieldElement(series('0 + O(4)'))


def test_canonical_sign():
    q = FieldElement(series('-1 - t + O(5)'))
    assert str(canonicalize(q, Ambiguity.SIGN)) == '1 + t + O(5)'


def test_canonical_translation():
    q = FieldElement(series('-2*t^3 - 2*t^4 + O(9)'))
    assert str(canonicalize(q, Ambiguity.TRANSLATION)) == '2 + 2*t + O(6)'


def test_canonical_forms_identify_equivalent_values():
    H = GradedGroup(1, 3, (Grade.of(1),))
    split = split_group_algebra(3)
    a = SplitValue.unit(split, series('1 + t + O(6)', H), Ambiguity.TRANSLATION)
    b = SplitValue.unit(split, series('-t^2*s - t^3*s + O(8)', H), Ambiguity.TRANSLATION)
    assert a.equivalent(b)
    assert a.with_ambiguity(Ambiguity.SIGN).mismatches(b.with_ambiguity(Ambiguity.SIGN))


@pytest.mark.parametrize('text, value', [('±1', Ambiguity.SIGN), ('+-H', Ambiguity.TRANSLATION),
                                         ('translation', Ambiguity.TRANSLATION)])
def test_ambiguity_parse(text, value):
    assert Ambiguity.parse(text) is value


def test_split_values_multiply_per_summand():
    H = GradedGroup(1, 2, (Grade.of(1),))
    split = split_group_algebra(2)
    x = SplitValue.unit(split, series('1 + s + t', H))
    assert [label for label, _ in x.render()] == ['Q', 'Q(zeta_2)']
    assert [text for _, text in x.render()] == ['2 + t', 't']
    y = x * x
    assert [text for _, text in y.render()] == ['4 + 4*t + t^2', 't^2']
    with pytest.raises(FieldError):
        x / SplitValue(split, (None, y[1]))


def random_value(group, order, rng, bound=Grade.of(10)):
    c = CyclotomicNumber.of(order, 0)
    while c.is_zero:
        c = CyclotomicNumber.from_poly(order, [rng.randint(-3, 3) for _ in range(totient(order))])
    g = group.random_element(rng, 2)
    terms = [(g, c)]
    for _ in range(3):
        h = group.random_element(rng, 2)
        if group.grade(h).sign() > 0:
            terms.append((g + h, CyclotomicNumber.of(order, rng.randint(-2, 2))))
    return FieldElement(NovikovSeries.from_terms(group, order, terms, bound))


@pytest.mark.parametrize('order', [1, 2, 3, 4, 5, 6])
def test_canonical_forms_of_random_multiples(order):
    """50 random values per field: forms are idempotent and equal on every ±zeta^j*h multiple."""
    rng = random.Random(order)
    for _ in range(50):
        q = random_value(PLANE, order, rng)
        forms = {a: canonicalize(q, a) for a in Ambiguity}
        for a, form in forms.items():
            assert str(canonicalize(form, a)) == str(form), (q, a)
        assert str(canonicalize(FieldElement(-q.series), Ambiguity.SIGN)) == str(forms[Ambiguity.SIGN])
        unit = CyclotomicNumber.root(order, rng.randrange(order)) * rng.choice((-1, 1))
        moved = FieldElement(q.series.shift(PLANE.random_element(rng, 3)).scale(unit))
        assert str(canonicalize(moved, Ambiguity.TRANSLATION)) == str(forms[Ambiguity.TRANSLATION]), (q, moved)
