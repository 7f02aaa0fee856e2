import math
import random
from fractions import Fraction

import pytest

from conftest import geometric, series
from novikov.cyclotomic import CyclotomicNumber
from novikov.errors import FieldError, LambdaPlusError, ScenarioError, TruncationError
from novikov.grading import Grade
from novikov.group import GradedGroup
from novikov.lefschetz import CIRCLE
from novikov.series import NovikovSeries, terms_needed

PLANE = GradedGroup(2, 0, (Grade.of(1), Grade.parse('r2')))
R = Grade.of(12)


def random_series(group, rng, terms=4, positive=False, bound=R):
    out = []
    for _ in range(terms):
        h = group.random_element(rng, 3)
        if positive and group.grade(h).sign() <= 0:
            continue
        out.append((h, CyclotomicNumber.of(1, Fraction(rng.randint(-4, 4), rng.randint(1, 2)))))
    return NovikovSeries.from_terms(group, 1, out, bound)


def random_unit(group, rng, bound=R):
    h0 = group.random_element(rng, 2)
    lead = NovikovSeries.monomial(group, h0, rng.choice((-3, -1, 1, 2)), truncation=bound)
    return lead + random_series(group, rng, positive=True, bound=bound).shift(h0)


@pytest.mark.parametrize('text', ['1 - t + O(8)', '-2*t^(-1) + 1/2 + O(3)', 't^2 - 3*t^5', '0 + O(4)'])
def test_text_form_round_trip(text):
    x = series(text)
    assert str(x) == text
    assert series(str(x)) == x


def test_parse_rejects():
    for text in ('t^^2', '1 + O(3) + t', 'u', '1 + s', '', 'O(2) - O(3)'):
        with pytest.raises(ScenarioError):
            series(text)


def test_terms_are_sorted_and_cut():
    x = series('t^9 + 3 + t + O(5)')
    assert str(x) == '3 + t + O(5)'
    assert x.valuation == 0
    assert x.leading == (CIRCLE.identity, CyclotomicNumber.of(1, 3))


def test_telescoping_product():
    assert str(series('1 - t') * series(geometric(16))) == '1 + O(16)'


def test_exact_inverse_of_one_minus_t():
    assert str(series('1 - t').invert(Grade.of(16))) == geometric(16)
    with pytest.raises(TruncationError):
        series('1 - t').invert()


def test_monomial_inverse_is_exact():
    x = series('-2*t^3')
    assert str(x.invert()) == '-1/2*t^(-3)'


def test_random_unit_inverses():
    """200 random units over Z^2 graded by (1, sqrt 2)."""
    rng = random.Random(5)
    for _ in range(200):
        a = random_unit(PLANE, rng)
        b = a.invert()
        product = a * b
        assert product.agrees(NovikovSeries.one(PLANE)), (a, b, product)


def test_ring_axioms():
    """100 random triples: associativity and distributivity modulo O(R)."""
    rng = random.Random(6)
    for _ in range(100):
        a, b, c = (random_series(PLANE, rng, positive=True) for _ in range(3))
        assert ((a * b) * c).agrees(a * (b * c))
        assert (a * (b + c)).agrees(a * b + a * c)
        assert (a - a).is_zero


def test_exp_of_circle_orbits():
    x = NovikovSeries.from_terms(CIRCLE, 1, [(CIRCLE.element((k,)), CyclotomicNumber.of(1, Fraction(1, k)))
                                            for k in range(1, 16)], Grade.of(16))
    assert str(x.exp_plus()) == geometric(16)


def test_log_exp_round_trip():
    """100 random x in the positive part."""
    rng = random.Random(7)
    for _ in range(100):
        x = random_series(PLANE, rng, positive=True)
        assert (x.exp_plus() - 1).log_one_plus().agrees(x)


def test_exp_is_a_homomorphism():
    """100 random pairs."""
    rng = random.Random(8)
    for _ in range(100):
        x = random_series(PLANE, rng, positive=True)
        y = random_series(PLANE, rng, positive=True)
        assert (x + y).exp_plus().agrees(x.exp_plus() * y.exp_plus())


@pytest.mark.parametrize('epsilon, bound, n', [
    ('1', '16', 15),
    ('2', '16', 7),
    ('3', '2', 0),
    ('r2', '16', 11),
    ('1/2', '3', 5),
])
def test_terms_needed(epsilon, bound, n):
    assert terms_needed(Grade.parse(epsilon), Grade.parse(bound)) == n


def test_terms_needed_are_enough():
    x = series('t^2 + O(16)')
    expected = series(' + '.join(['1'] + [f'1/{math.factorial(k)}*t^{2 * k}' for k in range(1, 8)]) + ' + O(16)')
    assert str(x.exp_plus()) == str(expected)
    assert str(series('t^2').log_one_plus(Grade.of(9))) == 't^2 - 1/2*t^4 + 1/3*t^6 - 1/4*t^8 + O(9)'
    with pytest.raises(LambdaPlusError):
        terms_needed(Grade.of(0), Grade.of(4))


def test_power_series_need_the_positive_part():
    with pytest.raises(LambdaPlusError):
        series('1 + t + O(5)').exp_plus()
    with pytest.raises(TruncationError):
        series('t').log_one_plus()


def test_projection_to_summands():
    H = GradedGroup(1, 2, (Grade.of(1),))
    plus, minus = series('1 + s', H), series('1 - s', H)
    assert (plus * minus).project(2).is_zero
    assert plus.project(2).is_zero
    assert str(plus.project(1)) == '2'
    assert str(series('t*s', H).project(2)) == '-t'


def test_mixed_rings_do_not_combine():
    with pytest.raises(FieldError):
        series('1 + t') + series('1 + t', PLANE)
