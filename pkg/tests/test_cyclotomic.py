import random
from fractions import Fraction

import pytest
import sympy

from novikov.cyclotomic import (CyclotomicNumber, cyclotomic_polynomial, field_inverse, split_group_algebra,
                                totient)
from novikov.errors import FieldError

X = sympy.Symbol('x')


@pytest.mark.parametrize('d', range(1, 31))
def test_cyclotomic_polynomials_divide_x_to_the_d_minus_one(d):
    product = sympy.Integer(1)
    for e in range(1, d + 1):
        if d % e == 0:
            product *= sum(c * X ** j for j, c in enumerate(cyclotomic_polynomial(e)))
    assert sympy.expand(product - (X ** d - 1)) == 0
    assert totient(d) == int(sympy.totient(d))


@pytest.mark.parametrize('d, coeffs', [(1, [-1, 1]), (2, [1, 1]), (6, [1, -1, 1]), (12, [1, 0, -1, 0, 1])])
def test_small_cyclotomic_polynomials(d, coeffs):
    assert list(cyclotomic_polynomial(d)) == [Fraction(c) for c in coeffs]
    with pytest.raises(FieldError):
        cyclotomic_polynomial(0)


def test_root_relations():
    z = CyclotomicNumber.root(3)
    assert (z ** 3).is_one
    assert (z * z + z + CyclotomicNumber.of(3, 1)).is_zero
    assert CyclotomicNumber.root(2).rational == -1
    assert CyclotomicNumber.root(4, 2) == CyclotomicNumber.of(4, -1)


def test_inverse_of_one_plus_zeta3():
    x = CyclotomicNumber.parse(3, '1 + z')
    assert field_inverse(x) == CyclotomicNumber.parse(3, '-z')
    assert str(x) == '1 + z'


def test_random_inverses():
    """200 random nonzero elements of Q(zeta_d), d <= 12."""
    rng = random.Random(3)
    for _ in range(200):
        d = rng.randint(1, 12)
        x = CyclotomicNumber.from_poly(d, [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(totient(d))])
        if x.is_zero:
            continue
        assert (x * field_inverse(x)).is_one
        assert (x / x).is_one


def test_zero_has_no_inverse():
    with pytest.raises(FieldError):
        field_inverse(CyclotomicNumber.of(5, 0))
    with pytest.raises(FieldError):
        CyclotomicNumber.of(3, 1) + CyclotomicNumber.of(4, 1)


def test_lift_and_restrict():
    z3 = CyclotomicNumber.root(3)
    lifted = z3.lift(6)
    assert lifted == CyclotomicNumber.root(6, 2)
    assert lifted.restrict(3) == z3
    assert CyclotomicNumber.root(6).restrict(3) == CyclotomicNumber.parse(3, '1 + z')
    assert CyclotomicNumber.root(4).restrict(2) is None
    assert CyclotomicNumber.of(6, Fraction(1, 2)).restrict(1) == CyclotomicNumber.of(1, Fraction(1, 2))


def test_parse_rejects():
    for text in ('', 'w', '1 + z^-1', '1/0'):
        with pytest.raises(FieldError):
            CyclotomicNumber.parse(5, text)


@pytest.mark.parametrize('n, orders', [(0, [1]), (1, [1]), (6, [1, 2, 3, 6]), (4, [1, 2, 4])])
def test_group_algebra_split(n, orders):
    split = split_group_algebra(n)
    assert [s.order for s in split] == orders
    assert split.dimension == max(n, 1)
