"""
Exact coefficient fields ``Q(zeta_d)`` and the splitting of the group
algebra ``Q[Z/n]`` into cyclotomic fields.

Coordinates are tuples of ``Fraction`` coefficients, lowest degree first;
products, remainders and inverses go through ``sympy.Poly`` over ``QQ``.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import sympy

from novikov.errors import FieldError

log = logging.getLogger(__name__)

Poly = Tuple[Fraction, ...]
Rational = Union[int, Fraction]

ROOT_NAME: str = 'z'
"""Name of the primitive root in text forms."""

_X = sympy.Symbol('x')


def _trim(p: Iterable[Fraction]) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def to_sympy(p: Sequence[Rational]) -> sympy.Poly:
    """Coefficients (lowest degree first) as a ``sympy.Poly`` over QQ."""
    coeffs = [sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) for c in reversed(list(p))]
    return sympy.Poly.from_list(coeffs or [0], _X, domain=sympy.QQ)


def from_sympy(p: sympy.Poly) -> Poly:
    """The coefficients of p, lowest degree first, without trailing zeros."""
    return _trim(Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs()))


@lru_cache(maxsize=None)
def _phi(d: int) -> sympy.Poly:
    return sympy.Poly(sympy.cyclotomic_poly(d, _X), _X, domain=sympy.QQ)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> Poly:
    """
    The d-th cyclotomic polynomial.

    Args:
        d (int): A positive integer.

    Raises:
        FieldError: If d < 1.

    Returns:
        Poly: Coefficients of ``Phi_d``, lowest degree first.
    """
    if d < 1:
        raise FieldError(f'Cyclotomic polynomials need d >= 1, got {d}')
    return from_sympy(_phi(d))


def divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def totient(d: int) -> int:
    """Euler's phi, read off as the degree of ``Phi_d``."""
    return len(cyclotomic_polynomial(d)) - 1


@lru_cache(maxsize=None)
def _power_table(d: int) -> Tuple[Poly, ...]:
    """``x^j mod Phi_d`` as coefficient vectors, for ``j < 2 phi(d) - 1``."""
    phi = totient(d)
    table = []
    for j in range(max(2 * phi - 1, 1)):
        r = from_sympy(sympy.Poly(_X ** j, _X, domain=sympy.QQ).rem(_phi(d)))
        table.append(r + (Fraction(0),) * (phi - len(r)))
    return tuple(table)


def _reduce(d: int, p: Sequence[Fraction]) -> Poly:
    phi = totient(d)
    if len(p) <= phi:
        return tuple(p) + (Fraction(0),) * (phi - len(p))
    table = _power_table(d)
    if len(p) > len(table):
        r = from_sympy(to_sympy(p).rem(_phi(d)))
        return r + (Fraction(0),) * (phi - len(r))
    out = [Fraction(0)] * phi
    for j, c in enumerate(p):
        if c:
            for i, v in enumerate(table[j]):
                if v:
                    out[i] += c * v
    return tuple(out)


@dataclass(frozen=True)
class CyclotomicNumber:
    """
    An element of ``Q(zeta_d)``, stored as a polynomial in ``zeta_d``
    of degree below ``phi(d)``.
    """

    order: int
    """d; ``order == 1`` is plain Q."""
    coeffs: Poly
    """Exactly ``phi(d)`` rational coefficients."""

    @classmethod
    def of(cls, order: int, value: Rational) -> 'CyclotomicNumber':
        """The rational ``value`` inside ``Q(zeta_order)``."""
        return cls(order, (Fraction(value),) + (Fraction(0),) * (totient(order) - 1))

    @classmethod
    def from_poly(cls, order: int, p: Sequence[Rational]) -> 'CyclotomicNumber':
        """Reduce a polynomial in ``zeta`` modulo ``Phi_order``."""
        return cls(order, _reduce(order, [Fraction(c) for c in p]))

    @classmethod
    def root(cls, order: int, power: int = 1) -> 'CyclotomicNumber':
        """``zeta_order ** power``."""
        power %= order
        return cls.from_poly(order, (0,) * power + (1,))

    def _check(self, other: 'CyclotomicNumber') -> None:
        if other.order != self.order:
            raise FieldError(f'Mixing Q(zeta_{self.order}) with Q(zeta_{other.order})')

    def __add__(self, other: 'CyclotomicNumber') -> 'CyclotomicNumber':
        self._check(other)
        return CyclotomicNumber(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> 'CyclotomicNumber':
        return CyclotomicNumber(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other: 'CyclotomicNumber') -> 'CyclotomicNumber':
        return self + (-other)

    def __mul__(self, other: Union['CyclotomicNumber', Rational]) -> 'CyclotomicNumber':
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.order, tuple(a * other for a in self.coeffs))
        self._check(other)
        if len(self.coeffs) == 1:
            return CyclotomicNumber(self.order, (self.coeffs[0] * other.coeffs[0],))
        return CyclotomicNumber.from_poly(self.order, from_sympy(to_sympy(self.coeffs) * to_sympy(other.coeffs)))

    __rmul__ = __mul__

    def __truediv__(self, other: Union['CyclotomicNumber', Rational]) -> 'CyclotomicNumber':
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise FieldError('Division by zero')
            return CyclotomicNumber(self.order, tuple(a / other for a in self.coeffs))
        return self * field_inverse(other)

    def __pow__(self, k: int) -> 'CyclotomicNumber':
        base = self if k >= 0 else field_inverse(self)
        out = CyclotomicNumber.of(self.order, 1)
        for _ in range(abs(k)):
            out = out * base
        return out

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    @property
    def is_integral(self) -> bool:
        """All coordinates in the power basis are integers."""
        return all(c.denominator == 1 for c in self.coeffs)

    @property
    def rational(self) -> Fraction:
        """
        The value as a rational number.

        Raises:
            FieldError: If the value is not rational.
        """
        if not self.is_rational:
            raise FieldError(f'{self} is not rational')
        return self.coeffs[0]

    def lift(self, order: int) -> 'CyclotomicNumber':
        """
        Embed ``Q(zeta_d)`` into ``Q(zeta_e)`` for ``d | e`` via
        ``zeta_d -> zeta_e^(e/d)``.
        """
        if order == self.order:
            return self
        if order % self.order:
            raise FieldError(f'Q(zeta_{self.order}) does not embed in Q(zeta_{order})')
        step = order // self.order
        p = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for j, c in enumerate(self.coeffs):
            p[j * step] = c
        return CyclotomicNumber.from_poly(order, p)

    def restrict(self, order: int) -> Optional['CyclotomicNumber']:
        """
        The preimage of this number under :meth:`lift` to ``Q(zeta_order)``,
        or None if it does not lie in that subfield.
        """
        if order == self.order:
            return self
        if self.order % order:
            raise FieldError(f'Q(zeta_{order}) is not a subfield of Q(zeta_{self.order})')
        if order in (1, 2):
            return CyclotomicNumber.of(order, self.coeffs[0]) if self.is_rational else None
        images = [CyclotomicNumber.root(order, j).lift(self.order).coeffs for j in range(totient(order))]
        system = sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in col] for col in images]).T
        target = sympy.Matrix([sympy.Rational(c.numerator, c.denominator) for c in self.coeffs])
        try:
            sol, params = system.gauss_jordan_solve(target)
        except ValueError:
            return None
        if params.shape[0]:
            raise FieldError('Degenerate subfield basis')
        return CyclotomicNumber(order, tuple(Fraction(int(v.p), int(v.q)) for v in sol))

    def sort_key(self) -> Poly:
        """Lexicographic order on the rational coordinate vector."""
        return self.coeffs

    def __str__(self) -> str:
        return render_poly(self.coeffs)

    def __repr__(self) -> str:
        return f'CyclotomicNumber({self.order}, "{self}")'

    @classmethod
    def parse(cls, order: int, text: str) -> 'CyclotomicNumber':
        """
        Parse a polynomial string such as ``"1 - 2*z + z^2"``.

        Raises:
            FieldError: If the string is not a polynomial in ``z``.
        """
        return cls.from_poly(order, parse_poly(text))


def render_poly(coeffs: Iterable[Fraction]) -> str:
    """Render coefficients as ``"1 - 2*z + z^2"``."""
    out = ''
    for j, c in enumerate(coeffs):
        if not c:
            continue
        mono = '' if j == 0 else ROOT_NAME if j == 1 else f'{ROOT_NAME}^{j}'
        mag = abs(c)
        body = str(mag) if not mono else mono if mag == 1 else f'{mag}*{mono}'
        if not out:
            out = ('-' if c < 0 else '') + body
        else:
            out += (' - ' if c < 0 else ' + ') + body
    return out or '0'


_TERM_RE = re.compile(r'([+-]?)([^+-]+)')


def parse_poly(text: str) -> List[Fraction]:
    """
    Parse ``"a0 + a1*z + a2*z^2 ..."`` into a coefficient list.

    Raises:
        FieldError: On malformed input.
    """
    s = text.replace(' ', '')
    if s.startswith('(') and s.endswith(')'):
        s = s[1:-1]
    if not s or _TERM_RE.sub('', s):
        raise FieldError(f'Malformed cyclotomic number "{text}"')
    coeffs: List[Fraction] = []
    for sign, body in _TERM_RE.findall(s):
        c, power = Fraction(1), 0
        for factor in body.split('*'):
            if factor == ROOT_NAME:
                power += 1
            elif factor.startswith(ROOT_NAME + '^'):
                try:
                    power += int(factor[2:])
                except ValueError as e:
                    raise FieldError(f'Malformed power "{factor}" in "{text}"') from e
            else:
                try:
                    c *= Fraction(factor)
                except (ValueError, ZeroDivisionError) as e:
                    raise FieldError(f'Malformed coefficient "{factor}" in "{text}"') from e
        if power < 0:
            raise FieldError(f'Negative power of {ROOT_NAME} in "{text}"')
        coeffs += [Fraction(0)] * (power + 1 - len(coeffs))
        coeffs[power] += -c if sign == '-' else c
    return coeffs


def field_inverse(a: CyclotomicNumber) -> CyclotomicNumber:
    """
    ``a^-1`` in ``Q(zeta_d)``, by the extended Euclidean algorithm
    against ``Phi_d``.

    Args:
        a (CyclotomicNumber): A nonzero element.

    Raises:
        FieldError: If a is zero.

    Returns:
        CyclotomicNumber: The inverse.
    """
    if a.is_zero:
        raise FieldError('Cannot invert zero')
    if len(a.coeffs) == 1:
        return CyclotomicNumber(a.order, (1 / a.coeffs[0],))
    s, _, g = to_sympy(a.coeffs).gcdex(_phi(a.order))
    # Phi_d is irreducible, so the monic gcd is 1
    if g.degree() != 0:
        raise FieldError(f'{a} shares a factor with Phi_{a.order}')
    return CyclotomicNumber.from_poly(a.order, from_sympy(s))


@dataclass(frozen=True)
class Summand:
    """
    One field summand ``Q(zeta_d)`` of ``Q[Z/n]``; the projection sends
    the torsion generator to ``zeta_d``.
    """

    order: int
    """d."""

    @property
    def dimension(self) -> int:
        return totient(self.order)

    def project_torsion(self, power: int) -> CyclotomicNumber:
        """The image of ``s^power``."""
        return CyclotomicNumber.root(self.order, power)

    def __str__(self) -> str:
        return 'Q' if self.order == 1 else f'Q(zeta_{self.order})'


@dataclass(frozen=True)
class FieldSplit:
    """
    ``Q[Z/n] = sum over d | n of Q(zeta_d)``.
    """

    torsion_order: int
    summands: Tuple[Summand, ...]

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    @property
    def dimension(self) -> int:
        return sum(s.dimension for s in self.summands)


def split_group_algebra(n: int) -> FieldSplit:
    """
    Split the rational group algebra of ``Z/n`` into cyclotomic fields.

    Args:
        n (int): The torsion order; 0 (or 1) for a torsion-free group.

    Returns:
        FieldSplit: One summand per divisor of n.
    """
    if n in (0, 1):
        return FieldSplit(0, (Summand(1),))
    return FieldSplit(n, tuple(Summand(d) for d in divisors(n)))
