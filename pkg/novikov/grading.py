"""
Exact grades.

Grading weights, element grades and truncation bounds are numbers of
the form ``a + b*sqrt(2)`` with rational ``a`` and ``b``. They are kept
exact so that truncation never depends on floating point rounding.
A truncation bound of ``None`` stands for +infinity (an exact value).
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from novikov.errors import GroupError

Number = Union[int, Fraction, 'Grade']

_GRADE_RE = re.compile(
    r'^(?P<a>[+-]?\d+(?:/\d+)?)?'
    r'(?:(?P<bsign>[+-])?(?P<b>\d+(?:/\d+)?)?\*?r2)?$'
)


@dataclass(frozen=True)
class Grade:
    """
    The exact real number ``a + b*sqrt(2)``.
    """

    a: Fraction = Fraction(0)
    """Rational part."""
    b: Fraction = Fraction(0)
    """Coefficient of sqrt(2)."""

    def __post_init__(self) -> None:
        object.__setattr__(self, 'a', Fraction(self.a))
        object.__setattr__(self, 'b', Fraction(self.b))

    @classmethod
    def of(cls, value: Number) -> 'Grade':
        """
        Coerce an int, a Fraction or a Grade into a Grade.

        Args:
            value (Number): The value.

        Returns:
            Grade: The grade.
        """
        if isinstance(value, Grade):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        raise GroupError(f'Cannot use {value!r} as an exact grade')

    @classmethod
    def parse(cls, text: str) -> 'Grade':
        """
        Parse strings such as ``"1"``, ``"1/2"``, ``"3+2r2"`` or ``"-r2"``.

        Args:
            text (str): The text form.

        Raises:
            GroupError: If the text is not of the form ``a+br2``.

        Returns:
            Grade: The parsed grade.
        """
        s = str(text).replace(' ', '')
        m = _GRADE_RE.match(s)
        if not s or m is None or (m.group('a') is None and 'r2' not in s):
            raise GroupError(f'Invalid grade "{text}" (expected a, a/b or a+br2)')
        a = Fraction(m.group('a')) if m.group('a') else Fraction(0)
        b = Fraction(0)
        if 'r2' in s:
            b = Fraction(m.group('b')) if m.group('b') else Fraction(1)
            if m.group('bsign') == '-':
                b = -b
            elif m.group('bsign') is None and m.group('a') is not None:
                # "2r2" parses as a=2 with an empty b part
                a, b = Fraction(0), a
        return cls(a, b)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        """
        Exact sign of ``a + b*sqrt(2)``.

        Returns:
            int: -1, 0 or 1.
        """
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with 2 b^2
        return sa if self.a * self.a > 2 * self.b * self.b else sb

    def __add__(self, other: Number) -> 'Grade':
        o = Grade.of(other)
        return Grade(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> 'Grade':
        return Grade(-self.a, -self.b)

    def __sub__(self, other: Number) -> 'Grade':
        return self + (-Grade.of(other))

    def __rsub__(self, other: Number) -> 'Grade':
        return Grade.of(other) - self

    def __mul__(self, k: Union[int, Fraction]) -> 'Grade':
        if isinstance(k, Grade):
            return Grade(self.a * k.a + 2 * self.b * k.b, self.a * k.b + self.b * k.a)
        return Grade(self.a * k, self.b * k)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Grade(Fraction(other))
        if not isinstance(other, Grade):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __lt__(self, other: Number) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Number) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Number) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Number) -> bool:
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(2)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        b = '' if abs(self.b) == 1 else str(abs(self.b))
        if self.a == 0:
            return f'{"-" if self.b < 0 else ""}{b}r2'
        return f'{self.a}{"-" if self.b < 0 else "+"}{b}r2'

    def __repr__(self) -> str:
        return f'Grade({self})'


ZERO = Grade()
"""The grade 0."""

Truncation = Optional[Grade]
"""A truncation bound; ``None`` is +infinity."""


def tmin(*bounds: Truncation) -> Truncation:
    """
    Minimum of truncation bounds, treating ``None`` as +infinity.

    Returns:
        Truncation: The smallest finite bound, or None if all are infinite.
    """
    finite = [b for b in bounds if b is not None]
    return min(finite) if finite else None


def tshift(bound: Truncation, by: Number) -> Truncation:
    """
    Shift a truncation bound, keeping +infinity fixed.
    """
    return None if bound is None else bound + by


def below(grade: Grade, bound: Truncation) -> bool:
    """
    Is a term of the given grade inside the window ``O(bound)``?
    """
    return bound is None or grade < bound


def render_truncation(bound: Truncation) -> str:
    return 'inf' if bound is None else str(bound)


def parse_truncation(text: Union[str, int, None]) -> Truncation:
    """
    Parse a truncation bound; ``None``, ``"inf"`` and ``"exact"`` are +infinity.
    """
    if text is None or str(text).strip().lower() in ('inf', 'exact', '+inf'):
        return None
    return Grade.parse(str(text))
