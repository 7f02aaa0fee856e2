"""
Elements of the quotient field of the Novikov ring, one field summand
at a time, and their canonical representatives modulo ``±1`` or ``±H``.

With an injective grading every nonzero series has a single leading
monomial, so it factors as ``c * g * (1 + u)`` with ``u`` in the positive
part and is invertible as a truncated series. Fractions therefore never
need a numerator/denominator pair.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Tuple

from novikov.cyclotomic import CyclotomicNumber, FieldSplit, Summand, field_inverse
from novikov.errors import FieldError
from novikov.grading import Truncation, render_truncation, tmin
from novikov.group import GroupElement
from novikov.series import NovikovSeries

log = logging.getLogger(__name__)


class Ambiguity(Enum):
    """The indeterminacy a value is taken modulo."""

    SIGN = '±1'
    """Lifts are fixed; only the overall sign is undetermined."""
    TRANSLATION = '±H'
    """Lifts are free; values are defined up to sign and a group element."""

    @classmethod
    def parse(cls, text: str) -> 'Ambiguity':
        """
        Accept ``"±1"``, ``"+-1"``, ``"sign"``, ``"±H"``, ``"+-H"`` or ``"translation"``.

        Raises:
            ValueError: On anything else.
        """
        key = str(text).strip().replace('+-', '±').lower()
        for a in cls:
            if key in (a.value.lower(), a.name.lower()):
                return a
        raise ValueError(f'Unknown ambiguity "{text}" (use ±1 or ±H)')


@dataclass(frozen=True)
class FieldElement:
    """
    A nonzero truncated series read as ``c * g * (1 + u)``.
    """

    series: NovikovSeries
    """The represented value."""

    def __post_init__(self) -> None:
        if self.series.is_zero:
            raise FieldError(f'Zero is not a unit (got {self.series})')
        if not self.series.has_monomial_lead:
            raise FieldError(f'{self.series} has no single leading monomial')

    @classmethod
    def of(cls, series: NovikovSeries) -> 'FieldElement':
        return cls(series)

    @property
    def coefficient(self) -> CyclotomicNumber:
        """The leading coefficient c."""
        return self.series.leading[1]

    @property
    def monomial(self) -> GroupElement:
        """The leading monomial g."""
        return self.series.leading[0]

    @property
    def tail(self) -> NovikovSeries:
        """``1 + u``: the value with its leading term divided out."""
        return self.series.shift(-self.monomial).scale(field_inverse(self.coefficient))

    @property
    def truncation(self) -> Truncation:
        return self.series.truncation

    @property
    def order(self) -> int:
        return self.series.order

    def reconstruct(self) -> NovikovSeries:
        """``c * g * tail``; agrees with :attr:`series` below its truncation."""
        return self.tail.shift(self.monomial).scale(self.coefficient)

    def __mul__(self, other: 'FieldElement') -> 'FieldElement':
        return FieldElement(self.series * other.series)

    def inverse(self, precision: Truncation = None) -> 'FieldElement':
        return FieldElement(self.series.invert(precision))

    def __truediv__(self, other: 'FieldElement') -> 'FieldElement':
        return self * other.inverse(self.truncation)

    def __pow__(self, k: int) -> 'FieldElement':
        if k >= 0:
            return FieldElement(self.series ** k)
        return FieldElement((self.series ** -k).invert(self.truncation))

    def canonical(self, ambiguity: Ambiguity) -> 'FieldElement':
        return canonicalize(self, ambiguity)

    def agrees(self, other: 'FieldElement', bound: Truncation = None) -> bool:
        return self.series.agrees(other.series, bound)

    def __str__(self) -> str:
        return str(self.series)


def _unit_candidates(order: int, translations: bool) -> List[CyclotomicNumber]:
    one = CyclotomicNumber.of(order, 1)
    units = [CyclotomicNumber.root(order, j) for j in range(order)] if translations else [one]
    return units + [-u for u in units]


def canonicalize(q: FieldElement, ambiguity: Ambiguity) -> FieldElement:
    """
    The canonical representative of q modulo the given ambiguity.

    Modulo ``±H`` the leading monomial is translated to the identity and
    the leading coefficient is multiplied by the ``±zeta^j`` (the images of
    ``±H`` in the summand) giving the lexicographically greatest coordinate
    vector. Modulo ``±1`` only the sign is chosen that way.

    Args:
        q (FieldElement): A nonzero value.
        ambiguity (Ambiguity): What to mod out by.

    Returns:
        FieldElement: The representative; equal inputs modulo the
            ambiguity give identical outputs.
    """
    c = q.coefficient
    best = max(_unit_candidates(q.order, ambiguity is Ambiguity.TRANSLATION),
               key=lambda u: (u * c).sort_key())
    if ambiguity is Ambiguity.TRANSLATION:
        return FieldElement(q.tail.scale(best * c))
    return FieldElement(q.series.scale(best))


@dataclass(frozen=True)
class SplitValue:
    """
    A value of ``Q(Lambda) ⊗ Q[Z/n] = ⊕_j F_j``, stored summand by summand.

    A summand of ``None`` is zero (for a torsion, a non-acyclic summand).
    """

    split: FieldSplit
    values: Tuple[Optional[FieldElement], ...]
    ambiguity: Ambiguity = Ambiguity.SIGN

    def __post_init__(self) -> None:
        if len(self.values) != len(self.split):
            raise FieldError(f'{len(self.values)} values for {len(self.split)} field summands')

    @classmethod
    def unit(cls, split: FieldSplit, series: NovikovSeries, ambiguity: Ambiguity = Ambiguity.SIGN) -> 'SplitValue':
        """Project a series of the group ring onto every summand."""
        return cls(split, tuple(_project_or_zero(series, s) for s in split), ambiguity)

    def __iter__(self) -> Iterator[Tuple[Summand, Optional[FieldElement]]]:
        return iter(zip(self.split, self.values))

    def __getitem__(self, index: int) -> Optional[FieldElement]:
        return self.values[index]

    @property
    def truncation(self) -> Truncation:
        return tmin(*(v.truncation for v in self.values if v is not None))

    def with_ambiguity(self, ambiguity: Ambiguity) -> 'SplitValue':
        return type(self)(self.split, self.values, ambiguity)

    def restrict(self, orders: Iterable[int]) -> 'SplitValue':
        """The summands whose order is in ``orders``, in split order."""
        keep = set(orders)
        pairs = [(s, v) for s, v in self if s.order in keep]
        split = FieldSplit(self.split.torsion_order, tuple(s for s, _ in pairs))
        return type(self)(split, tuple(v for _, v in pairs), self.ambiguity)

    def _combine(self, other: 'SplitValue', invert: bool) -> 'SplitValue':
        if other.split != self.split:
            raise FieldError('Values over different field splits')
        out = []
        for a, b in zip(self.values, other.values):
            if a is None or b is None:
                if invert and b is None and a is not None:
                    raise FieldError('Division by a zero summand')
                out.append(None)
            else:
                out.append(a / b if invert else a * b)
        ambiguity = max(self.ambiguity, other.ambiguity, key=lambda a: a is Ambiguity.TRANSLATION)
        return type(self)(self.split, tuple(out), ambiguity)

    def __mul__(self, other: 'SplitValue') -> 'SplitValue':
        return self._combine(other, invert=False)

    def __truediv__(self, other: 'SplitValue') -> 'SplitValue':
        return self._combine(other, invert=True)

    def times_series(self, series: NovikovSeries) -> 'SplitValue':
        """Multiply every summand by the projection of a group-ring series."""
        return self * SplitValue.unit(self.split, series, self.ambiguity)

    def canonical(self) -> 'SplitValue':
        return type(self)(self.split,
                          tuple(None if v is None else canonicalize(v, self.ambiguity) for v in self.values),
                          self.ambiguity)

    def mismatches(self, other: 'SplitValue', bound: Truncation = None) -> List[Summand]:
        """
        The summands on which the canonical forms differ modulo the common truncation.
        """
        ambiguity = max(self.ambiguity, other.ambiguity, key=lambda a: a is Ambiguity.TRANSLATION)
        a, b = self.with_ambiguity(ambiguity).canonical(), other.with_ambiguity(ambiguity).canonical()
        bad = []
        for summand, x, y in zip(self.split, a.values, b.values):
            if (x is None) != (y is None):
                bad.append(summand)
            elif x is not None and not x.agrees(y, bound):
                bad.append(summand)
        return bad

    def equivalent(self, other: 'SplitValue', bound: Truncation = None) -> bool:
        return not self.mismatches(other, bound)

    def render(self) -> Iterable[Tuple[str, str]]:
        """``(summand, value)`` text pairs of the canonical form."""
        for summand, v in self.canonical():
            yield str(summand), '0' if v is None else str(v)

    def __str__(self) -> str:
        return '; '.join(f'{k}: {v}' for k, v in self.render())


def _project_or_zero(series: NovikovSeries, summand: Summand) -> Optional[FieldElement]:
    projected = series.project(summand.order)
    if projected.is_zero:
        log.debug('series %s vanishes below O(%s) on %s', series, render_truncation(projected.truncation), summand)
        return None
    return FieldElement(projected)
