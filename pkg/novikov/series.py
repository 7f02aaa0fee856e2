"""
Truncated elements of the Novikov ring ``Nov(H; N)``.

A :class:`NovikovSeries` is a finite sum of monomials together with a
truncation bound R: it stands for every element that agrees with it on
all grades below R (written ``x + O(R)``). Exact values (polynomials)
carry ``R = None``.

Truncation bounds propagate soundly: a product is certified below
``min(R_a, R_b, R_a + v(b), R_b + v(a))`` where ``v`` is the grade of the
leading term, which is the plain ``min(R_a, R_b)`` rule whenever both
factors lie in the nonnegative part.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from novikov import notation
from novikov.cyclotomic import CyclotomicNumber, field_inverse
from novikov.errors import FieldError, LambdaPlusError, TruncationError
from novikov.grading import Grade, Truncation, below, tmin, tshift
from novikov.group import GradedGroup, GroupElement

log = logging.getLogger(__name__)

Scalar = Union[int, Fraction, CyclotomicNumber]


@dataclass(frozen=True)
class NovikovSeries:
    """
    A truncated Novikov series with coefficients in ``Q(zeta_order)``.

    Use the ``from_terms``/``monomial``/``constant`` constructors; they keep
    terms sorted by grade, drop zero coefficients and cut at the truncation.
    """

    group: GradedGroup
    """The group H."""
    order: int
    """The coefficient field ``Q(zeta_order)``."""
    terms: Tuple[Tuple[GroupElement, CyclotomicNumber], ...]
    """Sorted ``(monomial, coefficient)`` pairs, all of grade below ``truncation``."""
    truncation: Truncation = None
    """The bound R of ``O(R)``, or None for an exact value."""
    grades: Tuple[Grade, ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def from_terms(cls, group: GradedGroup, order: int,
                   terms: Union[Mapping[GroupElement, CyclotomicNumber], Iterable[Tuple[GroupElement, CyclotomicNumber]]],
                   truncation: Truncation = None) -> 'NovikovSeries':
        """
        Build a normalised series.

        Args:
            group (GradedGroup): The group.
            order (int): The coefficient field.
            terms: Monomials and coefficients; repeated monomials are added up.
            truncation (Truncation, optional): The bound. Defaults to exact.

        Returns:
            NovikovSeries: The series.
        """
        acc: Dict[GroupElement, CyclotomicNumber] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for h, c in items:
            if c.order != order:
                raise FieldError(f'Coefficient {c!r} is not in Q(zeta_{order})')
            acc[h] = acc[h] + c if h in acc else c
        keyed = []
        for h, c in acc.items():
            if c.is_zero:
                continue
            g = group.grade(h)
            if below(g, truncation):
                keyed.append(((g, h.free, h.torsion), h, c))
        keyed.sort(key=lambda x: x[0])
        return cls(group, order, tuple((h, c) for _, h, c in keyed), truncation,
                   tuple(k[0] for k, _, _ in keyed))

    @classmethod
    def zero(cls, group: GradedGroup, order: int = 1, truncation: Truncation = None) -> 'NovikovSeries':
        return cls(group, order, (), truncation, ())

    @classmethod
    def constant(cls, group: GradedGroup, value: Scalar, order: int = 1,
                 truncation: Truncation = None) -> 'NovikovSeries':
        return cls.monomial(group, group.identity, value, order, truncation)

    @classmethod
    def one(cls, group: GradedGroup, order: int = 1, truncation: Truncation = None) -> 'NovikovSeries':
        return cls.constant(group, 1, order, truncation)

    @classmethod
    def monomial(cls, group: GradedGroup, h: GroupElement, value: Scalar = 1, order: int = 1,
                 truncation: Truncation = None) -> 'NovikovSeries':
        """``value * h``."""
        c = value if isinstance(value, CyclotomicNumber) else CyclotomicNumber.of(order, value)
        return cls.from_terms(group, order, [(h, c)], truncation)

    @classmethod
    def parse(cls, text: str, group: GradedGroup, order: int = 1) -> 'NovikovSeries':
        """
        Parse the canonical text form, e.g. ``"1 - t + O(8)"``.

        Raises:
            ScenarioError: On malformed input.
        """
        terms, truncation = notation.parse_terms(text, group, order)
        return cls.from_terms(group, order, terms, truncation)

    # -- inspection -------------------------------------------------------

    def __iter__(self) -> Iterator[Tuple[GroupElement, CyclotomicNumber]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def is_zero(self) -> bool:
        """No terms below the truncation (zero modulo ``O(R)``)."""
        return not self.terms

    @property
    def is_exact(self) -> bool:
        return self.truncation is None

    def coefficient(self, h: GroupElement) -> CyclotomicNumber:
        for k, c in self.terms:
            if k == h:
                return c
        return CyclotomicNumber.of(self.order, 0)

    @property
    def valuation(self) -> Optional[Grade]:
        """Grade of the leading term, or None for a series without terms."""
        return self.grades[0] if self.terms else None

    @property
    def leading(self) -> Tuple[GroupElement, CyclotomicNumber]:
        """
        The leading monomial and coefficient.

        Raises:
            TruncationError: If no term survives the truncation.
        """
        if not self.terms:
            raise TruncationError(f'No nonzero term below O({self.truncation}) to lead with')
        return self.terms[0]

    @property
    def has_monomial_lead(self) -> bool:
        """Exactly one term attains the minimal grade."""
        return bool(self.terms) and (len(self.terms) == 1 or self.grades[1] != self.grades[0])

    @property
    def is_positive(self) -> bool:
        """Every term has strictly positive grade (the positive part)."""
        return all(g.sign() > 0 for g in self.grades)

    @property
    def is_integral(self) -> bool:
        return all(c.is_rational and c.is_integral for _, c in self.terms)

    def constant_term(self) -> CyclotomicNumber:
        return self.coefficient(self.group.identity)

    # -- ring structure -----------------------------------------------------

    def _check(self, other: 'NovikovSeries') -> None:
        if other.group != self.group:
            raise FieldError(f'Series over different groups: {self.group} and {other.group}')
        if other.order != self.order:
            raise FieldError(f'Series over Q(zeta_{self.order}) and Q(zeta_{other.order})')

    def _coerce(self, other: Union['NovikovSeries', Scalar]) -> 'NovikovSeries':
        if isinstance(other, NovikovSeries):
            self._check(other)
            return other
        return NovikovSeries.constant(self.group, other, self.order)

    def __add__(self, other: Union['NovikovSeries', Scalar]) -> 'NovikovSeries':
        other = self._coerce(other)
        return NovikovSeries.from_terms(self.group, self.order, self.terms + other.terms,
                                        tmin(self.truncation, other.truncation))

    __radd__ = __add__

    def __neg__(self) -> 'NovikovSeries':
        return NovikovSeries(self.group, self.order, tuple((h, -c) for h, c in self.terms),
                             self.truncation, self.grades)

    def __sub__(self, other: Union['NovikovSeries', Scalar]) -> 'NovikovSeries':
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> 'NovikovSeries':
        return self._coerce(other) - self

    def scale(self, c: Scalar) -> 'NovikovSeries':
        """Multiply every coefficient by a scalar."""
        if not isinstance(c, CyclotomicNumber):
            c = CyclotomicNumber.of(self.order, c)
        if c.is_zero:
            return NovikovSeries.zero(self.group, self.order, self.truncation)
        return NovikovSeries(self.group, self.order, tuple((h, x * c) for h, x in self.terms),
                             self.truncation, self.grades)

    def shift(self, h: GroupElement) -> 'NovikovSeries':
        """Multiply by the monomial h; the truncation moves by ``N(h)``."""
        g = self.group.grade(h)
        return NovikovSeries(self.group, self.order, tuple((k + h, c) for k, c in self.terms),
                             tshift(self.truncation, g), tuple(x + g for x in self.grades))

    def __mul__(self, other: Union['NovikovSeries', Scalar]) -> 'NovikovSeries':
        if not isinstance(other, NovikovSeries):
            return self.scale(other)
        self._check(other)
        bound = product_truncation(self, other)
        acc: Dict[GroupElement, CyclotomicNumber] = {}
        for (h1, c1), g1 in zip(self.terms, self.grades):
            for (h2, c2), g2 in zip(other.terms, other.grades):
                if bound is not None and not g1 + g2 < bound:
                    break
                h = h1 + h2
                c = c1 * c2
                acc[h] = acc[h] + c if h in acc else c
        return NovikovSeries.from_terms(self.group, self.order, acc, bound)

    def __rmul__(self, other: Scalar) -> 'NovikovSeries':
        return self.scale(other)

    def __pow__(self, k: int) -> 'NovikovSeries':
        """Integer powers; negative powers go through :meth:`invert`."""
        base = self if k >= 0 else self.invert()
        out = NovikovSeries.one(self.group, self.order)
        for _ in range(abs(k)):
            out = out * base
        return out

    def truncate(self, bound: Truncation) -> 'NovikovSeries':
        """Weaken the truncation to ``min(R, bound)``."""
        bound = tmin(self.truncation, bound)
        if bound == self.truncation:
            return self
        keep = [i for i, g in enumerate(self.grades) if g < bound]
        return NovikovSeries(self.group, self.order, tuple(self.terms[i] for i in keep), bound,
                             tuple(self.grades[i] for i in keep))

    def agrees(self, other: 'NovikovSeries', bound: Truncation = None) -> bool:
        """
        Equality modulo ``O(min(R_self, R_other, bound))``.
        """
        self._check(other)
        cut = tmin(self.truncation, other.truncation, bound)
        return (self - other).truncate(cut).is_zero

    # -- changing coefficients -------------------------------------------

    def project(self, order: int) -> 'NovikovSeries':
        """
        Project onto the field summand ``Q(zeta_order)``: the torsion
        generator goes to ``zeta_order`` and the result has no torsion
        exponents left.

        Raises:
            FieldError: If the series already has non-rational coefficients
                that do not live in the target field.
        """
        if self.order == order and all(h.torsion == 0 for h, _ in self.terms):
            return self
        if self.order != 1:
            raise FieldError(f'Cannot project a Q(zeta_{self.order}) series to summand {order}')
        acc: Dict[GroupElement, CyclotomicNumber] = {}
        for h, c in self.terms:
            base = self.group.element(h.free, 0)
            v = CyclotomicNumber.root(order, h.torsion) * c.rational
            acc[base] = acc[base] + v if base in acc else v
        return NovikovSeries.from_terms(self.group, order, acc, self.truncation)

    def lift_coefficients(self, order: int) -> 'NovikovSeries':
        """Extend coefficients from ``Q(zeta_d)`` to ``Q(zeta_order)``, ``d | order``."""
        if order == self.order:
            return self
        return NovikovSeries(self.group, order, tuple((h, c.lift(order)) for h, c in self.terms),
                             self.truncation, self.grades)

    # -- field operations --------------------------------------------------

    def invert(self, precision: Truncation = None) -> 'NovikovSeries':
        """
        The inverse ``c^-1 g^-1 sum (-u)^k`` of ``c g (1 + u)``.

        For a truncated input with bound R and leading monomial g, the
        result is certified below ``R - 2 N(g)``. An exact input needs an
        explicit ``precision`` for its output.

        Args:
            precision (Truncation, optional): Output bound for exact inputs.

        Raises:
            TruncationError: If no nonzero leading term is certified, or an
                exact input comes without a precision.
            FieldError: If the leading grade is attained by several monomials.

        Returns:
            NovikovSeries: The inverse.
        """
        h0, c0 = self.leading
        if not self.has_monomial_lead:
            raise FieldError(f'Leading term of {self} is not a single monomial; project to a field summand first')
        g0 = self.group.grade(h0)
        if self.truncation is None:
            if precision is None and len(self.terms) > 1:
                raise TruncationError(f'Inverting the exact series {self} needs a precision')
            target = tshift(precision, g0)
        else:
            target = tmin(self.truncation - g0, tshift(precision, g0))
        cinv = field_inverse(c0)
        if len(self.terms) == 1:
            out = NovikovSeries.monomial(self.group, -h0, cinv, self.order)
            return out.truncate(tshift(self.truncation, -2 * g0)) if self.truncation is not None else out
        # 1 + u with u in the positive part
        u = self.shift(-h0).scale(cinv) - 1
        tail = geometric_inverse(u.truncate(target), target)
        return tail.shift(-h0).scale(cinv)

    def exp_plus(self, precision: Truncation = None) -> 'NovikovSeries':
        """
        ``exp(x)`` for x in the positive part.

        Raises:
            LambdaPlusError: If some term has grade <= 0.
            TruncationError: If x is exact and no precision is given.
        """
        bound = self._series_bound(precision)
        out = term = NovikovSeries.one(self.group, self.order, bound)
        x = self.truncate(bound)
        steps = terms_needed(x.valuation, bound) if x.terms else 0
        for k in range(1, steps + 1):
            term = (term * x).scale(Fraction(1, k)).truncate(bound)
            out = out + term
        log.debug('exp_plus used %d terms below O(%s)', steps, bound)
        return out

    def log_one_plus(self, precision: Truncation = None) -> 'NovikovSeries':
        """
        ``log(1 + x)`` for x in the positive part.

        Raises:
            LambdaPlusError: If some term has grade <= 0.
            TruncationError: If x is exact and no precision is given.
        """
        bound = self._series_bound(precision)
        x = self.truncate(bound)
        out = NovikovSeries.zero(self.group, self.order, bound)
        power = NovikovSeries.one(self.group, self.order, bound)
        for k in range(1, (terms_needed(x.valuation, bound) if x.terms else 0) + 1):
            power = (power * x).truncate(bound)
            out = out + power.scale(Fraction((-1) ** (k + 1), k))
        return out

    def log(self, precision: Truncation = None) -> 'NovikovSeries':
        """``log(y)`` for y with constant term 1 and positive remaining part."""
        return (self - 1).log_one_plus(precision)

    def _series_bound(self, precision: Truncation) -> Grade:
        if not self.is_positive:
            raise LambdaPlusError(f'{self} is not in the positive part (a term has grade <= 0)')
        bound = tmin(self.truncation, precision)
        if bound is None:
            raise TruncationError(f'Power series of the exact value {self} need a precision')
        return bound

    # -- text -------------------------------------------------------------------

    def __str__(self) -> str:
        return notation.render_terms(self.terms, self.truncation)

    def __repr__(self) -> str:
        return f'NovikovSeries("{self}")'


def product_truncation(a: NovikovSeries, b: NovikovSeries) -> Truncation:
    """
    The certified bound of ``a * b``.
    """
    ra, rb = a.truncation, b.truncation
    if a.is_zero and ra is None or b.is_zero and rb is None:
        return None
    va = a.valuation if a.terms else ra
    vb = b.valuation if b.terms else rb
    return tmin(ra, rb,
                None if ra is None or vb is None else ra + vb,
                None if rb is None or va is None else rb + va)


def geometric_inverse(u: NovikovSeries, bound: Truncation) -> NovikovSeries:
    """
    ``(1 + u)^-1 = sum (-u)^k`` below ``bound`` for u in the positive part.

    Raises:
        TruncationError: If the bound is infinite while u is nonzero.
    """
    if u.is_zero:
        return NovikovSeries.one(u.group, u.order, bound)
    if bound is None:
        raise TruncationError('An infinite geometric series needs a precision')
    if not u.is_positive:
        raise LambdaPlusError(f'{u} is not in the positive part')
    out = power = NovikovSeries.one(u.group, u.order, bound)
    neg = (-u).truncate(bound)
    steps = terms_needed(neg.valuation, bound) if neg.terms else 0
    for _ in range(steps):
        power = (power * neg).truncate(bound)
        out = out + power
    log.debug('geometric inverse used %d terms below O(%s)', steps, bound)
    return out


def terms_needed(epsilon: Grade, bound: Grade) -> int:
    """
    How many powers ``x, x^2, ...`` of a series of valuation ``epsilon > 0``
    are visible below ``bound``: the number of ``k >= 1`` with
    ``k * epsilon < bound``.

    Raises:
        LambdaPlusError: If epsilon is not positive.
    """
    if epsilon.sign() <= 0:
        raise LambdaPlusError(f'Powers of a series of valuation {epsilon} do not converge')
    n = max(0, math.ceil(float(bound) / float(epsilon)))
    while n > 0 and epsilon * n >= bound:
        n -= 1
    while epsilon * (n + 1) < bound:
        n += 1
    return n
