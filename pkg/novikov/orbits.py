"""
Closed orbits and the zeta function.

The zeta function is computed three ways: as ``exp`` of the
sign/period-weighted orbit sum, as a product over irreducible orbit
factors ``(1 ± h)^(±1)``, and (in :mod:`novikov.lefschetz`) from
homology traces. The invariant ``I`` is the torsion times the zeta
function.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Tuple

from novikov.cyclotomic import CyclotomicNumber
from novikov.complex import BasedComplex, TorsionValue, torsion
from novikov.errors import GroupError, OrbitError, ScenarioError
from novikov.field import Ambiguity, SplitValue
from novikov.grading import Truncation, render_truncation, tmin
from novikov.group import GradedGroup, GroupElement
from novikov.series import NovikovSeries, geometric_inverse

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClosedOrbit:
    """
    A closed orbit: its homology class, period and Lefschetz sign.
    """

    homology_class: GroupElement
    """``[γ]`` in H."""
    period: int = 1
    """The largest k such that γ is a k-fold cover."""
    sign: int = 1
    """``(-1)^μ(γ)``."""

    def to_dict(self) -> Dict[str, Any]:
        return {'class': str(self.homology_class), 'period': self.period, 'sign': self.sign}


@dataclass(frozen=True)
class OrbitSet:
    """
    All closed orbits of class grade below ``completeness``.
    """

    group: GradedGroup
    orbits: Tuple[ClosedOrbit, ...] = ()
    completeness: Truncation = None
    """R: the set holds every orbit of grade below R (None: every orbit at all)."""

    def __post_init__(self) -> None:
        for o in self.orbits:
            if not self.group.contains(o.homology_class):
                raise OrbitError(f'Orbit class {o.homology_class!r} is not in {self.group}')
            if self.group.grade(o.homology_class).sign() <= 0:
                raise OrbitError(f'Orbit class {o.homology_class} has nonpositive grade')
            if o.period < 1:
                raise OrbitError(f'Orbit period {o.period} is not positive')
            if o.sign not in (1, -1):
                raise OrbitError(f'Orbit sign {o.sign} is not ±1')
        if self.completeness is not None:
            late = [o for o in self.orbits if not self.group.grade(o.homology_class) < self.completeness]
            if late:
                object.__setattr__(self, 'orbits', tuple(o for o in self.orbits if o not in late))
                log.debug('dropped %d orbits at or beyond O(%s)', len(late), self.completeness)

    def __iter__(self):
        return iter(self.orbits)

    def __len__(self) -> int:
        return len(self.orbits)

    def __add__(self, other: 'OrbitSet') -> 'OrbitSet':
        return OrbitSet(self.group, self.orbits + other.orbits, tmin(self.completeness, other.completeness))

    def __sub__(self, other: 'OrbitSet') -> 'OrbitSet':
        """
        Remove the orbits of ``other`` (with multiplicity).

        Raises:
            OrbitError: If some orbit of ``other`` is missing.
        """
        remaining = list(self.orbits)
        for o in other.orbits:
            if o not in remaining:
                raise OrbitError(f'Orbit {o.to_dict()} is not in the set')
            remaining.remove(o)
        return OrbitSet(self.group, tuple(remaining), tmin(self.completeness, other.completeness))

    def truncate(self, bound: Truncation) -> 'OrbitSet':
        return OrbitSet(self.group, self.orbits, tmin(self.completeness, bound))

    def log_sum(self, bound: Truncation = None) -> NovikovSeries:
        """``sum sign/period * [γ]`` below the completeness grade."""
        terms: Dict[GroupElement, Fraction] = {}
        for o in self.orbits:
            terms[o.homology_class] = terms.get(o.homology_class, Fraction(0)) + Fraction(o.sign, o.period)
        return NovikovSeries.from_terms(self.group, 1, _rational_terms(terms), tmin(self.completeness, bound))

    def to_dict(self) -> List[Dict[str, Any]]:
        return [o.to_dict() for o in self.orbits]

    @classmethod
    def from_dict(cls, data: Iterable[Mapping[str, Any]], group: GradedGroup, completeness: Truncation) -> 'OrbitSet':
        """
        Read ``[{"class": "t^2", "period": 2, "sign": -1}, ...]``.

        Raises:
            ScenarioError: On malformed entries.
        """
        try:
            orbits = tuple(ClosedOrbit(_parse_class(str(o['class']), group), int(o.get('period', 1)),
                                       int(o.get('sign', 1))) for o in data)
            return cls(group, orbits, completeness)
        except (KeyError, TypeError, ValueError) as e:
            raise ScenarioError(f'Malformed orbit: {e}') from e


def _rational_terms(terms: Mapping[GroupElement, Fraction]) -> List[Tuple[GroupElement, CyclotomicNumber]]:
    return [(h, CyclotomicNumber.of(1, c)) for h, c in terms.items()]


def _parse_class(text: str, group: GradedGroup) -> GroupElement:
    x = NovikovSeries.parse(text, group)
    if len(x) != 1 or not x.is_exact or not x.leading[1].is_one:
        raise ScenarioError(f'Orbit class must be a single monomial, got "{text}"')
    return x.leading[0]


def zeta_from_orbits(S: OrbitSet, precision: Truncation = None) -> NovikovSeries:
    """
    ``ζ = exp(sum sign/period * [γ])`` below the completeness grade.

    Args:
        S (OrbitSet): The orbits.
        precision (Truncation, optional): A further bound; needed when the
            set has no completeness grade and is nonempty.

    Raises:
        OrbitError: If a coefficient of ζ is not an integer, which no
            consistent orbit set can produce.

    Returns:
        NovikovSeries: The zeta function.
    """
    bound = tmin(S.completeness, precision)
    x = S.log_sum(bound)
    if x.is_zero:
        return NovikovSeries.one(S.group, 1, bound)
    zeta = x.exp_plus(bound)
    bad = [(h, c) for h, c in zeta if not c.is_integral]
    if bad:
        h, c = bad[0]
        raise OrbitError(f'ζ has the non-integral coefficient {c} at {h}: inconsistent orbit set')
    log.debug('ζ from %d orbits below O(%s): %s', len(S), render_truncation(bound), zeta)
    return zeta


class FactorType(Enum):
    """The four irreducible orbit factors ``(1 + sign*h)^exponent``."""

    MINUS_INVERSE = '(1-h)^-1'
    PLUS_INVERSE = '(1+h)^-1'
    MINUS = '(1-h)'
    PLUS = '(1+h)'

    @property
    def sign(self) -> int:
        return -1 if self in (FactorType.MINUS_INVERSE, FactorType.MINUS) else 1

    @property
    def exponent(self) -> int:
        return -1 if self in (FactorType.MINUS_INVERSE, FactorType.PLUS_INVERSE) else 1

    @classmethod
    def parse(cls, text: str) -> 'FactorType':
        key = str(text).replace(' ', '').replace('^+1', '').replace('^1', '')
        for t in cls:
            if t.value == key:
                return t
        raise ScenarioError(f'Unknown factor type "{text}" (use one of {", ".join(t.value for t in cls)})')


@dataclass(frozen=True)
class IrreducibleOrbitFactor:
    """A factor ``(1 ± h)^(±1)`` of the product formula."""

    homology_class: GroupElement
    kind: FactorType

    def series(self, group: GradedGroup, bound: Truncation) -> NovikovSeries:
        """
        The factor expanded below ``bound``.

        Raises:
            OrbitError: If the class does not have positive grade.
        """
        if group.grade(self.homology_class).sign() <= 0:
            raise OrbitError(f'Factor class {self.homology_class} has nonpositive grade')
        u = NovikovSeries.monomial(group, self.homology_class, self.kind.sign)
        if self.kind.exponent > 0:
            return (u + 1).truncate(bound)
        return geometric_inverse(u.truncate(bound), bound)

    def to_dict(self) -> Dict[str, Any]:
        return {'class': str(self.homology_class), 'type': self.kind.value}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], group: GradedGroup) -> 'IrreducibleOrbitFactor':
        try:
            return cls(_parse_class(str(data['class']), group), FactorType.parse(data['type']))
        except (KeyError, TypeError) as e:
            raise ScenarioError(f'Malformed orbit factor: {e}') from e


def zeta_product(factors: Iterable[IrreducibleOrbitFactor], group: GradedGroup, bound: Truncation) -> NovikovSeries:
    """
    ``prod (1 ± h)^(±1)`` below ``bound``.

    Raises:
        OrbitError: On a factor of nonpositive grade.
    """
    out = NovikovSeries.one(group, 1, bound)
    for f in factors:
        out = out * f.series(group, bound)
    return out


def expand_factor_to_orbits(f: IrreducibleOrbitFactor, group: GradedGroup, bound: Truncation) -> OrbitSet:
    """
    The k-fold covers read off from ``log (1 + s h)^e = e sum (-1)^(k+1) s^k h^k / k``:
    one orbit of class ``k h``, period k and sign ``e (-1)^(k+1) s^k`` per k.

    Raises:
        OrbitError: If the class has nonpositive grade or the bound is infinite.
    """
    g = group.grade(f.homology_class)
    if g.sign() <= 0:
        raise OrbitError(f'Factor class {f.homology_class} has nonpositive grade')
    if bound is None:
        raise OrbitError('Expanding a factor into orbits needs a finite grade bound')
    orbits = []
    k = 1
    while g * k < bound:
        sign = f.kind.exponent * (-1) ** (k + 1) * f.kind.sign ** k
        orbits.append(ClosedOrbit(f.homology_class * k, k, sign))
        k += 1
    return OrbitSet(group, tuple(orbits), bound)


class InvariantI(SplitValue):
    """``I = T_m * ζ`` on every field summand."""


@dataclass
class Invariant:
    """The torsion, zeta function and ``I`` of one flow."""

    torsion: TorsionValue
    zeta: NovikovSeries
    value: InvariantI = field(repr=False)


def invariant_I(C: BasedComplex, S: OrbitSet, precision: Truncation = None,
                ambiguity: Ambiguity = Ambiguity.SIGN, zeta: Optional[NovikovSeries] = None) -> Invariant:
    """
    ``I := T_m * ζ`` summand by summand.

    Args:
        C (BasedComplex): The Novikov complex.
        S (OrbitSet): Its closed orbits.
        precision (Truncation, optional): Working precision.
        ambiguity (Ambiguity, optional): Indeterminacy of the result.
        zeta (Optional[NovikovSeries], optional): A precomputed zeta
            function to use instead of the one of S.

    Raises:
        GroupError: If the complex and the orbits live over different groups.

    Returns:
        Invariant: Torsion, zeta and I.
    """
    if S.group != C.group:
        raise GroupError(f'Complex over {C.group} but orbits over {S.group}')
    bound = tmin(C.truncation, S.completeness, precision)
    t = torsion(C, bound, ambiguity)
    z = zeta_from_orbits(S, bound) if zeta is None else zeta.truncate(bound)
    value = t.times_series(z)
    return Invariant(t, z, InvariantI(value.split, value.values, ambiguity))
