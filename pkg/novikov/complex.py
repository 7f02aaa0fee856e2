"""
Finite free based chain complexes over the Novikov ring and their torsion.

A complex is stored column-wise: ``boundary[p][q]`` is the coefficient of
``q`` in ``∂p``, for ``deg q = deg p - 1``. Each generator carries the
lift (a group element) that fixes it as a basis vector.
"""

import logging
import random
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from novikov.cyclotomic import split_group_algebra
from novikov.errors import ComplexError, FieldError, ScenarioError
from novikov.field import Ambiguity, FieldElement, SplitValue
from novikov.grading import Truncation, render_truncation, tmin
from novikov.group import GradedGroup, GroupElement
from novikov.linalg import SeriesMatrix, require_certified
from novikov.series import NovikovSeries

log = logging.getLogger(__name__)

Boundary = Mapping[str, Mapping[str, NovikovSeries]]
Automorphism = Mapping[int, Mapping[str, Mapping[str, NovikovSeries]]]


@dataclass(frozen=True)
class Generator:
    """A basis element: a critical point with a chosen lift."""

    name: str
    degree: int
    lift: GroupElement


@dataclass(frozen=True)
class BasedComplex:
    """
    A based chain complex over ``Nov(H; N)``.
    """

    group: GradedGroup
    """The group H."""
    generators: Tuple[Generator, ...]
    """Generators in basis order."""
    boundary: Boundary = field(default_factory=dict)
    """``boundary[p][q]`` is the coefficient of q in ∂p; missing entries are zero."""
    truncation: Truncation = None
    """The working bound R of the entries."""
    order: int = 1
    """Coefficient field of the entries (1 for group-ring coefficients)."""

    def __post_init__(self) -> None:
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ComplexError(f'Duplicate generator names in {names}')
        degrees = {g.name: g.degree for g in self.generators}
        for g in self.generators:
            if not self.group.contains(g.lift):
                raise ComplexError(f'Lift {g.lift!r} of {g.name} is not in {self.group}')
        for col, entries in self.boundary.items():
            if col not in degrees:
                raise ComplexError(f'Boundary of unknown generator "{col}"')
            for row, x in entries.items():
                if row not in degrees:
                    raise ComplexError(f'Unknown generator "{row}" in ∂{col}')
                if degrees[row] != degrees[col] - 1:
                    raise ComplexError(f'∂{col} (degree {degrees[col]}) has a term in {row} (degree {degrees[row]})')
                if x.group != self.group or x.order != self.order:
                    raise ComplexError(f'Entry ∂{col}[{row}] is over the wrong ring')

    # -- structure ------------------------------------------------------------------

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    def generator(self, name: str) -> Generator:
        """
        Raises:
            ComplexError: If there is no such generator.
        """
        for g in self.generators:
            if g.name == name:
                return g
        raise ComplexError(f'Unknown generator "{name}"')

    def degree(self, name: str) -> int:
        return self.generator(name).degree

    @property
    def degrees(self) -> List[int]:
        """All degrees from the lowest to the highest occupied one."""
        occupied = [g.degree for g in self.generators]
        return list(range(min(occupied), max(occupied) + 1)) if occupied else []

    def in_degree(self, i: int) -> List[str]:
        return [g.name for g in self.generators if g.degree == i]

    def euler_characteristic(self) -> int:
        return sum((-1) ** g.degree for g in self.generators)

    def zero(self) -> NovikovSeries:
        return NovikovSeries.zero(self.group, self.order, self.truncation)

    def entry(self, col: str, row: str) -> NovikovSeries:
        """The coefficient of ``row`` in ``∂col``."""
        x = self.boundary.get(col, {}).get(row)
        return self.zero() if x is None else x

    def matrix(self, i: int, rows: Optional[Sequence[str]] = None, cols: Optional[Sequence[str]] = None) -> SeriesMatrix:
        """
        ``∂_i`` as a matrix from degree i (columns) to degree i - 1 (rows).
        """
        rows = self.in_degree(i - 1) if rows is None else rows
        cols = self.in_degree(i) if cols is None else cols
        return SeriesMatrix.build(self.group, self.order, len(rows), len(cols),
                                  lambda r, c: self.entry(cols[c], rows[r]), self.truncation)

    def with_matrix(self, i: int, m: SeriesMatrix) -> 'BasedComplex':
        """Replace ``∂_i`` by a matrix in the layout of :meth:`matrix`."""
        rows, cols = self.in_degree(i - 1), self.in_degree(i)
        boundary = {k: dict(v) for k, v in self.boundary.items() if k not in cols}
        for c, col in enumerate(cols):
            entries = {row: m[r, c] for r, row in enumerate(rows) if not (m[r, c].is_zero and m[r, c].is_exact)}
            if entries:
                boundary[col] = entries
        return replace(self, boundary=boundary)

    def same_as(self, other: 'BasedComplex') -> bool:
        """Same generators, lifts and boundary modulo the common truncation."""
        if self.generators != other.generators:
            return False
        return all(self.entry(c, r).agrees(other.entry(c, r))
                   for c in self.names for r in self.in_degree(self.degree(c) - 1))

    # -- serialisation --------------------------------------------------------

    def to_dict(self) -> Dict[str, Any]:
        return {
            'generators': [{'name': g.name, 'degree': g.degree, 'lift': str(g.lift)} for g in self.generators],
            'boundary': {col: {row: str(x) for row, x in entries.items() if not x.is_zero}
                         for col, entries in self.boundary.items()},
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], group: GradedGroup, truncation: Truncation = None) -> 'BasedComplex':
        """
        Read the scenario form of a complex.

        Raises:
            ScenarioError: On malformed generators or entries.
        """
        try:
            gens = []
            for g in data.get('generators', []):
                lift = NovikovSeries.parse(str(g.get('lift', '1')), group)
                if len(lift) != 1 or not lift.leading[1].is_one or not lift.is_exact:
                    raise ScenarioError(f'Lift of {g.get("name")} must be a single monomial, got "{g.get("lift")}"')
                gens.append(Generator(str(g['name']), int(g['degree']), lift.leading[0]))
            boundary = {}
            for col, entries in (data.get('boundary') or {}).items():
                boundary[col] = {row: _parse_entry(text, group, truncation) for row, text in entries.items()}
            return cls(group, tuple(gens), boundary, truncation)
        except (KeyError, TypeError) as e:
            raise ScenarioError(f'Malformed complex: {e}') from e
        except ComplexError as e:
            raise ScenarioError(str(e)) from e


def _parse_entry(text: str, group: GradedGroup, truncation: Truncation) -> NovikovSeries:
    x = NovikovSeries.parse(str(text), group)
    return x.truncate(truncation) if not x.is_exact else x


@dataclass
class BoundaryFailure:
    degree: int
    """Degree of the column generator."""
    row: str
    col: str
    value: NovikovSeries

    def __str__(self) -> str:
        return f'(∂∂)[{self.row}, {self.col}] in degree {self.degree} is {self.value}, not 0'


@dataclass
class BoundaryReport:
    """The result of :func:`check_boundary`."""

    failures: List[BoundaryFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_boundary(C: BasedComplex) -> BoundaryReport:
    """
    Verify ``∂∂ = 0`` entry by entry modulo the working truncation.

    Args:
        C (BasedComplex): The complex.

    Returns:
        BoundaryReport: Every composite entry that is not certified zero.
    """
    report = BoundaryReport()
    for i in C.degrees:
        for col in C.in_degree(i):
            for row in C.in_degree(i - 2):
                acc = C.zero()
                for mid in C.in_degree(i - 1):
                    acc = acc + C.entry(col, mid) * C.entry(mid, row)
                if not acc.is_zero:
                    report.failures.append(BoundaryFailure(i, row, col, acc))
    log.debug('checked ∂∂ = 0 below O(%s): %d failures', render_truncation(C.truncation), len(report.failures))
    return report


class TorsionValue(SplitValue):
    """
    The torsion, one value per field summand; a summand is zero when the
    complex is not acyclic over it.
    """


def _summand_torsion(C: BasedComplex, d: int, precision: Truncation,
                     labels: Mapping[str, str]) -> Optional[FieldElement]:
    value = NovikovSeries.one(C.group, d)
    previous: List[str] = []
    for i in C.degrees:
        cols = C.in_degree(i)
        if not previous:
            previous = cols
            continue
        m = C.matrix(i, rows=previous).map(lambda x: x.project(d), order=d)
        elim = m.eliminate(precision=precision, labels=([labels[r] for r in previous], [labels[c] for c in cols]))
        if len(elim.pivots) < len(previous):
            log.debug('summand %d: only %d of %d pivots in degree %d, not acyclic',
                      d, len(elim.pivots), len(previous), i)
            return None
        det = NovikovSeries.one(C.group, d)
        for _, _, p in elim.pivots:
            det = det * p
        det = det if elim.sign > 0 else -det
        value = value * (det if i % 2 == 0 else det.invert(precision))
        chosen = set(elim.pivot_columns)
        previous = [c for k, c in enumerate(cols) if k not in chosen]
    if previous:
        log.debug('summand %d: %d top generators left over, not acyclic', d, len(previous))
        return None
    return FieldElement(require_certified(value, f'the torsion on summand {d}'))


def torsion(C: BasedComplex, precision: Truncation = None, ambiguity: Ambiguity = Ambiguity.SIGN,
            rng: Optional[random.Random] = None) -> TorsionValue:
    """
    The torsion ``prod_i det(∂_i: D_i -> E_(i-1))^((-1)^i)`` on every field summand.

    Degrees are walked upwards. In degree i the rows are the part
    ``E_(i-1)`` of degree i - 1 not hit by the previous selection, and a
    pivoted elimination selects ``D_i``. Over a field a full selection
    exists exactly when the complex is acyclic, so no backtracking is needed.

    Args:
        C (BasedComplex): The complex.
        precision (Truncation, optional): Working precision; defaults to the
            complex's truncation.
        ambiguity (Ambiguity, optional): Indeterminacy of the result.
            Defaults to ``±1``.
        rng (Optional[random.Random], optional): If given, pivot ties are
            broken in a random order instead of by generator name.

    Raises:
        TruncationError: If the window is too small to certify the result.

    Returns:
        TorsionValue: The torsion.
    """
    split = split_group_algebra(C.group.torsion_order)
    work = tmin(C.truncation, precision)
    names = C.names
    if rng is not None:
        order = names[:]
        rng.shuffle(order)
        labels = {n: f'{order.index(n):06d}' for n in names}
    else:
        labels = {n: n for n in names}
    if C.order != 1 and len(split) > 1:
        raise FieldError('A complex with cyclotomic entries cannot be split again')
    values = tuple(_summand_torsion(C, C.order if C.order != 1 else s.order, work, labels) for s in split)
    return TorsionValue(split, values, ambiguity)


def automorphism_matrix(C: BasedComplex, A: Automorphism, i: int) -> SeriesMatrix:
    """``A_i`` as a matrix on degree i (identity where A has no entry for i)."""
    names = C.in_degree(i)
    if i not in A:
        return SeriesMatrix.identity(C.group, C.order, len(names), C.truncation)
    cols = A[i]
    for col, entries in cols.items():
        if col not in names or any(r not in names for r in entries):
            raise ComplexError(f'Automorphism A_{i} mentions generators outside degree {i}')
    one = NovikovSeries.one(C.group, C.order)

    def entry(r: int, c: int) -> Optional[NovikovSeries]:
        if names[c] in cols:
            return cols[names[c]].get(names[r])
        return one if r == c else None
    return SeriesMatrix.build(C.group, C.order, len(names), len(names), entry, C.truncation)


def automorphism_determinants(C: BasedComplex, A: Automorphism, precision: Truncation = None) -> Dict[int, NovikovSeries]:
    """``det(A_i)`` for every degree of the complex."""
    work = tmin(C.truncation, precision)
    return {i: automorphism_matrix(C, A, i).determinant(work) for i in C.degrees}


def change_basis(C: BasedComplex, A: Automorphism, precision: Truncation = None) -> BasedComplex:
    """
    Replace the boundary by ``A^-1 ∂ A`` degreewise.

    Args:
        C (BasedComplex): The complex.
        A (Automorphism): ``A[i][p][q]`` is the coefficient of q in ``A_i p``;
            degrees without entries are the identity.
        precision (Truncation, optional): Working precision for inverses.

    Raises:
        ComplexError: If some ``A_i`` is not invertible.

    Returns:
        BasedComplex: The complex with the conjugated boundary.
    """
    work = tmin(C.truncation, precision)
    inverses = {}
    for i in C.degrees:
        try:
            inverses[i] = automorphism_matrix(C, A, i).inverse(work) if i in A else None
        except FieldError as e:
            raise ComplexError(f'A_{i} is not invertible: {e}') from e
    out = C
    for i in C.degrees[1:]:
        m = C.matrix(i)
        if i in A:
            m = m @ automorphism_matrix(C, A, i)
        if inverses.get(i - 1) is not None:
            m = inverses[i - 1] @ m
        out = out.with_matrix(i, m)
    return out


def shift_lift(C: BasedComplex, name: str, h: GroupElement) -> BasedComplex:
    """
    Translate the lift of one generator by h.

    The new basis vector is ``h * p``: the column of p is multiplied by h
    and the row of p by ``h^-1``. The torsion changes by ``h^((-1)^deg p)``.

    Raises:
        ComplexError: If the generator does not exist.
    """
    g = C.generator(name)
    gens = tuple(replace(x, lift=x.lift + h) if x.name == name else x for x in C.generators)
    boundary: Dict[str, Dict[str, NovikovSeries]] = {}
    for col, entries in C.boundary.items():
        boundary[col] = {row: x.shift(h) if col == name else x.shift(-h) if row == name else x
                         for row, x in entries.items()}
    log.debug('shifted lift of %s (degree %d) by %s', name, g.degree, h)
    return replace(C, generators=gens, boundary=boundary)


def translate_lifts(C: BasedComplex, h: GroupElement) -> BasedComplex:
    """
    Translate every lift by h. The matrices are unchanged; the torsion
    changes by ``h^χ``, which is trivial on acyclic summands (χ = 0 there).
    """
    return replace(C, generators=tuple(replace(g, lift=g.lift + h) for g in C.generators))


def shift_degrees(C: BasedComplex, k: int) -> BasedComplex:
    """Relabel every degree i as i + k."""
    return replace(C, generators=tuple(replace(g, degree=g.degree + k) for g in C.generators))


def empty_complex(group: GradedGroup, truncation: Truncation = None) -> BasedComplex:
    return BasedComplex(group, (), {}, truncation)
