"""
Complexes of exact forms and their embedding into the Novikov ring.

A Morse function f gives a complex over the group ring ``Z[H]`` with
polynomial boundary entries. For a closed form ``β = df + ξ`` the Novikov
complex is the same complex with the entries read in ``Λ = Nov(H; ξ)``,
and the torsion over Λ is the image of the group ring torsion under
``ι: Q(Z[H]) -> Q(Λ)``.

Group ring torsions are computed as rational functions with sympy on the
rational field summands ``d = 1, 2``. Other summands are skipped with a
warning.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional

import sympy

from novikov.complex import BasedComplex, Generator, TorsionValue
from novikov.cyclotomic import CyclotomicNumber, FieldSplit, split_group_algebra
from novikov.errors import ComplexError, FieldError, GroupError
from novikov.field import Ambiguity, FieldElement
from novikov.grading import Truncation
from novikov.group import GradedGroup, GroupElement
from novikov.series import NovikovSeries

log = logging.getLogger(__name__)


def _symbols(group: GradedGroup) -> List[sympy.Symbol]:
    return [sympy.Symbol(n) for n in group.names]


def series_to_expr(x: NovikovSeries, d: int = 1) -> sympy.Expr:
    """
    An exact group ring element as a Laurent polynomial, the torsion
    generator evaluated at ``zeta_d`` (``d = 1, 2``).

    Raises:
        ComplexError: If x is truncated.
        FieldError: If ``d > 2`` or the coefficients are not rational.
    """
    if not x.is_exact:
        raise ComplexError(f'Group ring entries must be polynomials, got {x}')
    if d > 2:
        raise FieldError(f'Group ring torsion over Q(zeta_{d}) is not supported')
    syms = _symbols(x.group)
    out = sympy.Integer(0)
    for h, c in x:
        q = c.rational
        term = sympy.Rational(q.numerator, q.denominator) * (-1 if d == 2 and h.torsion % 2 else 1)
        for s, e in zip(syms, h.free):
            term *= s ** e
        out += term
    return out


def _summand_torsion(C: BasedComplex, d: int) -> Optional[sympy.Expr]:
    value = sympy.Integer(1)
    previous: List[str] = []
    for i in C.degrees:
        cols = C.in_degree(i)
        if not previous:
            previous = cols
            continue
        m = sympy.Matrix(len(previous), len(cols),
                         lambda r, c: series_to_expr(C.entry(cols[c], previous[r]), d))
        _, pivots = m.rref(iszerofunc=lambda e: sympy.cancel(e) == 0, simplify=sympy.cancel)
        if len(pivots) < len(previous):
            log.debug('group ring summand %d: rank %d of %d in degree %d', d, len(pivots), len(previous), i)
            return None
        det = sympy.cancel(m.extract(list(range(len(previous))), list(pivots)).det())
        value = value * det if i % 2 == 0 else value / det
        previous = [c for k, c in enumerate(cols) if k not in pivots]
    if previous:
        return None
    return sympy.cancel(value)


RATIONAL_SUMMANDS = (1, 2)
"""Orders d for which ``zeta_d`` is rational."""


def group_ring_torsion(C: BasedComplex) -> Dict[int, Optional[sympy.Expr]]:
    """
    The torsion of a complex over ``Z[H]`` as rational functions, keyed by
    the order d of the field summand (None for a non-acyclic summand).
    Summands with ``d > 2`` are left out.

    Raises:
        ComplexError: If some entry is not a polynomial.
    """
    out: Dict[int, Optional[sympy.Expr]] = {}
    for s in split_group_algebra(C.group.torsion_order):
        if s.order not in RATIONAL_SUMMANDS:
            log.warning('Skipping %s: the group ring torsion is only computed on rational summands', s)
            continue
        out[s.order] = _summand_torsion(C, s.order)
    return out


def embed_fraction(expr: sympy.Expr, group: GradedGroup, d: int, truncation: Truncation) -> NovikovSeries:
    """
    ``ι(P/Q)``: expand a rational function in the Novikov ring of ``group``.

    Raises:
        FieldError: If the denominator vanishes.
        TruncationError: If the expansion needs a finite truncation.
    """
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    a = _poly_series(num, group, d)
    b = _poly_series(den, group, d)
    if b.is_zero:
        raise FieldError(f'Zero denominator in {expr}')
    return (a * b.invert(truncation)).truncate(truncation)


def _poly_series(expr: sympy.Expr, group: GradedGroup, d: int) -> NovikovSeries:
    syms = _symbols(group)
    if not syms:
        q = sympy.Rational(expr)
        return NovikovSeries.constant(group, CyclotomicNumber.of(d, Fraction(int(q.p), int(q.q))), d)
    poly = sympy.Poly(sympy.expand(expr), *syms)
    return NovikovSeries.from_terms(
        group, d, [(group.element(e), CyclotomicNumber.of(d, Fraction(int(c.p), int(c.q)))) for e, c in poly.terms()])


def _move(h: GroupElement, target: GradedGroup) -> GroupElement:
    return target.element(h.free, h.torsion)


def latour_embed(C: BasedComplex, target: GradedGroup, truncation: Truncation = None) -> BasedComplex:
    """
    Read a group ring complex in the Novikov ring of ``target``.

    Args:
        C (BasedComplex): A complex with polynomial entries.
        target (GradedGroup): The same group with the grading of the closed form.
        truncation (Truncation, optional): The bound of the new complex.

    Raises:
        ComplexError: If some entry is truncated.
        GroupError: If the groups differ in rank or torsion.

    Returns:
        BasedComplex: The Novikov complex.
    """
    if (target.free_rank, target.torsion_order) != (C.group.free_rank, C.group.torsion_order):
        raise GroupError(f'Cannot embed a complex over {C.group} into {target}')
    boundary = {}
    for col, entries in C.boundary.items():
        out = {}
        for row, x in entries.items():
            if not x.is_exact:
                raise ComplexError(f'∂{col}[{row}] = {x} is not a polynomial')
            out[row] = NovikovSeries.from_terms(target, C.order, [(_move(h, target), c) for h, c in x], truncation)
        boundary[col] = out
    gens = tuple(Generator(g.name, g.degree, _move(g.lift, target)) for g in C.generators)
    return BasedComplex(target, gens, boundary, truncation, C.order)


def embedded_torsion(C: BasedComplex, target: GradedGroup, truncation: Truncation,
                     ambiguity: Ambiguity = Ambiguity.SIGN) -> TorsionValue:
    """
    ``ι`` of the group ring torsion, summand by summand. The value lives
    on the rational summands only; compare it with ``restrict``.
    """
    exprs = group_ring_torsion(C)
    split = split_group_algebra(C.group.torsion_order)
    split = FieldSplit(split.torsion_order, tuple(s for s in split if s.order in exprs))
    values = []
    for s in split:
        expr = exprs[s.order]
        values.append(None if expr is None else FieldElement(embed_fraction(expr, target, s.order, truncation)))
    log.debug('group ring torsion %s', [None if v is None else str(v) for v in values])
    return TorsionValue(split, tuple(values), ambiguity)
