"""
Zeta functions and torsions of mapping tori from homology data.

A fibration over the circle with monodromy φ is described by the
integer matrices ``H_i(φ)`` on the homology of the fibre. Its zeta
function counts fixed points of ``φ^k`` through Lefschetz numbers, and
its torsion is ``prod_i det(1 - t H_i)^((-1)^(i+1))``.
"""

import logging
from fractions import Fraction
from typing import List, Sequence

import sympy

from novikov.cyclotomic import CyclotomicNumber
from novikov.errors import ScenarioError
from novikov.field import FieldElement
from novikov.grading import Grade, Truncation
from novikov.group import GradedGroup
from novikov.series import NovikovSeries

log = logging.getLogger(__name__)

FibreMaps = List[sympy.Matrix]

CIRCLE = GradedGroup(1, 0, (Grade.of(1),))
"""``H = Z`` generated by t, of grade 1: the base circle of a mapping torus."""

T = sympy.Symbol('t')


def fibre_maps(rows: Sequence[Sequence[Sequence[int]]]) -> FibreMaps:
    """
    Read ``H_0, H_1, ...`` from nested integer lists.

    Raises:
        ScenarioError: If some map is not a square integer matrix.
    """
    out = []
    for i, m in enumerate(rows):
        try:
            matrix = sympy.Matrix(m)
        except (TypeError, ValueError) as e:
            raise ScenarioError(f'H_{i} is not a matrix: {e}') from e
        if not matrix.is_square or any(not x.is_integer for x in matrix):
            raise ScenarioError(f'H_{i} must be a square integer matrix, got {m!r}')
        out.append(matrix)
    return out


def lefschetz_numbers(H: FibreMaps, count: int) -> List[int]:
    """
    ``L(φ^k) = sum_i (-1)^i tr(H_i^k)`` for ``k = 1..count``.
    """
    out = []
    powers = [sympy.eye(m.rows) for m in H]
    for _ in range(count):
        powers = [p * m for p, m in zip(powers, H)]
        out.append(int(sum((-1) ** i * p.trace() for i, p in enumerate(powers))))
    return out


def _window(R: Truncation) -> int:
    if R is None:
        raise ScenarioError('A mapping torus needs a finite truncation')
    return max(0, int(sympy.ceiling(float(R))) - 1)


def lefschetz_zeta(H: FibreMaps, R: Truncation) -> NovikovSeries:
    """
    ``exp(sum_k L(φ^k) t^k / k)`` below R.

    Args:
        H (FibreMaps): The maps ``H_0, ..., H_(n-1)``.
        R (Truncation): The bound.

    Returns:
        NovikovSeries: The zeta function over ``H = Z``.
    """
    counts = lefschetz_numbers(H, _window(R))
    log.debug('Lefschetz numbers %s', counts)
    x = NovikovSeries.from_terms(CIRCLE, 1, [(CIRCLE.element((k,)), CyclotomicNumber.of(1, Fraction(L, k)))
                                            for k, L in enumerate(counts, start=1)], R)
    if x.is_zero:
        return NovikovSeries.one(CIRCLE, 1, R)
    return x.exp_plus(R)


def characteristic_series(m: sympy.Matrix) -> NovikovSeries:
    """``det(1 - t m)`` as an exact polynomial in t."""
    poly = sympy.Poly((sympy.eye(m.rows) - T * m).det(), T)
    return NovikovSeries.from_terms(
        CIRCLE, 1,
        [(CIRCLE.element((e,)), CyclotomicNumber.of(1, Fraction(int(c.p), int(c.q))))
         for (e,), c in poly.terms()])


def mapping_torus_torsion(H: FibreMaps, R: Truncation) -> FieldElement:
    """
    ``prod_i det(1 - t H_i)^((-1)^(i+1))`` expanded below R.
    """
    out = NovikovSeries.one(CIRCLE, 1, R)
    for i, m in enumerate(H):
        det = characteristic_series(m)
        out = out * (det if i % 2 else det.invert(R))
    return FieldElement(out.truncate(R))


def cover_fibre_maps(H: FibreMaps, k: int) -> FibreMaps:
    """
    The k-fold cyclic cover of a mapping torus is the mapping torus of ``φ^k``.
    """
    return [m ** k for m in H]
