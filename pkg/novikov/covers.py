"""
Finite cyclic covers.

A surjection ``m: H -> Z/k`` with kernel K makes ``Λ = Nov(H)`` a free
module of rank k over ``Λ̂ = Nov(K)``, with basis the coset
representatives ``c_0, ..., c_(k-1)``. Norm and trace of multiplication
by y are computed as the product and sum of the twists
``σ_i(h) = θ^(i m(h)) h`` (θ a primitive k-th root of unity) and then
recognised as series over K.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from novikov.complex import BasedComplex, Generator, torsion
from novikov.cyclotomic import CyclotomicNumber
from novikov.errors import CoverError, NovikovError
from novikov.field import Ambiguity, FieldElement, SplitValue
from novikov.grading import Grade, Truncation, tmin, tshift
from novikov.group import CyclicQuotient, GradedGroup, GroupElement, Subgroup, kernel_of_quotient
from novikov.lefschetz import FibreMaps, cover_fibre_maps, lefschetz_zeta
from novikov.linalg import SeriesMatrix
from novikov.moves import FlowState
from novikov.orbits import ClosedOrbit, OrbitSet
from novikov.series import NovikovSeries

log = logging.getLogger(__name__)


def cover_subgroup(group: GradedGroup, m: CyclicQuotient) -> Subgroup:
    """
    The kernel data of m, refusing quotients that do not annihilate torsion.

    Raises:
        CoverError: If H has torsion and ``m(s) != 0``.
        GroupError: If m is not a surjection.
    """
    m.check(group)
    if group.torsion_order and not m.annihilates_torsion:
        raise CoverError(f'm(s) = {m.torsion_weight}: the quotient has to annihilate the torsion of {group}')
    return kernel_of_quotient(group, m)


def _kernel_term(sub: Subgroup, kappa: GroupElement, c: CyclotomicNumber, order: int) -> Tuple[GroupElement, CyclotomicNumber]:
    # a projected series has no torsion exponents; K's torsion generator is s itself
    if order != 1 and kappa.torsion:
        return sub.kernel.element(kappa.free, 0), c * CyclotomicNumber.root(order, kappa.torsion)
    return kappa, c


def restrict_series(y: NovikovSeries, sub: Subgroup) -> NovikovSeries:
    """
    ``ι*(y)``: the terms of y that lie in K, read as a series over K.
    """
    terms = []
    for h, c in y:
        kappa = sub.restrict_element(h)
        if kappa is not None:
            terms.append(_kernel_term(sub, kappa, c, y.order))
    return NovikovSeries.from_terms(sub.kernel, y.order, terms, y.truncation)


def push_series(y: NovikovSeries, sub: Subgroup) -> NovikovSeries:
    """``ι_*(y)``: a series over K read as a series over H."""
    return NovikovSeries.from_terms(sub.parent, y.order, [(sub.embed(k), c) for k, c in y], y.truncation)


def twist(y: NovikovSeries, m: CyclicQuotient, i: int) -> NovikovSeries:
    """
    ``σ_i(y) = sum a_h θ^(i m(h)) h`` with coefficients in ``Q(zeta_L)``,
    ``L = lcm(order, k)``.
    """
    k = m.modulus
    L = y.order * k // math.gcd(y.order, k)
    step = L // k
    terms = [(h, c.lift(L) * CyclotomicNumber.root(L, step * i * m(h))) for h, c in y]
    return NovikovSeries.from_terms(y.group, L, terms, y.truncation)


def _descend(x: NovikovSeries, sub: Subgroup, order: int, what: str) -> NovikovSeries:
    terms = []
    for h, c in x:
        kappa = sub.restrict_element(h)
        if kappa is None:
            raise CoverError(f'{what} has the term {c}*{h} outside the kernel')
        v = c.restrict(order)
        if v is None:
            raise CoverError(f'{what} has the coefficient {c} at {h} outside Q(zeta_{order})')
        terms.append(_kernel_term(sub, kappa, v, order))
    return NovikovSeries.from_terms(sub.kernel, order, terms, x.truncation)


def cover_norm(y: NovikovSeries, m: CyclicQuotient, sub: Optional[Subgroup] = None) -> NovikovSeries:
    """
    ``Norm(y) = prod_(i<k) σ_i(y)`` as a series over K.

    Args:
        y (NovikovSeries): A series over H.
        m (CyclicQuotient): The quotient ``H -> Z/k``.
        sub (Optional[Subgroup], optional): Precomputed kernel data.

    Raises:
        CoverError: If the product does not descend to K.

    Returns:
        NovikovSeries: The norm, with the coefficient field of y.
    """
    sub = sub or cover_subgroup(y.group, m)
    out = twist(y, m, 0)
    for i in range(1, m.modulus):
        out = out * twist(y, m, i)
    return _descend(out, sub, y.order, f'Norm({y})')


def cover_trace(y: NovikovSeries, m: CyclicQuotient, sub: Optional[Subgroup] = None) -> NovikovSeries:
    """
    ``Tr(y) = sum_(i<k) σ_i(y)`` as a series over K; equals ``k ι*(y)``.

    Raises:
        CoverError: If the sum does not descend to K.
    """
    sub = sub or cover_subgroup(y.group, m)
    out = twist(y, m, 0)
    for i in range(1, m.modulus):
        out = out + twist(y, m, i)
    return _descend(out, sub, y.order, f'Tr({y})')


def _section_grades(sub: Subgroup) -> List[Grade]:
    return [sub.parent.grade(c) for c in sub.section]


def _spread(sub: Subgroup) -> Grade:
    grades = _section_grades(sub)
    return max(grades) - min(grades)


def multiplication_matrix(y: NovikovSeries, sub: Subgroup) -> SeriesMatrix:
    """
    Multiplication by y on ``Λ = ⊕ c_j ι(Λ̂)`` as a k×k matrix over ``Λ̂``;
    column j holds the coordinates of ``y c_j``.
    """
    k = sub.index
    grades = _section_grades(sub)
    cells: Dict[Tuple[int, int], List[Tuple[GroupElement, CyclotomicNumber]]] = {}
    for j in range(k):
        for h, c in y:
            row, kappa = sub.split(h + sub.section[j])
            cells.setdefault((row, j), []).append(_kernel_term(sub, kappa, c, y.order))

    def entry(r: int, c: int) -> NovikovSeries:
        return NovikovSeries.from_terms(sub.kernel, y.order, cells.get((r, c), []),
                                        tshift(y.truncation, grades[c] - grades[r]))
    return SeriesMatrix.build(sub.kernel, y.order, k, k, entry, tshift(y.truncation, -_spread(sub)))


def norm_by_determinant(y: NovikovSeries, sub: Subgroup, precision: Truncation = None) -> NovikovSeries:
    """``Norm(y)`` as the determinant of :func:`multiplication_matrix`."""
    bound = tmin(tshift(y.truncation, -_spread(sub)), precision)
    return multiplication_matrix(y, sub).determinant(bound)


def _cover_name(name: str, j: int, k: int) -> str:
    return name if k == 1 else f'{name}_{j}'


def cover_complex(C: BasedComplex, m: CyclicQuotient, sub: Optional[Subgroup] = None) -> BasedComplex:
    """
    The complex ``Ĉ`` over ``Nov(K)``: each generator p becomes ``p_0, ..., p_(k-1)``
    (the basis vectors ``c_j p``) and every entry is split along the cosets.

    Lifts of the cover generators are the identity of K. The truncation
    shrinks by the spread of the section's grades.

    Raises:
        CoverError: If m does not annihilate the torsion of H.
    """
    sub = sub or cover_subgroup(C.group, m)
    k = sub.index
    grades = _section_grades(sub)
    gens = tuple(Generator(_cover_name(g.name, j, k), g.degree, sub.kernel.identity)
                 for g in C.generators for j in range(k))
    R = tshift(C.truncation, -_spread(sub))
    boundary: Dict[str, Dict[str, NovikovSeries]] = {}
    for col, entries in C.boundary.items():
        for j in range(k):
            cells: Dict[Tuple[str, int], List[Tuple[GroupElement, CyclotomicNumber]]] = {}
            for row, x in entries.items():
                for h, c in x:
                    jj, kappa = sub.split(h + sub.section[j])
                    cells.setdefault((row, jj), []).append(_kernel_term(sub, kappa, c, C.order))
            out = {}
            for (row, jj), terms in cells.items():
                x = NovikovSeries.from_terms(sub.kernel, C.order, terms,
                                             tshift(C.truncation, grades[j] - grades[jj])).truncate(R)
                if not (x.is_zero and x.is_exact):
                    out[_cover_name(row, jj, k)] = x
            if out:
                boundary[_cover_name(col, j, k)] = out
    log.debug('cover complex of index %d: %d generators below O(%s)', k, len(gens), R)
    return BasedComplex(sub.kernel, gens, boundary, R, C.order)


def cover_orbits(S: OrbitSet, m: CyclicQuotient, sub: Optional[Subgroup] = None) -> OrbitSet:
    """
    The closed orbits of the cover.

    An orbit of period p covers a prime orbit of class ``c_1 = [γ]/p``.
    With ``l`` the order of ``m(c_1)`` in ``Z/k`` it lifts iff ``l | p``,
    to ``k/l`` orbits of period ``p/l``.

    Raises:
        CoverError: If some class is not divisible by its period.
    """
    sub = sub or cover_subgroup(S.group, m)
    k = sub.index
    out = []
    for o in S:
        if any(x % o.period for x in o.homology_class.free):
            raise CoverError(f'Orbit class {o.homology_class} is not divisible by its period {o.period}')
        prime = S.group.element(tuple(x // o.period for x in o.homology_class.free))
        l = k // math.gcd(m(prime), k)
        if o.period % l:
            continue
        kappa = sub.restrict_element(o.homology_class)
        if kappa is None:
            raise CoverError(f'Orbit class {o.homology_class} does not lie in the kernel')
        out.extend([ClosedOrbit(kappa, o.period // l, o.sign)] * (k // l))
    log.debug('%d orbits lift to %d orbits of the index %d cover', len(S), len(out), k)
    return OrbitSet(sub.kernel, tuple(out), S.completeness)


def cover_state(state: FlowState, m: CyclicQuotient, sub: Optional[Subgroup] = None,
                fibre: Optional[FibreMaps] = None) -> FlowState:
    """
    Cover complex, cover orbits and the zeta ledger of the cover.

    For a mapping torus (``fibre`` given) the ledger is the zeta function
    of the k-th power of the monodromy. Otherwise the ledger collects
    self-slides, which have no orbit model, and its norm is taken.

    Raises:
        CoverError: If the cover cannot be formed.
    """
    sub = sub or cover_subgroup(state.group, m)
    complex_ = cover_complex(state.complex, m, sub)
    orbits = cover_orbits(state.orbits, m, sub)
    if fibre is not None:
        factor = fibre_cover_zeta(fibre, sub, tmin(complex_.truncation, orbits.completeness))
    else:
        factor = None if state.factor is None else cover_norm(state.factor, m, sub)
    return FlowState(complex_, orbits, factor)


def norm_value(value: SplitValue, m: CyclicQuotient, sub: Subgroup) -> SplitValue:
    """The norm of every nonzero summand; zero summands stay zero."""
    values = tuple(None if v is None else FieldElement(cover_norm(v.series, m, sub)) for v in value.values)
    return type(value)(value.split, values, value.ambiguity)


def random_positive_series(group: GradedGroup, rng: random.Random, terms: int = 3, bound: int = 2) -> NovikovSeries:
    """A series with up to ``terms`` integer terms of positive grade."""
    acc = []
    for _ in range(terms):
        for _ in range(64):
            h = group.random_element(rng, bound)
            if group.grade(h).sign() > 0:
                acc.append((h, CyclotomicNumber.of(1, Fraction(rng.choice((-2, -1, 1, 2))))))
                break
    return NovikovSeries.from_terms(group, 1, acc)


def fibre_cover_zeta(H: FibreMaps, sub: Subgroup, R: Truncation) -> NovikovSeries:
    """
    ζ of the k-fold cover of a mapping torus, computed from ``H_i^k`` and
    read as a series over K (one turn of the cover is ``t^k``).

    Raises:
        CoverError: If H is not the circle group.
    """
    if sub.parent.free_rank != 1 or sub.parent.torsion_order:
        raise CoverError(f'A mapping torus lives over Z, not {sub.parent}')
    k = sub.index
    turn = sub.embed(sub.kernel.generator(0)).free[0]
    sign = 1 if turn > 0 else -1
    z = lefschetz_zeta(cover_fibre_maps(H, k), None if R is None else R * Fraction(1, k))
    terms = [(sub.kernel.element((sign * h.free[0],)), c) for h, c in z]
    return NovikovSeries.from_terms(sub.kernel, 1, terms, R)


@dataclass
class CoverCheck:
    """One identity between a flow and its cover."""

    name: str
    ok: bool
    detail: str = ''


@dataclass
class CoverReport:
    """The covered state and the identities checked on it."""

    quotient: CyclicQuotient
    subgroup: Subgroup = field(repr=False)
    state: FlowState = field(repr=False)
    norm_zeta: NovikovSeries = field(repr=False)
    checks: List[CoverCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _check(report: CoverReport, name: str, ok: bool, detail: str = '') -> None:
    report.checks.append(CoverCheck(name, ok, detail))
    log.debug('cover check %s: %s %s', name, 'pass' if ok else 'FAIL', detail)


def check_cover(state: FlowState, m: CyclicQuotient, precision: Truncation = None,
                ambiguity: Ambiguity = Ambiguity.SIGN, rng: Optional[random.Random] = None,
                samples: int = 5, fibre: Optional[FibreMaps] = None) -> CoverReport:
    """
    Pass to the cover and check the norm and trace identities.

    The checks are ``ζ(X̂) = Norm(ζ)``, ``τ(Ĉ) = Norm(τ)`` and
    ``I(X̂) = Norm(I)`` per summand, ``Tr = k ι*`` and
    ``log Norm(1 + x) = Tr log(1 + x)`` on ``ζ - 1`` and a few random x,
    that nonzero summands of I have nonzero norms, and that the norm of ζ
    is the determinant of multiplication by ζ.
    ``ζ(X̂)`` comes from the lifted orbits; for a mapping torus it is the
    zeta function of the k-th power of the monodromy.

    Args:
        state (FlowState): The flow on X.
        m (CyclicQuotient): The quotient ``H -> Z/k``.
        precision (Truncation, optional): Working precision.
        ambiguity (Ambiguity, optional): What torsions are compared modulo.
        rng (Optional[random.Random], optional): Source of the random samples.
        samples (int, optional): Number of random x.
        fibre (Optional[FibreMaps], optional): The homology maps, when the
            state is a mapping torus.

    Raises:
        CoverError: If the cover cannot be formed.

    Returns:
        CoverReport: The report.
    """
    rng = rng or random.Random(0)
    sub = cover_subgroup(state.group, m)
    k = sub.index
    bound = tmin(state.truncation, precision)
    covered = cover_state(state, m, sub, fibre)
    cbound = tmin(covered.truncation, bound)

    zeta = state.zeta(bound)
    norm_zeta = cover_norm(zeta, m, sub)
    report = CoverReport(m, sub, covered, norm_zeta)
    cover_zeta = covered.zeta(cbound)
    _check(report, 'zeta', cover_zeta.agrees(norm_zeta, cbound), f'ζ(cover) = {cover_zeta}')
    det_zeta = norm_by_determinant(zeta, sub, cbound)
    _check(report, 'norm', det_zeta.agrees(norm_zeta, cbound), f'det = {det_zeta}')

    inv = state.invariant(bound, ambiguity)
    cover_inv = covered.invariant(cbound, ambiguity)
    try:
        norm_tau = norm_value(inv.torsion, m, sub)
        bad = cover_inv.torsion.mismatches(norm_tau, cbound)
        _check(report, 'torsion', not bad, ', '.join(map(str, bad)))
        norm_inv = norm_value(inv.value, m, sub)
        bad = cover_inv.value.mismatches(norm_inv, cbound)
        _check(report, 'invariant', not bad, ', '.join(map(str, bad)))
        lost = [str(s) for s, a, b in zip(inv.value.split, inv.value.values, norm_inv.values)
                if a is not None and b is None]
        _check(report, 'nonvanishing', not lost, ', '.join(lost))
    except NovikovError as e:
        _check(report, 'torsion', False, str(e))

    xs = [zeta - 1] if not (zeta - 1).is_zero else []
    xs += [random_positive_series(state.group, rng).truncate(bound) for _ in range(samples)]
    trace_ok = log_ok = True
    for x in xs:
        x = x.truncate(bound)
        trace_ok &= cover_trace(x, m, sub).agrees(restrict_series(x, sub).scale(k), bound)
        if not x.is_zero:
            lhs = (cover_norm(x + 1, m, sub) - 1).log_one_plus(bound)
            rhs = cover_trace(x.log_one_plus(bound), m, sub)
            log_ok &= lhs.agrees(rhs, bound)
    _check(report, 'trace', trace_ok, f'{len(xs)} samples')
    _check(report, 'log-norm', log_ok, f'{len(xs)} samples')
    return report
