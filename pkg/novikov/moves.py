"""
Bifurcation moves on ``(Novikov complex, closed orbits)`` pairs.

Every move maps a :class:`FlowState` to a new one and comes with a
prediction of how the torsion and the zeta function change. The
invariance checker recomputes ``I = T_m * ζ`` on both sides from
scratch and never uses those predictions.
"""

import logging
import random
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Mapping, Optional, Tuple

from novikov.complex import BasedComplex, Generator, change_basis
from novikov.cyclotomic import Summand
from novikov.errors import ComplexError, FieldError, MoveError, OrbitError, ScenarioError, TruncationError
from novikov.field import Ambiguity, SplitValue
from novikov.grading import Truncation, tmin
from novikov.group import GradedGroup, GroupElement
from novikov.necklace import necklace_orbits
from novikov.orbits import ClosedOrbit, Invariant, OrbitSet, invariant_I, zeta_from_orbits
from novikov.series import NovikovSeries

log = logging.getLogger(__name__)

INVARIANT = 'invariant'
VIOLATED = 'violated'


@dataclass(frozen=True)
class FlowState:
    """
    A Novikov complex, its closed orbits and a zeta factor ledger.

    ``factor`` collects the changes of ζ made by self-slides, which
    rearrange orbits without a closed form for the individual orbits;
    the zeta function of the state is ``zeta_from_orbits(orbits) * factor``.
    """

    complex: BasedComplex
    orbits: OrbitSet
    factor: Optional[NovikovSeries] = None

    @property
    def group(self) -> GradedGroup:
        return self.complex.group

    @property
    def truncation(self) -> Truncation:
        return tmin(self.complex.truncation, self.orbits.completeness)

    def zeta(self, precision: Truncation = None) -> NovikovSeries:
        bound = tmin(self.truncation, precision)
        z = zeta_from_orbits(self.orbits, bound)
        return z if self.factor is None else (z * self.factor).truncate(bound)

    def invariant(self, precision: Truncation = None, ambiguity: Ambiguity = Ambiguity.SIGN) -> Invariant:
        return invariant_I(self.complex, self.orbits, precision, ambiguity, zeta=self.zeta(precision))

    def same_as(self, other: 'FlowState') -> bool:
        """Equal complexes modulo truncation, equal orbit multisets and equal ζ."""
        return self.complex.same_as(other.complex) \
            and sorted(map(repr, self.orbits)) == sorted(map(repr, other.orbits)) \
            and self.zeta().agrees(other.zeta())


@dataclass
class Prediction:
    """Expected ratios ``T+/T-`` and ``ζ+/ζ-``, each as ``series ** exponent``."""

    torsion: Tuple[NovikovSeries, int]
    zeta: Tuple[NovikovSeries, int]


def _power(x: NovikovSeries, e: int, precision: Truncation) -> NovikovSeries:
    return x if e > 0 else x.invert(precision)


def _is_power(g: GroupElement, h: GroupElement) -> bool:
    """``g = k h`` for some integer ``k >= 0``."""
    for a, b in zip(h.free, g.free):
        if a:
            if b % a:
                return False
            k = b // a
            return k >= 0 and h * k == g
    return g.is_identity


class Move:
    """A bifurcation; subclasses implement :meth:`apply` and :meth:`predict`."""

    kind: str = 'move'

    def apply(self, state: FlowState, precision: Truncation = None) -> FlowState:
        raise NotImplementedError()

    def predict(self, state: FlowState, precision: Truncation = None) -> Prediction:
        one = NovikovSeries.one(state.group)
        return Prediction((one, 1), (one, 1))

    def to_dict(self) -> Dict[str, Any]:
        return {'move': self.kind}

    def __str__(self) -> str:
        return ' '.join(f'{k}={v}' for k, v in self.to_dict().items())


@dataclass
class NoOp(Move):
    """Flow line or orbit cancellation: neither the complex nor ζ changes."""

    cancel: str = 'flow-line-cancel'
    kind = 'noop'

    def __post_init__(self) -> None:
        if self.cancel not in ('flow-line-cancel', 'orbit-cancel'):
            raise MoveError(f'Unknown cancellation "{self.cancel}"')

    def apply(self, state: FlowState, precision: Truncation = None) -> FlowState:
        return state

    def to_dict(self) -> Dict[str, Any]:
        return {'move': self.kind, 'cancel': self.cancel}


@dataclass
class Slide(Move):
    """
    ``p -> p + sign * h * q`` for two generators of equal degree; T and ζ
    are unchanged.
    """

    p: str = ''
    q: str = ''
    sign: int = 1
    h: Optional[GroupElement] = None
    kind = 'slide'

    def _validate(self, C: BasedComplex) -> int:
        if self.p == self.q:
            raise MoveError(f'Cannot slide {self.p} over itself')
        if self.sign not in (1, -1):
            raise MoveError(f'Slide sign must be ±1, got {self.sign}')
        try:
            i, j = C.degree(self.p), C.degree(self.q)
        except ComplexError as e:
            raise MoveError(str(e)) from e
        if i != j:
            raise MoveError(f'Slide of {self.p} (degree {i}) over {self.q} (degree {j})')
        return i

    def apply(self, state: FlowState, precision: Truncation = None) -> FlowState:
        C = state.complex
        i = self._validate(C)
        h = C.group.identity if self.h is None else self.h
        A = {i: {self.p: {self.p: NovikovSeries.one(C.group, C.order),
                          self.q: NovikovSeries.monomial(C.group, h, self.sign, C.order)}}}
        return replace(state, complex=change_basis(C, A, precision))

    def to_dict(self) -> Dict[str, Any]:
        out = {'move': self.kind, 'p': self.p, 'q': self.q, 'sign': self.sign}
        if self.h is not None:
            out['h'] = str(self.h)
        return out


@dataclass
class SelfSlide(Move):
    """
    ``p -> x p`` for a unit ``x = 1 + a_1 h + a_2 h^2 + ...``.

    The torsion changes by ``x^((-1)^i)`` and ζ by ``x^((-1)^(i+1))``,
    unless ``zeta_factor`` records a different observed change.
    """

    p: str = ''
    x: Optional[NovikovSeries] = None
    h: Optional[GroupElement] = None
    zeta_factor: Optional[NovikovSeries] = None
    kind = 'self_slide'

    def _validate(self, C: BasedComplex) -> int:
        try:
            i = C.degree(self.p)
        except ComplexError as e:
            raise MoveError(str(e)) from e
        x = self.x
        if x is None or not x.constant_term().is_one:
            raise MoveError(f'Self-slide series {x} must have constant term 1')
        if not (x - 1).is_positive:
            raise MoveError(f'Self-slide series {x} must be 1 plus terms of positive grade')
        if self.h is not None:
            if C.group.grade(self.h).sign() <= 0:
                raise MoveError(f'Self-slide class {self.h} must have positive grade')
            stray = [str(g) for g, _ in x if not _is_power(g, self.h)]
            if stray:
                raise MoveError(f'Self-slide series {x} has terms {", ".join(stray)} off the powers of {self.h}')
        return i

    def _zeta_change(self, i: int, precision: Truncation) -> NovikovSeries:
        if self.zeta_factor is not None:
            return self.zeta_factor
        return _power(self.x, -1 if i % 2 == 0 else 1, precision)

    def apply(self, state: FlowState, precision: Truncation = None) -> FlowState:
        C = state.complex
        i = self._validate(C)
        work = tmin(state.truncation, precision)
        complex_ = change_basis(C, {i: {self.p: {self.p: self.x}}}, work)
        factor = self._zeta_change(i, work)
        factor = factor if state.factor is None else state.factor * factor
        return FlowState(complex_, state.orbits, factor.truncate(work))

    def predict(self, state: FlowState, precision: Truncation = None) -> Prediction:
        i = self._validate(state.complex)
        return Prediction((self.x, 1 if i % 2 == 0 else -1), (self.x, -1 if i % 2 == 0 else 1))

    def to_dict(self) -> Dict[str, Any]:
        out = {'move': self.kind, 'p': self.p, 'x': str(self.x)}
        if self.h is not None:
            out['h'] = str(self.h)
        if self.zeta_factor is not None:
            out['zeta_factor'] = str(self.zeta_factor)
        return out


def _pivot_data(C: BasedComplex, p: str, q: str, mu: Optional[int]) -> Tuple[int, NovikovSeries, int, NovikovSeries]:
    try:
        i, j = C.degree(p), C.degree(q)
    except ComplexError as e:
        raise MoveError(str(e)) from e
    if j != i - 1:
        raise MoveError(f'Death of {p} (degree {i}) with {q} (degree {j}): degrees must be adjacent')
    pivot = C.entry(p, q)
    if mu is None:
        c = pivot.constant_term()
        if not (c.is_rational and abs(c.rational) == 1):
            raise MoveError(f'Pivot ⟨∂{p}, {q}⟩ = {pivot} is not ±1 plus positive terms')
        mu = 0 if c.rational > 0 else 1
    eta = pivot - (-1) ** (mu % 2)
    if not eta.is_positive:
        raise MoveError(f'Pivot ⟨∂{p}, {q}⟩ = {pivot} is not a unit of the form (-1)^{mu} + η with η positive')
    return i, pivot, mu % 2, eta


@dataclass
class Death(Move):
    """
    Cancel a pair ``p`` (degree i), ``q`` (degree i - 1) whose pivot
    ``⟨∂p, q⟩ = (-1)^μ + η`` is a unit. The new boundary is
    ``N - w π^-1 v`` and the necklace orbits of η are born.
    """

    p: str = ''
    q: str = ''
    mu: Optional[int] = None
    orbits: Optional[List[ClosedOrbit]] = None
    """Orbits born, when recorded instead of counted from η."""
    kind = 'death'

    def apply(self, state: FlowState, precision: Truncation = None) -> FlowState:
        C = state.complex
        i, pivot, mu, eta = _pivot_data(C, self.p, self.q, self.mu)
        work = tmin(state.truncation, precision)
        inverse = pivot.invert(work)
        upper = [c for c in C.in_degree(i) if c != self.p]
        lower = [r for r in C.in_degree(i - 1) if r != self.q]
        boundary: Dict[str, Dict[str, NovikovSeries]] = {}
        for col, entries in C.boundary.items():
            if col in (self.p, self.q):
                continue
            boundary[col] = {row: x for row, x in entries.items() if row not in (self.p, self.q)}
        for c in upper:
            v = C.entry(c, self.q)
            if v.is_zero:
                continue
            row = boundary.setdefault(c, {})
            for r in lower:
                w = C.entry(self.p, r)
                if not w.is_zero:
                    row[r] = C.entry(c, r) - w * inverse * v
        gens = tuple(g for g in C.generators if g.name not in (self.p, self.q))
        born = self._born(state, eta, mu, i, work)
        log.debug('death of (%s, %s) in degree %d, pivot %s, %d orbits born', self.p, self.q, i, pivot, len(born))
        return replace(state, complex=replace(C, generators=gens, boundary=boundary), orbits=state.orbits + born)

    def _born(self, state: FlowState, eta: NovikovSeries, mu: int, i: int, work: Truncation) -> OrbitSet:
        if self.orbits is not None:
            return OrbitSet(state.group, tuple(self.orbits), work)
        return necklace_orbits(eta, mu, i, work)

    def predict(self, state: FlowState, precision: Truncation = None) -> Prediction:
        i, pivot, mu, eta = _pivot_data(state.complex, self.p, self.q, self.mu)
        sign = 1 if i % 2 == 0 else -1
        return Prediction((pivot, -sign), (eta.scale((-1) ** mu) + 1, sign))

    def inverse(self, state: FlowState) -> 'Birth':
        """The birth that undoes this death when applied to its result."""
        C = state.complex
        i, pivot, mu, eta = _pivot_data(C, self.p, self.q, self.mu)
        return Birth(p=self.p, q=self.q, degree=i, mu=mu, eta=eta,
                     v={c: C.entry(c, self.q) for c in C.in_degree(i) if c != self.p and not C.entry(c, self.q).is_zero},
                     w={r: C.entry(self.p, r) for r in C.in_degree(i - 1) if r != self.q and not C.entry(self.p, r).is_zero},
                     lift_p=C.generator(self.p).lift, lift_q=C.generator(self.q).lift,
                     index_p=C.names.index(self.p), index_q=C.names.index(self.q),
                     orbits=self.orbits)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {'move': self.kind, 'p': self.p, 'q': self.q}
        if self.mu is not None:
            out['mu'] = self.mu
        if self.orbits is not None:
            out['orbits'] = [o.to_dict() for o in self.orbits]
        return out


@dataclass
class Birth(Move):
    """
    Create a pair ``p`` (degree i), ``q`` (degree i - 1) with pivot
    ``(-1)^μ + η``, new boundary entries ``v`` (row q) and ``w``
    (column p); the inverse of :class:`Death`. The necklace orbits of η
    must be present and are removed.
    """

    p: str = ''
    q: str = ''
    degree: int = 1
    mu: int = 0
    eta: Optional[NovikovSeries] = None
    v: Mapping[str, NovikovSeries] = field(default_factory=dict)
    w: Mapping[str, NovikovSeries] = field(default_factory=dict)
    lift_p: Optional[GroupElement] = None
    lift_q: Optional[GroupElement] = None
    index_p: Optional[int] = None
    index_q: Optional[int] = None
    orbits: Optional[List[ClosedOrbit]] = None
    kind = 'birth'

    def _pivot(self, group: GradedGroup, order: int) -> Tuple[NovikovSeries, NovikovSeries]:
        eta = self.eta if self.eta is not None else NovikovSeries.zero(group, order)
        if not eta.is_positive:
            raise MoveError(f'Birth needs η in the positive part, got {eta}')
        return eta, eta + (-1) ** (self.mu % 2)

    def apply(self, state: FlowState, precision: Truncation = None) -> FlowState:
        C = state.complex
        i = self.degree
        if self.p in C.names or self.q in C.names or self.p == self.q:
            raise MoveError(f'Birth of ({self.p}, {self.q}) clashes with existing generators')
        upper, lower = C.in_degree(i), C.in_degree(i - 1)
        if any(c not in upper for c in self.v) or any(r not in lower for r in self.w):
            raise MoveError(f'Birth entries must lie in degrees {i} and {i - 1}')
        work = tmin(state.truncation, precision)
        eta, pivot = self._pivot(C.group, C.order)
        inverse = pivot.invert(work)
        boundary: Dict[str, Dict[str, NovikovSeries]] = {k: dict(e) for k, e in C.boundary.items()}
        for c, v in self.v.items():
            row = boundary.setdefault(c, {})
            for r, w in self.w.items():
                row[r] = C.entry(c, r) + w * inverse * v
            row[self.q] = v
        boundary[self.p] = {self.q: pivot, **self.w}
        for y in C.in_degree(i + 1):
            acc = C.zero()
            for c, v in self.v.items():
                acc = acc + v * C.entry(y, c)
            if not acc.is_zero:
                boundary.setdefault(y, {})[self.p] = -(inverse * acc)
        down = {}
        for s in C.in_degree(i - 2):
            acc = C.zero()
            for r, w in self.w.items():
                acc = acc + C.entry(r, s) * w
            if not acc.is_zero:
                down[s] = -(acc * inverse)
        if down:
            boundary[self.q] = down
        gens = list(C.generators)
        for name, deg, lift, index in sorted(
                [(self.p, i, self.lift_p, self.index_p), (self.q, i - 1, self.lift_q, self.index_q)],
                key=lambda x: len(gens) + 2 if x[3] is None else x[3]):
            g = Generator(name, deg, C.group.identity if lift is None else lift)
            gens.insert(len(gens) if index is None else index, g)
        dead = OrbitSet(state.group, tuple(self.orbits), work) if self.orbits is not None \
            else necklace_orbits(eta, self.mu % 2, i, work)
        try:
            orbits = state.orbits - dead
        except OrbitError as e:
            raise MoveError(f'Birth of ({self.p}, {self.q}) needs its necklace orbits: {e}') from e
        return replace(state, complex=replace(C, generators=tuple(gens), boundary=boundary), orbits=orbits)

    def predict(self, state: FlowState, precision: Truncation = None) -> Prediction:
        eta, pivot = self._pivot(state.group, state.complex.order)
        sign = 1 if self.degree % 2 == 0 else -1
        return Prediction((pivot, sign), (eta.scale((-1) ** (self.mu % 2)) + 1, -sign))

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {'move': self.kind, 'p': self.p, 'q': self.q, 'degree': self.degree, 'mu': self.mu}
        if self.eta is not None and not self.eta.is_zero:
            out['eta'] = str(self.eta)
        if self.v:
            out['v'] = {k: str(x) for k, x in self.v.items()}
        if self.w:
            out['w'] = {k: str(x) for k, x in self.w.items()}
        return out


@dataclass
class MoveReport:
    """Before/after values of one move and the verdict."""

    move: str
    before: Invariant
    after: Invariant
    torsion_ok: bool = True
    """``T+/T-`` matches the predicted ratio (modulo ±1)."""
    zeta_ok: bool = True
    """``ζ+/ζ-`` matches the predicted ratio."""
    mismatches: List[Summand] = field(default_factory=list)
    """Summands on which ``I`` changed."""

    @property
    def verdict(self) -> str:
        return INVARIANT if not self.mismatches else VIOLATED


def verify_invariance(before: FlowState, after: FlowState, move: str = 'composite',
                      precision: Truncation = None, ambiguity: Ambiguity = Ambiguity.SIGN) -> MoveReport:
    """
    Recompute ``I`` for both states and compare the canonical forms.

    Args:
        before (FlowState): The state before.
        after (FlowState): The state after.
        move (str, optional): A label for the report.
        precision (Truncation, optional): Working precision.
        ambiguity (Ambiguity, optional): What I is taken modulo.

    Returns:
        MoveReport: The report; never raises on a mismatch.
    """
    if before.group != after.group:
        raise MoveError('States over different groups')
    bound = tmin(before.truncation, after.truncation, precision)
    a = before.invariant(bound, ambiguity)
    b = after.invariant(bound, ambiguity)
    report = MoveReport(move, a, b, mismatches=a.value.mismatches(b.value, bound))
    for s in report.mismatches:
        log.debug('I changed on %s: %s -> %s', s, a.value, b.value)
    return report


def run_move(state: FlowState, move: Move, precision: Truncation = None,
             ambiguity: Ambiguity = Ambiguity.SIGN) -> Tuple[FlowState, MoveReport]:
    """
    Apply a move, check its predicted ratios and the invariance of ``I``.

    Raises:
        MoveError: If the move is not applicable to the state.
    """
    bound = tmin(state.truncation, precision)
    prediction = move.predict(state, bound)
    after = move.apply(state, bound)
    report = verify_invariance(state, after, str(move), bound, ambiguity)
    split = report.before.torsion.split
    try:
        t_ratio = SplitValue.unit(split, _power(prediction.torsion[0], prediction.torsion[1], bound))
        observed = report.after.torsion.with_ambiguity(Ambiguity.SIGN)
        expected = (report.before.torsion * t_ratio).with_ambiguity(Ambiguity.SIGN)
        report.torsion_ok = not observed.mismatches(expected, bound)
        z_ratio = _power(prediction.zeta[0], prediction.zeta[1], bound)
        report.zeta_ok = report.after.zeta.agrees(report.before.zeta * z_ratio, bound)
    except (FieldError, TruncationError) as e:
        log.debug('could not evaluate the predicted ratios of %s: %s', move, e)
        report.torsion_ok = report.zeta_ok = False
    return after, report


def death_flow_series(w: NovikovSeries, eta: NovikovSeries, v: NovikovSeries, mu: int, depth: int) -> NovikovSeries:
    """
    ``sum_(k=0..depth) (-1)^((μ+1)(k+1)) w η^k v``: the flow lines from
    ``p'`` to ``q'`` that pass k times through the dying pair.
    """
    out = NovikovSeries.zero(w.group, w.order)
    power = NovikovSeries.one(w.group, w.order)
    for k in range(depth + 1):
        out = out + (w * power * v).scale((-1) ** (((mu + 1) * (k + 1)) % 2))
        power = power * eta
    return out


def move_from_dict(data: Mapping[str, Any], group: GradedGroup) -> Move:
    """
    Read a move record such as ``{"move": "death", "p": "p1", "q": "q1", "mu": 0}``.

    Raises:
        ScenarioError: On an unknown move or malformed fields.
    """
    def series(text: Any) -> NovikovSeries:
        return NovikovSeries.parse(str(text), group)

    def element(text: Any) -> GroupElement:
        x = series(text)
        if len(x) != 1 or not x.leading[1].is_one:
            raise ScenarioError(f'"{text}" is not a group element')
        return x.leading[0]

    def orbits(items: Any) -> Optional[List[ClosedOrbit]]:
        if items is None:
            return None
        return list(OrbitSet.from_dict(items, group, None).orbits)

    kind = str(data.get('move', '')).replace('-', '_')
    try:
        if kind == 'noop':
            return NoOp(str(data.get('cancel', 'flow-line-cancel')))
        if kind in ('flow_line_cancel', 'orbit_cancel'):
            return NoOp(kind.replace('_', '-'))
        if kind == 'slide':
            return Slide(str(data['p']), str(data['q']), int(data.get('sign', 1)),
                         element(data['h']) if 'h' in data else None)
        if kind == 'self_slide':
            return SelfSlide(str(data['p']), series(data['x']), element(data['h']) if 'h' in data else None,
                             series(data['zeta_factor']) if 'zeta_factor' in data else None)
        if kind == 'death':
            return Death(str(data['p']), str(data['q']), int(data['mu']) if 'mu' in data else None,
                         orbits(data.get('orbits')))
        if kind == 'birth':
            return Birth(str(data['p']), str(data['q']), int(data.get('degree', 1)), int(data.get('mu', 0)),
                         series(data['eta']) if 'eta' in data else None,
                         {k: series(x) for k, x in (data.get('v') or {}).items()},
                         {k: series(x) for k, x in (data.get('w') or {}).items()},
                         orbits=orbits(data.get('orbits')))
    except (KeyError, TypeError, ValueError) as e:
        raise ScenarioError(f'Malformed {kind or "move"} record {dict(data)!r}: {e}') from e
    except MoveError as e:
        raise ScenarioError(str(e)) from e
    raise ScenarioError(f'Unknown move "{data.get("move")}"')


def _random_positive(group: GradedGroup, rng: random.Random, bound: int = 2) -> Optional[GroupElement]:
    for _ in range(64):
        h = group.random_element(rng, bound)
        if group.grade(h).sign() > 0:
            return h
    return None


def _random_entry(group: GradedGroup, rng: random.Random) -> NovikovSeries:
    h = _random_positive(group, rng) if rng.random() < 0.5 else group.identity
    return NovikovSeries.monomial(group, h or group.identity, rng.choice((-2, -1, 1, 2)))


def random_birth(state: FlowState, rng: random.Random, eta: bool = False, density: float = 0.5,
                 degree: Optional[int] = None) -> Birth:
    """
    A birth with random entries; ``eta`` asks for a nonzero η. The pair
    is born in ``degree`` and ``degree - 1``, or next to the occupied degrees.
    """
    C = state.complex
    degrees = C.degrees or [0]
    i = rng.randint(degrees[0], degrees[-1] + 1) if degree is None else degree
    n = len(C.generators)
    taken = set(C.names)
    k = n
    while f'p{k}' in taken or f'q{k}' in taken:
        k += 1
    v = {c: _random_entry(C.group, rng) for c in C.in_degree(i) if rng.random() < density}
    w = {r: _random_entry(C.group, rng) for r in C.in_degree(i - 1) if rng.random() < density}
    e = None
    if eta:
        h = _random_positive(C.group, rng)
        if h is not None:
            e = NovikovSeries.monomial(C.group, h, rng.choice((-1, 1)))
    return Birth(f'p{k}', f'q{k}', i, rng.randint(0, 1), e, v, w)


def random_move(state: FlowState, rng: random.Random, allow_death: bool = True) -> Move:
    """
    A random move applicable to the state: a slide, a self-slide, a death
    or a birth with ``η = 0``.
    """
    C = state.complex
    options = ['birth']
    pairs = [(p, q) for p in C.names for q in C.names if p != q and C.degree(p) == C.degree(q)]
    if pairs:
        options.append('slide')
    h = _random_positive(C.group, rng)
    if C.names and h is not None:
        options.append('self_slide')
    deaths = []
    if allow_death:
        for p in C.names:
            for q in C.in_degree(C.degree(p) - 1):
                try:
                    _pivot_data(C, p, q, None)
                    deaths.append((p, q))
                except MoveError:
                    continue
        if deaths:
            options.append('death')
    kind = rng.choice(options)
    if kind == 'slide':
        p, q = rng.choice(pairs)
        return Slide(p, q, rng.choice((-1, 1)))
    if kind == 'self_slide':
        x = NovikovSeries.one(C.group) + NovikovSeries.monomial(C.group, h, rng.choice((-1, 1)))
        return SelfSlide(rng.choice(C.names), x, h)
    if kind == 'death':
        p, q = rng.choice(deaths)
        return Death(p, q)
    return random_birth(state, rng)


def zeta_ratio_series(before: FlowState, after: FlowState, precision: Truncation = None) -> NovikovSeries:
    """``ζ+/ζ-`` computed from the two states."""
    bound = tmin(before.truncation, after.truncation, precision)
    return after.zeta(bound) * before.zeta(bound).invert(bound)
