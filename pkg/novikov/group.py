"""
Finitely generated abelian groups ``H = Z^r + Z/n`` with a grading
homomorphism ``N: H -> R``, cyclic quotients ``m: H -> Z/k`` and their
kernels.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy

from novikov.errors import GroupError
from novikov.grading import Grade

log = logging.getLogger(__name__)

FREE_NAMES: Tuple[str, ...] = ('t', 'u')
"""Names of the free generators in text forms."""
TORSION_NAME: str = 's'
"""Name of the torsion generator in text forms."""


@dataclass(frozen=True, order=True)
class GroupElement:
    """
    An element ``(free_part, torsion_part)`` of ``Z^r + Z/n``.
    """

    free: Tuple[int, ...]
    """Integer vector of length r."""
    torsion: int = 0
    """Residue modulo ``modulus``; always 0 when there is no torsion factor."""
    modulus: int = field(default=0, compare=False)
    """The torsion order n (0 means no torsion factor)."""

    def __post_init__(self) -> None:
        object.__setattr__(self, 'free', tuple(int(x) for x in self.free))
        object.__setattr__(self, 'torsion', self.torsion % self.modulus if self.modulus else 0)

    def _check(self, other: 'GroupElement') -> None:
        if len(self.free) != len(other.free) or self.modulus != other.modulus:
            raise GroupError(f'Cannot combine elements of different groups: {self} and {other}')

    def __add__(self, other: 'GroupElement') -> 'GroupElement':
        self._check(other)
        return GroupElement(tuple(a + b for a, b in zip(self.free, other.free)),
                            self.torsion + other.torsion, self.modulus)

    def __neg__(self) -> 'GroupElement':
        return GroupElement(tuple(-a for a in self.free), -self.torsion, self.modulus)

    def __sub__(self, other: 'GroupElement') -> 'GroupElement':
        return self + (-other)

    def __mul__(self, k: int) -> 'GroupElement':
        return GroupElement(tuple(k * a for a in self.free), k * self.torsion, self.modulus)

    __rmul__ = __mul__

    @property
    def is_identity(self) -> bool:
        return self.torsion == 0 and not any(self.free)

    def __str__(self) -> str:
        parts: List[str] = []
        for name, e in zip(_free_names(len(self.free)), self.free):
            if e:
                parts.append(name if e == 1 else f'{name}^{e}' if e > 0 else f'{name}^({e})')
        if self.torsion:
            parts.append(TORSION_NAME if self.torsion == 1 else f'{TORSION_NAME}^{self.torsion}')
        return '*'.join(parts) if parts else '1'


def _free_names(r: int) -> Tuple[str, ...]:
    return FREE_NAMES[:r] if r <= len(FREE_NAMES) else tuple(f't{i}' for i in range(1, r + 1))


@dataclass(frozen=True)
class GradedGroup:
    """
    ``H = Z^r + Z/n`` together with grading weights ``N(e_i)`` for
    the free generators. ``N`` vanishes on the torsion factor and has to
    be injective on the free part.
    """

    free_rank: int
    """r, the number of free generators."""
    torsion_order: int = 0
    """n, the order of the torsion factor (0 or 1 means none)."""
    weights: Tuple[Grade, ...] = ()
    """The grades of the free generators."""

    def __post_init__(self) -> None:
        object.__setattr__(self, 'weights', tuple(Grade.of(w) for w in self.weights))
        object.__setattr__(self, 'torsion_order', 0 if self.torsion_order in (0, 1) else self.torsion_order)
        if self.free_rank < 0 or self.torsion_order < 0:
            raise GroupError('Ranks and torsion orders must be nonnegative')
        if len(self.weights) != self.free_rank:
            raise GroupError(f'Expected {self.free_rank} grading weights, got {len(self.weights)}')
        if self.free_rank:
            rows = sympy.Matrix([[w.a for w in self.weights], [w.b for w in self.weights]])
            if rows.rank() != self.free_rank:
                raise GroupError(f'Grading {self.render_weights()} is not injective on Z^{self.free_rank}')

    @property
    def names(self) -> Tuple[str, ...]:
        """Names of the free generators."""
        return _free_names(self.free_rank)

    def element(self, free: Sequence[int] = (), torsion: int = 0) -> GroupElement:
        """
        Build an element of this group.

        Args:
            free (Sequence[int], optional): The free part. Defaults to zeros.
            torsion (int, optional): The torsion residue. Defaults to 0.

        Raises:
            GroupError: On a dimension mismatch.

        Returns:
            GroupElement: The element.
        """
        free = tuple(free) if free else (0,) * self.free_rank
        if len(free) != self.free_rank:
            raise GroupError(f'Element {tuple(free)} does not have length {self.free_rank}')
        return GroupElement(free, torsion, self.torsion_order)

    @property
    def identity(self) -> GroupElement:
        return self.element()

    def generator(self, i: int) -> GroupElement:
        """The i-th free generator."""
        return self.element(tuple(int(j == i) for j in range(self.free_rank)))

    @property
    def torsion_generator(self) -> GroupElement:
        return self.element(torsion=1)

    def contains(self, h: GroupElement) -> bool:
        return len(h.free) == self.free_rank and h.modulus == self.torsion_order

    def grade(self, h: GroupElement) -> Grade:
        """
        The grade ``N(h)``.

        Args:
            h (GroupElement): An element of this group.

        Raises:
            GroupError: On a dimension mismatch.

        Returns:
            Grade: The exact grade.
        """
        if not self.contains(h):
            raise GroupError(f'{h!r} is not an element of {self}')
        return sum((w * e for w, e in zip(self.weights, h.free)), Grade())

    def sort_key(self, h: GroupElement) -> Tuple[Grade, Tuple[int, ...], int]:
        """Term order: grade, then free part, then torsion residue."""
        return (self.grade(h), h.free, h.torsion)

    def random_element(self, rng: random.Random, bound: int = 3) -> GroupElement:
        """
        A random element with free coordinates in ``[-bound, bound]``.
        """
        return self.element(tuple(rng.randint(-bound, bound) for _ in range(self.free_rank)),
                            rng.randrange(self.torsion_order) if self.torsion_order else 0)

    def render_weights(self) -> str:
        return '(' + ', '.join(str(w) for w in self.weights) + ')'

    def to_dict(self) -> Dict[str, Any]:
        return {
            'free_rank': self.free_rank,
            'torsion': self.torsion_order,
            'weights': [str(w) for w in self.weights],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'GradedGroup':
        """
        Read the scenario form ``{"free_rank": r, "torsion": n, "weights": [...]}``.
        """
        try:
            return cls(int(data['free_rank']), int(data.get('torsion', 0)),
                       tuple(Grade.parse(w) for w in data.get('weights', [])))
        except (KeyError, TypeError) as e:
            raise GroupError(f'Invalid group spec {data!r}: {e}') from e

    def __str__(self) -> str:
        z = f'Z^{self.free_rank}' if self.free_rank != 1 else 'Z'
        t = f' + Z/{self.torsion_order}' if self.torsion_order else ''
        return f'{z}{t} graded by {self.render_weights()}'


@dataclass(frozen=True)
class CyclicQuotient:
    """
    A homomorphism ``m: H -> Z/k`` given by its values on the generators.
    """

    modulus: int
    """k."""
    free_weights: Tuple[int, ...]
    """``m`` of each free generator."""
    torsion_weight: int = 0
    """``m`` of the torsion generator."""

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise GroupError(f'Cyclic quotient needs a positive modulus, got {self.modulus}')
        object.__setattr__(self, 'free_weights', tuple(int(w) % self.modulus for w in self.free_weights))
        object.__setattr__(self, 'torsion_weight', int(self.torsion_weight) % self.modulus)

    def check(self, group: GradedGroup) -> None:
        """
        Check that ``m`` is a well defined surjection on ``group``.

        Raises:
            GroupError: On a dimension mismatch, an ill-defined torsion value
                or a non-surjective map.
        """
        if len(self.free_weights) != group.free_rank:
            raise GroupError(f'Quotient has {len(self.free_weights)} weights for rank {group.free_rank}')
        if self.torsion_weight and (not group.torsion_order
                                    or (self.torsion_weight * group.torsion_order) % self.modulus):
            raise GroupError(f'm(s) = {self.torsion_weight} is not compatible with the torsion of {group}')
        if reduce(math.gcd, self.free_weights + (self.torsion_weight,), self.modulus) != 1:
            raise GroupError(f'm: H -> Z/{self.modulus} is not surjective')

    @property
    def annihilates_torsion(self) -> bool:
        return self.torsion_weight == 0

    def __call__(self, h: GroupElement) -> int:
        return (sum(w * e for w, e in zip(self.free_weights, h.free))
                + self.torsion_weight * h.torsion) % self.modulus

    def to_dict(self) -> Dict[str, Any]:
        return {'k': self.modulus, 'weights': list(self.free_weights), 'torsion_weight': self.torsion_weight}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CyclicQuotient':
        try:
            return cls(int(data['k']), tuple(int(w) for w in data.get('weights', [])),
                       int(data.get('torsion_weight', 0)))
        except (KeyError, TypeError) as e:
            raise GroupError(f'Invalid cover spec {data!r}: {e}') from e


Matrix = List[List[int]]


def _identity(q: int) -> Matrix:
    return [[int(i == j) for j in range(q)] for i in range(q)]


def _reduce_vector(vec: Sequence[int]) -> Tuple[int, Matrix, Matrix]:
    """
    Euclid on a column vector: returns ``(g, U, U_inv)`` with ``U`` unimodular,
    ``U @ vec = (g, 0, ..., 0)`` and ``g = gcd(vec) >= 0``.
    """
    v = list(vec)
    q = len(v)
    u, ui = _identity(q), _identity(q)
    while sum(1 for x in v if x) > 1:
        p = min((i for i in range(q) if v[i]), key=lambda i: abs(v[i]))
        for i in range(q):
            if i != p and v[i]:
                c = v[i] // v[p]
                v[i] -= c * v[p]
                u[i] = [a - c * b for a, b in zip(u[i], u[p])]
                for row in ui:
                    row[p] += c * row[i]
    p = next((i for i in range(q) if v[i]), 0)
    if q:
        v[0], v[p] = v[p], v[0]
        u[0], u[p] = u[p], u[0]
        for row in ui:
            row[0], row[p] = row[p], row[0]
        if v[0] < 0:
            v[0] = -v[0]
            u[0] = [-a for a in u[0]]
            for row in ui:
                row[0] = -row[0]
    return (v[0] if q else 0), u, ui


@dataclass(frozen=True)
class Subgroup:
    """
    The kernel ``K`` of a cyclic quotient ``m: H -> Z/k`` together with the
    embedding ``iota: K -> H`` and a section ``j -> c_j`` of coset
    representatives with ``m(c_j) = j``.
    """

    parent: GradedGroup
    """The ambient group H."""
    quotient: CyclicQuotient
    """The map m."""
    kernel: GradedGroup
    """K with the inherited grading."""
    basis: Tuple[Tuple[int, ...], ...]
    """
    Columns in ``Z^(r+1)`` (or ``Z^r`` without torsion): first the torsion
    generator of K if K has torsion, then the free generators of K.
    """
    section: Tuple[GroupElement, ...]
    """The coset representatives ``c_0 = 0, ..., c_(k-1)``."""
    _inverse: Any = field(repr=False, compare=False, default=None)

    @property
    def index(self) -> int:
        return self.quotient.modulus

    def _lift(self, h: GroupElement) -> List[int]:
        return list(h.free) + ([h.torsion] if self.parent.torsion_order else [])

    def embed(self, kappa: GroupElement) -> GroupElement:
        """
        ``iota(kappa)`` as an element of H.
        """
        coords = ([kappa.torsion] if self.kernel.torsion_order else []) + list(kappa.free)
        start = 0 if self.kernel.torsion_order else len(self.basis) - len(coords)
        cols = self.basis[start:]
        q = len(self.basis[0]) if self.basis else 0
        x = [sum(c * col[i] for c, col in zip(coords, cols)) for i in range(q)]
        r = self.parent.free_rank
        return self.parent.element(tuple(x[:r]), x[r] if self.parent.torsion_order else 0)

    def restrict_element(self, h: GroupElement) -> Optional[GroupElement]:
        """
        ``iota^-1(h)``, or None when h is not in K.
        """
        if self.quotient(h):
            return None
        if not self.basis:
            return self.kernel.identity
        y = self._inverse * sympy.Matrix(self._lift(h))
        if any(not v.is_integer for v in y):
            raise GroupError(f'{h} has m(h) = 0 but does not lie in the kernel lattice')
        y = [int(v) for v in y]
        if self.parent.torsion_order:
            # the first basis column is n/g * e_torsion, which is either K's
            # torsion generator or zero in H
            t, free = y[0], y[1:]
        else:
            t, free = 0, y
        return self.kernel.element(tuple(free), t)

    def split(self, h: GroupElement) -> Tuple[int, GroupElement]:
        """
        Decompose ``h = c_j + iota(kappa)``.

        Returns:
            Tuple[int, GroupElement]: The coset index j and kappa in K.
        """
        j = self.quotient(h)
        kappa = self.restrict_element(h - self.section[j])
        return j, kappa


def kernel_of_quotient(group: GradedGroup, m: CyclicQuotient) -> Subgroup:
    """
    Compute ``K = ker(m)`` as a graded group, with its embedding into H
    and a section of coset representatives.

    Args:
        group (GradedGroup): H.
        m (CyclicQuotient): A surjection ``H -> Z/k``.

    Raises:
        GroupError: If m is not a well defined surjection.

    Returns:
        Subgroup: The kernel data.
    """
    m.check(group)
    r, n, k = group.free_rank, group.torsion_order, m.modulus
    q = r + (1 if n else 0)
    a = list(m.free_weights) + ([m.torsion_weight] if n else [])
    g, u, _ = _reduce_vector(a)
    # columns of V = U^T satisfy a @ V = (g, 0, ...); g is a unit mod k
    cols = [list(row) for row in u]
    basis = [[k * x for x in cols[0]]] + cols[1:] if q else []
    lead = cols[0] if q else []
    gi = pow(g, -1, k) if k > 1 else 0
    section = tuple(
        group.element(tuple(((j * gi) % k) * x for x in lead[:r]),
                      ((j * gi) % k) * lead[r] if n else 0) if q else group.identity
        for j in range(k)
    )
    torsion_out = 0
    if n and q:
        # K = L / <n e_torsion>; move n e_torsion onto the first basis vector
        lattice = sympy.Matrix(basis).T
        c = lattice.inv() * sympy.Matrix([0] * r + [n])
        g2, _, w = _reduce_vector([int(x) for x in c])
        lattice = lattice * sympy.Matrix(w)
        basis = [[int(x) for x in lattice.col(i)] for i in range(q)]
        torsion_out = g2
        if m.annihilates_torsion:
            # K contains e_torsion: make it the first generator and keep
            # the free generators of K torsion-free in H
            basis = [[0] * r + [1]] + [col[:r] + [0] for col in basis[1:]]
    free_cols = basis[1:] if n else basis
    weights = tuple(group.grade(group.element(tuple(col[:r]))) for col in free_cols)
    kernel = GradedGroup(r, torsion_out, weights)
    inverse = sympy.Matrix(basis).T.inv() if q else None
    log.debug('kernel of %s: basis %s, section %s', m, basis, [str(c) for c in section])
    return Subgroup(group, m, kernel, tuple(tuple(col) for col in basis), section, inverse)
