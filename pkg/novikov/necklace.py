"""
Closed orbits born at a death bifurcation.

The flow lines from the dying pair back to itself are the letters (the
signed monomials of η, integer coefficients expanded into copies). A
closed orbit through the degenerate point is a necklace of such letters:
a primitive (Lyndon) word w repeated s times gives one orbit of period s.
"""

import logging
from typing import Iterator, List, Sequence, Tuple

from novikov.errors import MoveError
from novikov.grading import Grade, Truncation
from novikov.group import GroupElement
from novikov.orbits import ClosedOrbit, OrbitSet
from novikov.series import NovikovSeries

log = logging.getLogger(__name__)

Letter = Tuple[GroupElement, int]


def letters(eta: NovikovSeries) -> List[Letter]:
    """
    The flow lines encoded by η: ``|a|`` copies of ``(h, sign a)`` per term ``a*h``.

    Raises:
        MoveError: On a non-integral coefficient or a term of grade <= 0.
    """
    out: List[Letter] = []
    for h, c in eta:
        if not (c.is_rational and c.is_integral):
            raise MoveError(f'η has the non-integral coefficient {c} at {h}')
        if eta.group.grade(h).sign() <= 0:
            raise MoveError(f'η has the term {c}*{h} of nonpositive grade')
        a = int(c.rational)
        out.extend([(h, 1 if a > 0 else -1)] * abs(a))
    return out


def is_lyndon(word: Sequence[int]) -> bool:
    """Strictly smaller than each of its proper rotations."""
    n = len(word)
    return all(tuple(word) < tuple(word[i:]) + tuple(word[:i]) for i in range(1, n))


def lyndon_words(grades: Sequence[Grade], bound: Grade) -> Iterator[Tuple[int, ...]]:
    """
    All Lyndon words over ``range(len(grades))`` of total grade below ``bound``.

    A depth-first search over words pruned by grade; every word is tested
    for being its necklace's representative.
    """
    def extend(word: List[int], total: Grade) -> Iterator[Tuple[int, ...]]:
        if word and is_lyndon(word):
            yield tuple(word)
        for a, g in enumerate(grades):
            if word and a < word[0]:
                continue
            if total + g < bound:
                word.append(a)
                yield from extend(word, total + g)
                word.pop()
    yield from extend([], Grade())


def necklace_orbits(eta: NovikovSeries, mu: int, degree: int, R: Truncation) -> OrbitSet:
    """
    The closed orbits created when a pair with pivot ``(-1)^μ + η`` dies
    in the given degree.

    Each Lyndon word w of length L, repeated s times (``k = L s`` flow
    lines), gives one orbit of class ``s * sum(w)``, period s and sign
    ``(-1)^(μk + k + i + 1) * prod(signs)``. Their weighted sum is
    ``(-1)^i log(1 + (-1)^μ η)``.

    Args:
        eta (NovikovSeries): η, in the positive part with integer coefficients.
        mu (int): μ; only its parity matters.
        degree (int): i, the degree of the upper generator.
        R (Truncation): Emit orbits of grade below R.

    Raises:
        MoveError: If η is malformed or R is infinite while η is nonzero.

    Returns:
        OrbitSet: The necklace orbits, complete below R.
    """
    alphabet = letters(eta)
    if not alphabet:
        return OrbitSet(eta.group, (), R)
    if R is None:
        raise MoveError('Counting necklace orbits needs a finite truncation')
    grades = [eta.group.grade(h) for h, _ in alphabet]
    orbits = []
    for word in lyndon_words(grades, R):
        cls = eta.group.identity
        sign = 1
        for a in word:
            cls = cls + alphabet[a][0]
            sign *= alphabet[a][1]
        g = eta.group.grade(cls)
        s = 1
        while g * s < R:
            k = len(word) * s
            orbits.append(ClosedOrbit(cls * s, s, (-1) ** ((mu * k + k + degree + 1) % 2) * sign ** s))
            s += 1
    log.debug('%d necklace orbits from %d flow lines below O(%s)', len(orbits), len(alphabet), R)
    return OrbitSet(eta.group, tuple(orbits), R)
