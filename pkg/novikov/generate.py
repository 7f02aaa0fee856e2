"""
Built-in scenarios.

``circle-flow`` and ``circle-morse`` are the two descriptions of the
circle (one closed orbit and its iterates, or a cancelling pair of
critical points), ``exact-circle`` is the group ring complex of the
circle, ``mapping-torus`` a torus bundle over the circle given by its
monodromy on H_1, ``latour`` reads an exact scenario in another grading
and ``random-complex`` a random flow with a random move script.
"""

import logging
import random
from dataclasses import replace
from typing import List, Optional, Sequence

from novikov.complex import BasedComplex, Generator, empty_complex
from novikov.errors import ScenarioError
from novikov.grading import Grade, Truncation
from novikov.group import GradedGroup, GroupElement
from novikov.latour import latour_embed
from novikov.lefschetz import CIRCLE
from novikov.moves import FlowState, Move, Slide, random_birth, random_move
from novikov.orbits import FactorType, IrreducibleOrbitFactor, OrbitSet
from novikov.scenario import Scenario
from novikov.series import NovikovSeries

log = logging.getLogger(__name__)

RANDOM_WEIGHTS = (Grade.of(1), Grade.parse('r2'))
"""Weights of the free generators of random groups; injective up to rank 2."""


def _circle_complex(truncation: Truncation = None) -> BasedComplex:
    t = CIRCLE.generator(0)
    one = NovikovSeries.one(CIRCLE)
    return BasedComplex(CIRCLE, (Generator('p', 1, CIRCLE.identity), Generator('q', 0, CIRCLE.identity)),
                        {'p': {'q': one - NovikovSeries.monomial(CIRCLE, t)}}, truncation)


def circle_flow(R: Truncation) -> Scenario:
    """The rotation of the circle: no critical points, orbits ``t^k`` of period k."""
    t = CIRCLE.generator(0)
    return Scenario('circle-flow', CIRCLE, R, complex=empty_complex(CIRCLE, R),
                    factors=(IrreducibleOrbitFactor(t, FactorType.MINUS_INVERSE),))


def circle_morse(R: Truncation) -> Scenario:
    """A circle-valued Morse function: ``∂p = (1 - t) q`` and no orbits."""
    return Scenario('circle-morse', CIRCLE, R, complex=_circle_complex(R))


def exact_circle(R: Truncation) -> Scenario:
    """The group ring complex of the circle, the input of :func:`latour`."""
    return Scenario('exact-circle', CIRCLE, R, complex=_circle_complex(R), exact=True)


def parse_matrix(text: str) -> List[List[int]]:
    """
    Read ``"a,b,c,d"`` as ``[[a, b], [c, d]]``.

    Raises:
        ValueError: If the text is not four integers.
    """
    try:
        a, b, c, d = (int(x) for x in text.replace(' ', '').split(','))
    except ValueError as e:
        raise ValueError(f'Expected a matrix "a,b,c,d", got "{text}"') from e
    return [[a, b], [c, d]]


def mapping_torus(matrix: Sequence[Sequence[int]], R: Truncation) -> Scenario:
    """
    The torus bundle with monodromy A on ``H_1``: ``H_0 = [1]``,
    ``H_1 = A`` and ``H_2 = [det A]``.
    """
    (a, b), (c, d) = matrix
    maps = [[[1]], [[a, b], [c, d]], [[a * d - b * c]]]
    return Scenario(f'mapping-torus-{a},{b},{c},{d}', CIRCLE, R, complex=empty_complex(CIRCLE, R), fibre_maps=maps)


def latour(source: Scenario, weights: Optional[Sequence[Grade]], R: Truncation) -> Scenario:
    """
    Read the group ring complex of an exact scenario in the Novikov ring
    of another grading of the same group.

    Raises:
        ScenarioError: If the source is not exact or the weights do not fit.
    """
    if not source.exact or source.complex is None:
        raise ScenarioError(f'"{source.name}" is not an exact scenario')
    group = source.group
    try:
        target = GradedGroup(group.free_rank, group.torsion_order, tuple(weights) if weights else group.weights)
    except ValueError as e:
        raise ScenarioError(str(e)) from e
    C = latour_embed(source.complex, target)
    return Scenario(f'latour-{source.name}', target, R, seed=source.seed, ambiguity=source.ambiguity,
                    complex=C, exact=True)


def _random_class(group: GradedGroup, rng: random.Random) -> Optional[GroupElement]:
    for _ in range(64):
        h = group.random_element(rng, 2)
        if group.grade(h).sign() > 0:
            return h
    return None


def random_complex(seed: int, R: Truncation, rank: int = 1, torsion: int = 0, degrees: int = 3,
                   density: float = 0.5, pairs: int = 3, moves: int = 4) -> Scenario:
    """
    A random flow built from births of cancelling pairs and slides, with
    random orbit factors and a random script of applicable moves.

    Args:
        seed (int): The seed; equal seeds give equal scenarios.
        R (Truncation): The truncation.
        rank (int, optional): Free rank of the group, 1 or 2.
        torsion (int, optional): Order of its torsion, 0 for none.
        degrees (int, optional): Generators live in degrees ``0 .. degrees - 1``.
        density (float, optional): Chance of each boundary entry of a birth.
        pairs (int, optional): Number of births.
        moves (int, optional): Length of the move script.

    Raises:
        ValueError: On parameters out of range.

    Returns:
        Scenario: The scenario.
    """
    if not 1 <= rank <= len(RANDOM_WEIGHTS):
        raise ValueError(f'--rank must be 1 or 2, got {rank}')
    if degrees < 2:
        raise ValueError(f'--degrees must be at least 2, got {degrees}')
    if not 0 <= density <= 1:
        raise ValueError(f'--density must lie in [0, 1], got {density}')
    if R is None:
        raise ValueError('A random complex needs a finite truncation')
    rng = random.Random(seed)
    group = GradedGroup(rank, torsion, RANDOM_WEIGHTS[:rank])
    state = FlowState(empty_complex(group, R), OrbitSet(group, (), None))
    for _ in range(pairs):
        birth = random_birth(state, rng, eta=rng.random() < 0.5, density=density,
                             degree=rng.randint(1, degrees - 1))
        state = replace(birth, orbits=[]).apply(state, R)
    C = state.complex
    for _ in range(pairs):
        same = [(p, q) for p in C.names for q in C.names if p != q and C.degree(p) == C.degree(q)]
        if not same:
            break
        p, q = rng.choice(same)
        C = Slide(p, q, rng.choice((-1, 1)), _random_class(group, rng) if rng.random() < 0.5 else None) \
            .apply(FlowState(C, state.orbits), R).complex
    factors = []
    for _ in range(rng.randint(0, 2)):
        h = _random_class(group, rng)
        if h is not None:
            factors.append(IrreducibleOrbitFactor(h, rng.choice(list(FactorType))))
    scenario = Scenario(f'random-complex-{seed}', group, R, seed=seed, complex=C, factors=tuple(factors))
    script: List[Move] = []
    current = scenario.flow_state(R)
    for _ in range(moves):
        move = random_move(current, rng)
        current = move.apply(current, R)
        script.append(move)
    log.info('random complex %d: %d generators, %d factors, %d moves', seed, len(C.generators), len(factors), len(script))
    return replace(scenario, moves=tuple(script))
