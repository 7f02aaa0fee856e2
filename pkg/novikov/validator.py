"""
Validators for command lines and scenarios.
"""

import logging
from typing import TYPE_CHECKING, List, Optional, Set

from novikov.errors import GroupError, ScenarioError
from novikov.lefschetz import CIRCLE
from novikov.moves import Birth, Death, SelfSlide, Slide
from novikov.scenario import Scenario

if TYPE_CHECKING:
    from novikov.session import CmdSession

log = logging.getLogger(__name__)


class CmdValidator:
    """
    Validator for command lines
    """

    session: 'CmdSession'
    """The command session the validator belongs to."""

    def __init__(self, session: 'CmdSession') -> None:
        """
        Initialize a new cmd validator.

        Args:
            session (CmdSession): The session the validator
                belongs to.
        """
        self.session = session

    def validate(self, argv: List[str]) -> Optional[str]:
        """
        Validate a command line.

        Args:
            argv (List[str]): The command and its arguments.

        Returns:
            Optional[str]: What is wrong with it, or None.
        """
        if not argv:
            return 'No command given'
        try:
            self.session[argv]
        except (KeyError, TypeError) as e:
            return str(e).strip('"\'')
        return None


class ScenarioValidator:
    """
    Checks the cross references of a parsed scenario.
    """

    def validate(self, scenario: Scenario) -> Scenario:
        """
        Validate a scenario.

        Args:
            scenario (Scenario): The scenario.

        Raises:
            ScenarioError: On the first problem found.

        Returns:
            Scenario: The same scenario.
        """
        if scenario.truncation is not None and scenario.truncation.sign() <= 0:
            raise ScenarioError(f'Truncation must be positive, got {scenario.truncation}')
        self._summands(scenario)
        if scenario.fibre_maps is not None:
            self._fibre(scenario)
        if scenario.exact:
            self._exact(scenario)
        self._moves(scenario)
        if scenario.cover is not None:
            try:
                scenario.cover.check(scenario.group)
            except GroupError as e:
                raise ScenarioError(f'Cover: {e}') from e
        log.info('scenario %s is valid', scenario.name)
        return scenario

    def _summands(self, scenario: Scenario) -> None:
        n = scenario.group.torsion_order
        for d in scenario.summands or ():
            if d < 1 or (n and n % d) or (not n and d != 1):
                raise ScenarioError(f'Q(zeta_{d}) is not a summand of Q[Z/{n or 1}]')

    def _fibre(self, scenario: Scenario) -> None:
        if scenario.group != CIRCLE:
            raise ScenarioError(f'A mapping torus needs the group {CIRCLE}, got {scenario.group}')
        if scenario.complex is not None and scenario.complex.generators:
            raise ScenarioError('A mapping torus scenario takes its zeta function from fibre_maps, not a complex')
        if scenario.orbits or scenario.factors:
            raise ScenarioError('A mapping torus scenario cannot list orbits or factors as well')
        if scenario.truncation is None:
            raise ScenarioError('A mapping torus scenario needs a finite truncation')

    def _exact(self, scenario: Scenario) -> None:
        C = scenario.complex
        if C is None:
            raise ScenarioError('An exact scenario needs a complex')
        for col, entries in C.boundary.items():
            for row, x in entries.items():
                if not x.is_exact:
                    raise ScenarioError(f'Entry ∂{col}[{row}] = {x} of an exact scenario is not a polynomial')
        if scenario.orbits or scenario.factors:
            raise ScenarioError('An exact scenario has no closed orbits')

    def _moves(self, scenario: Scenario) -> None:
        names: Set[str] = set(scenario.complex.names) if scenario.complex is not None else set()

        def known(name: str, step: int) -> None:
            if name not in names:
                raise ScenarioError(f'Move {step} refers to the unknown generator "{name}"')

        for step, move in enumerate(scenario.moves, start=1):
            if isinstance(move, Slide):
                known(move.p, step)
                known(move.q, step)
            elif isinstance(move, SelfSlide):
                known(move.p, step)
            elif isinstance(move, Death):
                known(move.p, step)
                known(move.q, step)
                names -= {move.p, move.q}
            elif isinstance(move, Birth):
                for name in list(move.v) + list(move.w):
                    known(name, step)
                if move.p in names or move.q in names:
                    raise ScenarioError(f'Move {step} gives birth to existing generators {move.p}, {move.q}')
                names |= {move.p, move.q}
