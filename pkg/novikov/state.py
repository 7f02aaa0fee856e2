"""
Responsible for storing the settings
of one invocation of the CLI.
"""

import os
from dataclasses import dataclass, replace
from typing import Any, Mapping, Optional

from novikov.grading import Truncation, parse_truncation

DEFAULT_R: str = '16'
"""Truncation used when neither the environment nor the command line sets one."""
FORMATS = ('text', 'machine')
"""Report formats."""


@dataclass
class RunState:
    """
    Stores the settings shared by all commands
    of one run. Environment variables give the
    defaults; command line flags override them.
    """

    truncation: Truncation = None
    """The default truncation R, used when a scenario has none."""
    override: bool = False
    """Whether ``truncation`` was given on the command line and beats the scenario's."""
    seed: int = 0
    """Seed of every random choice."""
    seeded: bool = False
    """Whether ``seed`` was given on the command line and beats the scenario's."""
    format: str = 'text'
    """Report format, ``text`` or ``machine``."""
    jobs: int = 1
    """Worker processes for several input files."""
    verbosity: int = 0
    """0 warnings, 1 info, 2 debug."""

    @classmethod
    def from_env(cls, env: Optional[Mapping[str, str]] = None) -> 'RunState':
        """
        Read ``NOVIKOV_DEFAULT_R`` and ``NOVIKOV_DEFAULT_SEED``.

        Args:
            env (Optional[Mapping[str, str]], optional): The environment.
                Defaults to ``os.environ``.

        Raises:
            ValueError: If a variable does not parse.

        Returns:
            RunState: The defaults.
        """
        env = os.environ if env is None else env
        try:
            seed = int(env.get('NOVIKOV_DEFAULT_SEED', '0'))
        except ValueError as e:
            raise ValueError(f'NOVIKOV_DEFAULT_SEED must be an integer: {e}') from e
        return cls(truncation=parse_truncation(env.get('NOVIKOV_DEFAULT_R', DEFAULT_R)), seed=seed)

    def with_flags(self, **flags: Any) -> 'RunState':
        """Override the defaults with the flags that were actually given."""
        given = {k: v for k, v in flags.items() if v is not None}
        if 'truncation' in given:
            given['truncation'] = parse_truncation(given['truncation'])
            if given['truncation'] is not None and given['truncation'].sign() <= 0:
                raise ValueError(f'--truncation must be positive, got {given["truncation"]}')
            given['override'] = True
        if 'seed' in given:
            given['seeded'] = True
        if given.get('format', self.format) not in FORMATS:
            raise ValueError(f'Unknown format "{given["format"]}" (use {" or ".join(FORMATS)})')
        if given.get('jobs', 1) < 1:
            raise ValueError('--jobs must be positive')
        return replace(self, **given)

    def resolve(self, scenario_truncation: Truncation) -> Truncation:
        """The truncation a scenario is run at."""
        if self.override or scenario_truncation is None:
            return self.truncation
        return scenario_truncation

    def seed_for(self, scenario_seed: int) -> int:
        """The seed a scenario is run with."""
        return self.seed if self.seeded else scenario_seed
