"""
Module providing the template for a command
"""

import logging
from argparse import ArgumentError
from typing import Callable, List, Optional

from novikov import io
from novikov.argparser import ArgParser, ParserExit
from novikov.errors import NovikovError, ScenarioError
from novikov.state import RunState

log = logging.getLogger(__name__)

EXIT_OK: int = 0
"""Everything checked out."""
EXIT_FAILURE: int = 1
"""A mathematical check failed or a move violated invariance."""
EXIT_USAGE: int = 2
"""The command line or a scenario could not be parsed or validated."""


class Command:
    """
    A template command
    """

    _parser: ArgParser
    """The argument parser for the command."""
    _needs_parsing: bool = False
    """Whether or not the command needs parsing."""

    def __init__(self, name: str, aliases: Optional[List[str]] = None, description: str = ''):
        """
        Initializes a command with the specified name, aliases and description.

        Args:
            name (str): The name of the command
            aliases (Optional[List[str]]): The aliases of the command. Defaults to None.
            description (str, optional): The description of the command. Defaults to ''.
        """
        self.name: str = name
        self.aliases: List[str] = aliases if aliases is not None else []
        self.description: str = description
        self._parser = ArgParser(f'novikov {self.name}', self.description)

    def add_argument(self, *args, **kwargs) -> None:
        """
        Wrapper method for ``._parser.add_argument``.
        """
        self._needs_parsing = True
        self._parser.add_argument(*args, **kwargs)

    @property
    def help(self) -> str:
        return self._parser.format_help()

    def execute(self, raw_args: List[str], argv: List[str], state: RunState, *args, **kwargs) -> int:
        """
        Executes the command with the given arguments.
        The arguments defined in the argument parser are passed
        to this function as keyword arguments.

        Args:
            raw_args (List[str]): The raw arguments that were passed to the command.
            argv (List[str]): Extra arguments; i.e. arguments that weren't defined
                using the argument parser.
            state (RunState): The settings of this run.

        Returns:
            int: The exit code.
        """
        raise NotImplementedError()

    def __call__(self, args: List[str], state: RunState) -> int:
        """
        Execute this command - before doing so, however, parse
        the given arguments with the argument parser and pass
        them on as keyword arguments.

        Args:
            args (List[str]): The raw arguments that were passed to the command.
            state (RunState): The settings of this run.

        Returns:
            int: The exit code; errors are printed, never raised.
        """
        return guarded(lambda: self.__run(args, state), self.name)

    def __run(self, args: List[str], state: RunState) -> int:
        if not self._needs_parsing:
            return self.execute(raw_args=args, argv=args, state=state)
        p_args, argv = self._parser.parse_known_args(args)
        if argv:
            raise ValueError(f'Unrecognized arguments: {" ".join(argv)}')
        return self.execute(raw_args=args, argv=argv, state=state, **dict(p_args._get_kwargs()))


def guarded(run: Callable[[], int], what: str = 'command') -> int:
    """
    Run something and map its errors to exit codes.

    Args:
        run (Callable[[], int]): Returns an exit code.
        what (str, optional): Named in the log.

    Returns:
        int: ``run``'s exit code, 1 for a mathematical error and 2 for
            a parse, validation or usage error.
    """
    try:
        return run()
    except ParserExit as e:
        return e.status
    except ScenarioError as e:
        io.e(f'Invalid scenario: {e}')
        return EXIT_USAGE
    except NovikovError as e:
        log.info('%s failed: %s', what, type(e).__name__)
        io.e(f'{type(e).__name__}: {e}')
        return EXIT_FAILURE
    except (ValueError, ArgumentError) as e:
        io.e(e)
        return EXIT_USAGE
    except OSError as e:
        io.e(f'{e.strerror or e}: {e.filename}' if e.filename else str(e))
        return EXIT_USAGE
