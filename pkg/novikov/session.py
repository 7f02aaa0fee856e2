"""
Command session - resolves a command line to
a (possibly nested) command and runs it.
"""

import copy
import logging
from typing import Any, Dict, List, Tuple, Union

from novikov import io
from novikov.cmd import EXIT_USAGE, Command
from novikov.state import RunState
from novikov.validator import CmdValidator

log = logging.getLogger(__name__)

CmdTree = Dict[str, Union[Command, Dict[str, Any]]]


class CmdSession:
    """
    Holds the command collections of the CLI and
    dispatches one command line at a time.
    """

    cmds: Dict[str, CmdTree]
    """Cmd collections"""
    validator: CmdValidator
    """Validator to validate command lines"""
    state: RunState
    """The settings of the current run"""

    def __init__(self, cmds: CmdTree, state: RunState) -> None:
        """
        Create a new command session.

        Args:
            cmds (CmdTree): The original commands to use.
            state (RunState): The settings of this run.
        """
        self.__cmds: CmdTree = {}
        self.cmds = {
            '__init__': cmds,
        }
        self.validator = CmdValidator(self)
        self.state = state
        self.refresh()

    def handle(self, argv: List[str]) -> int:
        """
        Handle one command line.

        Args:
            argv (List[str]): The command and its arguments.

        Returns:
            int: The command's exit code; 2 if there is no such command.
        """
        problem = self.validator.validate(argv)
        if problem is not None:
            io.e(problem)
            return EXIT_USAGE
        cmd, args = self[argv]
        log.info('running %s %s', cmd.name, ' '.join(args))
        return cmd(args, state=self.state)

    def refresh(self) -> None:
        """
        Rebuild the flat command dictionary from
        all collections.
        """
        self.__cmds.clear()
        for v in self.cmds.values():
            self.deep_merge(self.__cmds, self.__build_aliases(v))

    def deep_merge(self, a: Dict[str, Any], b: Dict[str, Any]) -> None:
        """
        Deep merges two dictionaries into the first one.

        Args:
            a (Dict[str, Any]): Dict a.
            b (Dict[str, Any]): Dict b.
        """
        for k, v in b.items():
            if isinstance(v, dict):
                self.deep_merge(a.setdefault(k, {}), v)
            else:
                a[k] = v

    def parse(self, args: List[str]) -> Tuple[Union[Command, CmdTree], List[str]]:
        """
        Get a command / command dictionary in case of
        subcommands from the session.

        Args:
            args (List[str]): The CLI args.

        Raises:
            KeyError: If the command does not exist.

        Returns:
            Tuple[Union[Command, CmdTree], List[str]]: The command / command
                dictionary and all remaining args.
        """
        _args: List[str] = args.copy()
        d: Union[Command, CmdTree] = self.__cmds
        while isinstance(d, dict) and len(_args) > 0:
            cu: str = _args.pop(0)
            if cu not in d:
                raise KeyError(f'Unknown command: "{" ".join(args)}"')
            d = d[cu]
        return d, _args

    def __build_aliases(self, cmds: CmdTree) -> CmdTree:
        __cmds: CmdTree = copy.copy(cmds)
        for v in cmds.values():
            if isinstance(v, Command):
                for a in v.aliases:
                    __cmds[a] = v
        return __cmds

    def __getitem__(self, argv: Union[str, List[str]]) -> Tuple[Command, List[str]]:
        """
        Get a command from the session.

        Args:
            argv (Union[str, List[str]]): A command line.

        Raises:
            KeyError: If the command does not exist.
            TypeError: If the command actually requires sub-commands.

        Returns:
            Tuple[Command, List[str]]: The command & all args.
        """
        args = argv.strip().split() if isinstance(argv, str) else list(argv)
        d, rest = self.parse(args)
        if isinstance(d, dict):
            raise TypeError(f'"{" ".join(args)}" needs one of the sub-commands {", ".join(sorted(d))}')
        return d, rest
