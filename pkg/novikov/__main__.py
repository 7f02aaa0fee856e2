"""
Entry point of the ``novikov`` command line tool.
"""

import logging
import sys
from argparse import ArgumentError
from typing import Optional, Sequence

from novikov import commands, io
from novikov.__version__ import version
from novikov.argparser import ArgParser, ParserExit
from novikov.cmd import EXIT_OK, EXIT_USAGE
from novikov.session import CmdSession
from novikov.state import FORMATS, RunState

log = logging.getLogger('novikov')


def _parser() -> ArgParser:
    parser = ArgParser('novikov', 'Novikov complexes, closed orbits and torsion invariants.', add_help=False,
                       allow_abbrev=False)
    parser.add_argument('-v', '--verbose', action='count', default=None, help='-v for info, -vv for debug logging.')
    parser.add_argument('--version', action='store_true', default=False, help='Print the version and exit.')
    parser.add_argument('--truncation', type=str, default=None, help='Truncation R, beats the scenario\'s.')
    parser.add_argument('--jobs', type=int, default=None, help='Worker processes for several files.')
    parser.add_argument('--seed', type=int, default=None, help='Seed of all random choices.')
    parser.add_argument('--format', type=str, default=None, choices=FORMATS, help='Report format.')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command line.

    Global options may appear anywhere; everything else is the command
    and its arguments.

    Args:
        argv (Optional[Sequence[str]], optional): The arguments. Defaults to ``sys.argv[1:]``.

    Returns:
        int: The exit code.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        opts, rest = _parser().parse_known_args(argv)
        state = RunState.from_env().with_flags(truncation=opts.truncation, seed=opts.seed, format=opts.format,
                                               jobs=opts.jobs, verbosity=opts.verbose)
    except ParserExit as e:
        return e.status
    except (ValueError, ArgumentError) as e:
        io.e(e)
        return EXIT_USAGE
    io.setup_logging(state.verbosity)
    if opts.version:
        io.out(version)
        return EXIT_OK
    session = CmdSession(commands.build(), state)
    if not rest or rest[0] in ('-h', '--help'):
        io.banner(version)
        session.handle(['help'])
        return EXIT_OK if rest else EXIT_USAGE
    code = session.handle(rest)
    log.info('exit code %d', code)
    return code


def run() -> None:
    """Console script entry point."""
    sys.exit(main())


if __name__ == '__main__':
    run()
