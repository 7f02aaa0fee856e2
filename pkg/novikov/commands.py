"""
The commands of the ``novikov`` CLI.

Scenario commands (``check``, ``invariant``, ``moves``, ``cover``) read
one or more scenario files and print one report per file, in the order
given. ``generate`` writes built-in scenarios.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from novikov import generate, io
from novikov.cmd import EXIT_OK, EXIT_USAGE, Command, guarded
from novikov.complex import check_boundary
from novikov.covers import check_cover, cover_state, push_series
from novikov.errors import CoverError, MoveError, NovikovError, OrbitError, ScenarioError
from novikov.field import SplitValue
from novikov.grading import Grade
from novikov.group import CyclicQuotient
from novikov.latour import embedded_torsion
from novikov.lefschetz import mapping_torus_torsion
from novikov.moves import VIOLATED, run_move, verify_invariance
from novikov.report import Report
from novikov.scenario import Scenario, read_scenario, write_scenario
from novikov.state import RunState
from novikov.validator import ScenarioValidator

log = logging.getLogger(__name__)


class ScenarioCommand(Command):
    """
    A command that runs on scenario files and prints a report for each.
    """

    def __init__(self, name: str, aliases: Optional[List[str]] = None, description: str = '') -> None:
        super().__init__(name, aliases, description)
        self.add_argument('files', nargs='+', metavar='FILE', help='Scenario files, - for stdin.')

    def run(self, scenario: Scenario, state: RunState, report: Report) -> None:
        """
        Fill the report for one scenario.

        Args:
            scenario (Scenario): A validated scenario.
            state (RunState): The settings of this run.
            report (Report): The report to fill.
        """
        raise NotImplementedError()

    def options(self, kwargs: Dict[str, Any]) -> None:
        """Take the command's own options before the files are run."""

    def run_file(self, path: str, state: RunState) -> Tuple[int, str]:
        """
        Run on one file.

        Returns:
            Tuple[int, str]: The exit code and the rendered report (empty if
                the scenario could not be read).
        """
        rendered: List[str] = []

        def attempt() -> int:
            scenario = ScenarioValidator().validate(read_scenario(path))
            R = state.resolve(scenario.truncation)
            report = Report(self.name, scenario.name, state.seed_for(scenario.seed), R)
            self.run(scenario, state, report)
            rendered.append(report.render(state.format))
            log.info('%s %s: %s', self.name, path, report.status)
            return report.exit_code

        code = guarded(attempt, f'{self.name} {path}')
        return code, rendered[0] if rendered else ''

    def execute(self, raw_args: List[str], argv: List[str], state: RunState, *args, files: List[str] = (), **kwargs) -> int:
        self.options(kwargs)
        if state.jobs > 1 and len(files) > 1:
            n = len(files)
            io.l(f'Running {n} scenarios on {min(n, state.jobs)} workers')
            with ProcessPoolExecutor(max_workers=state.jobs) as pool:
                results = list(pool.map(_run_in_worker, [self.name] * n, [kwargs] * n, files, [state] * n))
        else:
            results = [self.run_file(path, state) for path in files]
        for _, text in results:
            if text:
                io.out(text)
        return max(code for code, _ in results)


def _run_in_worker(name: str, options: Dict[str, Any], path: str, state: RunState) -> Tuple[int, str]:
    io.setup_logging(state.verbosity)
    command = build()[name]
    command.options(options)
    return command.run_file(path, state)


class CheckCommand(ScenarioCommand):
    """``∂∂ = 0``, integrality of ζ and applicability of the move script."""

    def __init__(self) -> None:
        super().__init__('check', description='Validate a scenario: ∂∂ = 0, integral ζ, applicable moves.')

    def run(self, scenario: Scenario, state: RunState, report: Report) -> None:
        R = report.truncation
        flow = scenario.flow_state(R)
        C = flow.complex
        report.add('generators', ' '.join(f'{g.name}:{g.degree}' for g in C.generators) or '-')
        boundary = check_boundary(C)
        if boundary.ok:
            report.add('boundary', 'pass')
        for failure in boundary.failures:
            report.fail('boundary', str(failure))
        report.add('orbits', len(flow.orbits))
        try:
            report.add('zeta', flow.zeta(R))
            report.add('zeta.integral', 'pass')
        except OrbitError as e:
            report.fail('zeta.integral', e)
        current = flow
        for i, move in enumerate(scenario.moves, start=1):
            try:
                current = move.apply(current, R)
                report.add(f'move.{i}', f'{move.kind} applicable')
            except MoveError as e:
                report.fail(f'move.{i}', f'{move.kind}: {e}')
                break
        if scenario.cover is not None:
            try:
                cover_state(flow, scenario.cover, fibre=scenario.maps)
                report.add('cover', f'k={scenario.cover.modulus} descends')
            except CoverError as e:
                report.fail('cover', e)


class InvariantCommand(ScenarioCommand):
    """``T_m``, ζ and ``I`` per summand, and the identities a scenario can be checked against."""

    def __init__(self) -> None:
        super().__init__('invariant', aliases=['inv'], description='Print T_m, ζ and I = T_m * ζ per field summand.')

    def run(self, scenario: Scenario, state: RunState, report: Report) -> None:
        R = report.truncation
        flow = scenario.flow_state(R)
        inv = flow.invariant(R, scenario.ambiguity)
        report.add('ambiguity', scenario.ambiguity.value)
        report.add_value('T_m', inv.torsion, scenario.summands)
        report.add_value('zeta', SplitValue.unit(inv.torsion.split, inv.zeta, scenario.ambiguity), scenario.summands)
        report.add_value('I', inv.value, scenario.summands)
        if scenario.fibre_maps is not None:
            expected = SplitValue(inv.value.split, (mapping_torus_torsion(scenario.maps, R),), scenario.ambiguity)
            report.add_value('torsion(mapping torus)', expected)
            bad = inv.value.mismatches(expected, R)
            report.check('lefschetz = torsion', not bad, ', '.join(map(str, bad)))
        if scenario.exact:
            embedded = embedded_torsion(scenario.complex, scenario.group, R, scenario.ambiguity)
            report.add_value('iota(T)', embedded, scenario.summands)
            bad = inv.value.restrict(s.order for s in embedded.split).mismatches(embedded, R)
            report.check('iota(T) = I', not bad, ', '.join(map(str, bad)))


class MovesCommand(ScenarioCommand):
    """Apply the move script and check that ``I`` never changes."""

    def __init__(self) -> None:
        super().__init__('moves', description='Run the move script, verifying the invariance of I after each move.')

    def run(self, scenario: Scenario, state: RunState, report: Report) -> None:
        R = report.truncation
        start = current = scenario.flow_state(R)
        for i, move in enumerate(scenario.moves, start=1):
            try:
                current, result = run_move(current, move, R, scenario.ambiguity)
            except MoveError as e:
                report.fail(f'move.{i}', f'{move.kind}: {e}')
                return
            predicted = result.torsion_ok and result.zeta_ok
            line = f'{move} -> {result.verdict}'
            if result.verdict == VIOLATED:
                report.fail(f'move.{i}', f'{line} on {", ".join(map(str, result.mismatches))}')
            elif not predicted:
                report.fail(f'move.{i}', f'{line}; the {"torsion" if not result.torsion_ok else "zeta"} ratio is not as predicted')
            else:
                report.add(f'move.{i}', line)
        final = verify_invariance(start, current, 'composite', R, scenario.ambiguity)
        report.add_value('I', final.after.value, scenario.summands)
        if final.verdict == VIOLATED:
            report.fail('composite', f'{final.verdict} on {", ".join(map(str, final.mismatches))}')
        else:
            report.add('composite', final.verdict)


class CoverCommand(ScenarioCommand):
    """Pass to a finite cyclic cover and check the norm and trace identities."""

    def __init__(self) -> None:
        super().__init__('cover', description='Check ζ, τ and I of a finite cyclic cover against their norms.')
        self.add_argument('--k', type=int, default=None, help='Index of the cover.')
        self.add_argument('--weights', type=str, default=None, help='m on the free generators, e.g. 1,0.')
        self.add_argument('--torsion-weight', type=int, default=None, help='m on the torsion generator.')
        self.add_argument('--samples', type=int, default=5, help='Random x for the trace and log-norm identities.')
        self.quotient: Optional[Callable[[Scenario], CyclicQuotient]] = None
        self.samples = 5

    def options(self, kwargs: Dict[str, Any]) -> None:
        k, weights, tw = kwargs.get('k'), kwargs.get('weights'), kwargs.get('torsion_weight')
        self.samples = kwargs.get('samples', 5)
        if k is None and (weights is not None or tw is not None):
            raise ValueError('--weights and --torsion-weight need --k')
        if k is None:
            self.quotient = None
            return
        parsed = None if weights is None else tuple(int(w) for w in weights.split(','))
        self.quotient = lambda s: CyclicQuotient(
            k, parsed if parsed is not None else tuple(int(i == 0) for i in range(s.group.free_rank)), tw or 0)

    def run(self, scenario: Scenario, state: RunState, report: Report) -> None:
        R = report.truncation
        if self.quotient is not None:
            m = self.quotient(scenario)
            if scenario.cover is not None and m != scenario.cover:
                io.w(f'--k overrides the cover of "{scenario.name}"')
        elif scenario.cover is not None:
            m = scenario.cover
        else:
            raise ScenarioError(f'"{scenario.name}" has no cover; pass --k')
        try:
            m.check(scenario.group)
        except NovikovError as e:
            raise ScenarioError(f'Cover: {e}') from e
        flow = scenario.flow_state(R)
        result = check_cover(flow, m, R, scenario.ambiguity, random.Random(report.seed), self.samples,
                             fibre=scenario.maps)
        report.add('k', m.modulus)
        report.add('m', ','.join(map(str, m.free_weights)) + (f';s={m.torsion_weight}' if m.torsion_weight else ''))
        report.add('kernel', result.subgroup.kernel)
        report.add('Norm(zeta)', push_series(result.norm_zeta, result.subgroup))
        inv = result.state.invariant(result.state.truncation, scenario.ambiguity)
        report.add_value('I(cover)', inv.value, scenario.summands)
        for c in result.checks:
            report.check(f'check.{c.name}', c.ok, c.detail if not c.ok else '')


class GenerateCommand(Command):
    """
    A built-in scenario generator: writes the scenario to ``-o`` or stdout.
    """

    def __init__(self, name: str, description: str, build: Callable[..., Scenario]) -> None:
        super().__init__(f'generate {name}', description=description)
        self.build = build
        self.add_argument('-o', '--output', type=str, default=None, help='Write to this file instead of stdout.')

    def execute(self, raw_args: List[str], argv: List[str], state: RunState, *args, output: Optional[str] = None, **kwargs) -> int:
        scenario = self.build(state, **kwargs)
        text = write_scenario(scenario, output)
        if output is None or output == '-':
            io.out(text.rstrip('\n'))
        else:
            io.s(f'Wrote {scenario.name} to {output}')
        return EXIT_OK


def _weights(text: Optional[str]) -> Optional[List[Grade]]:
    return None if text is None else [Grade.parse(w) for w in text.split(',')]


def _mapping_torus(state: RunState, matrix: Optional[str] = None, entries: Optional[str] = None) -> Scenario:
    if (matrix is None) == (entries is None):
        raise ValueError('Give the monodromy once, as "a,b,c,d" or with --matrix')
    return generate.mapping_torus(generate.parse_matrix(matrix or entries), state.truncation)


def _latour(state: RunState, source: str = '', weights: Optional[str] = None) -> Scenario:
    scenario = ScenarioValidator().validate(read_scenario(source))
    return generate.latour(scenario, _weights(weights), state.resolve(scenario.truncation))


def _random(state: RunState, **kwargs: Any) -> Scenario:
    return generate.random_complex(state.seed, state.truncation, **kwargs)


def generators() -> Dict[str, Command]:
    """The ``generate`` sub-commands."""
    flow = GenerateCommand('circle-flow', 'The circle rotation: one orbit and its iterates.',
                           lambda state: generate.circle_flow(state.truncation))
    morse = GenerateCommand('circle-morse', 'A circle-valued Morse function with ∂p = (1 - t) q.',
                            lambda state: generate.circle_morse(state.truncation))
    exact = GenerateCommand('exact-circle', 'The group ring complex of the circle.',
                            lambda state: generate.exact_circle(state.truncation))
    torus = GenerateCommand('mapping-torus', 'A torus bundle over the circle with monodromy A on H_1.', _mapping_torus)
    torus.add_argument('entries', nargs='?', default=None, metavar='A', help='The monodromy as a,b,c,d.')
    torus.add_argument('--matrix', type=str, default=None, help='The monodromy as a,b,c,d.')
    latour = GenerateCommand('latour', 'Read an exact scenario in the Novikov ring of another grading.', _latour)
    latour.add_argument('--from', dest='source', type=str, required=True, help='The exact scenario.')
    latour.add_argument('--weights', type=str, default=None, help='New grading weights, e.g. 1 or 1,r2.')
    rand = GenerateCommand('random-complex', 'A random flow with a random move script (uses --seed).', _random)
    rand.add_argument('--rank', type=int, default=1, help='Free rank of H (1 or 2).')
    rand.add_argument('--torsion', type=int, default=0, help='Order of the torsion of H.')
    rand.add_argument('--degrees', type=int, default=3, help='Number of degrees.')
    rand.add_argument('--density', type=float, default=0.5, help='Chance of each new boundary entry.')
    rand.add_argument('--pairs', type=int, default=3, help='Number of cancelling pairs born.')
    rand.add_argument('--moves', type=int, default=4, help='Length of the move script.')
    return {c.name.split(' ', 1)[1]: c for c in (flow, morse, exact, torus, latour, rand)}


class HelpCommand(Command):
    """Lists the commands, or prints the help of one."""

    def __init__(self, tree: Callable[[], Dict[str, Any]]) -> None:
        super().__init__('help', aliases=['?'], description='Show the commands or the help of one command.')
        self.add_argument('topic', nargs='*', help='A command, e.g. "generate random-complex".')
        self.tree = tree

    def execute(self, raw_args: List[str], argv: List[str], state: RunState, *args, topic: List[str] = (), **kwargs) -> int:
        d: Any = self.tree()
        for word in topic:
            if not isinstance(d, dict) or word not in d:
                io.e(f'Unknown command: "{" ".join(topic)}"')
                return EXIT_USAGE
            d = d[word]
        if isinstance(d, Command):
            io.console.print(d.help, highlight=False)
            return EXIT_OK
        io.console.print(io.fl(f'[bold]Usage:[/bold] {USAGE}'), highlight=False)
        for c in _walk(d):
            io.console.print(f'  [bold]{c.name.ljust(28)}[/bold] {c.description}', highlight=False)
        return EXIT_OK


USAGE = 'novikov [-v] [--version] [--truncation R] [--jobs N] [--seed S] [--format text|machine] <command> ...'


def _walk(d: Dict[str, Any]) -> Iterator[Command]:
    for k in sorted(d):
        if isinstance(d[k], dict):
            yield from _walk(d[k])
        else:
            yield d[k]


def build() -> Dict[str, Any]:
    """
    The command tree of the CLI.

    Returns:
        Dict[str, Any]: Commands and nested dictionaries of sub-commands.
    """
    tree: Dict[str, Any] = {}
    for c in (CheckCommand(), InvariantCommand(), MovesCommand(), CoverCommand()):
        tree[c.name] = c
    tree['generate'] = generators()
    tree['help'] = HelpCommand(lambda: tree)
    return tree
