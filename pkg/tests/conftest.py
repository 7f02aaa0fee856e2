import os.path as osp
import random
from typing import Callable, List, Tuple

import pytest

from novikov import generate
from novikov.__main__ import main
from novikov.grading import Grade
from novikov.group import GradedGroup
from novikov.lefschetz import CIRCLE
from novikov.scenario import Scenario, write_scenario
from novikov.series import NovikovSeries

CAT_MAP = [[2, 1], [1, 1]]


def get_testdir() -> str:
    return osp.realpath(osp.normcase(osp.dirname(osp.abspath(__file__))))


def geometric(n: int) -> str:
    """``1 + t + ... + t^(n-1) + O(n)``."""
    terms = ['1', 't'] + [f't^{k}' for k in range(2, n)]
    return ' + '.join(terms[:n]) + f' + O({n})'


def series(text: str, group: GradedGroup = CIRCLE, order: int = 1) -> NovikovSeries:
    return NovikovSeries.parse(text, group, order)


@pytest.fixture
def R() -> Grade:
    return Grade.of(16)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20230404)


@pytest.fixture
def data_dir() -> str:
    return osp.join(get_testdir(), 'data')


@pytest.fixture
def circle_morse(R: Grade) -> Scenario:
    return generate.circle_morse(R)


@pytest.fixture
def circle_flow(R: Grade) -> Scenario:
    return generate.circle_flow(R)


@pytest.fixture
def cat_map() -> Scenario:
    return generate.mapping_torus(CAT_MAP, Grade.of(8))


@pytest.fixture
def cli(capsys) -> Callable[..., Tuple[int, str, str]]:
    """Run the CLI in-process; returns the exit code, stdout and stderr."""
    def run(*argv: str) -> Tuple[int, str, str]:
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return run


@pytest.fixture
def scenario_file(tmp_path) -> Callable[[Scenario], str]:
    def write(scenario: Scenario) -> str:
        path = tmp_path / f'{scenario.name}.json'
        write_scenario(scenario, str(path))
        return str(path)
    return write


def machine(out: str) -> List[Tuple[str, str]]:
    """The ``key=value`` lines of machine reports."""
    return [tuple(line.split('=', 1)) for line in out.splitlines() if '=' in line]
