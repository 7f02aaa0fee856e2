"""
Canonical command reports.

A report is a list of ``(key, value)`` lines. The text format aligns
``key: value``; the machine format is ``key=value`` per line and ends
with ``status=pass`` or ``status=fail``. Both are byte-deterministic
given the scenario, the seed and the truncation.
"""

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from novikov.field import SplitValue
from novikov.grading import Truncation, render_truncation

PASS = 'pass'
FAIL = 'fail'


def _one_line(value: object) -> str:
    return ' '.join(str(value).split())


@dataclass
class Report:
    """The result of one command on one scenario."""

    command: str
    scenario: str
    seed: int
    truncation: Truncation
    entries: List[Tuple[str, str]] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    """Keys of the failed entries."""

    def add(self, key: str, value: object) -> None:
        self.entries.append((key, _one_line(value)))

    def fail(self, key: str, value: object) -> None:
        """Add an entry that makes the report fail."""
        self.add(key, value)
        self.failures.append(key)

    def check(self, key: str, ok: bool, detail: object = '') -> None:
        """Add ``pass`` or ``fail`` with an optional detail."""
        text = PASS if ok else FAIL
        if detail != '' and detail is not None:
            text = f'{text} ({_one_line(detail)})'
        if ok:
            self.add(key, text)
        else:
            self.fail(key, text)

    def add_value(self, key: str, value: SplitValue, summands: Optional[Sequence[int]] = None) -> None:
        """
        One line per field summand, in canonical form.

        Args:
            key (str): The name of the value, e.g. ``I``.
            value (SplitValue): The value.
            summands (Optional[Sequence[int]], optional): Only these summand orders.
        """
        for (summand, _), (label, text) in zip(value, value.render()):
            if summands is None or summand.order in summands:
                self.add(f'{key}[{label}]', text)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        return PASS if self.ok else FAIL

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def header(self) -> Iterable[Tuple[str, str]]:
        yield 'command', self.command
        yield 'scenario', self.scenario
        yield 'seed', str(self.seed)
        yield 'truncation', render_truncation(self.truncation)

    def render(self, fmt: str = 'text') -> str:
        """
        Render the report.

        Args:
            fmt (str, optional): ``text`` or ``machine``. Defaults to 'text'.

        Raises:
            ValueError: On an unknown format.

        Returns:
            str: The report, without a trailing newline.
        """
        lines = list(self.header()) + self.entries + [('status', self.status)]
        if fmt == 'machine':
            return '\n'.join(f'{k}={v}' for k, v in lines)
        if fmt != 'text':
            raise ValueError(f'Unknown format "{fmt}"')
        width = max(len(k) for k, _ in lines)
        return '\n'.join(f'{k.ljust(width)} : {v}' for k, v in lines)
