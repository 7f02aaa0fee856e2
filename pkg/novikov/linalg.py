"""
Matrices over truncated Novikov series and pivoted elimination.

Pivots are always entries with a single leading monomial (units of the
Novikov ring); among those the one of minimal leading grade is chosen,
ties broken by column and then row label, so runs are reproducible.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

from novikov.errors import FieldError, TruncationError
from novikov.grading import Truncation
from novikov.group import GradedGroup
from novikov.series import NovikovSeries

log = logging.getLogger(__name__)

Rows = List[List[NovikovSeries]]


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of distinct integers."""
    sign, seen = 1, list(perm)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


@dataclass
class Elimination:
    """
    The outcome of :meth:`SeriesMatrix.eliminate`.
    """

    pivots: List[Tuple[int, int, NovikovSeries]] = field(default_factory=list)
    """``(row, column, pivot)`` in the order they were chosen."""
    rows: Rows = field(default_factory=list)
    """The reduced matrix."""

    @property
    def pivot_rows(self) -> List[int]:
        return [r for r, _, _ in self.pivots]

    @property
    def pivot_columns(self) -> List[int]:
        return [c for _, c, _ in self.pivots]

    @property
    def sign(self) -> int:
        """
        Sign relating ``prod(pivots)`` to the minor on the pivot rows and
        columns, both taken in increasing order.
        """
        return permutation_sign(self.pivot_rows) * permutation_sign(self.pivot_columns)


@dataclass(frozen=True)
class SeriesMatrix:
    """
    A dense matrix of :class:`NovikovSeries`.

    ``truncation`` is the bound of the implicit zero entries; it matters
    only for matrices without any entries.
    """

    group: GradedGroup
    order: int
    rows: Tuple[Tuple[NovikovSeries, ...], ...]
    n_cols: int
    truncation: Truncation = None

    @classmethod
    def build(cls, group: GradedGroup, order: int, n_rows: int, n_cols: int,
              entry: Callable[[int, int], Optional[NovikovSeries]], truncation: Truncation = None) -> 'SeriesMatrix':
        """
        Build a matrix entry by entry; ``entry`` may return None for zero.
        """
        zero = NovikovSeries.zero(group, order, truncation)
        cells = [[entry(r, c) for c in range(n_cols)] for r in range(n_rows)]
        rows = tuple(tuple(zero if x is None else x for x in row) for row in cells)
        return cls(group, order, rows, n_cols, truncation)

    @classmethod
    def identity(cls, group: GradedGroup, order: int, n: int, truncation: Truncation = None) -> 'SeriesMatrix':
        one = NovikovSeries.one(group, order)
        return cls.build(group, order, n, n, lambda r, c: one if r == c else None, truncation)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n_rows, self.n_cols

    def __getitem__(self, rc: Tuple[int, int]) -> NovikovSeries:
        return self.rows[rc[0]][rc[1]]

    def _zero(self) -> NovikovSeries:
        return NovikovSeries.zero(self.group, self.order, self.truncation)

    def __matmul__(self, other: 'SeriesMatrix') -> 'SeriesMatrix':
        if self.n_cols != other.n_rows:
            raise FieldError(f'Cannot multiply {self.shape} by {other.shape} matrices')
        truncation = other.truncation if self.truncation is None else self.truncation

        def entry(r: int, c: int) -> NovikovSeries:
            acc = NovikovSeries.zero(self.group, self.order, truncation if self.n_cols == 0 else None)
            for k in range(self.n_cols):
                acc = acc + self.rows[r][k] * other.rows[k][c]
            return acc
        return SeriesMatrix.build(self.group, self.order, self.n_rows, other.n_cols, entry, truncation)

    def __add__(self, other: 'SeriesMatrix') -> 'SeriesMatrix':
        if self.shape != other.shape:
            raise FieldError(f'Cannot add {self.shape} and {other.shape} matrices')
        return SeriesMatrix.build(self.group, self.order, self.n_rows, self.n_cols,
                                  lambda r, c: self.rows[r][c] + other.rows[r][c], self.truncation)

    def __neg__(self) -> 'SeriesMatrix':
        return SeriesMatrix.build(self.group, self.order, self.n_rows, self.n_cols,
                                  lambda r, c: -self.rows[r][c], self.truncation)

    def __sub__(self, other: 'SeriesMatrix') -> 'SeriesMatrix':
        return self + (-other)

    def map(self, f: Callable[[NovikovSeries], NovikovSeries], order: Optional[int] = None) -> 'SeriesMatrix':
        """Apply f entrywise (e.g. a projection to a field summand)."""
        return SeriesMatrix(self.group, self.order if order is None else order,
                            tuple(tuple(f(x) for x in row) for row in self.rows), self.n_cols, self.truncation)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> 'SeriesMatrix':
        return SeriesMatrix(self.group, self.order, tuple(tuple(self.rows[r][c] for c in cols) for r in rows),
                            len(cols), self.truncation)

    def is_zero(self) -> bool:
        """Every entry vanishes below its truncation."""
        return all(x.is_zero for row in self.rows for x in row)

    def eliminate(self, pivot_columns: Optional[int] = None, precision: Truncation = None,
                  full: bool = False, labels: Optional[Tuple[Sequence[str], Sequence[str]]] = None) -> Elimination:
        """
        Row-reduce the matrix with unit pivots.

        Args:
            pivot_columns (Optional[int], optional): Only the first this many
                columns are pivot candidates (the rest ride along, as in an
                augmented matrix). Defaults to all columns.
            precision (Truncation, optional): Working precision used to
                invert exact pivots. Defaults to None.
            full (bool, optional): Clear pivot columns in every row
                (Gauss-Jordan) instead of only in the not yet pivoted ones.
                Defaults to False.
            labels (optional): ``(row labels, column labels)`` used for
                tie-breaking; defaults to the indices.

        Returns:
            Elimination: The pivots and the reduced rows.
        """
        ncand = self.n_cols if pivot_columns is None else pivot_columns
        row_labels, col_labels = labels or ([f'{i:06d}' for i in range(self.n_rows)],
                                            [f'{i:06d}' for i in range(self.n_cols)])
        work: Rows = [list(row) for row in self.rows]
        active_rows = set(range(self.n_rows))
        active_cols = set(range(ncand))
        result = Elimination(rows=work)
        while active_rows and active_cols:
            best = None
            for r in active_rows:
                for c in active_cols:
                    x = work[r][c]
                    if x.is_zero or not x.has_monomial_lead:
                        continue
                    key = (x.valuation, col_labels[c], row_labels[r])
                    if best is None or key < best[0]:
                        best = (key, r, c)
            if best is None:
                break
            _, pr, pc = best
            pivot = work[pr][pc]
            log.debug('pivot (%s, %s) = %s', row_labels[pr], col_labels[pc], pivot)
            inverse = None
            targets = (r for r in range(self.n_rows) if r != pr and (full or r in active_rows))
            for r in targets:
                if work[r][pc].is_zero:
                    continue
                if inverse is None:
                    inverse = pivot.invert(precision)
                factor = work[r][pc] * inverse
                for c in range(self.n_cols):
                    if c == pc:
                        continue
                    work[r][c] = work[r][c] - factor * work[pr][c]
                work[r][pc] = NovikovSeries.zero(self.group, self.order, factor.truncation)
            result.pivots.append((pr, pc, pivot))
            active_rows.discard(pr)
            active_cols.discard(pc)
        return result

    def determinant(self, precision: Truncation = None) -> NovikovSeries:
        """
        The determinant, as ``sign * prod(pivots)``.

        Args:
            precision (Truncation, optional): Working precision for exact entries.

        Raises:
            FieldError: If the matrix is not square.

        Returns:
            NovikovSeries: The determinant; a zero series if no full set of
                unit pivots exists below the working truncation.
        """
        if self.n_rows != self.n_cols:
            raise FieldError(f'Determinant of a non-square {self.shape} matrix')
        elim = self.eliminate(precision=precision)
        det = NovikovSeries.one(self.group, self.order)
        for _, _, p in elim.pivots:
            det = det * p
        if len(elim.pivots) < self.n_rows:
            bound = det.truncation if det.truncation is not None else precision
            return NovikovSeries.zero(self.group, self.order, bound)
        return det if elim.sign > 0 else -det

    def inverse(self, precision: Truncation = None) -> 'SeriesMatrix':
        """
        The inverse, by Gauss-Jordan elimination of ``[M | I]``.

        Raises:
            FieldError: If the matrix is not square or has no inverse with
                unit pivots.
        """
        n = self.n_rows
        if n != self.n_cols:
            raise FieldError(f'Inverse of a non-square {self.shape} matrix')
        one = NovikovSeries.one(self.group, self.order)
        zero = NovikovSeries.zero(self.group, self.order)
        augmented = SeriesMatrix(self.group, self.order,
                                 tuple(row + tuple(one if r == c else zero for c in range(n))
                                       for r, row in enumerate(self.rows)), 2 * n, self.truncation)
        elim = augmented.eliminate(pivot_columns=n, precision=precision, full=True)
        if len(elim.pivots) < n:
            raise FieldError(f'Matrix is not invertible with unit pivots ({len(elim.pivots)} of {n} found)')
        out: List[Optional[Tuple[NovikovSeries, ...]]] = [None] * n
        for r, c, p in elim.pivots:
            inverse = p.invert(precision)
            out[c] = tuple(inverse * x for x in elim.rows[r][n:])
        return SeriesMatrix(self.group, self.order, tuple(out), n, self.truncation)

    def __str__(self) -> str:
        return '\n'.join('[' + ', '.join(str(x) for x in row) + ']' for row in self.rows)


def block_determinant_check(alpha: SeriesMatrix, beta: SeriesMatrix, gamma: SeriesMatrix,
                            delta: SeriesMatrix, precision: Truncation = None) -> Tuple[NovikovSeries, NovikovSeries]:
    """
    Both sides of ``det [[a, b], [c, d]] = det(a) * det(d - c a^-1 b)``.

    Args:
        alpha, beta, gamma, delta (SeriesMatrix): The blocks; alpha is square
            and invertible with unit pivots.
        precision (Truncation, optional): Working precision for exact entries.

    Raises:
        FieldError: If the block shapes do not fit.

    Returns:
        Tuple[NovikovSeries, NovikovSeries]: The left and the right side.
    """
    if alpha.n_rows != beta.n_rows or gamma.n_rows != delta.n_rows \
            or alpha.n_cols != gamma.n_cols or beta.n_cols != delta.n_cols:
        raise FieldError('Block shapes do not fit together')
    n, m = alpha.n_rows, delta.n_rows
    top = [alpha.rows[r] + beta.rows[r] for r in range(n)]
    bottom = [gamma.rows[r] + delta.rows[r] for r in range(m)]
    whole = SeriesMatrix(alpha.group, alpha.order, tuple(top + bottom), alpha.n_cols + beta.n_cols, alpha.truncation)
    left = whole.determinant(precision)
    schur = delta - gamma @ alpha.inverse(precision) @ beta
    right = alpha.determinant(precision) * schur.determinant(precision)
    if left.is_zero and right.is_zero:
        log.debug('block determinant vanishes on both sides')
    return left, right


def require_certified(x: NovikovSeries, what: str) -> NovikovSeries:
    """
    Raise if x carries no certified term.

    Raises:
        TruncationError: If x is zero modulo a finite truncation.
    """
    if x.is_zero and x.truncation is not None:
        raise TruncationError(f'Truncation O({x.truncation}) too small to certify {what}')
    return x
