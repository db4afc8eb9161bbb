"""Sparse integer matrices on finite truncation windows, elementary
operation logs, unimodular reduction, and a Smith normal form oracle.

Indices are 1-based throughout, matching the matrix JSON interchange form
{"rows": R, "cols": C, "entries": [[i, j, v], ...]}.  Arithmetic is exact
(Python integers); windows beyond a few hundred rows are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union


class IndexOutOfWindow(Exception):
    """An elementary operation touched an index outside the window."""


class ZeroColumn(Exception):
    """The pivot column is identically zero."""


class NonCoprimeColumn(Exception):
    """The pivot column entries have gcd > 1: columns are not a basis."""


class NotUnimodular(Exception):
    """The window matrix is not invertible over the integers."""


@dataclass(frozen=True, eq=False)
class SparseIntMatrix:
    """Row- and column-finite integer matrix on a finite window.

    `entries` maps (row, col) to a nonzero integer; no zeros are stored.
    """

    rows: int
    cols: int
    entries: dict[tuple[int, int], int]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("window bounds must be nonnegative")
        clean: dict[tuple[int, int], int] = {}
        for (i, j), v in self.entries.items():
            if not (1 <= i <= self.rows and 1 <= j <= self.cols):
                raise IndexOutOfWindow(f"entry ({i},{j}) outside {self.rows}x{self.cols} window")
            if v != 0:
                clean[(i, j)] = int(v)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_entries(
        cls, rows: int, cols: int, items: Iterable[tuple[int, int, int]]
    ) -> "SparseIntMatrix":
        entries: dict[tuple[int, int], int] = {}
        for i, j, v in items:
            if (i, j) in entries:
                raise ValueError(f"duplicate entry at ({i},{j})")
            entries[(i, j)] = v
        return cls(rows, cols, entries)

    @classmethod
    def from_rows(cls, rowdata: Sequence[Sequence[int]], cols: int | None = None) -> "SparseIntMatrix":
        rows = len(rowdata)
        if cols is None:
            cols = len(rowdata[0]) if rowdata else 0
        entries = {
            (i + 1, j + 1): v
            for i, row in enumerate(rowdata)
            for j, v in enumerate(row)
            if v
        }
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(1, n + 1)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseIntMatrix":
        return cls(rows, cols, {})

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def to_rows(self) -> list[list[int]]:
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            dense[i - 1][j - 1] = v
        return dense

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return self.entries == {(i, i): 1 for i in range(1, self.rows + 1)}

    def to_json(self) -> dict:
        items = sorted(self.entries.items())
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[i, j, v] for (i, j), v in items],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SparseIntMatrix":
        return cls.from_entries(obj["rows"], obj["cols"], [tuple(e) for e in obj["entries"]])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"SparseIntMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"


def mat_vec(m: SparseIntMatrix, vec: Sequence[int]) -> list[int]:
    """Matrix-vector product over the integers."""
    if len(vec) != m.cols:
        raise ValueError("vector length does not match window")
    out = [0] * m.rows
    for (i, j), v in m.entries.items():
        out[i - 1] += v * vec[j - 1]
    return out


# ---------------------------------------------------------------------------
# Elementary operations.  The same op objects describe row operations (via
# apply_row_ops) and column operations (via apply_col_ops).


@dataclass(frozen=True)
class SwapRows:
    i: int
    j: int


@dataclass(frozen=True)
class NegateRow:
    i: int


@dataclass(frozen=True)
class AddMultiple:
    """row[target] += coeff * row[source]; target != source."""

    target: int
    source: int
    coeff: int

    def __post_init__(self) -> None:
        if self.target == self.source:
            raise ValueError("AddMultiple requires distinct target and source")


ElementaryOp = Union[SwapRows, NegateRow, AddMultiple]


@dataclass(frozen=True)
class RowOpLog:
    """A replayable finite sequence of elementary operations."""

    ops: tuple[ElementaryOp, ...] = ()

    def inverse(self) -> "RowOpLog":
        inv: list[ElementaryOp] = []
        for op in reversed(self.ops):
            if isinstance(op, AddMultiple):
                inv.append(AddMultiple(op.target, op.source, -op.coeff))
            else:
                inv.append(op)
        return RowOpLog(tuple(inv))

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self) -> Iterator[ElementaryOp]:
        return iter(self.ops)


def _op_indices(op: ElementaryOp) -> tuple[int, ...]:
    if isinstance(op, SwapRows):
        return (op.i, op.j)
    if isinstance(op, NegateRow):
        return (op.i,)
    return (op.target, op.source)


def _apply_op_rows(dense: list[list[int]], op: ElementaryOp) -> None:
    if isinstance(op, SwapRows):
        dense[op.i - 1], dense[op.j - 1] = dense[op.j - 1], dense[op.i - 1]
    elif isinstance(op, NegateRow):
        dense[op.i - 1] = [-v for v in dense[op.i - 1]]
    else:
        src = dense[op.source - 1]
        tgt = dense[op.target - 1]
        dense[op.target - 1] = [t + op.coeff * s for t, s in zip(tgt, src)]


def apply_row_ops(log: RowOpLog, m: SparseIntMatrix) -> SparseIntMatrix:
    """Replay the log as row operations on `m`."""
    dense = m.to_rows()
    for op in log:
        if any(not 1 <= k <= m.rows for k in _op_indices(op)):
            raise IndexOutOfWindow(f"{op!r} outside {m.rows} declared rows")
        _apply_op_rows(dense, op)
    return SparseIntMatrix.from_rows(dense, cols=m.cols)


def apply_col_ops(log: RowOpLog, m: SparseIntMatrix) -> SparseIntMatrix:
    """Replay the log as column operations on `m`."""
    dense = [list(col) for col in zip(*m.to_rows())] if m.rows else [[] for _ in range(m.cols)]
    for op in log:
        if any(not 1 <= k <= m.cols for k in _op_indices(op)):
            raise IndexOutOfWindow(f"{op!r} outside {m.cols} declared cols")
        _apply_op_rows(dense, op)
    transposed = SparseIntMatrix.from_rows(dense, cols=m.rows)
    return transposed.transpose()


# ---------------------------------------------------------------------------
# Pivot reduction: bring the first column to e1 and the first row to e1^T by
# invertible row operations, the constructive Euclid procedure on a window.


def _emit(dense: list[list[int]], ops: list[ElementaryOp], op: ElementaryOp) -> None:
    _apply_op_rows(dense, op)
    ops.append(op)


def _clear_subcolumn(
    dense: list[list[int]],
    ops: list[ElementaryOp],
    pivot_row: int,
    col: int,
    on_zero: type[Exception],
) -> None:
    """Make column `col` equal e_{pivot_row} on rows >= pivot_row.

    Repeatedly moves the smallest-|entry| row to the pivot position (smallest
    row index on ties), normalizes its sign, and subtracts floor-quotient
    multiples from the rows below, until the gcd remains at the pivot.
    Raises `on_zero` when the subcolumn is identically zero and
    NonCoprimeColumn when the final pivot exceeds 1.
    """
    nrows = len(dense)
    c = col - 1
    while True:
        candidates = [(abs(dense[i][c]), i) for i in range(pivot_row - 1, nrows) if dense[i][c]]
        if not candidates:
            raise on_zero(f"column {col} has no nonzero entry at or below row {pivot_row}")
        _, best = min(candidates)
        if best != pivot_row - 1:
            _emit(dense, ops, SwapRows(pivot_row, best + 1))
        if dense[pivot_row - 1][c] < 0:
            _emit(dense, ops, NegateRow(pivot_row))
        pivot = dense[pivot_row - 1][c]
        for i in range(pivot_row, nrows):
            v = dense[i][c]
            if v:
                q = v // pivot
                if q:
                    _emit(dense, ops, AddMultiple(i + 1, pivot_row, -q))
        if all(dense[i][c] == 0 for i in range(pivot_row, nrows)):
            break
    if dense[pivot_row - 1][c] != 1:
        raise NonCoprimeColumn(
            f"column {col} entries have gcd {dense[pivot_row - 1][c]} at rows >= {pivot_row}"
        )


def _pivot_stage(dense: list[list[int]], ops: list[ElementaryOp], k: int, cols: int) -> None:
    """Standardize row k and column k of the window by row operations.

    Column k is cleared by the Euclid loop; when row k still has nonzero
    entries to the right, the trailing columns are first triangularized
    (unit pivot on the diagonal, zeros below) so that adding those rows to
    row k clears it left to right without disturbing earlier columns.
    """
    on_zero = ZeroColumn if k == 1 else NonCoprimeColumn
    _clear_subcolumn(dense, ops, k, k, on_zero)
    if not any(dense[k - 1][j] for j in range(k, cols)):
        return
    if cols > len(dense):
        raise NonCoprimeColumn("window has more columns than rows; cannot triangularize")
    for j in range(k + 1, cols + 1):
        _clear_subcolumn(dense, ops, j, j, NonCoprimeColumn)
    for j in range(k + 1, cols + 1):
        v = dense[k - 1][j - 1]
        if v:
            _emit(dense, ops, AddMultiple(k, j, -v))


def reduce_first_pivot(c: SparseIntMatrix) -> tuple[RowOpLog, SparseIntMatrix]:
    """Reduce the window so the result is the block sum (1) (+) C'.

    Requires the nonzero entries of column 1 to be coprime; raises
    ZeroColumn when column 1 vanishes and NonCoprimeColumn when a prime
    divides the whole column (the columns then cannot form a basis).
    """
    if c.cols < 1:
        raise ZeroColumn("window has no columns")
    dense = c.to_rows()
    ops: list[ElementaryOp] = []
    _pivot_stage(dense, ops, 1, c.cols)
    return RowOpLog(tuple(ops)), SparseIntMatrix.from_rows(dense, cols=c.cols)


def reduce_to_identity(c: SparseIntMatrix) -> RowOpLog:
    """Row operations turning a unimodular window into the identity.

    Iterates the pivot reduction over trailing blocks; raises NotUnimodular
    when any stage meets a zero or non-coprime pivot column, or when the
    window is not square.
    """
    if c.rows != c.cols:
        raise NotUnimodular(f"window is {c.rows}x{c.cols}, not square")
    dense = c.to_rows()
    ops: list[ElementaryOp] = []
    try:
        for k in range(1, c.rows + 1):
            _pivot_stage(dense, ops, k, c.cols)
    except (ZeroColumn, NonCoprimeColumn) as exc:
        raise NotUnimodular(str(exc)) from exc
    result = SparseIntMatrix.from_rows(dense, cols=c.cols)
    if not result.is_identity():
        raise NotUnimodular("window did not reduce to the identity")
    return RowOpLog(tuple(ops))


# ---------------------------------------------------------------------------
# Smith normal form with replayable row and column logs.


def _apply_col_op(dense: list[list[int]], op: ElementaryOp) -> None:
    if isinstance(op, SwapRows):
        for row in dense:
            row[op.i - 1], row[op.j - 1] = row[op.j - 1], row[op.i - 1]
    elif isinstance(op, NegateRow):
        for row in dense:
            row[op.i - 1] = -row[op.i - 1]
    else:
        for row in dense:
            row[op.target - 1] += op.coeff * row[op.source - 1]


def smith_normal_form(
    m: SparseIntMatrix,
) -> tuple[tuple[int, ...], RowOpLog, RowOpLog]:
    """Diagonalize by alternating row/column gcd reduction.

    Returns (diagonal, row_log, col_log) with nonnegative diagonal entries
    in a divisibility chain d1 | d2 | ...; replaying row_log as row ops and
    col_log as column ops on `m` yields the diagonal matrix.
    """
    dense = m.to_rows()
    rows, cols = m.rows, m.cols
    rops: list[ElementaryOp] = []
    cops: list[ElementaryOp] = []

    def remit(op: ElementaryOp) -> None:
        _apply_op_rows(dense, op)
        rops.append(op)

    def cemit(op: ElementaryOp) -> None:
        _apply_col_op(dense, op)
        cops.append(op)

    for t in range(1, min(rows, cols) + 1):
        while True:
            candidates = [
                (abs(dense[i][j]), i, j)
                for i in range(t - 1, rows)
                for j in range(t - 1, cols)
                if dense[i][j]
            ]
            if not candidates:
                break
            _, bi, bj = min(candidates)
            if bi != t - 1:
                remit(SwapRows(t, bi + 1))
            if bj != t - 1:
                cemit(SwapRows(t, bj + 1))
            if dense[t - 1][t - 1] < 0:
                remit(NegateRow(t))
            pivot = dense[t - 1][t - 1]
            dirty = False
            for i in range(t, rows):
                v = dense[i][t - 1]
                if v:
                    q = v // pivot
                    if q:
                        remit(AddMultiple(i + 1, t, -q))
                    if dense[i][t - 1]:
                        dirty = True
            for j in range(t, cols):
                v = dense[t - 1][j]
                if v:
                    q = v // pivot
                    if q:
                        cemit(AddMultiple(j + 1, t, -q))
                    if dense[t - 1][j]:
                        dirty = True
            if dirty:
                continue
            bad = next(
                (
                    (i, j)
                    for i in range(t, rows)
                    for j in range(t, cols)
                    if dense[i][j] % pivot
                ),
                None,
            )
            if bad is None:
                break
            remit(AddMultiple(t, bad[0] + 1, 1))
        if dense[t - 1][t - 1] == 0:
            break

    diagonal = tuple(dense[k][k] for k in range(min(rows, cols)))
    return diagonal, RowOpLog(tuple(rops)), RowOpLog(tuple(cops))


def rank(m: SparseIntMatrix) -> int:
    """Integer (= rational) rank, via the SNF diagonal."""
    diagonal, _, _ = smith_normal_form(m)
    return sum(1 for d in diagonal if d)


def kernel_basis(m: SparseIntMatrix) -> list[tuple[int, ...]]:
    """Integer vectors spanning the rational kernel of the window matrix.

    The column log of the SNF, replayed on the identity, sends standard
    basis vectors at zero-diagonal positions to kernel vectors of `m`.
    """
    diagonal, _, col_log = smith_normal_form(m)
    change = apply_col_ops(col_log, SparseIntMatrix.identity(m.cols))
    basis: list[tuple[int, ...]] = []
    for k in range(1, m.cols + 1):
        if k > len(diagonal) or diagonal[k - 1] == 0:
            vec = tuple(change.get(i, k) for i in range(1, m.cols + 1))
            basis.append(vec)
    return basis
