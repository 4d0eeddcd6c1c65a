"""Exact linear algebra over Q and Q(zeta_n).

Matrices keep their rows as sparse ``{column: scalar}`` dicts; the Jacobian
systems built by :mod:`arrlab.syzygy` are very sparse and fill in slowly.
Pivoting is deterministic: columns are scanned left to right and the pivot
is the sparsest remaining row with a nonzero entry in the current column
(first such row on ties).  The sparsity rule keeps coefficient growth down;
it cannot change results, since the reduced row echelon form is unique.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import FieldMismatchError, ParameterError
from .exactfield import RATIONAL, FieldDescriptor

__all__ = ["Matrix", "rref", "rank", "kernel_basis", "solve", "EchelonBasis"]


class Matrix:
    """A rows x cols matrix over ``field``."""

    __slots__ = ("field", "rows", "cols", "_rows")

    def __init__(self, field: FieldDescriptor, rows: int, cols: int, sparse_rows=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if sparse_rows is None:
            sparse_rows = [{} for _ in range(rows)]
        if len(sparse_rows) != rows:
            raise ParameterError("row count mismatch")
        clean = []
        for r in sparse_rows:
            row = {}
            for j, v in r.items():
                if not 0 <= j < cols:
                    raise ParameterError(f"column index {j} out of range")
                if v:
                    row[j] = field(v)
            clean.append(row)
        self._rows = clean

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldDescriptor = RATIONAL, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ParameterError("ragged matrix")
        return cls(field, len(rows), cols, [{j: v for j, v in enumerate(r) if v} for r in rows])

    @classmethod
    def identity(cls, n: int, field: FieldDescriptor = RATIONAL):
        return cls(field, n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldDescriptor = RATIONAL):
        return cls(field, rows, cols)

    @property
    def entries(self) -> list:
        """Row-major dense grid."""
        zero = self.field.zero()
        return [[r.get(j, zero) for j in range(self.cols)] for r in self._rows]

    def row(self, i: int) -> dict:
        return dict(self._rows[i])

    def sparse_rows(self) -> list[dict]:
        return [dict(r) for r in self._rows]

    def transpose(self) -> "Matrix":
        out = [{} for _ in range(self.cols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                out[j][i] = v
        return Matrix._trusted(self.field, self.cols, self.rows, out)

    def permute_rows(self, order: Sequence[int]) -> "Matrix":
        return Matrix._trusted(self.field, self.rows, self.cols, [dict(self._rows[i]) for i in order])

    @classmethod
    def _trusted(cls, field, rows, cols, sparse_rows):
        m = cls.__new__(cls)
        m.field, m.rows, m.cols, m._rows = field, rows, cols, sparse_rows
        return m

    def apply(self, vec) -> list:
        """M @ vec for a dense vector of length cols."""
        if len(vec) != self.cols:
            raise ParameterError("vector length mismatch")
        zero = self.field.zero()
        out = []
        for r in self._rows:
            acc = zero
            for j, v in r.items():
                if vec[j]:
                    acc = acc + v * vec[j]
            out.append(acc)
        return out

    __matmul__ = apply

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field, self.rows, self.cols, self._rows) == (
            other.field,
            other.rows,
            other.cols,
            other._rows,
        )

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field})"


def _eliminate(rows: list[dict], cols: int, reduced: bool):
    """In-place row reduction; returns (pivot rows, pivot columns).

    Each pivot row is scaled to have leading entry 1.  With ``reduced`` the
    pivot columns are also cleared above each pivot (RREF).
    """
    active = [r for r in rows if r]
    pivot_rows: list[dict] = []
    pivot_cols: list[int] = []
    for c in range(cols):
        if not active:
            break
        hit = None
        best = None
        for k, r in enumerate(active):
            if c in r and (best is None or len(r) < best):
                hit, best = k, len(r)
        if hit is None:
            continue
        prow = active.pop(hit)
        lead = prow[c]
        if lead != 1:
            inv = 1 / lead
            prow = {j: v * inv for j, v in prow.items()}
        items = list(prow.items())
        still = []
        for r in active:
            f = r.get(c)
            if f is not None:
                for j, v in items:
                    w = r.get(j)
                    w = -f * v if w is None else w - f * v
                    if w:
                        r[j] = w
                    else:
                        del r[j]
            if r:
                still.append(r)
        active = still
        pivot_rows.append(prow)
        pivot_cols.append(c)
    if reduced:
        for i in range(len(pivot_rows) - 1, -1, -1):
            c = pivot_cols[i]
            items = list(pivot_rows[i].items())
            for k in range(i):
                r = pivot_rows[k]
                f = r.get(c)
                if f is None:
                    continue
                for j, v in items:
                    w = r.get(j)
                    w = -f * v if w is None else w - f * v
                    if w:
                        r[j] = w
                    else:
                        del r[j]
    return pivot_rows, pivot_cols


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows, pivots = _eliminate(M.sparse_rows(), M.cols, reduced=True)
    rows = rows + [{} for _ in range(M.rows - len(rows))]
    return Matrix._trusted(M.field, M.rows, M.cols, rows), pivots


def rank(M: Matrix) -> int:
    """Exact rank."""
    _, pivots = _eliminate(M.sparse_rows(), M.cols, reduced=False)
    return len(pivots)


def kernel_basis(M: Matrix) -> list[list]:
    """Basis of the right kernel, one vector per free column.

    The vector for free column j has a 1 in position j, zeros in the other
    free positions and minus the RREF column j in the pivot positions.
    """
    rows, pivots = _eliminate(M.sparse_rows(), M.cols, reduced=True)
    pivot_set = set(pivots)
    zero, one = M.field.zero(), M.field.one()
    basis = []
    for j in range(M.cols):
        if j in pivot_set:
            continue
        v = [zero] * M.cols
        v[j] = one
        for prow, pc in zip(rows, pivots):
            a = prow.get(j)
            if a is not None:
                v[pc] = -a
        basis.append(v)
    return basis


def solve(M: Matrix, b: Sequence) -> list | None:
    """One solution of M v = b (free variables set to 0), or None if inconsistent."""
    if len(b) != M.rows:
        raise ParameterError("right-hand side length mismatch")
    aug = M.sparse_rows()
    for r, bi in zip(aug, b):
        bi = M.field(bi)
        if bi:
            r[M.cols] = bi
    rows, pivots = _eliminate(aug, M.cols + 1, reduced=True)
    if pivots and pivots[-1] == M.cols:
        return None
    v = [M.field.zero()] * M.cols
    for prow, pc in zip(rows, pivots):
        if M.cols in prow:
            v[pc] = prow[M.cols]
    return v


class EchelonBasis:
    """Incrementally maintained echelon basis of a subspace of field^n.

    ``add`` reduces a vector against the stored pivots and keeps it when it
    is independent, which gives a deterministic greedy basis extension.
    """

    def __init__(self, field: FieldDescriptor, n: int):
        self.field = field
        self.n = n
        self._pivots: dict[int, dict] = {}

    def __len__(self):
        return len(self._pivots)

    def reduce(self, vec) -> dict:
        if not isinstance(vec, dict):
            vec = {j: v for j, v in enumerate(vec) if v}
        else:
            vec = {j: v for j, v in vec.items() if v}
        pivots = self._pivots
        while vec:
            # leading column = smallest index with a pivot hit; scan ascending
            hit = None
            for j in sorted(vec):
                if j in pivots:
                    hit = j
                    break
            if hit is None:
                break
            f = vec[hit]
            for j, v in pivots[hit].items():
                w = vec.get(j)
                w = -f * v if w is None else w - f * v
                if w:
                    vec[j] = w
                else:
                    del vec[j]
        return vec

    def add(self, vec) -> bool:
        red = self.reduce(vec)
        if not red:
            return False
        lead = min(red)
        inv = 1 / red[lead]
        self._pivots[lead] = {j: v * inv for j, v in red.items()}
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)


def matrix_from_columns(field: FieldDescriptor, nrows: int, columns: Iterable[dict]) -> Matrix:
    """Build a matrix whose j-th column is the sparse dict ``columns[j]``."""
    columns = list(columns)
    rows = [{} for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            if v:
                rows[i][j] = v
    return Matrix._trusted(field, nrows, len(columns), rows)


def check_same_field(*mats: Matrix):
    fields = {m.field for m in mats}
    if len(fields) > 1:
        raise FieldMismatchError("matrices over different fields")
