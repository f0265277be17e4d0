"""Dense matrices over GF(q).

Everything here is exact and deterministic: elimination scans pivot columns
left to right and picks the first nonzero entry from the top, and results are
returned in reduced row echelon form so that bases, witnesses and reports are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DimensionError, FieldMismatchError
from .galois import FieldSpec


@dataclass(frozen=True)
class FqMatrix:
    """Row-major ``rows x cols`` matrix with integer-encoded field entries."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        q = self.field.q
        for e in self.entries:
            if not 0 <= e < q:
                raise DimensionError(f"entry {e} outside GF({q})")

    @classmethod
    def from_rows(
        cls, field: FieldSpec, rows: Iterable[Sequence[int]], cols: Optional[int] = None
    ) -> "FqMatrix":
        rows = [tuple(int(v) for v in r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("column count needed for a matrix without rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(field, len(rows), cols, tuple(v for r in rows for v in r))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "FqMatrix":
        return cls(field, rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, field: FieldSpec, size: int) -> "FqMatrix":
        return cls.from_rows(
            field, [[1 if i == j else 0 for j in range(size)] for i in range(size)], size
        )

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list[tuple[int, ...]]:
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def transpose(self) -> "FqMatrix":
        return FqMatrix.from_rows(self.field, [self.col(j) for j in range(self.cols)], self.rows)

    @property
    def T(self) -> "FqMatrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(map(str, r)) for r in self.to_rows())
        return f"FqMatrix({self.field!r}, {self.rows}x{self.cols}, [{body}])"


def _check_same_field(a: FqMatrix, b: FqMatrix) -> None:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")


def matmul(a: FqMatrix, b: FqMatrix) -> FqMatrix:
    _check_same_field(a, b)
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    f = a.field
    add, mul = f.tables.add_l, f.tables.mul_l
    bcols = [b.col(j) for j in range(b.cols)]
    out = []
    for i in range(a.rows):
        ar = a.row(i)
        for bc in bcols:
            s = 0
            for x, y in zip(ar, bc):
                if x and y:
                    s = add[s][mul[x][y]]
            out.append(s)
    return FqMatrix(f, a.rows, b.cols, tuple(out))


def vec_mat(field: FieldSpec, v: Sequence[int], m: FqMatrix) -> tuple[int, ...]:
    """Row vector times matrix, ``v . M``."""
    if len(v) != m.rows:
        raise DimensionError(f"vector of length {len(v)} against {m.rows} rows")
    add, mul = field.tables.add_l, field.tables.mul_l
    out = [0] * m.cols
    for i, c in enumerate(v):
        if c:
            mrow = m.entries[i * m.cols : (i + 1) * m.cols]
            for j, x in enumerate(mrow):
                if x:
                    out[j] = add[out[j]][mul[c][x]]
    return tuple(out)


def mat_vec(field: FieldSpec, m: FqMatrix, v: Sequence[int]) -> tuple[int, ...]:
    """Matrix times column vector, ``M . v^T``."""
    if len(v) != m.cols:
        raise DimensionError(f"vector of length {len(v)} against {m.cols} columns")
    add, mul = field.tables.add_l, field.tables.mul_l
    out = []
    for i in range(m.rows):
        s = 0
        for x, y in zip(m.row(i), v):
            if x and y:
                s = add[s][mul[x][y]]
        out.append(s)
    return tuple(out)


def _rref_rows(field: FieldSpec, rows: list[list[int]], ncols: int, limit: Optional[int] = None):
    """In-place reduced row echelon form; returns pivot columns.

    Only the first ``limit`` columns are eligible as pivots (used for
    augmented systems).
    """
    t = field.tables
    add, mul, neg, inv = t.add_l, t.mul_l, t.neg_l, t.inv_l
    limit = ncols if limit is None else limit
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(limit):
        if r >= nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        s = inv[piv[c]]
        if s != 1:
            for j in range(c, ncols):
                piv[j] = mul[s][piv[j]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = neg[rows[i][c]]
                ri = rows[i]
                for j in range(c, ncols):
                    if piv[j]:
                        ri[j] = add[ri[j]][mul[f][piv[j]]]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: FqMatrix) -> tuple[FqMatrix, list[int]]:
    """Reduced row echelon form (zero rows kept at the bottom) and pivot columns."""
    rows = [list(r) for r in m.to_rows()]
    pivots = _rref_rows(m.field, rows, m.cols)
    return FqMatrix.from_rows(m.field, rows, m.cols), pivots


def rank(m: FqMatrix) -> int:
    return len(rref(m)[1])


def row_basis(m: FqMatrix) -> FqMatrix:
    """Canonical (RREF) basis of the row space."""
    r, pivots = rref(m)
    return FqMatrix.from_rows(m.field, r.to_rows()[: len(pivots)], m.cols)


def null_space(m: FqMatrix) -> FqMatrix:
    """Basis rows of ``{x : M x^T = 0}``, one per free column, in column order."""
    f = m.field
    r, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * m.cols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(r[i, fc])
        basis.append(v)
    return FqMatrix.from_rows(f, basis, m.cols)


def solve(m: FqMatrix, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """A solution ``x`` of ``M x^T = b^T`` or None when the system is inconsistent.

    Free variables are set to zero, so the answer is canonical.
    """
    if len(b) != m.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for {m.rows} rows")
    aug = [list(m.row(i)) + [int(b[i])] for i in range(m.rows)]
    pivots = _rref_rows(m.field, aug, m.cols + 1, limit=m.cols)
    for i in range(len(pivots), m.rows):
        if aug[i][m.cols]:
            return None
    x = [0] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = aug[i][m.cols]
    return tuple(x)


def parity_check(g: FqMatrix) -> FqMatrix:
    """``(n-k) x n`` matrix H of full rank with ``G H^T = 0``.

    For ``G = [I | A]`` this is ``[-A^T | I]``.
    """
    if rank(g) != g.rows:
        raise DimensionError(f"generator matrix has rank {rank(g)} < {g.rows} rows")
    return null_space(g)


def column_submatrix(m: FqMatrix, columns: Iterable[int]) -> FqMatrix:
    """Columns of ``m`` at the given indices, taken in increasing order."""
    cols = sorted(set(columns))
    for c in cols:
        if not 0 <= c < m.cols:
            raise DimensionError(f"column index {c} out of range for {m.cols} columns")
    return FqMatrix.from_rows(m.field, [[r[c] for c in cols] for r in m.to_rows()], len(cols))


def hstack(a: FqMatrix, b: FqMatrix) -> FqMatrix:
    _check_same_field(a, b)
    if a.rows != b.rows:
        raise DimensionError("row counts differ")
    return FqMatrix.from_rows(a.field, [ra + rb for ra, rb in zip(a.to_rows(), b.to_rows())], a.cols + b.cols)


def vstack(a: FqMatrix, b: FqMatrix) -> FqMatrix:
    _check_same_field(a, b)
    if a.cols != b.cols:
        raise DimensionError("column counts differ")
    return FqMatrix(a.field, a.rows + b.rows, a.cols, a.entries + b.entries)


def column_rank(field: FieldSpec, columns: Iterable[Sequence[int]]) -> int:
    """Rank of a set of column vectors, by incremental echelon insertion."""
    t = field.tables
    add, mul, neg, inv = t.add_l, t.mul_l, t.neg_l, t.inv_l
    basis: dict[int, list[int]] = {}  # pivot index -> vector normalised to 1 at pivot
    for col in columns:
        v = list(col)
        for i in range(len(v)):
            if not v[i]:
                continue
            bv = basis.get(i)
            if bv is None:
                s = inv[v[i]]
                basis[i] = [mul[s][x] for x in v]
                break
            f = neg[v[i]]
            v = [add[x][mul[f][y]] for x, y in zip(v, bv)]
    return len(basis)
