"""Exact rational linear algebra: rank, nullspace, operator restriction.

Everything is built on one incremental sparse row reducer that keeps its
pivot rows fully reduced (RREF).  Pivots are chosen leftmost-column first,
rows in the order they arrive, so all results are deterministic and golden
files stay stable.  Column keys only need to be orderable; the big
evaluation matrices elsewhere use plain integers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotInvariant

QVector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _sparse(row: Iterable[Fraction] | dict) -> dict:
    if isinstance(row, dict):
        return {c: v for c, v in row.items() if v}
    return {c: Fraction(v) for c, v in enumerate(row) if v}


class RowReducer:
    """Incremental RREF over sparse rows with optional combination tracking.

    With ``track=True`` each added row is remembered as a combination of the
    input rows; rows that reduce to zero then yield exact left-kernel
    vectors.
    """

    def __init__(self, track: bool = False):
        self.rows: list[dict] = []          # RREF pivot rows
        self.pivot_cols: list = []          # pivot column of rows[i]
        self._by_col: dict = {}             # pivot column -> row index
        self.track = track
        self.combos: list[dict] = []        # combination producing rows[i]
        self.kernel: list[dict] = []        # combinations that reduced to 0
        self._n_added = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict, combo: dict | None = None) -> tuple[dict, dict | None]:
        """Reduce ``row`` against the current pivots (row is consumed)."""
        for col in sorted(row.keys() & self._by_col.keys()):
            coeff = row.get(col)
            if not coeff:
                continue
            i = self._by_col[col]
            _axpy(row, -coeff, self.rows[i])
            if combo is not None:
                _axpy(combo, -coeff, self.combos[i])
        return row, combo

    def add_row(self, row: Iterable[Fraction] | dict) -> bool:
        """Feed one row; returns True when it enlarged the span."""
        row = _sparse(row)
        combo = {self._n_added: _ONE} if self.track else None
        self._n_added += 1
        row, combo = self.reduce(row, combo)
        if not row:
            if self.track:
                self.kernel.append(combo)
            return False
        col = min(row)
        inv = _ONE / row[col]
        row = {c: v * inv for c, v in row.items()}
        if combo is not None:
            combo = {c: v * inv for c, v in combo.items()}
        # keep RREF: clear the new pivot column from existing rows
        for i, other in enumerate(self.rows):
            coeff = other.get(col)
            if coeff:
                _axpy(other, -coeff, row)
                if self.track:
                    _axpy(self.combos[i], -coeff, combo)
        self.rows.append(row)
        self.pivot_cols.append(col)
        self._by_col[col] = len(self.rows) - 1
        if self.track:
            self.combos.append(combo)
        return True

    def coords_in_span(self, row: Iterable[Fraction] | dict) -> list[Fraction] | None:
        """Coefficients of ``row`` over the pivot rows, or None if outside."""
        row = _sparse(row)
        coords = [row.get(c, _ZERO) for c in self.pivot_cols]
        residue, _ = self.reduce(row, None)
        if residue:
            return None
        return coords


def _axpy(target: dict, coeff: Fraction, src: dict) -> None:
    for c, v in src.items():
        nv = target.get(c, _ZERO) + coeff * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


class QMatrix:
    """Immutable dense-shaped matrix of exact rationals (stored sparsely)."""

    def __init__(self, rows: int, cols: int, entries):
        self.nrows = rows
        self.ncols = cols
        data = []
        for r in entries:
            row = _sparse(r)
            if row and max(row) >= cols:
                raise DimensionMismatch("entry beyond declared column count")
            data.append(row)
        if len(data) != rows:
            raise DimensionMismatch("entry container does not match row count")
        self.data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), ncols, rows)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [{i: _ONE} for i in range(n)])

    def row(self, i: int) -> QVector:
        r = self.data[i]
        return tuple(r.get(j, _ZERO) for j in range(self.ncols))

    def transpose(self) -> "QMatrix":
        cols: list[dict] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.data):
            for j, v in r.items():
                cols[j][i] = v
        return QMatrix(self.ncols, self.nrows, cols)

    def matvec(self, v: Sequence[Fraction]) -> QVector:
        if len(v) != self.ncols:
            raise DimensionMismatch("vector length != column count")
        out = []
        for r in self.data:
            out.append(sum((c * v[j] for j, c in r.items()), _ZERO))
        return tuple(out)

    def __eq__(self, other):
        return (isinstance(other, QMatrix) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.data == other.data)

    def __repr__(self):
        return f"QMatrix({self.nrows}x{self.ncols})"


def rank(m: QMatrix) -> int:
    red = RowReducer()
    for r in m.data:
        red.add_row(dict(r))
    return red.rank


def nullspace(m: QMatrix) -> list[QVector]:
    """Basis of the right kernel {v : Mv = 0}, free columns ascending."""
    red = RowReducer()
    for r in m.data:
        red.add_row(dict(r))
    pivots = set(red.pivot_cols)
    basis = []
    for free in range(m.ncols):
        if free in pivots:
            continue
        v = [_ZERO] * m.ncols
        v[free] = _ONE
        for row, pc in zip(red.rows, red.pivot_cols):
            c = row.get(free)
            if c:
                v[pc] = -c
        basis.append(tuple(v))
    return basis


def left_kernel(rows: Iterable[dict]) -> list[dict]:
    """Sparse combinations c with sum_i c_i row_i = 0."""
    red = RowReducer(track=True)
    for r in rows:
        red.add_row(dict(r))
    return red.kernel


def restrict_operator(t: QMatrix, subspace_basis: Sequence[Sequence[Fraction]]) -> QMatrix:
    """Matrix of ``t`` in the given basis of a t-invariant subspace."""
    span_rows = []
    for b in subspace_basis:
        if len(b) != t.ncols:
            raise DimensionMismatch("basis vector length != operator size")
        span_rows.append(_sparse(b))
    coord_red = RowReducer(track=True)
    for row in span_rows:
        coord_red.add_row(dict(row))
    if coord_red.rank != len(span_rows):
        raise DimensionMismatch("subspace basis is linearly dependent")
    out = []
    for b in subspace_basis:
        image = t.matvec(b)
        coords = _coords_via(coord_red, _sparse(image), len(span_rows))
        if coords is None:
            raise NotInvariant("operator image leaves the subspace span")
        out.append(coords)
    return QMatrix.from_rows(out).transpose()


def _coords_via(red: RowReducer, vector: dict, nbasis: int) -> list[Fraction] | None:
    residue, combo = red.reduce(_sparse(vector), {nbasis: _ONE})
    if residue:
        return None
    coords = [_ZERO] * nbasis
    for idx, c in combo.items():
        if idx < nbasis:
            coords[idx] = -c
    return coords


class SpanSolver:
    """Reusable "express vector over these rows" helper (rows independent)."""

    def __init__(self, basis_rows: Sequence[dict]):
        self.n = len(basis_rows)
        self.red = RowReducer(track=True)
        for row in basis_rows:
            self.red.add_row(dict(row))
        if self.red.rank != self.n:
            raise DimensionMismatch("span basis is linearly dependent")

    def coords(self, vector: dict) -> list[Fraction] | None:
        return _coords_via(self.red, vector, self.n)

    def contains(self, vector: dict) -> bool:
        residue, _ = self.red.reduce(dict(_sparse(vector)), None)
        return not residue


def solve_coords(basis_rows: Sequence[dict], vector: dict) -> list[Fraction] | None:
    """Express ``vector`` over ``basis_rows`` (independent), else None."""
    return SpanSolver(basis_rows).coords(vector)
