"""Exact Gaussian elimination over cyclotomic fields on sparse rows.

Rows are dicts column -> CycloNum. Pivots are chosen by lowest entry complexity
to keep coefficient growth down.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .cyclotomic import CycloNum, invert

Row = dict[int, CycloNum]


@dataclass
class ExactMatrix:
    """A matrix with rows/columns labelled by monomials (or anything hashable)."""

    rows: list[Row]
    ncols: int
    row_labels: Sequence[Hashable] | None = None
    col_labels: Sequence[Hashable] | None = None

    @classmethod
    def from_vectors(cls, vectors: Iterable[dict[Hashable, CycloNum]], columns: Sequence[Hashable]) -> ExactMatrix:
        index = {c: i for i, c in enumerate(columns)}
        rows = []
        for v in vectors:
            row = {}
            for key, val in v.items():
                if val:
                    row[index[key]] = val
            rows.append(row)
        return cls(rows, len(columns), None, list(columns))

    def transpose(self) -> ExactMatrix:
        cols: list[Row] = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                cols[j][i] = v
        return ExactMatrix(cols, len(self.rows), self.col_labels, self.row_labels)

    def rank(self) -> int:
        return rank(self.rows)

    def rref(self) -> "Echelon":
        return rref(self.rows, self.ncols)

    def nullspace(self) -> list[Row]:
        return nullspace(self.rows, self.ncols)


def _pick_pivot(candidates: list[int], rows: list[Row], col: int) -> int:
    def cost(i: int):
        nnz, bits = rows[i][col].complexity()
        return (nnz, bits, len(rows[i]))

    return min(candidates, key=cost)


def _eliminate(target: Row, pivot_row: Row, col: int) -> None:
    factor = target.pop(col)
    for j, v in pivot_row.items():
        if j == col:
            continue
        new = target.get(j)
        new = -(factor * v) if new is None else new - factor * v
        if new:
            target[j] = new
        else:
            target.pop(j, None)


@dataclass
class Echelon:
    """Reduced row echelon form: rows[k] has a 1 at pivots[k] and 0 in every other pivot column."""

    rows: list[Row]
    pivots: list[int]
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Row) -> Row:
        """The remainder of vec after subtracting the row space along pivot columns."""
        out = dict(vec)
        for row, p in zip(self.rows, self.pivots):
            if p in out:
                _eliminate(out, row, p)
        return out

    def contains(self, vec: Row) -> bool:
        return not self.reduce(vec)


def rref(rows: Iterable[Row], ncols: int) -> Echelon:
    work = [dict(r) for r in rows if r]
    done: list[Row] = []
    pivots: list[int] = []
    for col in range(ncols):
        cands = [i for i, r in enumerate(work) if col in r]
        if not cands:
            continue
        p = _pick_pivot(cands, work, col)
        prow = work.pop(p)
        inv = invert(prow[col])
        prow = {j: v * inv for j, v in prow.items()}
        for r in work:
            if col in r:
                _eliminate(r, prow, col)
        for r in done:
            if col in r:
                _eliminate(r, prow, col)
        work = [r for r in work if r]
        done.append(prow)
        pivots.append(col)
        if not work:
            break
    return Echelon(done, pivots, ncols)


def rank(rows: Iterable[Row]) -> int:
    """Rank by forward elimination only."""
    work = [dict(r) for r in rows if r]
    r = 0
    while work:
        col = min(min(row) for row in work)
        cands = [i for i, row in enumerate(work) if col in row]
        p = _pick_pivot(cands, work, col)
        prow = work.pop(p)
        inv = invert(prow[col])
        prow = {j: v * inv for j, v in prow.items()}
        for row in work:
            if col in row:
                _eliminate(row, prow, col)
        work = [row for row in work if row]
        r += 1
    return r


def nullspace(rows: Iterable[Row], ncols: int) -> list[Row]:
    """Basis of {v : M v = 0} as sparse vectors, one per free column."""
    ech = rref(rows, ncols)
    pivot_set = set(ech.pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v: Row = {f: CycloNum.rational(1)}
        for row, p in zip(ech.rows, ech.pivots):
            if f in row:
                v[p] = -row[f]
        basis.append(v)
    return basis


def same_row_space(a: Sequence[Row], b: Sequence[Row]) -> bool:
    """Mutual rank test: rank(A) = rank(B) = rank(A stacked on B)."""
    ra = rank(a)
    rb = rank(b)
    return ra == rb == rank(list(a) + list(b))
