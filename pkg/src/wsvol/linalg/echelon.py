"""Gaussian elimination over fields: echelon forms, affine solving, kernels."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .fields import FieldSpec
from .matrix import ExactMatrix, MatrixError


@dataclass(frozen=True)
class Echelon:
    form: ExactMatrix
    rank: int
    pivots: tuple[int, ...]


@dataclass(frozen=True)
class SolutionQuery:
    """An integer system ``A x = b``; ``target=None`` means homogeneous."""

    matrix: ExactMatrix
    target: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.matrix.field.kind != "integers":
            raise MatrixError("solution queries are posed over Z")
        if self.target is not None:
            object.__setattr__(self, "target", tuple(int(x) for x in self.target))
            if len(self.target) != self.matrix.rows:
                raise MatrixError(
                    f"target length {len(self.target)} != {self.matrix.rows} rows")

    def augmented(self) -> ExactMatrix:
        b = self.target if self.target is not None else (0,) * self.matrix.rows
        return ExactMatrix(self.matrix.rows, self.matrix.cols + 1,
                           tuple(r + (x,) for r, x in zip(self.matrix.entries, b)),
                           self.matrix.field)


def _require_field(F: FieldSpec):
    if not F.is_field:
        raise MatrixError(f"{F} is not a field; use the Smith normal form instead")


def _reduce(rows: list[list[Any]], ncols: int, F: FieldSpec,
            stop_col: int | None = None) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns.

    Pivot rows are scaled to a leading one, which also keeps rational
    entries from growing between steps.  Columns at or beyond ``stop_col``
    are carried along but never chosen as pivots.
    """
    zero = F.zero
    pivots = []
    r = 0
    last = ncols if stop_col is None else stop_col
    for c in range(last):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != zero), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, x) for x in rows[r]]
        piv = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) if y != zero else x
                           for x, y in zip(rows[i], piv)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def row_echelon(A: ExactMatrix) -> Echelon:
    """Reduced row echelon form of ``A`` over its field, with rank and pivots."""
    F = A.field
    _require_field(F)
    rows = [list(r) for r in A.entries]
    pivots = _reduce(rows, A.cols, F)
    form = ExactMatrix(A.rows, A.cols, tuple(tuple(r) for r in rows), F)
    return Echelon(form, len(pivots), tuple(pivots))


def rank(A: ExactMatrix) -> int:
    return row_echelon(A).rank


def solve_affine(q: SolutionQuery | ExactMatrix, F: FieldSpec,
                 target: Sequence[int] | None = None) -> list[Any] | None:
    """One solution of ``A x = b`` over ``F``, or ``None`` if there is none.

    Accepts either a :class:`SolutionQuery` or a matrix plus ``target``.
    Free variables are set to zero.
    """
    _require_field(F)
    if isinstance(q, ExactMatrix):
        q = SolutionQuery(q.over(q.field) if q.field.kind == "integers" else q,
                          None if target is None else tuple(target))
    aug = q.augmented().over(F)
    m = q.matrix.cols
    rows = [list(r) for r in aug.entries]
    pivots = _reduce(rows, m + 1, F, stop_col=m)
    zero = F.zero
    for r in rows[len(pivots):]:
        if r[m] != zero:
            return None
    x = [zero] * m
    for i, c in enumerate(pivots):
        x[c] = rows[i][m]
    return x


def kernel_basis(A: ExactMatrix) -> list[list[Any]]:
    """Basis of ``{x : A x = 0}`` over the field of ``A`` (one vector per free column)."""
    F = A.field
    _require_field(F)
    ech = row_echelon(A)
    rows = ech.form.entries
    pivset = set(ech.pivots)
    basis = []
    for free in range(A.cols):
        if free in pivset:
            continue
        v = [F.zero] * A.cols
        v[free] = F.one
        for i, c in enumerate(ech.pivots):
            v[c] = F.neg(rows[i][free])
        basis.append(v)
    return basis


def is_feasible(q: SolutionQuery, F: FieldSpec) -> bool:
    return solve_affine(q, F) is not None
