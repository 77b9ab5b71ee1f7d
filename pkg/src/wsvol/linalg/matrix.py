"""Immutable dense matrices over a :class:`FieldSpec`."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .fields import FieldSpec, Z


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Any, ...], ...]
    field: FieldSpec = Z

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise MatrixError("negative dimension")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise MatrixError(
                f"entry count does not match {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], field: FieldSpec = Z,
                  cols: int | None = None) -> ExactMatrix:
        """Build from nested lists, mapping every entry through ``field.convert``.

        ``cols`` is only needed for matrices without rows.
        """
        data = tuple(tuple(field.convert(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data, field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec = Z) -> ExactMatrix:
        z = field.zero
        return cls(rows, cols, tuple((z,) * cols for _ in range(rows)), field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec = Z) -> ExactMatrix:
        z, o = field.zero, field.one
        return cls(n, n, tuple(tuple(o if i == j else z for j in range(n))
                               for i in range(n)), field)

    @classmethod
    def diagonal(cls, diag: Sequence[Any], rows: int | None = None,
                 cols: int | None = None, field: FieldSpec = Z) -> ExactMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, field, cols=cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def to_lists(self) -> list[list[Any]]:
        return [list(r) for r in self.entries]

    def column(self, j: int) -> list[Any]:
        return [r[j] for r in self.entries]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.cols, self.rows,
                           tuple(zip(*self.entries)) if self.rows else
                           tuple(() for _ in range(self.cols)),
                           self.field)

    def over(self, field: FieldSpec) -> ExactMatrix:
        """Image under the canonical ring map into ``field``."""
        if field == self.field:
            return self
        return ExactMatrix.from_rows(self.entries, field, cols=self.cols)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for r in self.entries for x in r)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        return matmul(self, other)

    def apply(self, v: Sequence[Any]) -> list[Any]:
        """Matrix-vector product ``A v``."""
        if len(v) != self.cols:
            raise MatrixError(f"vector length {len(v)} != {self.cols} columns")
        F = self.field
        out = []
        for r in self.entries:
            acc = F.zero
            for a, x in zip(r, v):
                if a != F.zero and x != F.zero:
                    acc = F.add(acc, F.mul(a, x))
            out.append(acc)
        return out

    def stack(self, other: ExactMatrix) -> ExactMatrix:
        """Vertical concatenation."""
        if other.cols != self.cols:
            raise MatrixError("column counts differ")
        other = other.over(self.field)
        return ExactMatrix(self.rows + other.rows, self.cols,
                           self.entries + other.entries, self.field)

    # -- JSON -------------------------------------------------------------

    def to_json(self) -> dict:
        F = self.field
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[F.format_scalar(x) for x in r] for r in self.entries]}

    @classmethod
    def from_json(cls, doc: dict, field: FieldSpec = Z) -> ExactMatrix:
        try:
            rows, cols, entries = doc["rows"], doc["cols"], doc["entries"]
        except (KeyError, TypeError) as exc:
            raise MatrixError("matrix JSON needs rows, cols, entries") from exc
        parsed = [[_parse_scalar(x) for x in r] for r in entries]
        if len(parsed) != rows or any(len(r) != cols for r in parsed):
            raise MatrixError(f"entries do not form a {rows}x{cols} matrix")
        if field == Z and any(isinstance(x, Fraction) and x.denominator != 1
                              for r in parsed for x in r):
            field_ = FieldSpec.q()
        else:
            field_ = field
        return cls.from_rows(parsed, field_, cols=cols)


def _parse_scalar(x: Any) -> Any:
    if isinstance(x, bool):
        raise MatrixError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            f = Fraction(x)
        except ValueError as exc:
            raise MatrixError(f"bad entry {x!r}") from exc
        return int(f) if f.denominator == 1 else f
    if isinstance(x, list) and len(x) == 2:
        return (int(x[0]), int(x[1]))
    raise MatrixError(f"bad entry {x!r}")


def matmul(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    if A.cols != B.rows:
        raise MatrixError(f"shape mismatch {A.rows}x{A.cols} @ {B.rows}x{B.cols}")
    F = A.field
    B = B.over(F)
    Bt = list(zip(*B.entries)) if B.rows else [()] * B.cols
    out = []
    for r in A.entries:
        row = []
        for c in Bt:
            acc = F.zero
            for a, b in zip(r, c):
                if a != F.zero and b != F.zero:
                    acc = F.add(acc, F.mul(a, b))
            row.append(acc)
        out.append(tuple(row))
    return ExactMatrix(A.rows, B.cols, tuple(out), F)


def vector(values: Iterable[Any], field: FieldSpec) -> list[Any]:
    return [field.convert(x) for x in values]
