"""Δ-complexes (semi-simplicial sets) presenting closed oriented manifolds.

A complex of dimension ``n`` stores cell counts for dimensions ``0..n`` and,
for each ``k >= 1``, the faces of every ``k``-cell: ``faces[k][c][i]`` is the
index of the ``(k-1)``-cell ``∂_i c``.  Self-gluings are allowed, which is
what makes one-vertex surfaces possible.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Sequence

from .linalg import ExactMatrix, FieldSpec, Z


class ComplexError(ValueError):
    pass


class NonOrientableError(ComplexError):
    def __init__(self, msg: str = "non-orientable"):
        super().__init__(msg)


@dataclass(frozen=True)
class DeltaComplex:
    dimension: int
    cell_counts: tuple[int, ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]  # faces[k-1] holds the k-cells
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.dimension
        if n < 1:
            raise ComplexError("dimension must be at least 1")
        object.__setattr__(self, "cell_counts", tuple(int(c) for c in self.cell_counts))
        object.__setattr__(self, "faces", tuple(
            tuple(tuple(int(x) for x in cell) for cell in level) for level in self.faces))
        if len(self.cell_counts) != n + 1:
            raise ComplexError(f"expected {n + 1} cell counts, got {len(self.cell_counts)}")
        if any(c < 0 for c in self.cell_counts):
            raise ComplexError("negative cell count")
        if len(self.faces) != n:
            raise ComplexError(f"expected face data for dimensions 1..{n}")
        for k in range(1, n + 1):
            level = self.faces[k - 1]
            if len(level) != self.cell_counts[k]:
                raise ComplexError(
                    f"{len(level)} face tuples for {self.cell_counts[k]} cells of dimension {k}")
            if any(len(cell) != k + 1 for cell in level):
                raise ComplexError(f"every {k}-cell needs {k + 1} faces")

    @classmethod
    def from_faces(cls, faces: dict[int, Sequence[Sequence[int]]], n_vertices: int,
                   name: str = "") -> DeltaComplex:
        n = max(faces)
        levels = tuple(tuple(tuple(c) for c in faces[k]) for k in range(1, n + 1))
        counts = (n_vertices,) + tuple(len(lv) for lv in levels)
        return cls(n, counts, levels, name)

    def face(self, k: int, cell: int, i: int) -> int:
        return self.faces[k - 1][cell][i]

    def cells(self, k: int) -> tuple[tuple[int, ...], ...]:
        """Face tuples of the ``k``-cells (``k >= 1``)."""
        return self.faces[k - 1]

    @property
    def top_count(self) -> int:
        return self.cell_counts[self.dimension]

    def edge_01(self, k: int, cell: int) -> int:
        """The 1-cell spanned by vertices 0 and 1 of a ``k``-cell."""
        c = cell
        while k > 1:
            c = self.face(k, c, k)
            k -= 1
        return c

    # -- JSON -------------------------------------------------------------

    def to_json(self) -> dict:
        doc = {"dimension": self.dimension,
               "cells": list(self.cell_counts),
               "faces": {str(k): [list(c) for c in self.cells(k)]
                         for k in range(1, self.dimension + 1)}}
        if self.name:
            doc["name"] = self.name
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> DeltaComplex:
        try:
            n = int(doc["dimension"])
            counts = doc["cells"]
            faces = doc["faces"]
            levels = tuple(tuple(tuple(c) for c in faces[str(k)]) for k in range(1, n + 1))
        except (KeyError, TypeError, ValueError) as exc:
            raise ComplexError(f"malformed complex JSON: {exc}") from exc
        return cls(n, tuple(counts), levels, doc.get("name", ""))

    @classmethod
    def load(cls, path) -> DeltaComplex:
        with open(path) as fh:
            return cls.from_json(json.load(fh))


@dataclass
class Diagnostics:
    """Named pass/fail checks with a message for each failure."""

    checks: dict[str, bool] = field(default_factory=dict)
    messages: dict[str, list[str]] = field(default_factory=dict)

    def record(self, name: str, ok: bool, msg: str | None = None):
        self.checks[name] = self.checks.get(name, True) and ok
        self.messages.setdefault(name, [])
        if not ok and msg:
            self.messages[name].append(msg)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "checks": {k: {"pass": v, "messages": self.messages.get(k, [])[:20]}
                           for k, v in self.checks.items()}}


def validate(X: DeltaComplex) -> Diagnostics:
    """Index ranges, semi-simplicial identities, connectivity, pseudo-manifold."""
    d = Diagnostics()
    n = X.dimension
    ranges_ok = True
    d.record("index_ranges", True)
    for k in range(1, n + 1):
        lim = X.cell_counts[k - 1]
        for c, cell in enumerate(X.cells(k)):
            for i, f in enumerate(cell):
                if not 0 <= f < lim:
                    ranges_ok = False
                    d.record("index_ranges", False,
                             f"face {i} of {k}-cell {c} is {f}, outside 0..{lim - 1}")
    d.record("semi_simplicial", True)
    d.record("connected", True)
    d.record("pseudo_manifold", True)
    if not ranges_ok:
        for name in ("semi_simplicial", "connected", "pseudo_manifold"):
            d.record(name, False, "skipped: face indices out of range")
        return d

    # ∂_i ∂_j = ∂_{j-1} ∂_i for i < j
    for k in range(2, n + 1):
        for c, cell in enumerate(X.cells(k)):
            for j in range(1, k + 1):
                for i in range(j):
                    lhs = X.face(k - 1, cell[j], i)
                    rhs = X.face(k - 1, cell[i], j - 1)
                    if lhs != rhs:
                        d.record("semi_simplicial", False,
                                 f"{k}-cell {c}: d{i}d{j} = {lhs} but d{j - 1}d{i} = {rhs}")

    occurrences = facet_occurrences(X)
    for f in range(X.cell_counts[n - 1]):
        cnt = len(occurrences[f])
        if cnt != 2:
            d.record("pseudo_manifold", False,
                     f"{n - 1}-cell {f} occurs in {cnt} top-cell face slots")

    if X.top_count == 0:
        d.record("connected", False, "no top cells")
    else:
        parent = list(range(X.top_count))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for occ in occurrences:
            for (c1, _), (c2, _) in zip(occ, occ[1:]):
                parent[find(c1)] = find(c2)
        roots = {find(c) for c in range(X.top_count)}
        if len(roots) != 1:
            d.record("connected", False, f"{len(roots)} components of top cells")
    return d


def facet_occurrences(X: DeltaComplex) -> list[list[tuple[int, int]]]:
    """For every ``(n-1)``-cell, the top-cell slots ``(cell, i)`` it fills."""
    n = X.dimension
    occ: list[list[tuple[int, int]]] = [[] for _ in range(X.cell_counts[n - 1])]
    for c, cell in enumerate(X.cells(n)):
        for i, f in enumerate(cell):
            occ[f].append((c, i))
    return occ


def boundary_matrix(X: DeltaComplex, k: int) -> ExactMatrix:
    """Integer matrix of ``∂_k`` with rows the ``(k-1)``-cells, columns the ``k``-cells."""
    if not 1 <= k <= X.dimension:
        raise ComplexError(f"boundary degree {k} outside 1..{X.dimension}")
    rows = [[0] * X.cell_counts[k] for _ in range(X.cell_counts[k - 1])]
    for c, cell in enumerate(X.cells(k)):
        for i, f in enumerate(cell):
            rows[f][c] += -1 if i % 2 else 1
    return ExactMatrix.from_rows(rows, Z, cols=X.cell_counts[k])


def euler_characteristic(X: DeltaComplex) -> int:
    return sum((-1) ** k * c for k, c in enumerate(X.cell_counts))


@dataclass(frozen=True)
class OrientationVector:
    signs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if any(s not in (1, -1) for s in self.signs):
            raise ComplexError("orientation signs must be +1 or -1")

    def is_valid_for(self, X: DeltaComplex) -> bool:
        if len(self.signs) != X.top_count:
            return False
        return all(x == 0 for x in boundary_matrix(X, X.dimension).apply(list(self.signs)))


def _require_closed(X: DeltaComplex):
    diag = validate(X)
    if not diag.ok:
        failed = ", ".join(k for k, v in diag.checks.items() if not v)
        raise ComplexError(f"complex fails validation: {failed}")


def orientation(X: DeltaComplex) -> OrientationVector:
    """Signs on top cells making their signed sum an integral cycle.

    Propagates from top cell 0 (sign +1) across shared facets.  Raises
    :class:`NonOrientableError` when no consistent sign choice exists.
    """
    _require_closed(X)
    occ = facet_occurrences(X)
    by_cell: list[list[int]] = [[] for _ in range(X.top_count)]
    for f, slots in enumerate(occ):
        for c, _ in slots:
            by_cell[c].append(f)
    signs = [0] * X.top_count
    signs[0] = 1
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for f in by_cell[c]:
            (c1, i1), (c2, i2) = occ[f]
            if c1 == c2:
                if (i1 + i2) % 2 == 0:
                    raise NonOrientableError()
                continue
            other, mine, theirs = (c2, i1, i2) if c1 == c else (c1, i2, i1)
            want = -signs[c] * (-1) ** (mine + theirs)
            if signs[other] == 0:
                signs[other] = want
                queue.append(other)
            elif signs[other] != want:
                raise NonOrientableError()
    o = OrientationVector(tuple(signs))
    if not o.is_valid_for(X):
        raise NonOrientableError()
    return o


def is_orientable(X: DeltaComplex) -> bool:
    try:
        orientation(X)
    except NonOrientableError:
        return False
    return True


def fundamental_cycle(X: DeltaComplex, o: OrientationVector, F: FieldSpec) -> list[Any]:
    """Coefficients of the signed top-cell cycle, mapped into ``F``."""
    if len(o.signs) != X.top_count:
        raise ComplexError("orientation length does not match top cells")
    return [F.convert(s) for s in o.signs]
