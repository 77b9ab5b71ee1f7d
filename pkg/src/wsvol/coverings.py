"""Finite covers of Δ-complexes from edge monodromy, and stabilisation towers."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .bounds import compile_report
from .complex import DeltaComplex, Diagnostics, euler_characteristic, validate
from .constructions import _fan_triangles, surface_complex
from .homology import betti, homology_profile
from .linalg import FieldSpec

Perm = tuple[int, ...]


class CoverError(ValueError):
    pass


def _compose(f: Perm, g: Perm) -> Perm:
    """``f ∘ g`` (apply ``g`` first)."""
    return tuple(f[x] for x in g)


def _inverse(f: Perm) -> Perm:
    out = [0] * len(f)
    for i, y in enumerate(f):
        out[y] = i
    return tuple(out)


def _identity(d: int) -> Perm:
    return tuple(range(d))


@dataclass(frozen=True)
class CoverSpec:
    """``d`` sheets and one permutation of ``0..d-1`` per edge.

    ``monodromy[e][s]`` is the sheet reached from sheet ``s`` at the initial
    vertex of edge ``e`` by walking along ``e``.
    """

    sheets: int
    monodromy: tuple[Perm, ...]

    def __post_init__(self):
        if self.sheets < 1:
            raise CoverError("a cover needs at least one sheet")
        object.__setattr__(self, "monodromy", tuple(tuple(int(x) for x in p)
                                                    for p in self.monodromy))
        for e, p in enumerate(self.monodromy):
            if sorted(p) != list(range(self.sheets)):
                raise CoverError(f"monodromy of edge {e} is not a permutation of 0..{self.sheets - 1}")

    @classmethod
    def trivial(cls, X: DeltaComplex, d: int) -> CoverSpec:
        return cls(d, (_identity(d),) * X.cell_counts[1])

    def to_json(self) -> dict:
        return {"sheets": self.sheets,
                "monodromy": {str(e): list(p) for e, p in enumerate(self.monodromy)
                              if p != _identity(self.sheets)}}

    @classmethod
    def from_json(cls, doc: dict, n_edges: int) -> CoverSpec:
        try:
            d = int(doc["sheets"])
            given = {int(k): tuple(v) for k, v in doc.get("monodromy", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise CoverError(f"malformed cover spec: {exc}") from exc
        if any(not 0 <= e < n_edges for e in given):
            raise CoverError("monodromy names an edge outside the complex")
        return cls(d, tuple(given.get(e, _identity(d)) for e in range(n_edges)))

    @classmethod
    def load(cls, path, X: DeltaComplex) -> CoverSpec:
        with open(path) as fh:
            return cls.from_json(json.load(fh), X.cell_counts[1])


def validate_cover_spec(X: DeltaComplex, spec: CoverSpec) -> Diagnostics:
    """Check ``perm(∂_0 t) ∘ perm(∂_2 t) == perm(∂_1 t)`` on every 2-cell ``t``."""
    diag = Diagnostics()
    diag.record("edge_count", len(spec.monodromy) == X.cell_counts[1],
                f"{len(spec.monodromy)} permutations for {X.cell_counts[1]} edges")
    diag.record("flat", True)
    if X.dimension < 2 or len(spec.monodromy) != X.cell_counts[1]:
        return diag
    P = spec.monodromy
    for t, (e12, e02, e01) in enumerate(X.cells(2)):
        if _compose(P[e12], P[e01]) != P[e02]:
            diag.record("flat", False, f"2-cell {t}: relation fails")
    return diag


@dataclass(frozen=True)
class Cover:
    complex: DeltaComplex
    sheets: int

    def project(self, k: int, cell: int) -> tuple[int, int]:
        """(base cell, sheet) of a cell of the cover."""
        return divmod(cell, self.sheets)


def build_cover(X: DeltaComplex, spec: CoverSpec) -> Cover:
    """The ``d``-sheeted cover; cell ``(c, s)`` gets index ``c*d + s``.

    Faces: ``∂_i (c, s) = (∂_i c, s)`` for ``i >= 1`` and
    ``∂_0 (c, s) = (∂_0 c, perm(e01(c))(s))`` where ``e01(c)`` is the edge
    from vertex 0 to vertex 1 of ``c``.
    """
    diag = validate_cover_spec(X, spec)
    if not diag.ok:
        raise CoverError("cover spec fails the 2-cell relation")
    d = spec.sheets
    faces = {}
    for k in range(1, X.dimension + 1):
        level = []
        for c, cell in enumerate(X.cells(k)):
            perm = spec.monodromy[X.edge_01(k, c)]
            for s in range(d):
                level.append((cell[0] * d + perm[s],) +
                             tuple(f * d + s for f in cell[1:]))
        faces[k] = level
    name = f"{X.name}_cover{d}" if X.name else ""
    cover = DeltaComplex.from_faces(faces, X.cell_counts[0] * d, name)
    check = validate(cover)
    if not (check.checks["index_ranges"] and check.checks["semi_simplicial"]
            and check.checks["pseudo_manifold"]):
        raise CoverError("built cover fails validation")
    return Cover(cover, d)


def is_connected(X: DeltaComplex) -> bool:
    return validate(X).checks["connected"]


def cyclic_surface_cover(g: int, d: int) -> CoverSpec:
    """``d``-sheeted cyclic cover of :func:`surface_complex` unwinding ``a1``.

    ``a1`` acts by ``s -> s+1 mod d``, the other generators trivially, and
    the diagonals get the permutations forced by the triangles.
    """
    if g < 1 or d < 1:
        raise CoverError("need genus >= 1 and at least one sheet")
    X = surface_complex(g)
    perms: dict[int, Perm] = {e: _identity(d) for e in range(2 * g)}
    perms[0] = tuple((s + 1) % d for s in range(d))
    _, info = _fan_triangles(g)
    for edge, sgn, spoke_in, spoke_out in info:
        # corners (P0, P_k, P_{k+1}): perm(out) = perm(side) ∘ perm(in)
        # corners (P0, P_{k+1}, P_k): perm(side) ∘ perm(out) = perm(in)
        side = perms[edge]
        step = side if sgn == 1 else _inverse(side)
        forced = _compose(step, perms[spoke_in])
        if spoke_out in perms and perms[spoke_out] != forced:
            raise CoverError("inconsistent monodromy")  # pragma: no cover
        perms[spoke_out] = forced
    return CoverSpec(d, tuple(perms[e] for e in range(X.cell_counts[1])))


def cyclic_surface_covers(g: int, d_max: int) -> list[CoverSpec]:
    return [cyclic_surface_cover(g, d) for d in range(1, d_max + 1)]


@dataclass(frozen=True)
class TowerRow:
    sheets: int
    genus: int
    euler: int
    lower: int
    upper: int
    lifted_upper: int
    betti1: int

    @property
    def lower_ratio(self) -> Fraction:
        return Fraction(self.lower, self.sheets)

    @property
    def upper_ratio(self) -> Fraction:
        return Fraction(self.upper, self.sheets)

    @property
    def lifted_ratio(self) -> Fraction:
        return Fraction(self.lifted_upper, self.sheets)


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class TowerReport:
    base_genus: int
    field: FieldSpec
    rows: tuple[TowerRow, ...]
    tower: str = "cyclic covers unwinding a1"

    @property
    def running_infimum(self) -> list[Fraction]:
        out, best = [], None
        for r in self.rows:
            best = r.upper_ratio if best is None else min(best, r.upper_ratio)
            out.append(best)
        return out

    def to_json(self) -> dict:
        return {"base_genus": self.base_genus, "field": str(self.field), "tower": self.tower,
                "limit_window": [2 * self.base_genus - 2, 4 * self.base_genus - 4],
                "rows": [{"d": r.sheets, "genus": r.genus, "euler": r.euler,
                          "lower": r.lower, "upper": r.upper,
                          "lower_ratio": _frac(r.lower_ratio),
                          "upper_ratio": _frac(r.upper_ratio),
                          "lifted_upper": r.lifted_upper,
                          "lifted_ratio": _frac(r.lifted_ratio),
                          "betti1": r.betti1,
                          "upper_infimum": _frac(inf)}
                         for r, inf in zip(self.rows, self.running_infimum)]}


def stabilize(g: int, d_max: int, F: FieldSpec) -> TowerReport:
    """Volume bounds divided by the sheet count along the cyclic tower.

    Each cover is built and its genus read off from ``χ``; the bounds come
    from the report on the minimal one-vertex complex of that genus
    (lower ``2g'``, upper ``4g' - 2``).  ``lifted_upper`` is the top-cell
    count of the lifted triangulation, for comparison.
    """
    if g < 1:
        raise CoverError("genus must be at least 1")
    if d_max < 1:
        raise CoverError("d_max must be at least 1")
    X = surface_complex(g)
    rows = []
    for spec in cyclic_surface_covers(g, d_max):
        cover = build_cover(X, spec).complex
        if not is_connected(cover):
            raise CoverError(f"the {spec.sheets}-sheeted cover is disconnected")
        chi = euler_characteristic(cover)
        if chi != spec.sheets * euler_characteristic(X):
            raise CoverError("Euler characteristic is not multiplicative")  # pragma: no cover
        genus = 1 - chi // 2
        rep = compile_report(surface_complex(genus), [F])[F]
        rows.append(TowerRow(spec.sheets, genus, chi, rep.lower.value, rep.upper.value,
                             cover.top_count, betti(cover, F if F.is_field else FieldSpec.q(), 1)))
    return TowerReport(g, F, tuple(rows))


def cover_summary(X: DeltaComplex, spec: CoverSpec) -> dict:
    """Cover complex, its validation, Euler characteristic and Betti numbers."""
    cover = build_cover(X, spec).complex
    diag = validate(cover)
    prof = homology_profile(cover, FieldSpec.q())
    return {"sheets": spec.sheets, "complex": cover.to_json(), "validation": diag.to_json(),
            "euler": euler_characteristic(cover), "base_euler": euler_characteristic(X),
            "homology": prof.to_json()}
