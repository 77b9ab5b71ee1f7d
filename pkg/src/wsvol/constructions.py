"""Standard Δ-complexes used as fixtures and as inputs to covering towers."""

from __future__ import annotations

import json
from importlib import resources
from itertools import combinations
from math import gcd

from .complex import ComplexError, DeltaComplex


def circle() -> DeltaComplex:
    """One vertex, one edge: the loop."""
    return DeltaComplex.from_faces({1: [(0, 0)]}, 1, "circle")


def two_triangle_sphere() -> DeltaComplex:
    """S^2 as two triangles glued along their whole boundary."""
    edges = [(1, 0), (2, 0), (2, 1)]  # e01, e02, e12
    tris = [(2, 1, 0), (2, 1, 0)]
    return DeltaComplex.from_faces({1: edges, 2: tris}, 3, "sphere2")


def simplex_boundary(n: int = 2) -> DeltaComplex:
    """Boundary of the standard ``(n+1)``-simplex, an ``n``-sphere."""
    verts = range(n + 2)
    index: dict[tuple[int, ...], int] = {(v,): v for v in verts}
    faces: dict[int, list[tuple[int, ...]]] = {}
    for k in range(1, n + 1):
        level = []
        for simplex in combinations(verts, k + 1):
            index[simplex] = len(level)
            level.append(tuple(index[simplex[:i] + simplex[i + 1:]] for i in range(k + 1)))
        faces[k] = level
    name = "tetrahedron_boundary" if n == 2 else f"simplex_boundary_{n}"
    return DeltaComplex.from_faces(faces, n + 2, name)


def surface_complex(g: int) -> DeltaComplex:
    """One-vertex fan triangulation of the closed orientable genus-``g`` surface.

    The 4g-gon with word ``a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1`` is coned
    from its first corner.  Edges ``0..2g-1`` are ``a1, b1, ..., ag, bg``; the
    remaining ``4g-3`` edges are the interior diagonals.  For ``g = 1`` this is
    the two-triangle torus with faces ``U = (b, c, a)`` and ``L = (a, c, b)``.
    """
    if g < 1:
        raise ComplexError("genus must be at least 1; use two_triangle_sphere for S^2")
    tris, _ = _fan_triangles(g)
    n_edges = 6 * g - 3
    name = "torus" if g == 1 else f"genus{g}"
    return DeltaComplex.from_faces({1: [(0, 0)] * n_edges, 2: tris}, 1, name)


def _polygon_sides(g: int) -> list[tuple[int, int]]:
    """(edge index, +1 or -1) for each side of the 4g-gon."""
    sides = []
    for h in range(g):
        a, b = 2 * h, 2 * h + 1
        sides += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return sides


def _fan_triangles(g: int):
    """Triangles of the fan plus, per triangle, ``(side, spoke_in, spoke_out)``.

    Spoke ``d_k`` runs from corner ``P0`` to corner ``P_k``.  ``d_1`` is the
    first side ``a1`` and ``d_{4g-1}`` is the last side ``bg`` (read backwards).
    """
    N = 4 * g
    sides = _polygon_sides(g)
    spoke = {1: sides[0][0], N - 1: sides[N - 1][0]}
    nxt = 2 * g
    for k in range(2, N - 1):
        spoke[k] = nxt
        nxt += 1
    tris, info = [], []
    for k in range(1, N - 1):
        edge, sgn = sides[k]
        if sgn == 1:
            # corners (P0, P_k, P_{k+1})
            tris.append((edge, spoke[k + 1], spoke[k]))
        else:
            # corners (P0, P_{k+1}, P_k)
            tris.append((edge, spoke[k], spoke[k + 1]))
        info.append((edge, sgn, spoke[k], spoke[k + 1]))
    return tris, info


def klein_bottle() -> DeltaComplex:
    """One-vertex Klein bottle: two triangles whose gluing admits no orientation."""
    return DeltaComplex.from_faces({1: [(0, 0)] * 3, 2: [(1, 2, 0), (1, 0, 2)]}, 1,
                                   "klein_bottle")


def lens_space(p: int, q: int = 1) -> DeltaComplex:
    """The lens space ``L(p, q)`` from ``p`` tetrahedra around an axis.

    Tetrahedron ``T_k`` has corners ``(N, S, x_k, x_{k+1})``; the upper face
    ``(N, x_k, x_{k+1})`` is glued to the lower face ``(S, x_{k+q}, x_{k+q+1})``.
    ``lens_space(1, 0)`` is a one-tetrahedron S^3 and ``lens_space(2, 1)`` is RP^3.
    """
    if p < 1 or gcd(p, q) != 1:
        raise ComplexError(f"L({p},{q}) needs p >= 1 and gcd(p, q) = 1")
    # vertices: 0 = poles (N ~ S), 1 = equator
    # edges: 0 = axis NS, 1 = equator x_k x_{k+1}, 2+k = N x_k (also S x_{k+q})
    B = lambda k: 2 + k % p
    C = lambda k: B(k - q)
    edges = [(0, 0), (1, 1)] + [(1, 0)] * p
    # triangles: k = (N, S, x_k), p+k = (N, x_k, x_{k+1})
    F = lambda k: k % p
    G = lambda k: p + k % p
    tris = [(C(k), B(k), 0) for k in range(p)] + [(1, B(k + 1), B(k)) for k in range(p)]
    tets = [(G(k - q), G(k), F(k + 1), F(k)) for k in range(p)]
    name = "s3" if p == 1 else ("rp3" if p == 2 else f"lens_{p}_{q % p}")
    return DeltaComplex.from_faces({1: edges, 2: tris, 3: tets}, 2, name)


BUILDERS = {
    "circle": circle,
    "sphere2": two_triangle_sphere,
    "tetrahedron_boundary": simplex_boundary,
    "torus": lambda: surface_complex(1),
    "genus2": lambda: surface_complex(2),
    "genus3": lambda: surface_complex(3),
    "klein_bottle": klein_bottle,
    "s3": lambda: lens_space(1, 0),
    "rp3": lambda: lens_space(2, 1),
    "lens_5_1": lambda: lens_space(5, 1),
}


FIXTURES = tuple(BUILDERS)


def fixture(name: str) -> DeltaComplex:
    """Load a shipped example complex by name."""
    if name not in BUILDERS:
        raise ComplexError(f"unknown fixture {name!r}; known: {sorted(BUILDERS)}")
    text = resources.files("wsvol").joinpath("data", f"{name}.json").read_text()
    return DeltaComplex.from_json(json.loads(text))
