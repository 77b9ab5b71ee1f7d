import json
from importlib import resources

import pytest

from wsvol.complex import (ComplexError, DeltaComplex, NonOrientableError, OrientationVector,
                           boundary_matrix, euler_characteristic, fundamental_cycle,
                           is_orientable, orientation, validate)
from wsvol.constructions import (BUILDERS, FIXTURES, fixture, klein_bottle, lens_space,
                                 simplex_boundary, surface_complex)
from wsvol.linalg import FieldSpec, ExactMatrix


@pytest.mark.parametrize("name", FIXTURES)
def test_shipped_json_matches_construction(name):
    assert fixture(name) == BUILDERS[name]()


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_validate(name):
    diag = validate(fixture(name))
    assert diag.ok, diag.messages


@pytest.mark.parametrize("name", FIXTURES)
def test_boundary_squares_to_zero(name):
    X = fixture(name)
    for k in range(2, X.dimension + 1):
        assert (boundary_matrix(X, k - 1) @ boundary_matrix(X, k)).is_zero()


def test_unknown_fixture():
    with pytest.raises(ComplexError):
        fixture("moebius")


def test_json_round_trip():
    X = surface_complex(2)
    assert DeltaComplex.from_json(json.loads(json.dumps(X.to_json()))) == X


def test_torus_boundary_columns_agree():
    # both triangles have boundary a + b - c, so U - L is the cycle
    D = boundary_matrix(fixture("torus"), 2)
    assert D.column(0) == D.column(1) != [0, 0, 0]
    assert orientation(fixture("torus")).signs == (1, -1)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_surface_counts(g):
    X = surface_complex(g)
    assert X.cell_counts == (1, 6 * g - 3, 4 * g - 2)
    assert euler_characteristic(X) == 2 - 2 * g


def test_surface_rejects_genus_zero():
    with pytest.raises(ComplexError):
        surface_complex(0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_simplex_boundary(n):
    X = simplex_boundary(n)
    assert validate(X).ok
    assert euler_characteristic(X) == 1 + (-1) ** n


def test_lens_rejects_non_coprime():
    with pytest.raises(ComplexError):
        lens_space(4, 2)


def test_broken_semi_simplicial_identity():
    # triangle whose edges do not share endpoints consistently
    X = DeltaComplex.from_faces({1: [(1, 0), (2, 0), (2, 1)], 2: [(0, 1, 2), (0, 1, 2)]}, 3)
    diag = validate(X)
    assert not diag.checks["semi_simplicial"]
    assert not diag.ok


def test_index_out_of_range():
    X = DeltaComplex.from_faces({1: [(0, 5)]}, 1)
    diag = validate(X)
    assert not diag.checks["index_ranges"]


def test_not_pseudo_manifold():
    X = DeltaComplex.from_faces({1: [(0, 0)] * 3, 2: [(1, 2, 0)]}, 1)
    assert not validate(X).checks["pseudo_manifold"]


def test_disconnected():
    X = DeltaComplex.from_faces({1: [(0, 0), (1, 1)]}, 2)
    assert not validate(X).checks["connected"]


@pytest.mark.parametrize("name", [n for n in FIXTURES if n != "klein_bottle"])
def test_orientation_is_cycle(name):
    X = fixture(name)
    o = orientation(X)
    assert o.signs[0] == 1
    assert o.is_valid_for(X)
    assert len(fundamental_cycle(X, o, FieldSpec.fp(3))) == X.top_count


def test_klein_bottle_rejected():
    with pytest.raises(NonOrientableError, match="non-orientable"):
        orientation(klein_bottle())
    assert not is_orientable(klein_bottle())


def test_orientation_rejects_invalid_complex():
    X = DeltaComplex.from_faces({1: [(0, 0)] * 3, 2: [(1, 2, 0)]}, 1)
    with pytest.raises(ComplexError):
        orientation(X)


def test_orientation_vector_signs():
    with pytest.raises(ComplexError):
        OrientationVector((1, 0))
