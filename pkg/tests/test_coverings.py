from fractions import Fraction

import pytest

from wsvol.complex import euler_characteristic, orientation, validate
from wsvol.constructions import fixture, surface_complex
from wsvol.coverings import (CoverError, CoverSpec, build_cover, cover_summary,
                             cyclic_surface_cover, is_connected, stabilize,
                             validate_cover_spec)
from wsvol.homology import homology_profile
from wsvol.linalg import FieldSpec, Q, Z

F2 = FieldSpec.fp(2)


def test_trivial_cover_is_disconnected():
    X = fixture("torus")
    cover = build_cover(X, CoverSpec.trivial(X, 3))
    assert cover.complex.cell_counts == (3, 9, 6)
    assert not is_connected(cover.complex)
    assert homology_profile(cover.complex, Q).betti[0] == 3


@pytest.mark.parametrize("g,d", [(1, 2), (1, 5), (2, 3), (3, 2)])
def test_cyclic_cover(g, d):
    X = surface_complex(g)
    spec = cyclic_surface_cover(g, d)
    assert validate_cover_spec(X, spec).ok
    cover = build_cover(X, spec).complex
    assert validate(cover).ok
    assert euler_characteristic(cover) == d * euler_characteristic(X)
    orientation(cover)
    assert homology_profile(cover, Q).betti == (1, 2 * (d * (g - 1) + 1), 1)


def test_projection():
    spec = cyclic_surface_cover(1, 4)
    cover = build_cover(fixture("torus"), spec)
    assert cover.project(2, 7) == (1, 3)


def test_double_cover_of_rp3_is_s3():
    X = fixture("rp3")
    swap, ident = (1, 0), (0, 1)
    # try every edge labelling and keep the flat, connected ones
    found = []
    for mask in range(16):
        perms = tuple(swap if mask >> e & 1 else ident for e in range(4))
        spec = CoverSpec(2, perms)
        if validate_cover_spec(X, spec).ok:
            c = build_cover(X, spec).complex
            if is_connected(c):
                found.append(homology_profile(c, Z))
    assert found
    assert all(p.betti == (1, 0, 0, 1) and p.torsion == {} for p in found)


def test_spec_validation():
    X = fixture("torus")
    bad = CoverSpec(2, ((1, 0), (0, 1), (0, 1)))
    assert not validate_cover_spec(X, bad).ok
    with pytest.raises(CoverError):
        build_cover(X, bad)
    with pytest.raises(CoverError):
        CoverSpec(2, ((0, 0),))
    with pytest.raises(CoverError):
        CoverSpec.from_json({"sheets": 2, "monodromy": {"9": [1, 0]}}, 3)
    assert not validate_cover_spec(X, CoverSpec(2, ((0, 1),))).ok


def test_spec_json_round_trip():
    spec = cyclic_surface_cover(2, 3)
    assert CoverSpec.from_json(spec.to_json(), 9) == spec


def test_stabilize_ratios():
    rep = stabilize(2, 8, F2)
    for r in rep.rows:
        d = r.sheets
        assert r.euler == -2 * d
        assert r.lower_ratio == 2 + Fraction(2, d)
        assert r.upper_ratio == 4 + Fraction(2, d)
        assert r.lifted_ratio == 6
    inf = rep.running_infimum
    assert all(a >= b for a, b in zip(inf, inf[1:]))
    assert rep.to_json()["rows"][-1]["upper_ratio"] == "17/4"


def test_stabilize_rejects_bad_input():
    with pytest.raises(CoverError):
        stabilize(0, 3, F2)
    with pytest.raises(CoverError):
        stabilize(2, 0, F2)


def test_cover_summary():
    doc = cover_summary(fixture("torus"), cyclic_surface_cover(1, 3))
    assert doc["euler"] == 0 and doc["sheets"] == 3
    assert doc["homology"]["betti"] == [1, 2, 1]
