from fractions import Fraction
from itertools import permutations, product

import pytest

from wsvol.complex import boundary_matrix
from wsvol.constructions import fixture
from wsvol.linalg import ExactMatrix, FieldSpec, Q, kernel_basis
from wsvol.models import (AugmentedSystem, EnumerationGuardError, ModelComplex,
                          algebraic_min_cycle_size, canonical_form, count_totally_nonzero,
                          cycle_check_via_matrix, cycle_matrix, enumerate_models,
                          fundamental_feasible, model_of_chain, search_cap,
                          totally_nonzero_cycle)

F2, F3 = FieldSpec.fp(2), FieldSpec.fp(3)


def all_rgs(length):
    def rec(prefix, k):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for c in range(k + 1):
            yield from rec(prefix + [c], max(k, c + 1))
    yield from rec([], 0)


def brute_force_classes(n, m):
    """Isomorphism classes of models: every set partition, reduced by every simplex permutation."""
    seen = set()
    for labels in all_rgs(m * (n + 1)):
        Zm = ModelComplex(n, m, labels)
        seen.add(min(Zm.relabel(p).labels for p in permutations(range(m))))
    return seen


def brute_force_totally_nonzero(Zm, F):
    A = cycle_matrix(Zm).over(F)
    nonzero = [x for x in F.elements() if x != F.zero]
    return any(not any(x != F.zero for x in A.apply(v)) for v in product(nonzero, repeat=Zm.m))


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (1, 3)])
def test_enumeration_matches_brute_force(n, m):
    got = [Zm.labels for Zm in enumerate_models(n, m)]
    assert len(got) == len(set(got))
    assert set(got) == brute_force_classes(n, m)


def test_known_class_counts():
    assert sum(1 for _ in enumerate_models(1, 2)) == 11
    assert sum(1 for _ in enumerate_models(1, 1)) == 2
    assert sum(1 for _ in enumerate_models(2, 1)) == 5  # Bell(3)


def test_guard():
    with pytest.raises(EnumerationGuardError):
        next(enumerate_models(2, 5))
    with pytest.raises(EnumerationGuardError):
        algebraic_min_cycle_size(3, F2, 4)
    assert search_cap(2) == 4 and search_cap(3) == 3


def test_canonical_form_invariant(rng):
    for _ in range(50):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        labels = tuple(rng.randrange(4) for _ in range(m * (n + 1)))
        Zm = ModelComplex(n, m, labels)
        perm = list(range(m))
        rng.shuffle(perm)
        assert canonical_form(Zm.relabel(perm)) == canonical_form(Zm)


def test_model_json_round_trip():
    Zm = ModelComplex(2, 2, (0, 1, 2, 0, 1, 2))
    assert ModelComplex.from_json(Zm.to_json()) == Zm


def test_from_classes_rejects_overlap():
    with pytest.raises(ValueError):
        ModelComplex.from_classes(1, 1, [[(0, 0), (0, 1)], [(0, 1)]])


def test_torus_model_matrix():
    X = fixture("torus")
    Zm = model_of_chain(X, [0, 1])
    A = cycle_matrix(Zm)
    assert A.apply([1, -1]) == [0] * 6
    assert A.apply([1, 1]) != [0] * 6


@pytest.mark.parametrize("F", [F2, F3, Q])
def test_cycle_check_matches_boundary(F, rng):
    names = ["torus", "genus2", "sphere2", "tetrahedron_boundary", "klein_bottle", "rp3", "lens_5_1"]
    for _ in range(80):
        X = fixture(rng.choice(names))
        k = rng.randint(1, X.top_count)
        support = rng.sample(range(X.top_count), k)
        coeffs = [rng.choice([1, -1, 2, 3]) for _ in support]
        D = boundary_matrix(X, X.dimension).over(F)
        full = [F.zero] * X.top_count
        for c, a in zip(support, coeffs):
            full[c] = F.convert(a)
        direct = all(x == F.zero for x in D.apply(full))
        assert cycle_check_via_matrix(X, support, coeffs, F) == direct


@pytest.mark.parametrize("F", [F2, F3, FieldSpec.fp2(2)])
def test_totally_nonzero_matches_brute_force(F):
    for n, m in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)]:
        for Zm in enumerate_models(n, m):
            ok, w = totally_nonzero_cycle(Zm, F)
            assert ok == brute_force_totally_nonzero(Zm, F)
            if ok:
                assert all(x != F.zero for x in w)
                assert not any(x != F.zero for x in cycle_matrix(Zm).over(F).apply(w))


def test_rational_witness():
    for Zm in enumerate_models(2, 2):
        ok, w = totally_nonzero_cycle(Zm, Q)
        # over Q, scaling shows feasibility equals feasibility with entries in {±1, ±2, ...}
        if ok:
            assert all(x != 0 for x in w)
            assert cycle_matrix(Zm).over(Q).apply(w) == [Fraction(0)] * Zm.m * 3


def test_inclusion_exclusion_count(rng):
    for F in (F2, F3, FieldSpec.fp(5)):
        for _ in range(20):
            m = rng.randint(1, 4)
            A = ExactMatrix.from_rows([[rng.randint(-2, 2) for _ in range(m)]
                                       for _ in range(rng.randint(1, 3))]).over(F)
            basis = kernel_basis(A)
            nonzero = [x for x in F.elements() if x != F.zero]
            brute = sum(1 for v in product(nonzero, repeat=m)
                        if not any(x != F.zero for x in A.apply(v)))
            assert count_totally_nonzero(basis, F, m) == brute


def test_one_simplex_models_brute_force():
    # a single simplex is a cycle iff its faces cancel in pairs with opposite signs
    for n in (1, 2, 3):
        feasible = False
        for labels in all_rgs(n + 1):
            classes = {}
            for i, c in enumerate(labels):
                classes[c] = classes.get(c, 0) + (-1) ** i
            feasible |= all(v == 0 for v in classes.values())
        assert feasible == (n % 2 == 1)
        for F in (F2, Q):
            res = algebraic_min_cycle_size(n, F, 2)
            assert (res.minimal == 1) == (n % 2 == 1)


def test_search_result_json():
    res = algebraic_min_cycle_size(2, F2, 1)
    assert res.minimal is None and res.lower_bound == 2
    doc = res.to_json()
    assert doc["lower_bound"] == 2 and "model" not in doc


def test_augmented_system():
    Zm = model_of_chain(fixture("torus"), [0, 1])
    sys = AugmentedSystem.for_model(Zm, [1, 0])
    assert sys.matrix.rows == 7 and sys.target[-1] == 1
    assert fundamental_feasible(sys, Q)
    assert fundamental_feasible(sys, F2)
