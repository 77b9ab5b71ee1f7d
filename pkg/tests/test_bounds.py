import json
import random
from itertools import product

import pytest

from wsvol.bounds import (Bound, BoundReport, BoundsError, InconsistentFactsError, KnownFact,
                          betti_lower, compile_report, degree_transfer, euler_lower,
                          exceptional_primes_report, feasible_over, load_facts, product_bound,
                          strictness_inference, triangulation_upper)
from wsvol.complex import NonOrientableError
from wsvol.constructions import fixture
from wsvol.linalg import ExactMatrix, FieldSpec, Q, SolutionQuery, Z

F2, F3, F5 = FieldSpec.fp(2), FieldSpec.fp(3), FieldSpec.fp(5)


def brute_feasible(A, b, p):
    for x in product(range(p), repeat=A.cols):
        if all((sum(a * v for a, v in zip(row, x)) - t) % p == 0
               for row, t in zip(A.entries, b)):
            return True
    return False


def test_simple_rules():
    X = fixture("genus2")
    assert betti_lower(X, Q) == 4
    assert euler_lower(X) == 1
    assert triangulation_upper(X) == 6
    with pytest.raises(NonOrientableError):
        triangulation_upper(fixture("klein_bottle"))


def test_degree_transfer():
    assert degree_transfer(1, 5, F2) == 1
    assert degree_transfer(1, 5, F5) is None
    assert degree_transfer(1, 5, Z) is None
    assert degree_transfer(3, -1, Z) == 3
    with pytest.raises(BoundsError):
        degree_transfer(1, 0, Q)


def test_strictness():
    assert strictness_inference(4, 6) == (5, False)
    assert strictness_inference(2, 2) == (2, True)
    with pytest.raises(InconsistentFactsError):
        strictness_inference(7, 6)


def test_report_rejects_crossed_bounds():
    with pytest.raises(InconsistentFactsError):
        BoundReport(Q, Bound(5, "betti"), Bound(3, "triangulation"))
    with pytest.raises(BoundsError):
        BoundReport(Q, Bound(1, "guess"), None)


def test_inconsistent_fact_is_reported():
    with pytest.raises(InconsistentFactsError):
        compile_report(fixture("genus2"), [Q], [KnownFact("isv", value=3)])


def test_product_bound():
    t = compile_report(fixture("torus"), [F2])[F2]
    c = compile_report(fixture("circle"), [F2])[F2]
    p = product_bound(t, 2, c, 1)
    assert p.upper.value == 3 * 2 * 1 and p.upper.source == "product"
    assert p.lower.value == 2 and p.lower.source == "transfer"
    with pytest.raises(BoundsError):
        product_bound(t, 2, compile_report(fixture("torus"), [Q])[Q], 2)


def test_facts_json(tmp_path):
    facts = [{"kind": "isv", "value": 6, "cite": "known"},
             {"kind": "domination", "degree": 5, "source": "s3", "upper": 1}]
    path = tmp_path / "facts.json"
    path.write_text(json.dumps(facts))
    loaded = load_facts(path)
    assert [f.kind for f in loaded] == ["isv", "domination"]
    assert KnownFact.from_json(loaded[1].to_json()) == loaded[1]
    with pytest.raises(BoundsError):
        KnownFact.from_json({"kind": "rumour"})


def test_sphere_lower_from_model_search():
    rep = compile_report(fixture("sphere2"), [F2, F3, F5, Q])
    for F, r in rep.items():
        assert r.exact == 2
        assert r.lower.source == "model_search"


def test_klein_bottle_has_no_report():
    with pytest.raises(NonOrientableError):
        compile_report(fixture("klein_bottle"), [F2])


def test_equal_characteristic_sharing():
    rep = compile_report(fixture("torus"), [F2, FieldSpec.fp2(2)])
    assert rep[F2].exact == rep[FieldSpec.fp2(2)].exact == 2


def test_exceptional_primes_example():
    q = SolutionQuery(ExactMatrix.from_rows([[2]]), (1,))
    assert exceptional_primes_report(q) == {2}
    assert feasible_over(q, Q) and feasible_over(q, F3) and not feasible_over(q, F2)


def test_exceptional_primes_needs_augmented_divisors():
    # A has no elementary divisors; the obstruction lives in [A | b]
    q = SolutionQuery(ExactMatrix.from_rows([[0]]), (3,))
    assert 3 in exceptional_primes_report(q)
    assert not feasible_over(q, Q) and feasible_over(q, F3)


def test_exceptional_primes_random():
    rng = random.Random(7)
    for _ in range(60):
        rows, cols = rng.randint(1, 3), rng.randint(1, 3)
        A = ExactMatrix.from_rows([[rng.randint(-4, 4) for _ in range(cols)] for _ in range(rows)])
        b = tuple(rng.randint(-4, 4) for _ in range(rows))
        q = SolutionQuery(A, b)
        bad = exceptional_primes_report(q)
        for p in (2, 3, 5, 7):
            if p not in bad:
                assert brute_feasible(A, b, p) == feasible_over(q, Q)
