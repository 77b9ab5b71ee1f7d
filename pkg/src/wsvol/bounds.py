"""Certified lower and upper bounds for weightless simplicial volumes.

Each bound carries a provenance tag naming the rule that produced it:

lower
    ``betti`` (Betti numbers bound the volume), ``euler`` (``|χ| <= (n+1) V``),
    ``model_search`` (no small model admits a totally nonzero cycle),
    ``strictness`` (Betti number equal to the volume over Z forces equality
    with the integral volume), ``transfer`` (bounds shared between rings).
upper
    ``triangulation`` (the signed top cells form a fundamental cycle),
    ``fact`` (a user-supplied integral simplicial volume), ``transfer``
    (domination by a map whose degree is a unit), ``product``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Any, NamedTuple, Sequence

from .complex import DeltaComplex, euler_characteristic, orientation
from .homology import homology_profile
from .linalg import (FieldSpec, Q, SolutionQuery, elementary_divisor_primes,
                     solve_affine)
from .models import AugmentedSystem, algebraic_min_cycle_size, search_cap

LOWER_TAGS = ("betti", "euler", "model_search", "strictness", "transfer")
UPPER_TAGS = ("triangulation", "fact", "transfer", "product")


class BoundsError(ValueError):
    pass


class InconsistentFactsError(BoundsError):
    pass


@dataclass(frozen=True)
class Bound:
    value: int
    source: str
    detail: str = ""

    def to_json(self) -> dict:
        doc: dict[str, Any] = {"value": self.value, "source": self.source}
        if self.detail:
            doc["detail"] = self.detail
        return doc


@dataclass(frozen=True)
class BoundReport:
    field: FieldSpec
    lower: Bound | None
    upper: Bound | None
    evidence: tuple[tuple[str, Bound], ...] = ()

    def __post_init__(self):
        if self.lower and self.lower.source not in LOWER_TAGS:
            raise BoundsError(f"unknown lower-bound tag {self.lower.source!r}")
        if self.upper and self.upper.source not in UPPER_TAGS:
            raise BoundsError(f"unknown upper-bound tag {self.upper.source!r}")
        if self.lower and self.upper and self.lower.value > self.upper.value:
            raise InconsistentFactsError(
                f"over {self.field}: lower bound {self.lower.value} ({self.lower.source}) "
                f"exceeds upper bound {self.upper.value} ({self.upper.source})")

    @property
    def exact(self) -> int | None:
        if self.lower and self.upper and self.lower.value == self.upper.value:
            return self.lower.value
        return None

    def to_json(self) -> dict:
        return {"field": str(self.field),
                "lower": self.lower.to_json() if self.lower else None,
                "upper": self.upper.to_json() if self.upper else None,
                "exact": self.exact,
                "evidence": [{"side": side, **b.to_json()} for side, b in self.evidence]}


@dataclass(frozen=True)
class KnownFact:
    """A user-asserted fact.

    ``kind == "isv"``: the integral simplicial volume of the input is ``value``.
    ``kind == "domination"``: ``source`` maps onto the input with degree
    ``degree``, and ``upper`` bounds the source's volume over every ring.
    """

    kind: str
    value: int = 0
    degree: int = 0
    source: str = ""
    upper: int = 0
    cite: str = ""

    def __post_init__(self):
        if self.kind == "isv":
            if self.value < 1:
                raise BoundsError("integral simplicial volume must be positive")
        elif self.kind == "domination":
            if self.degree == 0:
                raise BoundsError("domination degree must be nonzero")
            if self.upper < 1:
                raise BoundsError("a source volume bound must be positive")
        else:
            raise BoundsError(f"unknown fact kind {self.kind!r}")

    @classmethod
    def from_json(cls, doc: dict) -> KnownFact:
        kind = doc.get("kind")
        if kind in ("isv", "integral_simplicial_volume"):
            return cls("isv", value=int(doc["value"]), cite=str(doc.get("cite", "")))
        if kind == "domination":
            return cls("domination", degree=int(doc["degree"]), source=str(doc.get("source", "")),
                       upper=int(doc["upper"]), cite=str(doc.get("cite", "")))
        raise BoundsError(f"unknown fact kind {kind!r}")

    def to_json(self) -> dict:
        if self.kind == "isv":
            return {"kind": "isv", "value": self.value, "cite": self.cite}
        return {"kind": "domination", "degree": self.degree, "source": self.source,
                "upper": self.upper, "cite": self.cite}


def load_facts(path) -> list[KnownFact]:
    with open(path) as fh:
        doc = json.load(fh)
    if not isinstance(doc, list):
        raise BoundsError("facts file must hold a JSON list")
    return [KnownFact.from_json(d) for d in doc]


# -- individual rules -------------------------------------------------------

def betti_lower(X: DeltaComplex, F: FieldSpec) -> int:
    """Largest Betti number (free rank over Z) in any degree."""
    return max(homology_profile(X, F).betti)


def euler_lower(X: DeltaComplex) -> int:
    """``ceil(|χ| / (n + 1))``."""
    return -(-abs(euler_characteristic(X)) // (X.dimension + 1))


def triangulation_upper(X: DeltaComplex, F: FieldSpec | None = None) -> int:
    """Number of top cells; raises if the complex has no orientation."""
    orientation(X)
    return X.top_count


def degree_transfer(src: BoundReport | int, d: int, F: FieldSpec) -> int | None:
    """Upper bound for the target of a degree-``d`` map, or ``None`` when
    ``d`` is not a unit in ``F``."""
    if d == 0:
        raise BoundsError("degree must be nonzero")
    if isinstance(src, BoundReport):
        if src.upper is None:
            return None
        upper = src.upper.value
    else:
        upper = int(src)
    return upper if F.is_unit(d) else None


def product_bound(a: BoundReport, dim_a: int, b: BoundReport, dim_b: int) -> BoundReport:
    """Bounds for a product manifold from bounds on its factors."""
    if a.field != b.field:
        raise BoundsError(f"cannot combine reports over {a.field} and {b.field}")
    for r in (a, b):
        if r.upper is not None and r.upper.value < 1:
            raise BoundsError("volumes of nonempty manifolds are at least 1")
    lowers = [r.lower for r in (a, b) if r.lower is not None]
    lower = None
    if lowers:
        best = max(lowers, key=lambda x: x.value)
        lower = Bound(best.value, "transfer", "max of factor lower bounds")
    upper = None
    if a.upper is not None and b.upper is not None:
        c = comb(dim_a + dim_b, dim_a)
        upper = Bound(c * a.upper.value * b.upper.value, "product",
                      f"binom({dim_a + dim_b},{dim_a}) * {a.upper.value} * {b.upper.value}")
    return BoundReport(a.field, lower, upper)


class Strictness(NamedTuple):
    lower: int
    certified: bool  # True when the Z-volume equals betti_z


def strictness_inference(betti_z: int, isv_fact: int) -> Strictness:
    """Improve the Z lower bound from a Betti number and the integral volume.

    A Betti number equals the weightless Z-volume exactly when it equals the
    integral volume, so ``betti_z < isv`` forces a strict inequality.
    """
    if betti_z < 1:
        raise BoundsError("connected closed manifolds have b_0 = 1")
    if betti_z > isv_fact:
        raise InconsistentFactsError(
            f"Betti number {betti_z} exceeds integral simplicial volume {isv_fact}")
    if betti_z < isv_fact:
        return Strictness(betti_z + 1, False)
    return Strictness(betti_z, True)


def exceptional_primes_report(sys: AugmentedSystem | SolutionQuery) -> frozenset[int]:
    """Primes at which solvability over ``F_p`` may differ from solvability over Q.

    These are the prime divisors of the elementary divisors of the coefficient
    matrix together with those of the augmented matrix ``[A | b]``: away from
    both, the ranks of ``A`` and ``[A | b]`` mod ``p`` agree with their ranks
    over Q.
    """
    q = sys.query() if isinstance(sys, AugmentedSystem) else sys
    primes = set(elementary_divisor_primes(q.matrix))
    primes |= elementary_divisor_primes(q.augmented())
    return frozenset(primes)


def feasible_over(sys: AugmentedSystem | SolutionQuery, F: FieldSpec) -> bool:
    q = sys.query() if isinstance(sys, AugmentedSystem) else sys
    return solve_affine(q, F) is not None


# -- aggregation -------------------------------------------------------------

def _pick(cands: list[Bound], lower: bool) -> Bound | None:
    if not cands:
        return None
    order = LOWER_TAGS if lower else UPPER_TAGS
    key = (lambda b: (-b.value, order.index(b.source))) if lower else \
          (lambda b: (b.value, order.index(b.source)))
    return min(cands, key=key)


def _field_report(X: DeltaComplex, F: FieldSpec, facts: Sequence[KnownFact],
                  m_max: int | None) -> tuple[list[Bound], list[Bound]]:
    n = X.dimension
    uppers = [Bound(triangulation_upper(X, F), "triangulation",
                    f"{X.top_count} top cells with an orientation")]
    for f in facts:
        if f.kind == "isv":
            uppers.append(Bound(f.value, "fact", f"integral simplicial volume {f.value} ({f.cite})"))
        else:
            t = degree_transfer(f.upper, f.degree, F)
            if t is not None:
                uppers.append(Bound(t, "transfer",
                                    f"dominated by {f.source or 'source'} with degree {f.degree}"))
    best_upper = min(b.value for b in uppers)

    lowers = [Bound(betti_lower(X, F), "betti", "largest Betti number"),
              Bound(euler_lower(X), "euler", f"ceil(|{euler_characteristic(X)}|/{n + 1})")]
    search_field = F if F.is_field else Q
    cap = search_cap(n) if m_max is None else min(m_max, search_cap(n))
    budget = max(0, min(best_upper - 1, cap))
    res = algebraic_min_cycle_size(n, search_field, budget)
    lowers.append(Bound(res.lower_bound, "model_search",
                        f"no {n}-dimensional model with fewer simplices carries a "
                        f"totally nonzero cycle over {search_field}"
                        if res.minimal is None else
                        f"least feasible model size over {search_field}"))
    if F.kind == "integers":
        b = betti_lower(X, F)
        for f in facts:
            if f.kind == "isv":
                s = strictness_inference(b, f.value)
                lowers.append(Bound(s.lower, "strictness",
                                    f"free rank {b} vs integral volume {f.value}"))
    return lowers, uppers


def compile_report(X: DeltaComplex, fields: Sequence[FieldSpec],
                   facts: Sequence[KnownFact] = (), m_max: int | None = None
                   ) -> dict[FieldSpec, BoundReport]:
    """Bounds for ``X`` over every requested coefficient system.

    The lower bound is the best of the Betti, Euler, model-search and (over Z)
    strictness rules; the upper bound the best of the triangulation, facts and
    applicable dominations.  Afterwards bounds are shared between rings:
    fields of equal characteristic have equal volumes, and every field lower
    bound is also a lower bound over Z.
    """
    raw = {F: _field_report(X, F, facts, m_max) for F in fields}
    own = {F: (max(b.value for b in lo), min(b.value for b in up))
           for F, (lo, up) in raw.items()}
    for F, (lowers, uppers) in raw.items():
        for G, (best_low, best_up) in own.items():
            if G == F:
                continue
            if F.kind == "integers" and G.is_field:
                lowers.append(Bound(best_low, "transfer", f"lower bound over {G}"))
            elif F.is_field and G.is_field and F.characteristic == G.characteristic:
                lowers.append(Bound(best_low, "transfer", f"equal characteristic with {G}"))
                uppers.append(Bound(best_up, "transfer", f"equal characteristic with {G}"))
    out = {}
    for F, (lowers, uppers) in raw.items():
        lo, up = _pick(lowers, True), _pick(uppers, False)
        evidence = tuple(("lower", b) for b in lowers) + tuple(("upper", b) for b in uppers)
        out[F] = BoundReport(F, lo, up, evidence)
    return out


def report_to_json(reports: dict[FieldSpec, BoundReport]) -> list[dict]:
    return [r.to_json() for r in reports.values()]
