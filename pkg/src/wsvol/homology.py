"""Cellular homology of Δ-complexes over fields and over Z."""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import (ComplexError, DeltaComplex, OrientationVector,
                      boundary_matrix, euler_characteristic)
from .linalg import FieldSpec, Z, prime_factors, rank, smith_normal_form


class InvalidOrientationError(ComplexError):
    pass


@dataclass(frozen=True)
class HomologyProfile:
    field: FieldSpec
    betti: tuple[int, ...]
    euler: int
    torsion: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"field": str(self.field), "betti": list(self.betti),
                "torsion": {str(k): list(v) for k, v in sorted(self.torsion.items())},
                "euler": self.euler}


def _boundary_ranks(X: DeltaComplex, F: FieldSpec) -> list[int]:
    """``ranks[k]`` is the rank of ``∂_k`` over ``F``; ``ranks[0] = ranks[n+1] = 0``."""
    n = X.dimension
    out = [0] * (n + 2)
    for k in range(1, n + 1):
        A = boundary_matrix(X, k)
        out[k] = smith_normal_form(A).rank if F.kind == "integers" else rank(A.over(F))
    return out


def betti(X: DeltaComplex, F: FieldSpec, k: int) -> int:
    """``dim H_k(X; F) = dim ker ∂_k - rank ∂_{k+1}``."""
    n = X.dimension
    if not 0 <= k <= n:
        raise ComplexError(f"degree {k} outside 0..{n}")
    if not F.is_field:
        raise ComplexError("betti() takes a field; use homology_profile for Z")
    r_k = rank(boundary_matrix(X, k).over(F)) if k >= 1 else 0
    r_next = rank(boundary_matrix(X, k + 1).over(F)) if k < n else 0
    return X.cell_counts[k] - r_k - r_next


def homology_profile(X: DeltaComplex, F: FieldSpec) -> HomologyProfile:
    """Betti numbers in every degree; over Z also the torsion divisors.

    Over Z the Betti numbers are free ranks, and ``torsion[k]`` lists the
    elementary divisors greater than one of ``∂_{k+1}``.
    """
    n = X.dimension
    torsion: dict[int, tuple[int, ...]] = {}
    if F.kind == "integers":
        ranks = [0] * (n + 2)
        for k in range(1, n + 1):
            snf = smith_normal_form(boundary_matrix(X, k))
            ranks[k] = snf.rank
            tors = tuple(d for d in snf.divisors if d > 1)
            if tors:
                torsion[k - 1] = tors
    else:
        ranks = _boundary_ranks(X, F)
    b = tuple(X.cell_counts[k] - ranks[k] - ranks[k + 1] for k in range(n + 1))
    return HomologyProfile(F, b, euler_characteristic(X), torsion)


def torsion_primes(X: DeltaComplex) -> frozenset[int]:
    """Primes dividing integral torsion in some degree."""
    out = set()
    for divs in homology_profile(X, Z).torsion.values():
        for d in divs:
            out.update(prime_factors(d))
    return frozenset(out)


def fundamental_class_check(X: DeltaComplex, o: OrientationVector) -> bool:
    """Whether ``H_n(X; Z) ≅ Z`` and the signed top-cell cycle generates it.

    There are no ``(n+1)``-cells, so ``H_n = ker ∂_n``; the cycle generates
    exactly when its coordinate in a one-element kernel basis is ``±1``.
    """
    n = X.dimension
    if not o.is_valid_for(X):
        raise InvalidOrientationError("signed top cells do not form a cycle")
    snf = smith_normal_form(boundary_matrix(X, n))
    m = X.top_count
    if m - snf.rank != 1:
        return False
    gen = snf.T.column(m - 1)
    # o = λ * gen; find λ from any nonzero coordinate
    j = next(i for i, g in enumerate(gen) if g)
    lam, rem = divmod(o.signs[j], gen[j])
    if rem:
        return False
    if any(s != lam * g for s, g in zip(o.signs, gen)):
        return False
    return lam in (1, -1)
