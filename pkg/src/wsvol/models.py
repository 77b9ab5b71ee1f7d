"""Model complexes of chains, cycle matrices, and the lower-bound search.

A model complex on ``m`` abstract ``n``-simplices records which face slots
``(s, i)`` (simplex ``s``, face ``i``) coincide.  Its cycle matrix turns
"the chain with this model and these coefficients is a cycle" into a linear
system, so the least ``m`` admitting a totally nonzero kernel vector is a
lower bound for the weightless volume of every closed oriented n-manifold.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations, product
from typing import Any, Iterator, Sequence

from .complex import DeltaComplex
from .linalg import (ExactMatrix, FieldSpec, MatrixError, SolutionQuery, Z,
                     kernel_basis, rank, solve_affine)

MAX_SLOTS = 12
ENUMERATION_LIMIT = 10**6


class EnumerationGuardError(RuntimeError):
    pass


def _rgs(labels: Sequence[Any]) -> tuple[int, ...]:
    """Relabel classes in order of first appearance (restricted growth string)."""
    seen: dict[Any, int] = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


@dataclass(frozen=True)
class ModelComplex:
    """Partition of the face slots ``{0..m-1} x {0..n}``.

    ``labels[s*(n+1) + i]`` is the class of slot ``(s, i)``; labels are kept
    as a restricted growth string.
    """

    n: int
    m: int
    labels: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.m < 0:
            raise ValueError("model complexes need n >= 1 and m >= 0")
        if len(self.labels) != self.m * (self.n + 1):
            raise ValueError(f"expected {self.m * (self.n + 1)} slot labels")
        object.__setattr__(self, "labels", _rgs(self.labels))

    @classmethod
    def from_classes(cls, n: int, m: int, classes: Sequence[Sequence[Sequence[int]]]) -> ModelComplex:
        labels: list[int | None] = [None] * (m * (n + 1))
        for c, members in enumerate(classes):
            for s, i in members:
                if not (0 <= s < m and 0 <= i <= n):
                    raise ValueError(f"slot ({s}, {i}) out of range")
                if labels[s * (n + 1) + i] is not None:
                    raise ValueError(f"slot ({s}, {i}) in two classes")
                labels[s * (n + 1) + i] = c
        if any(x is None for x in labels):
            raise ValueError("every face slot must belong to a class")
        return cls(n, m, tuple(labels))

    def slot(self, s: int, i: int) -> int:
        return self.labels[s * (self.n + 1) + i]

    @property
    def classes(self) -> list[list[tuple[int, int]]]:
        out: list[list[tuple[int, int]]] = [[] for _ in range(max(self.labels, default=-1) + 1)]
        for idx, c in enumerate(self.labels):
            out[c].append(divmod(idx, self.n + 1))
        return out

    def relabel(self, perm: Sequence[int]) -> ModelComplex:
        """Image under the simplex bijection ``s -> perm[s]``."""
        w = self.n + 1
        inv = [0] * self.m
        for s, t in enumerate(perm):
            inv[t] = s
        return ModelComplex(self.n, self.m, tuple(
            self.labels[inv[t] * w + i] for t in range(self.m) for i in range(w)))

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m,
                "classes": [[list(slot) for slot in c] for c in self.classes]}

    @classmethod
    def from_json(cls, doc: dict) -> ModelComplex:
        return cls.from_classes(int(doc["n"]), int(doc["m"]), doc["classes"])


def model_of_chain(X: DeltaComplex, support: Sequence[int]) -> ModelComplex:
    """Model of the chain supported on the given top cells.

    Slots ``(s, i)`` and ``(t, j)`` coincide iff ``∂_i`` of the ``s``-th support
    cell and ``∂_j`` of the ``t``-th are the same ``(n-1)``-cell.  Distinct
    cells are taken to be distinct singular simplices.
    """
    support = list(support)
    if len(set(support)) != len(support):
        raise ValueError("support lists a top cell twice")
    n = X.dimension
    return ModelComplex(n, len(support),
                        tuple(X.face(n, c, i) for c in support for i in range(n + 1)))


def cycle_matrix(Zm: ModelComplex) -> ExactMatrix:
    """Integer matrix with entry ``((s,i), t) = sum over j with (s,i)~(t,j) of (-1)^j``."""
    w = Zm.n + 1
    rows = []
    for s in range(Zm.m):
        for i in range(w):
            c = Zm.slot(s, i)
            rows.append([sum(-1 if j % 2 else 1 for j in range(w) if Zm.slot(t, j) == c)
                         for t in range(Zm.m)])
    return ExactMatrix.from_rows(rows, Z, cols=Zm.m)


def cycle_check_via_matrix(X: DeltaComplex, support: Sequence[int],
                           coeffs: Sequence[Any], F: FieldSpec) -> bool:
    """Whether the chain ``sum coeffs[j] * support[j]`` is a cycle over ``F``."""
    if len(support) != len(coeffs):
        raise ValueError("support and coefficient vector differ in length")
    if not support:
        return True
    A = cycle_matrix(model_of_chain(X, support)).over(F)
    zero = F.zero
    return all(x == zero for x in A.apply([F.convert(c) for c in coeffs]))


# -- canonical forms and enumeration --------------------------------------

def canonical_form(Zm: ModelComplex) -> ModelComplex:
    """Lexicographically least relabeling over all simplex permutations."""
    best = Zm.labels
    for perm in permutations(range(Zm.m)):
        cand = Zm.relabel(perm).labels
        if cand < best:
            best = cand
    return ModelComplex(Zm.n, Zm.m, best)


def _check_guard(n: int, m: int):
    if m * (n + 1) > MAX_SLOTS:
        raise EnumerationGuardError(
            f"{m} simplices of dimension {n} give {m * (n + 1)} face slots; limit is {MAX_SLOTS}")


def _prefix_is_minimal(labels: list[int], blocks: int, w: int) -> bool:
    """No reordering of the first ``blocks`` simplices gives a smaller prefix."""
    own = tuple(labels[:blocks * w])
    for perm in permutations(range(blocks)):
        cand = _rgs([labels[s * w + i] for s in perm for i in range(w)])
        if cand < own:
            return False
    return True


def enumerate_models(n: int, m: int) -> Iterator[ModelComplex]:
    """One canonical representative per isomorphism class of models.

    Orderly generation: restricted growth strings are extended slot by slot
    in (simplex, face) order, and a partial string is abandoned as soon as a
    permutation of its completed simplices gives a smaller prefix.  What
    survives to full length is exactly the lexicographically least member of
    its isomorphism class.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    _check_guard(n, m)
    w = n + 1
    total = m * w
    labels: list[int] = []

    def extend(nclasses: int):
        pos = len(labels)
        if pos and pos % w == 0 and not _prefix_is_minimal(labels, pos // w, w):
            return
        if pos == total:
            yield ModelComplex(n, m, tuple(labels))
            return
        for c in range(nclasses + 1):
            labels.append(c)
            yield from extend(max(nclasses, c + 1))
            labels.pop()

    yield from extend(0)


# -- feasibility -----------------------------------------------------------

def _all_nonzero(v: Sequence[Any], zero: Any) -> bool:
    return all(x != zero for x in v)


def _combine(basis, coeffs, F: FieldSpec) -> list[Any]:
    m = len(basis[0])
    out = [F.zero] * m
    for c, b in zip(coeffs, basis):
        if c != F.zero:
            out = [F.add(x, F.mul(c, y)) for x, y in zip(out, b)]
    return out


def count_totally_nonzero(basis: list[list[Any]], F: FieldSpec, m: int) -> int:
    """Number of kernel vectors with no zero coordinate, by inclusion-exclusion.

    ``sum over S of (-1)^|S| * q^dim(K ∩ {x_S = 0})`` for a finite field of
    order ``q``; each dimension comes from the rank of the basis restricted
    to the coordinates in ``S``.
    """
    q = F.order
    if q is None:
        raise ValueError("counting needs a finite field")
    k = len(basis)
    if k == 0:
        return 1 if m == 0 else 0
    total = 0
    for mask in range(1 << m):
        coords = [j for j in range(m) if mask >> j & 1]
        if coords:
            sub = ExactMatrix(len(coords), k,
                              tuple(tuple(b[j] for b in basis) for j in coords), F)
            dim = k - rank(sub)
        else:
            dim = k
        total += (-1) ** len(coords) * q ** dim
    return total


def totally_nonzero_cycle(Zm: ModelComplex, F: FieldSpec) -> tuple[bool, list[Any] | None]:
    """Decide whether the cycle matrix has a kernel vector with all entries nonzero.

    Returns ``(feasible, witness)``.  Finite fields with at most
    ``ENUMERATION_LIMIT`` kernel vectors are enumerated outright; larger ones
    are decided by inclusion-exclusion.  Over Q it suffices that the kernel
    lies in no coordinate hyperplane, and a witness ``sum t^i b_i`` is found
    by trying ``t = 0, 1, 2, ...``.
    """
    if not F.is_field:
        raise MatrixError(f"{F} is not a field")
    m = Zm.m
    if m == 0:
        return False, None
    basis = kernel_basis(cycle_matrix(Zm).over(F))
    zero = F.zero
    if not basis:
        return False, None
    if F.order is None:
        if any(all(b[j] == zero for b in basis) for j in range(m)):
            return False, None
        t = 0
        while True:
            v = _combine(basis, [F.convert(t ** i) for i in range(len(basis))], F)
            if _all_nonzero(v, zero):
                return True, v
            t += 1
    if F.order ** len(basis) <= ENUMERATION_LIMIT:
        for coeffs in product(list(F.elements()), repeat=len(basis)):
            v = _combine(basis, coeffs, F)
            if _all_nonzero(v, zero):
                return True, v
        return False, None
    if count_totally_nonzero(basis, F, m) == 0:
        return False, None
    rng = random.Random(0)
    elems = list(F.elements()) if F.order <= 10**4 else None
    for _ in range(200_000):
        coeffs = [rng.choice(elems) if elems else F.convert(rng.randrange(F.p))
                  for _ in basis]
        v = _combine(basis, coeffs, F)
        if _all_nonzero(v, zero):
            return True, v
    return True, None


def has_totally_nonzero_cycle(Zm: ModelComplex, F: FieldSpec) -> bool:
    return totally_nonzero_cycle(Zm, F)[0]


@dataclass(frozen=True)
class SearchResult:
    """Outcome of :func:`algebraic_min_cycle_size`.

    ``minimal`` is ``None`` when no model with at most ``m_max`` simplices is
    feasible, in which case ``m_max + 1`` is the certified lower bound.
    """

    n: int
    field: FieldSpec
    m_max: int
    minimal: int | None
    model: ModelComplex | None = None
    witness: tuple[Any, ...] | None = None
    models_checked: int = 0

    @property
    def lower_bound(self) -> int:
        return self.minimal if self.minimal is not None else self.m_max + 1

    def to_json(self) -> dict:
        doc = {"n": self.n, "field": str(self.field), "m_max": self.m_max,
               "minimal": self.minimal, "lower_bound": self.lower_bound,
               "models_checked": self.models_checked}
        if self.model is not None:
            doc["model"] = self.model.to_json()
        if self.witness is not None:
            doc["witness"] = [self.field.format_scalar(x) for x in self.witness]
        return doc


def algebraic_min_cycle_size(n: int, F: FieldSpec, m_max: int) -> SearchResult:
    """Least ``m <= m_max`` such that some ``n``-dimensional model on ``m``
    simplices carries a totally nonzero cycle over ``F``."""
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    for m in range(1, m_max + 1):
        _check_guard(n, m)
    checked = 0
    for m in range(1, m_max + 1):
        for Zm in enumerate_models(n, m):
            checked += 1
            ok, witness = totally_nonzero_cycle(Zm, F)
            if ok:
                return SearchResult(n, F, m_max, m, Zm,
                                    None if witness is None else tuple(witness), checked)
    return SearchResult(n, F, m_max, None, models_checked=checked)


def search_cap(n: int) -> int:
    """Largest simplex count the enumeration guard allows in dimension ``n``."""
    return MAX_SLOTS // (n + 1)


@dataclass(frozen=True)
class AugmentedSystem:
    """Cycle rows equal to zero, plus the degree row equal to one."""

    base: ExactMatrix
    degree_row: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degree_row", tuple(int(d) for d in self.degree_row))
        if len(self.degree_row) != self.base.cols:
            raise MatrixError(
                f"degree row has {len(self.degree_row)} entries for {self.base.cols} simplices")

    @classmethod
    def for_model(cls, Zm: ModelComplex, degree_row: Sequence[int]) -> AugmentedSystem:
        return cls(cycle_matrix(Zm), tuple(degree_row))

    @property
    def matrix(self) -> ExactMatrix:
        return self.base.stack(ExactMatrix.from_rows([self.degree_row], Z, cols=self.base.cols))

    @property
    def target(self) -> tuple[int, ...]:
        return (0,) * self.base.rows + (1,)

    def query(self) -> SolutionQuery:
        return SolutionQuery(self.matrix, self.target)


def fundamental_feasible(sys: AugmentedSystem, F: FieldSpec) -> bool:
    return solve_affine(sys.query(), F) is not None
