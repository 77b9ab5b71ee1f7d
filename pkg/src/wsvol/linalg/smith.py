"""Smith normal form over Z with unimodular transforms.

All arithmetic is on Python ints, so intermediate entries never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fields import Z, is_prime, prime_factors
from .matrix import ExactMatrix, MatrixError


@dataclass(frozen=True)
class SmithDecomposition:
    """``S @ A @ T == diag(divisors, 0, ...)`` with ``S``, ``T`` unimodular."""

    S: ExactMatrix
    T: ExactMatrix
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def diagonal(self) -> ExactMatrix:
        return ExactMatrix.diagonal(self.divisors, self.S.rows, self.T.rows)


def smith_normal_form(A: ExactMatrix) -> SmithDecomposition:
    """Smith normal form of an integer matrix.

    Pivot choice: smallest nonzero absolute value in the remaining block,
    ties broken row-major.  When the pivot fails to divide some entry of the
    block, that entry's row is added to the pivot row and the step repeats.
    Divisors are returned positive.
    """
    if A.field.kind != "integers":
        raise MatrixError("Smith normal form needs an integer matrix")
    k, m = A.rows, A.cols
    D = [list(r) for r in A.entries]
    S = [[int(i == j) for j in range(k)] for i in range(k)]
    T = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        S[i], S[j] = S[j], S[i]

    def col_swap(i, j):
        for M in (D, T):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def row_add(dst, src, f):  # row_dst += f * row_src
        for M in (D, S):
            a, b = M[dst], M[src]
            for c in range(len(a)):
                if b[c]:
                    a[c] += f * b[c]

    def col_add(dst, src, f):  # col_dst += f * col_src
        for M in (D, T):
            for r in M:
                if r[src]:
                    r[dst] += f * r[src]

    divisors = []
    t = 0
    while t < min(k, m):
        best = None
        for i in range(t, k):
            for j in range(t, m):
                v = D[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            p = D[t][t]
            done = True
            for i in range(t + 1, k):
                if D[i][t]:
                    row_add(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, m):
                if D[t][j]:
                    col_add(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        done = False
            if not done:
                # a remainder smaller than the pivot survived; re-pivot
                best = None
                for i in range(t, k):
                    if D[i][t] and (best is None or abs(D[i][t]) < best[0]):
                        best = (abs(D[i][t]), i, "r")
                for j in range(t, m):
                    if D[t][j] and (best is None or abs(D[t][j]) < best[0]):
                        best = (abs(D[t][j]), j, "c")
                if best[2] == "r":
                    row_swap(t, best[1])
                else:
                    col_swap(t, best[1])
                continue
            bad = next(((i, j) for i in range(t + 1, k) for j in range(t + 1, m)
                        if D[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if D[t][t] < 0:
            S[t] = [-x for x in S[t]]
            D[t][t] = -D[t][t]
        divisors.append(D[t][t])
        t += 1

    return SmithDecomposition(ExactMatrix.from_rows(S, Z, cols=k),
                              ExactMatrix.from_rows(T, Z, cols=m),
                              tuple(divisors))


def integer_kernel_basis(A: ExactMatrix) -> list[list[int]]:
    """Free basis of ``{x in Z^m : A x = 0}``: the last ``m - r`` columns of ``T``."""
    snf = smith_normal_form(A)
    return [snf.T.column(j) for j in range(snf.rank, A.cols)]


def elementary_divisor_primes(A: ExactMatrix) -> frozenset[int]:
    """Primes dividing some elementary divisor of ``A``.

    Outside this set, reducing an integral kernel basis mod ``p`` spans the
    kernel over ``F_p``.
    """
    out = set()
    for d in smith_normal_form(A).divisors:
        out.update(prime_factors(d))
    return frozenset(out)


def reduce_mod_p(v: Sequence[int], p: int) -> list[int]:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [int(x) % p for x in v]


def free_rank_and_torsion(A: ExactMatrix) -> tuple[int, list[int]]:
    """Rank of ``A`` and its elementary divisors greater than one."""
    snf = smith_normal_form(A)
    return snf.rank, [d for d in snf.divisors if d > 1]


def determinant(A: ExactMatrix) -> int:
    """Integer determinant by Bareiss fraction-free elimination."""
    if A.rows != A.cols:
        raise MatrixError("determinant of a non-square matrix")
    n = A.rows
    M = [list(r) for r in A.entries]
    sign, prev = 1, 1
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                M[i][j] = (M[i][j] * M[c][c] - M[i][c] * M[c][j]) // prev
        prev = M[c][c]
    return sign * M[n - 1][n - 1] if n else 1
