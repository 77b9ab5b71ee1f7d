"""Coefficient systems: prime fields, one quadratic extension, Q and Z.

A :class:`FieldSpec` is a small immutable value that knows how to convert
integers into its scalars and how to do arithmetic on them.  Scalars are
plain Python objects:

* ``Z`` and ``F_p``: ``int`` (residues in ``0..p-1`` for ``F_p``)
* ``Q``: :class:`fractions.Fraction`
* ``F_{p^2}``: pairs ``(a0, a1)`` meaning ``a0 + a1*x`` modulo a fixed
  irreducible monic quadratic ``x^2 + c1*x + c0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

# keeps F_p residues well inside a machine word
MAX_PRIME = 2**31 - 1


class FieldSpecError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``|n|`` in increasing order (trial division)."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """Selector for a coefficient system.

    ``kind`` is one of ``"prime"``, ``"prime_square"``, ``"rationals"``,
    ``"integers"``.  Use the constructors :meth:`fp`, :meth:`fp2`,
    :meth:`q`, :meth:`z` or :meth:`parse` rather than the raw initializer.
    """

    kind: str
    p: int = 0
    quad: tuple[int, int] = (0, 0)  # (c0, c1) of x^2 + c1 x + c0

    def __post_init__(self):
        if self.kind in ("prime", "prime_square"):
            if not is_prime(self.p):
                raise FieldSpecError(f"{self.p} is not prime")
            if self.p > MAX_PRIME:
                raise FieldSpecError(f"prime {self.p} too large")
        elif self.kind in ("rationals", "integers"):
            if self.p or self.quad != (0, 0):
                raise FieldSpecError(f"{self.kind} takes no parameters")
        else:
            raise FieldSpecError(f"unknown field kind {self.kind!r}")
        if self.kind == "prime_square":
            c0, c1 = self.quad[0] % self.p, self.quad[1] % self.p
            object.__setattr__(self, "quad", (c0, c1))
            if any((x * x + c1 * x + c0) % self.p == 0 for x in range(self.p)):
                raise FieldSpecError(
                    f"x^2 + {c1}x + {c0} has a root in F_{self.p}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def fp(cls, p: int) -> FieldSpec:
        return cls("prime", p)

    @classmethod
    def fp2(cls, p: int, c0: int | None = None, c1: int = 0) -> FieldSpec:
        """F_{p^2}; without explicit coefficients pick the first irreducible
        ``x^2 + c1 x + c0`` in lexicographic order of ``(c1, c0)``."""
        if c0 is None:
            if not is_prime(p):
                raise FieldSpecError(f"{p} is not prime")
            for c1 in range(p):
                for c0 in range(p):
                    if all((x * x + c1 * x + c0) % p for x in range(p)):
                        return cls("prime_square", p, (c0, c1))
        return cls("prime_square", p, (c0, c1))

    @classmethod
    def q(cls) -> FieldSpec:
        return cls("rationals")

    @classmethod
    def z(cls) -> FieldSpec:
        return cls("integers")

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse ``q``, ``z``, ``fp:<p>`` or ``fp2:<p>:<c0>,<c1>``."""
        t = text.strip().lower()
        try:
            if t == "q":
                return cls.q()
            if t == "z":
                return cls.z()
            if t.startswith("fp2:"):
                parts = t.split(":")
                p = int(parts[1])
                if len(parts) == 2:
                    return cls.fp2(p)
                c0, c1 = (int(c) for c in parts[2].split(","))
                return cls.fp2(p, c0, c1)
            if t.startswith("fp:"):
                return cls.fp(int(t[3:]))
        except (ValueError, IndexError) as exc:
            if isinstance(exc, FieldSpecError):
                raise
            raise FieldSpecError(f"malformed field spec {text!r}") from exc
        raise FieldSpecError(f"malformed field spec {text!r}")

    def __str__(self) -> str:
        if self.kind == "rationals":
            return "q"
        if self.kind == "integers":
            return "z"
        if self.kind == "prime":
            return f"fp:{self.p}"
        return f"fp2:{self.p}:{self.quad[0]},{self.quad[1]}"

    # -- properties -------------------------------------------------------

    @property
    def is_field(self) -> bool:
        return self.kind != "integers"

    @property
    def characteristic(self) -> int:
        return self.p if self.kind in ("prime", "prime_square") else 0

    @property
    def order(self) -> int | None:
        """Number of elements, or ``None`` if infinite."""
        if self.kind == "prime":
            return self.p
        if self.kind == "prime_square":
            return self.p * self.p
        return None

    def is_unit(self, n: int) -> bool:
        """Whether the integer ``n`` maps to a unit of this ring."""
        if self.kind == "integers":
            return n in (1, -1)
        if self.kind == "rationals":
            return n != 0
        return n % self.p != 0

    # -- scalar arithmetic ------------------------------------------------

    @property
    def zero(self) -> Any:
        if self.kind == "rationals":
            return Fraction(0)
        if self.kind == "prime_square":
            return (0, 0)
        return 0

    @property
    def one(self) -> Any:
        return self.convert(1)

    def convert(self, x: Any) -> Any:
        """Image of an integer (or, for Q, a rational) under the canonical map."""
        k = self.kind
        if k == "integers":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise FieldSpecError(f"{x} is not an integer")
                return int(x.numerator)
            return int(x)
        if k == "rationals":
            return Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise FieldSpecError(f"{x} has no image in F_{self.p}")
            r = x.numerator * pow(den, -1, self.p) % self.p
        elif isinstance(x, tuple):
            if k != "prime_square":
                raise FieldSpecError("pair scalars need an F_{p^2} field")
            return (x[0] % self.p, x[1] % self.p)
        else:
            r = int(x) % self.p
        return r if k == "prime" else (r, 0)

    def is_zero(self, a: Any) -> bool:
        return a == self.zero

    def add(self, a, b):
        k = self.kind
        if k == "prime":
            return (a + b) % self.p
        if k == "prime_square":
            return ((a[0] + b[0]) % self.p, (a[1] + b[1]) % self.p)
        return a + b

    def sub(self, a, b):
        k = self.kind
        if k == "prime":
            return (a - b) % self.p
        if k == "prime_square":
            return ((a[0] - b[0]) % self.p, (a[1] - b[1]) % self.p)
        return a - b

    def neg(self, a):
        return self.sub(self.zero, a)

    def mul(self, a, b):
        k = self.kind
        if k == "prime":
            return a * b % self.p
        if k == "prime_square":
            # x^2 = -c1 x - c0
            c0, c1 = self.quad
            p = self.p
            t0 = a[0] * b[0]
            t1 = a[0] * b[1] + a[1] * b[0]
            t2 = a[1] * b[1]
            return ((t0 - c0 * t2) % p, (t1 - c1 * t2) % p)
        return a * b

    def inv(self, a):
        k = self.kind
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if k == "integers":
            if a not in (1, -1):
                raise FieldSpecError(f"{a} is not a unit in Z")
            return a
        if k == "rationals":
            return 1 / a
        if k == "prime":
            return pow(a, -1, self.p)
        # conj-free route: a^(p^2 - 2)
        return self.power(a, self.p * self.p - 2)

    def power(self, a, e: int):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        """Iterate all elements of a finite field (in a fixed order)."""
        if self.kind == "prime":
            return iter(range(self.p))
        if self.kind == "prime_square":
            return ((a0, a1) for a1 in range(self.p) for a0 in range(self.p))
        raise FieldSpecError(f"{self} is infinite")

    def format_scalar(self, a) -> Any:
        """JSON-friendly form of a scalar."""
        if self.kind == "rationals":
            return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        if self.kind == "prime_square":
            return [a[0], a[1]]
        return a


Q = FieldSpec.q()
Z = FieldSpec.z()
