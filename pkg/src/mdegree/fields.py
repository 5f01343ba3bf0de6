"""Exact scalar arithmetic over Q and F_p (p an odd prime).

Rationals are :class:`fractions.Fraction`; residues are :class:`Fp`.
A :class:`Field` is the context object that builds, parses and
classifies scalars.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import CharTwo, DivideByZero, FieldError, MixedContext, NotPrime, ZeroInput

WORD_LIMIT = 2**63 - 1


class Fp:
    """An element of the prime field F_p, stored as a residue in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise MixedContext(f"F{self.p} and F{other.p} scalars cannot be mixed")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def inverse(self) -> Fp:
        if self.value == 0:
            raise DivideByZero(f"division by zero in F{self.p}")
        return Fp(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Fp(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Fp(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Scalar = Union[Fraction, Fp]


# integer helpers

@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``|n|`` as sorted ``(prime, exponent)`` pairs."""
    n = abs(n)
    if n == 0:
        raise ZeroInput("cannot factor 0")
    out = []
    q = 2
    while q * q <= n and q < 100_000:
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out.append((q, e))
        q += 1 if q == 2 else 2
    if n > 1:
        if q * q > n or is_prime(n):
            out.append((n, 1))
        else:
            from sympy import factorint  # optional extra "factor"

            out.extend(sorted(factorint(n).items()))
    return tuple(sorted(out))


def prime_divisors(n: int) -> list[int]:
    return [q for q, _ in factorize(n)]


def squarefree_part(n: int) -> int:
    """Signed squarefree integer in the square class of the nonzero integer ``n``."""
    if n == 0:
        raise ZeroInput("zero has no square class")
    s = 1
    for q, e in factorize(n):
        if e % 2:
            s *= q
    return s if n > 0 else -s


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def sqrt_mod(a: int, p: int) -> int | None:
    """A square root of ``a`` modulo the odd prime ``p`` (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


_FIELD_RE = re.compile(r"^F(\d+)$")
_SCALAR_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


@dataclass(frozen=True)
class SquareClass:
    """Class of a nonzero scalar modulo nonzero squares."""

    rep: Scalar
    field: Field

    def __str__(self):
        return self.field.format_scalar(self.rep)


@dataclass(frozen=True)
class Field:
    """Coefficient field: ``Field("Q")`` or ``Field("F", p)``."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise FieldError("Q takes no modulus")
        elif self.kind == "F":
            if self.p is None:
                raise FieldError("prime field needs p")
            if self.p == 2:
                raise CharTwo()
            if not is_prime(self.p):
                raise NotPrime(self.p)
            if self.p > WORD_LIMIT:
                raise FieldError("p must fit in a machine word")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> Field:
        text = text.strip()
        if text == "Q":
            return RATIONALS
        m = _FIELD_RE.match(text)
        if not m:
            raise FieldError(f"field must be 'Q' or 'F<p>', got {text!r}")
        return cls("F", int(m.group(1)))

    def __str__(self):
        return "Q" if self.kind == "Q" else f"F{self.p}"

    @property
    def is_rational(self) -> bool:
        return self.kind == "Q"

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def __call__(self, value) -> Scalar:
        if self.kind == "Q":
            if isinstance(value, Fp):
                raise MixedContext("cannot embed a residue into Q")
            return Fraction(value)
        if isinstance(value, Fp):
            if value.p != self.p:
                raise MixedContext(f"F{value.p} scalar used in F{self.p}")
            return value
        if isinstance(value, Fraction):
            return Fp(value.numerator, self.p) / Fp(value.denominator, self.p)
        return Fp(int(value), self.p)

    def contains(self, a) -> bool:
        if self.kind == "Q":
            return isinstance(a, Fraction)
        return isinstance(a, Fp) and a.p == self.p

    # serialization

    def parse_scalar(self, text: str) -> Scalar:
        m = _SCALAR_RE.match(str(text))
        if not m:
            raise FieldError(f"bad scalar {text!r}")
        num, den = int(m.group(1)), m.group(2)
        if den is None:
            return self(num)
        if not self.is_rational:
            raise FieldError(f"rational literal {text!r} not allowed over {self}")
        if int(den) == 0:
            raise DivideByZero("zero denominator")
        return Fraction(num, int(den))

    def format_scalar(self, a: Scalar) -> str:
        return str(a)

    # square classes

    @property
    def nonresidue(self) -> Scalar | None:
        """Least positive quadratic non-residue (F_p only)."""
        if self.is_rational:
            return None
        return self(_least_nonresidue(self.p))

    def is_square(self, a: Scalar) -> bool:
        if not a:
            return True
        if self.is_rational:
            return a > 0 and _is_int_square(a.numerator) and _is_int_square(a.denominator)
        return legendre(a.value, self.p) == 1

    def sqrt(self, a: Scalar) -> Scalar | None:
        """Exact square root in the field, or None if ``a`` is not a square."""
        if self.is_rational:
            if not self.is_square(a):
                return None
            return Fraction(math.isqrt(a.numerator), math.isqrt(a.denominator))
        r = sqrt_mod(a.value, self.p)
        return None if r is None else self(r)

    def square_class(self, a: Scalar) -> SquareClass:
        a = self(a)
        if not a:
            raise ZeroInput("zero has no square class")
        if self.is_rational:
            return SquareClass(Fraction(squarefree_part(a.numerator * a.denominator)), self)
        return SquareClass(self.one if self.is_square(a) else self.nonresidue, self)


@lru_cache(maxsize=None)
def _least_nonresidue(p: int) -> int:
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


def _is_int_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


RATIONALS = Field("Q")


def make_field(spec) -> Field:
    """Build a field from ``"Q"``, ``"F<p>"``, an existing Field, or an odd prime."""
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, int):
        return Field("F", spec)
    return Field.parse(spec)


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if type(a) is not type(b):
        raise MixedContext("scalars from different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivideByZero("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")
