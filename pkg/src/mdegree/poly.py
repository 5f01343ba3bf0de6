"""Sparse multivariate polynomials with dense exponent vectors."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import DegreeOverflow, IndexOutOfRange, MixedContext, ZeroPolynomial
from .fields import Field, Scalar, make_field

EXPONENT_LIMIT = 2**31 - 1

Monomial = tuple  # tuple[int, ...]


class Order(enum.Enum):
    LEX = "lex"
    DEGREVLEX = "degrevlex"

    @classmethod
    def parse(cls, value) -> Order:
        if isinstance(value, Order):
            return value
        return cls(str(value).lower())

    def key(self, m: Monomial):
        """Sort key: larger key means larger monomial."""
        if self is Order.LEX:
            return m
        return (sum(m),) + tuple(-e for e in reversed(m))


DEFAULT_ORDER = Order.DEGREVLEX


@dataclass(frozen=True)
class PolyRing:
    field: Field
    vars: tuple[str, ...]

    def __post_init__(self):
        if not self.vars:
            raise ValueError("at least one variable is required")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")

    @classmethod
    def make(cls, field, vars: Iterable[str]) -> PolyRing:
        return cls(make_field(field), tuple(vars))

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def const(self, c) -> Poly:
        return self.monomial((0,) * self.nvars, c)

    def monomial(self, exps: Sequence[int], c=1) -> Poly:
        c = self.field(c)
        return Poly(self, {tuple(exps): c} if c else {})

    def gen(self, i: int) -> Poly:
        if not 0 <= i < self.nvars:
            raise IndexOutOfRange(f"variable index {i} out of range")
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    def gens(self) -> list[Poly]:
        return [self.gen(i) for i in range(self.nvars)]

    def index(self, name: str) -> int:
        return self.vars.index(name)

    def parse(self, text: str) -> Poly:
        from .parser import parse_poly

        return parse_poly(text, self)

    def extend(self, name: str) -> PolyRing:
        """Ring with one fresh variable appended."""
        while name in self.vars:
            name = name + "_"
        return PolyRing(self.field, self.vars + (name,))


class Poly:
    """Polynomial over a :class:`PolyRing`; immutable by convention.

    ``terms`` maps exponent tuples to nonzero field scalars.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Scalar]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    # construction helpers

    def _new(self, terms):
        p = Poly.__new__(Poly)
        p.ring = self.ring
        p.terms = terms
        return p

    def _check(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise MixedContext(f"polynomials over {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int,)) or self.ring.field.contains(other):
            return self.ring.const(other)
        return NotImplemented

    # arithmetic

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self._new({})
        if _max_exp(self) + _max_exp(other) > EXPONENT_LIMIT:
            _check_product_overflow(self, other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m)
                out[m] = c1 * c2 if s is None else s + c1 * c2
        return self._new({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        if e and self.terms and _max_exp(self) * e > EXPONENT_LIMIT:
            raise DegreeOverflow(f"exponent exceeds {EXPONENT_LIMIT}")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> Poly:
        c = self.ring.field(c)
        if not c:
            return self._new({})
        return self._new({m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> Poly:
        """Multiply by the single term ``c * x^mono``."""
        return self._new({tuple(a + b for a, b in zip(m, mono)): v * c for m, v in self.terms.items()})

    # comparison

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def sorted_terms(self, order: Order = DEFAULT_ORDER) -> list[tuple[Monomial, Scalar]]:
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: Order = DEFAULT_ORDER) -> tuple[Monomial, Scalar]:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        key = order.key
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def leading_monomial(self, order: Order = DEFAULT_ORDER) -> Monomial:
        return self.leading_term(order)[0]

    def coeff(self, mono: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(mono), self.ring.field.zero)

    def eval_at_zero(self) -> Scalar:
        return self.coeff((0,) * self.ring.nvars)

    def evaluate(self, point: Sequence) -> Scalar:
        f = self.ring.field
        total = f.zero
        pt = [f(v) for v in point]
        for m, c in self.terms.items():
            t = c
            for v, e in zip(pt, m):
                if e:
                    t = t * v**e
            total = total + t
        return total

    def partial(self, i: int) -> Poly:
        """Formal partial derivative with respect to variable ``i`` (0-based)."""
        if not 0 <= i < self.ring.nvars:
            raise IndexOutOfRange(f"variable index {i} out of range for {self.ring.nvars} variables")
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                d = c * e
                if d:
                    out[m[:i] + (e - 1,) + m[i + 1:]] = d
        return self._new(out)

    def monic(self, order: Order = DEFAULT_ORDER) -> Poly:
        if not self.terms:
            return self
        _, lc = self.leading_term(order)
        inv = 1 / lc
        return self._new({m: c * inv for m, c in self.terms.items()})

    def primitive(self, order: Order = DEFAULT_ORDER) -> Poly:
        """Over Q: integer coefficients with content 1 and positive leading coefficient.

        Over F_p this is :meth:`monic`.
        """
        if not self.terms:
            return self
        if not self.ring.field.is_rational:
            return self.monic(order)
        from fractions import Fraction
        from math import gcd, lcm

        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        nums = [int(c * den) for c in self.terms.values()]
        g = 0
        for n in nums:
            g = gcd(g, n)
        _, lc = self.leading_term(order)
        if lc < 0:
            g = -g
        return self._new({m: Fraction(n, g) for m, n in zip(self.terms, nums)})

    def embed(self, ring: PolyRing, index_map: Sequence[int]) -> Poly:
        """Rename variables: variable ``i`` of this ring becomes ``index_map[i]`` of ``ring``."""
        if ring.field != self.ring.field:
            raise MixedContext("embedding across fields")
        n = ring.nvars
        out: dict = {}
        for m, c in self.terms.items():
            e = [0] * n
            for i, a in enumerate(m):
                if a:
                    e[index_map[i]] += a
            t = tuple(e)
            s = out.get(t)
            out[t] = c if s is None else s + c
        return Poly(ring, out)

    def compose(self, values: Sequence[Poly]) -> Poly:
        """Substitute ``values[i]`` for variable ``i``."""
        if len(values) != self.ring.nvars:
            raise IndexOutOfRange("need one value per variable")
        target = values[0].ring
        total = target.zero()
        for m, c in self.terms.items():
            t = target.const(c)
            for v, e in zip(values, m):
                if e:
                    t = t * v**e
            total = total + t
        return total

    def exquo(self, divisor: Poly, order: Order = Order.LEX) -> Poly:
        """Exact quotient; raises ArithmeticError if ``divisor`` does not divide ``self``."""
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = divisor.leading_term(order)
        inv = 1 / lc
        key = order.key
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            m = max(rem, key=key)
            c = rem[m]
            if not all(a >= b for a, b in zip(m, lm)):
                raise ArithmeticError("inexact polynomial division")
            qm = tuple(a - b for a, b in zip(m, lm))
            qc = c * inv
            quot[qm] = qc
            for dm, dc in divisor.terms.items():
                t = tuple(a + b for a, b in zip(dm, qm))
                v = rem.get(t)
                v = -qc * dc if v is None else v - qc * dc
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return self._new(quot)

    # printing

    def format(self, order: Order = DEFAULT_ORDER) -> str:
        if not self.terms:
            return "0"
        names = self.ring.vars
        parts = []
        for m, c in self.sorted_terms(order):
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            neg = self.ring.field.is_rational and c < 0
            mag = -c if neg else c
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r}, vars={self.ring.vars}, field={self.ring.field})"


def _max_exp(p: Poly) -> int:
    return max((max(m) for m in p.terms), default=0)


def _check_product_overflow(f: Poly, g: Poly) -> None:
    n = f.ring.nvars
    for i in range(n):
        a = max(m[i] for m in f.terms)
        b = max(m[i] for m in g.terms)
        if a + b > EXPONENT_LIMIT:
            raise DegreeOverflow(f"exponent exceeds {EXPONENT_LIMIT}")


def poly_arith(f: Poly, g: Poly, op: str) -> Poly:
    if f.ring != g.ring:
        raise MixedContext("polynomials from different rings")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def leading_term(f: Poly, order=DEFAULT_ORDER) -> tuple[Monomial, Scalar]:
    return f.leading_term(Order.parse(order))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm_monomial(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def determinant(matrix: list[list[Poly]], reduce=None) -> Poly:
    """Determinant by cofactor expansion, memoised on column subsets.

    ``reduce`` is applied to every partial minor so intermediates stay small.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    ring = matrix[0][0].ring
    red = reduce or (lambda p: p)
    memo: dict[int, Poly] = {}

    # minor over rows k..n-1 and the columns in `cols` (bitmask)
    def minor(k: int, cols: int) -> Poly:
        if k == n:
            return ring.one()
        hit = memo.get(cols)
        if hit is not None:
            return hit
        total = ring.zero()
        sign = 1
        for j in range(n):
            if cols >> j & 1:
                entry = matrix[k][j]
                if entry:
                    sub = minor(k + 1, cols & ~(1 << j))
                    term = red(entry * sub)
                    total = total + term if sign > 0 else total - term
                sign = -sign
        memo[cols] = total
        return total

    return minor(0, (1 << n) - 1)
