"""Validation and classification of endomorphisms of punctured affine space."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InfiniteQuotient, NotPuncturedEndo, NotUnimodular, ShapeError, UnimodularInput
from .fields import Scalar
from .groebner import (
    GroebnerBasis,
    Staircase,
    buchberger,
    contains_one,
    minimal_power_in_ideal,
    normal_form,
    quotient_staircase,
    radical_membership,
)
from .poly import DEFAULT_ORDER, Monomial, Order, Poly, PolyRing

# Machine-readable tags for the facts a run relies on.
CITE_RADICAL = "radical-validity"
CITE_DICHOTOMY = "unimodular-or-isolated-zero"
CITE_NULLHOMOTOPY = "unimodular-naive-nullhomotopy"
CITE_QUILLEN_SUSLIN = "quillen-suslin"
CITE_FINITE_LENGTH = "isolated-zero-finite-length"
CITE_EKL = "local-degree-is-ekl-form"
CITE_QSW = "quick-strand-wilson-hyperbolic-summand"
CITE_OBSTRUCTION = "non-realizability-obstruction"


class Flavor(str, enum.Enum):
    UNIMODULAR = "Unimodular"
    ISOLATED_ZERO = "IsolatedZero"


@dataclass(frozen=True)
class EndoCandidate:
    ring: PolyRing
    polys: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.polys) != self.ring.nvars:
            raise ShapeError(
                f"need exactly {self.ring.nvars} polynomials for {self.ring.nvars} variables, "
                f"got {len(self.polys)}"
            )
        for p in self.polys:
            if p.ring != self.ring:
                raise ShapeError("component polynomials must share the candidate's ring")

    @classmethod
    def from_strings(cls, field, vars: Sequence[str], polys: Sequence[str]) -> EndoCandidate:
        ring = PolyRing.make(field, vars)
        return cls(ring, tuple(ring.parse(t) for t in polys))

    @property
    def n(self) -> int:
        return self.ring.nvars

    @property
    def field(self):
        return self.ring.field


@dataclass(frozen=True)
class ValidatedEndo:
    candidate: EndoCandidate
    flavor: Flavor
    gb: GroebnerBasis
    radical_witnesses: tuple[bool, ...]
    warnings: tuple[str, ...] = ()

    @property
    def ring(self) -> PolyRing:
        return self.candidate.ring

    @property
    def polys(self) -> tuple[Poly, ...]:
        return self.candidate.polys


def validate(c: EndoCandidate, order=DEFAULT_ORDER) -> ValidatedEndo:
    """Check that the zero locus of ``c`` lies inside the origin.

    Each coordinate must lie in the radical of the ideal of the map; this is
    decided over the algebraic closure with the Rabinowitsch trick.
    """
    order = Order.parse(order)
    witnesses = []
    for i, x in enumerate(c.ring.gens()):
        ok = radical_membership(x, c.polys, order)
        if not ok:
            raise NotPuncturedEndo(i, c.ring.vars[i])
        witnesses.append(ok)
    gb = buchberger(c.polys, order)
    flavor = Flavor.UNIMODULAR if contains_one(gb) else Flavor.ISOLATED_ZERO
    warnings = ()
    if c.n == 1:
        warnings = ("n = 1: outside the n >= 2 range of the non-existence theorem",)
    return ValidatedEndo(c, flavor, gb, tuple(witnesses), warnings)


def classify_flavor(v: ValidatedEndo) -> Flavor:
    return Flavor.UNIMODULAR if contains_one(v.gb) else Flavor.ISOLATED_ZERO


def origin_is_zero(c: EndoCandidate) -> bool:
    return all(not p.eval_at_zero() for p in c.polys)


@dataclass(frozen=True)
class LocalAlgebra:
    """Quotient ``k[x]/<f>`` for a map whose only zero is the origin.

    Since the zero locus is exactly the origin the global quotient is
    already local, so the staircase of the ideal is a basis.
    """

    gb: GroebnerBasis
    staircase: Staircase
    mult: dict = field(repr=False, compare=False)

    @property
    def ring(self) -> PolyRing:
        return self.gb.ring

    @property
    def dim(self) -> int:
        return len(self.staircase)

    @property
    def basis(self) -> tuple[Monomial, ...]:
        return self.staircase.basis

    def basis_polys(self) -> list[Poly]:
        return [self.ring.monomial(m) for m in self.basis]

    def reduce(self, f: Poly) -> Poly:
        return normal_form(f, self.gb)

    def coords(self, f: Poly) -> list[Scalar]:
        """Coordinates of the class of ``f`` in the staircase basis."""
        r = self.reduce(f)
        zero = self.ring.field.zero
        return [r.terms.get(m, zero) for m in self.basis]

    def product(self, i: int, j: int) -> list[Scalar]:
        return self.mult[(min(i, j), max(i, j))]


def local_algebra(v: ValidatedEndo) -> LocalAlgebra:
    if v.flavor is Flavor.UNIMODULAR:
        raise UnimodularInput("the ideal is the unit ideal; the local algebra is zero")
    st = quotient_staircase(v.gb)
    if not st.finite:
        raise InfiniteQuotient("quotient is not finite-dimensional after validation")
    ring = v.ring
    polys = [ring.monomial(m) for m in st.basis]
    mult = {}
    for i in range(len(polys)):
        for j in range(i, len(polys)):
            r = normal_form(polys[i] * polys[j], v.gb)
            mult[(i, j)] = [r.terms.get(m, ring.field.zero) for m in st.basis]
    return LocalAlgebra(v.gb, st, mult)


def minimal_powers(v: ValidatedEndo) -> list[int]:
    """Least ``d_i`` with ``x_i^d_i`` in the ideal, for every coordinate."""
    st = quotient_staircase(v.gb)
    bound = len(st) + 1 if st.finite else None
    return [minimal_power_in_ideal(i, v.gb, bound) for i in range(v.ring.nvars)]


@dataclass(frozen=True)
class NullhomotopyReport:
    verdict: str
    extends_to_affine_space: bool
    citations: tuple[str, ...]
    explanation: str

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "extends_to_affine_space": self.extends_to_affine_space,
            "citations": list(self.citations),
            "explanation": self.explanation,
        }


def nullhomotopy_report(v: ValidatedEndo) -> NullhomotopyReport:
    if v.flavor is not Flavor.UNIMODULAR:
        raise NotUnimodular("the map has an isolated zero at the origin")
    return NullhomotopyReport(
        verdict="naively null-homotopic",
        extends_to_affine_space=True,
        citations=(CITE_NULLHOMOTOPY, CITE_QUILLEN_SUSLIN),
        explanation=(
            "the components generate the unit ideal, so the map extends to "
            "A^n -> A^n - 0; by Quillen-Suslin the unimodular row is naively "
            "A^1-homotopic to a constant map (no explicit homotopy is built)"
        ),
    )
