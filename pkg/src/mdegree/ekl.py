"""EKL forms via the Bezoutian of a map with an isolated zero at the origin.

For ``f = (f_1, ..., f_n)`` the divided-difference matrix satisfies
``D_ij * (X_j - Y_j) = f_i(Y_1..Y_{j-1}, X_j..X_n) - f_i(Y_1..Y_j, X_{j+1}..X_n)``.
Its determinant, reduced modulo ``<f(X)> + <f(Y)>``, is a tensor
``sum c_ml b_m(X) b_l(Y)`` over the staircase basis, and ``(c_ml)`` is a
Gram matrix of the local degree.
"""
from __future__ import annotations

from dataclasses import dataclass

from .endo import Flavor, LocalAlgebra, ValidatedEndo, local_algebra
from .errors import DegenerateForm, InternalDivisionFailure, UnimodularInput
from .fields import Field, Scalar
from .groebner import GroebnerBasis, normal_form
from .linalg import is_symmetric, rank
from .poly import Order, Poly, PolyRing, determinant


@dataclass(frozen=True)
class BezoutianMatrix:
    ring: PolyRing  # variables X_1..X_n, Y_1..Y_n
    entries: tuple[tuple[Poly, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)


def doubled_ring(ring: PolyRing) -> PolyRing:
    xs = tuple(f"X_{v}" for v in ring.vars)
    ys = tuple(f"Y_{v}" for v in ring.vars)
    return PolyRing(ring.field, xs + ys)


def _require_isolated(v: ValidatedEndo):
    if v.flavor is not Flavor.ISOLATED_ZERO:
        raise UnimodularInput("EKL data needs an isolated zero at the origin; the map is unimodular")


def divided_difference_matrix(v: ValidatedEndo) -> BezoutianMatrix:
    _require_isolated(v)
    ring = v.ring
    n = ring.nvars
    big = doubled_ring(ring)
    rows = []
    for f in v.polys:
        row = []
        for j in range(n):
            # variables before j are Y, from j on (resp. after j) are X
            left = f.embed(big, [n + k if k < j else k for k in range(n)])
            right = f.embed(big, [n + k if k <= j else k for k in range(n)])
            diff = big.gen(j) - big.gen(n + j)
            try:
                row.append((left - right).exquo(diff, Order.LEX))
            except ArithmeticError as exc:
                raise InternalDivisionFailure(f"divided difference ({j}) is not exact") from exc
        rows.append(tuple(row))
    return BezoutianMatrix(big, tuple(rows))


def telescopes(v: ValidatedEndo, d: BezoutianMatrix) -> bool:
    """Check ``sum_j D_ij (X_j - Y_j) = f_i(X) - f_i(Y)`` for every row."""
    n = v.ring.nvars
    big = d.ring
    for f, row in zip(v.polys, d.entries):
        fx = f.embed(big, list(range(n)))
        fy = f.embed(big, [n + k for k in range(n)])
        total = big.zero()
        for j, e in enumerate(row):
            total = total + e * (big.gen(j) - big.gen(n + j))
        if total != fx - fy:
            return False
    return True


def _two_sided_basis(v: ValidatedEndo, big: PolyRing) -> GroebnerBasis:
    # leading monomials of the two halves are coprime, so the union is a Groebner basis
    n = v.ring.nvars
    gb = v.gb
    xs = [g.embed(big, list(range(n))) for g in gb.elements]
    ys = [g.embed(big, [n + k for k in range(n)]) for g in gb.elements]
    return GroebnerBasis(big, tuple(xs + ys), gb.order, True)


@dataclass(frozen=True)
class Bezoutian:
    """Reduced Bezoutian as coefficients over ``basis (x) basis``."""

    algebra: LocalAlgebra
    coeffs: dict  # (m, l) -> Scalar, basis indices
    polynomial: Poly  # reduced determinant in the doubled ring

    def terms(self) -> list[tuple[int, int, Scalar]]:
        return sorted((m, l, c) for (m, l), c in self.coeffs.items())


def bezoutian(v: ValidatedEndo, algebra: LocalAlgebra | None = None) -> Bezoutian:
    algebra = algebra or local_algebra(v)
    d = divided_difference_matrix(v)
    big = d.ring
    two = _two_sided_basis(v, big)
    det = determinant([list(r) for r in d.entries], reduce=lambda p: normal_form(p, two))
    n = v.ring.nvars
    index = {m: i for i, m in enumerate(algebra.basis)}
    coeffs = {}
    for mono, c in det.terms.items():
        mx, my = mono[:n], mono[n:]
        if mx not in index or my not in index:
            raise InternalDivisionFailure("reduced Bezoutian left the staircase")
        coeffs[(index[mx], index[my])] = c
    return Bezoutian(algebra, coeffs, det)


@dataclass(frozen=True)
class EKLForm:
    gram: tuple[tuple[Scalar, ...], ...]
    algebra: LocalAlgebra

    @property
    def field(self) -> Field:
        return self.algebra.ring.field

    @property
    def dim(self) -> int:
        return len(self.gram)

    def matrix(self) -> list[list[Scalar]]:
        return [list(r) for r in self.gram]


def ekl_gram(v: ValidatedEndo, algebra: LocalAlgebra | None = None) -> EKLForm:
    """Gram matrix of the local A^1-degree at the origin."""
    algebra = algebra or local_algebra(v)
    bez = bezoutian(v, algebra)
    field = v.ring.field
    dim = algebra.dim
    gram = [[bez.coeffs.get((m, l), field.zero) for l in range(dim)] for m in range(dim)]
    if not is_symmetric(gram):
        raise DegenerateForm("Bezoutian Gram matrix is not symmetric")
    if rank(gram, field) != dim:
        raise DegenerateForm("Bezoutian Gram matrix is degenerate")
    return EKLForm(tuple(tuple(r) for r in gram), algebra)


def jacobian_determinant(v: ValidatedEndo) -> Poly:
    n = v.ring.nvars
    jac = [[f.partial(j) for j in range(n)] for f in v.polys]
    return determinant(jac)


def jacobian_consistency(v: ValidatedEndo, e: EKLForm) -> bool:
    """The Gram matrix evaluated on the diagonal must equal the Jacobian mod ``<f>``."""
    basis = e.algebra.basis_polys()
    ring = v.ring
    diag = ring.zero()
    for m, row in enumerate(e.gram):
        for l, c in enumerate(row):
            if c:
                diag = diag + (basis[m] * basis[l]).scale(c)
    return normal_form(diag, v.gb) == normal_form(jacobian_determinant(v), v.gb)
