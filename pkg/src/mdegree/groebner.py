"""Buchberger's algorithm, normal forms, membership tests and staircases."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import MixedContext, PowerNotFound
from .poly import DEFAULT_ORDER, Monomial, Order, Poly, PolyRing, divides, lcm_monomial


def ideal_gens(polys: Sequence[Poly]) -> list[Poly]:
    """Check a generator list shares one ring and drop zero generators."""
    polys = list(polys)
    if not polys:
        raise ValueError("an ideal needs at least one generator")
    ring = polys[0].ring
    for p in polys:
        if p.ring != ring:
            raise MixedContext("generators live in different rings")
    return [p for p in polys if p]


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    elements: tuple[Poly, ...]
    order: Order = DEFAULT_ORDER
    reduced: bool = True

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def normal_form(self, f: Poly) -> Poly:
        return normal_form(f, self)

    def contains(self, f: Poly) -> bool:
        return not normal_form(f, self)

    def contains_one(self) -> bool:
        return contains_one(self)

    def staircase(self) -> Staircase:
        return quotient_staircase(self)


@dataclass(frozen=True)
class Staircase:
    """Monomials outside the leading-term ideal; ``basis`` is empty when infinite."""

    basis: tuple[Monomial, ...]
    finite: bool

    def __len__(self):
        return len(self.basis)

    def index(self, m: Monomial) -> int:
        return self.basis.index(m)


def _prepared(basis: Sequence[Poly], order: Order):
    out = []
    for g in basis:
        lm, lc = g.leading_term(order)
        out.append((lm, 1 / lc, g))
    return out


def _reduce(f: Poly, prepared, order: Order) -> Poly:
    key = order.key
    rem = dict(f.terms)
    out = {}
    while rem:
        m = max(rem, key=key)
        c = rem.pop(m)
        for lm, inv, g in prepared:
            if all(a >= b for a, b in zip(m, lm)):
                q = c * inv
                shift = tuple(a - b for a, b in zip(m, lm))
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    t = tuple(a + b for a, b in zip(gm, shift))
                    v = rem.get(t)
                    v = -q * gc if v is None else v - q * gc
                    if v:
                        rem[t] = v
                    else:
                        del rem[t]
                break
        else:
            out[m] = c
    return Poly(f.ring, out)


def normal_form(f: Poly, gb: GroebnerBasis) -> Poly:
    """Remainder of ``f`` on division by ``gb``: no term divisible by a leading monomial."""
    if f.ring != gb.ring:
        raise MixedContext("polynomial and basis live in different rings")
    if not f or not gb.elements:
        return f
    return _reduce(f, _prepared(gb.elements, gb.order), gb.order)


def reduce_by(f: Poly, polys: Sequence[Poly], order: Order = DEFAULT_ORDER) -> Poly:
    """Multivariate division remainder of ``f`` by an arbitrary list."""
    if not f or not polys:
        return f
    return _reduce(f, _prepared(polys, order), order)


def spoly(f: Poly, g: Poly, order: Order = DEFAULT_ORDER) -> Poly:
    fm, fc = f.leading_term(order)
    gm, gc = g.leading_term(order)
    L = lcm_monomial(fm, gm)
    a = f.mul_term(tuple(x - y for x, y in zip(L, fm)), 1 / fc)
    b = g.mul_term(tuple(x - y for x, y in zip(L, gm)), 1 / gc)
    return a - b


def buchberger(gens: Sequence[Poly], order=DEFAULT_ORDER) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are selected by minimal lcm (ties broken by index); the product
    and chain criteria prune pairs. The result is monic and sorted by
    decreasing leading monomial.
    """
    order = Order.parse(order)
    polys = list(gens)
    if not polys:
        raise ValueError("an ideal needs at least one generator")
    ring = polys[0].ring
    polys = ideal_gens(polys)
    if not polys:
        return GroebnerBasis(ring, (), order, True)

    key = order.key
    G: list[Poly] = []
    LM: list[Monomial] = []
    pairs: set[tuple[int, int]] = set()

    def add(h: Poly):
        h = h.primitive(order)
        G.append(h)
        LM.append(h.leading_monomial(order))
        k = len(G) - 1
        for i in range(k):
            pairs.add((i, k))

    for p in polys:
        h = reduce_by(p, G, order)
        if h:
            add(h)
            if h.is_constant():
                return GroebnerBasis(ring, (ring.one(),), order, True)

    while pairs:
        i, j = min(pairs, key=lambda ij: (key(lcm_monomial(LM[ij[0]], LM[ij[1]])), ij[1], ij[0]))
        pairs.discard((i, j))
        L = lcm_monomial(LM[i], LM[j])
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(LM[i], LM[j])):
            continue
        # chain criterion
        if any(
            k != i and k != j
            and divides(LM[k], L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        h = reduce_by(spoly(G[i], G[j], order), G, order)
        if h:
            add(h)
            if h.is_constant():
                return GroebnerBasis(ring, (ring.one(),), order, True)

    return GroebnerBasis(ring, tuple(_interreduce(G, order)), order, True)


def _interreduce(G: list[Poly], order: Order) -> list[Poly]:
    key = order.key
    # minimal basis: drop elements whose leading monomial is a multiple of another's
    idx = sorted(range(len(G)), key=lambda i: (key(G[i].leading_monomial(order)), i))
    minimal: list[Poly] = []
    for i in idx:
        lm = G[i].leading_monomial(order)
        if not any(divides(g.leading_monomial(order), lm) for g in minimal):
            minimal.append(G[i])
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        r = reduce_by(g, others, order)
        out.append(r.monic(order))
    out.sort(key=lambda g: key(g.leading_monomial(order)), reverse=True)
    return out


def is_groebner(gb: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    els = gb.elements
    for a, b in itertools.combinations(els, 2):
        if normal_form(spoly(a, b, gb.order), gb):
            return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    order = gb.order
    lms = gb.leading_monomials
    for k, g in enumerate(gb.elements):
        if g.leading_term(order)[1] != 1:
            return False
        for j, lm in enumerate(lms):
            if j != k and any(divides(lm, m) for m in g.terms):
                return False
    return True


def contains_one(gb: GroebnerBasis) -> bool:
    return len(gb.elements) == 1 and gb.elements[0].is_constant()


def quotient_staircase(gb: GroebnerBasis) -> Staircase:
    """Monomial basis of ``k[x]/I``, sorted by degree then decreasing order."""
    n = gb.ring.nvars
    lms = gb.leading_monomials
    if contains_one(gb):
        return Staircase((), True)
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if m[i] and all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            return Staircase((), False)
        bounds.append(min(pure))
    mons = [
        m for m in itertools.product(*(range(b) for b in bounds))
        if not any(divides(lm, m) for lm in lms)
    ]
    mons.sort(key=gb.order.key, reverse=True)
    mons.sort(key=sum)
    return Staircase(tuple(mons), True)


def radical_membership(g: Poly, gens: Sequence[Poly], order=DEFAULT_ORDER) -> bool:
    """Decide ``g`` in the radical of ``<gens>`` via 1 in ``<gens, 1 - t*g>``."""
    if not g:
        raise ValueError("g must be nonzero")
    gens = ideal_gens(gens) if gens else []
    ring = g.ring
    ext = ring.extend("t")
    n = ring.nvars
    emb = list(range(n))
    t = ext.gen(n)
    lifted = [f.embed(ext, emb) for f in gens]
    lifted.append(ext.one() - t * g.embed(ext, emb))
    return contains_one(buchberger(lifted, order))


def minimal_power_in_ideal(i: int, gb: GroebnerBasis, bound: int | None = None) -> int:
    """Least ``d <= bound`` with ``x_i^d`` in the ideal.

    The default bound is ``dim + 1`` for a finite quotient and 64 otherwise.
    """
    ring = gb.ring
    x = ring.gen(i)
    if bound is None:
        st = quotient_staircase(gb)
        bound = len(st) + 1 if st.finite else 64
    p = ring.one()
    for d in range(bound + 1):
        if not normal_form(p, gb):
            return d
        p = p * x
    raise PowerNotFound(f"no power of {ring.vars[i]} up to {bound} lies in the ideal")
