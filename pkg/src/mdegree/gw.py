"""Symmetric bilinear forms over Q and F_p up to isometry.

Diagonalization, Hilbert symbols, Hasse invariants, isotropy, Witt
decomposition and Grothendieck-Witt equality. Over Q the classification
uses rank, signature, discriminant and Hasse invariants at every place;
over F_p rank and discriminant suffice.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateForm, FieldMismatch, FieldTooLarge, RankTooLarge, ZeroInput
from .fields import RATIONALS, Field, Scalar, SquareClass, legendre, make_field, prime_divisors, squarefree_part
from .linalg import identity, is_symmetric

INF = "inf"
BRUTE_FORCE_MAX_P = 97
BRUTE_FORCE_MAX_RANK = 4


@dataclass(frozen=True)
class SymForm:
    gram: tuple[tuple[Scalar, ...], ...]
    field: Field

    def __post_init__(self):
        n = len(self.gram)
        if any(len(r) != n for r in self.gram):
            raise ValueError("Gram matrix must be square")
        if not is_symmetric(self.gram):
            raise ValueError("Gram matrix must be symmetric")

    @classmethod
    def from_rows(cls, rows, field) -> SymForm:
        field = make_field(field)
        conv = tuple(tuple(_to_scalar(x, field) for x in r) for r in rows)
        return cls(conv, field)

    @property
    def size(self) -> int:
        return len(self.gram)


@dataclass(frozen=True)
class DiagonalForm:
    entries: tuple[Scalar, ...]
    field: Field

    def __post_init__(self):
        if any(not a for a in self.entries):
            raise ZeroInput("diagonal entries must be nonzero")

    @classmethod
    def of(cls, entries, field=RATIONALS) -> DiagonalForm:
        field = make_field(field)
        return cls(tuple(_to_scalar(a, field) for a in entries), field)

    @classmethod
    def parse(cls, text: str, field=RATIONALS) -> DiagonalForm:
        """Parse ``"<1,-1>"``, ``"1,-1"`` or ``"<>"``."""
        field = make_field(field)
        body = text.strip()
        if body.startswith("<") and body.endswith(">"):
            body = body[1:-1]
        parts = [p for p in (s.strip() for s in body.split(",")) if p]
        return cls(tuple(field.parse_scalar(p) for p in parts), field)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def det(self) -> Scalar:
        d = self.field.one
        for a in self.entries:
            d = d * a
        return d

    def __add__(self, other: DiagonalForm) -> DiagonalForm:
        _same_field(self, other)
        return DiagonalForm(self.entries + other.entries, self.field)

    def gram(self) -> list[list[Scalar]]:
        f = self.field
        n = self.rank
        return [[self.entries[i] if i == j else f.zero for j in range(n)] for i in range(n)]

    def __str__(self):
        return "<" + ", ".join(self.field.format_scalar(a) for a in self.entries) + ">"


def _to_scalar(x, field: Field) -> Scalar:
    if isinstance(x, str):
        return field.parse_scalar(x)
    return field(x)


def _same_field(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"forms over {a.field} and {b.field}")


def hyperbolic(field=RATIONALS) -> DiagonalForm:
    return DiagonalForm.of([1, -1], field)


def tensor(d1: DiagonalForm, d2: DiagonalForm) -> DiagonalForm:
    """Tensor product of diagonal forms."""
    _same_field(d1, d2)
    return DiagonalForm(tuple(a * b for a in d1.entries for b in d2.entries), d1.field)


# diagonalization

def diagonalize_with_transform(form: SymForm) -> tuple[DiagonalForm, list[list[Scalar]]]:
    """Return ``(D, P)`` with ``P^T G P = diag(D)``.

    Pivots prefer the first nonzero diagonal entry; failing that the first
    nonzero off-diagonal ``(i, j)`` is made a pivot via ``e_i <- e_i + e_j``.
    Entries are rescaled to their square-class representatives.
    """
    F = form.field
    n = form.size
    a = [list(r) for r in form.gram]
    p = identity(n, F)

    def swap(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in p:
            r[i], r[j] = r[j], r[i]

    def add_to(i, j, c):
        # e_i <- e_i + c e_j
        for k in range(n):
            a[i][k] = a[i][k] + c * a[j][k]
        for k in range(n):
            a[k][i] = a[k][i] + c * a[k][j]
        for r in p:
            r[i] = r[i] + c * r[j]

    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i]), None)
        if piv is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j]), None)
            if off is None:
                raise DegenerateForm(f"form has rank {k} < {n}")
            i, j = off
            add_to(i, j, F.one)
            piv = i
        swap(k, piv)
        inv = 1 / a[k][k]
        for r in range(k + 1, n):
            if a[r][k]:
                add_to(r, k, -a[r][k] * inv)

    entries = []
    for k in range(n):
        d = a[k][k]
        rep = F.square_class(d).rep
        s = F.sqrt(d / rep)
        for r in p:
            r[k] = r[k] / s
        entries.append(rep)
    return DiagonalForm(tuple(entries), F), p


def diagonalize(form: SymForm) -> DiagonalForm:
    return diagonalize_with_transform(form)[0]


def as_diagonal(form) -> DiagonalForm:
    return form if isinstance(form, DiagonalForm) else diagonalize(form)


# local symbols over Q

def _rat_to_int(a) -> int:
    a = Fraction(a)
    if not a:
        raise ZeroInput("Hilbert symbol of zero")
    return squarefree_part(a.numerator * a.denominator)


def _split(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def hilbert_symbol(a, b, place) -> int:
    """Hilbert symbol ``(a, b)_v`` of nonzero rationals at ``place`` (``"inf"`` or a prime)."""
    a, b = _rat_to_int(a), _rat_to_int(b)
    return _hilbert(a, b, place)


def _hilbert(a: int, b: int, place) -> int:
    if place == INF:
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        e = ((u - 1) // 2 % 2) * ((v - 1) // 2 % 2)
        e += alpha * ((v * v - 1) // 8 % 2) + beta * ((u * u - 1) // 8 % 2)
        return -1 if e % 2 else 1
    s = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        s *= legendre(u, p)
    if alpha % 2:
        s *= legendre(v, p)
    return s


def _local_square(d: int, place) -> bool:
    """Whether the squarefree integer ``d`` is a square in Q_v."""
    if place == INF:
        return d > 0
    p = int(place)
    if d % p == 0:
        return False
    if p == 2:
        return d % 8 == 1
    return legendre(d, p) == 1


def hasse_invariant(d: DiagonalForm, place) -> int:
    """Product of ``(a_i, a_j)_v`` over ``i < j``; +1 for rank at most 1."""
    ints = [_rat_to_int(a) for a in d.entries]
    return _hasse(ints, place)


def _hasse(ints: Sequence[int], place) -> int:
    s = 1
    for i in range(len(ints)):
        for j in range(i + 1, len(ints)):
            s *= _hilbert(ints[i], ints[j], place)
    return s


def bad_places(d: DiagonalForm) -> list:
    """``inf``, 2, and the odd primes dividing a square-class-reduced entry.

    Hasse invariants are +1 at every other place.
    """
    primes = {2}
    for a in d.entries:
        primes.update(prime_divisors(_rat_to_int(a)))
    return [INF] + sorted(primes)


# invariant tuples

@dataclass(frozen=True)
class _QInv:
    rank: int
    det: int  # squarefree
    neg: int  # number of negative entries
    eps: tuple  # sorted ((place, +-1), ...) over the place set

    @property
    def places(self):
        return [v for v, _ in self.eps]

    def eps_at(self, v) -> int:
        for w, s in self.eps:
            if w == v:
                return s
        return 1


def _place_key(v):
    return (0, 0) if v == INF else (1, v)


def _make_eps(d: dict) -> tuple:
    return tuple(sorted(d.items(), key=lambda t: _place_key(t[0])))


def _q_invariants(ints: Sequence[int]) -> _QInv:
    primes = {2}
    for a in ints:
        primes.update(prime_divisors(a))
    pl = [INF] + sorted(primes)
    det = 1
    for a in ints:
        det *= a
    det = squarefree_part(det) if ints else 1
    neg = sum(1 for a in ints if a < 0)
    eps = {v: _hasse(ints, v) for v in pl}
    # canonical places: inf, 2, primes of the determinant, and wherever eps = -1
    keep = {INF, 2} | set(prime_divisors(det)) | {v for v, s in eps.items() if s == -1}
    return _QInv(len(ints), det, neg, _make_eps({v: s for v, s in eps.items() if v in keep}))


def _q_local_isotropic(inv: _QInv, v) -> bool:
    r, d = inv.rank, inv.det
    if v == INF:
        return 0 < inv.neg < r
    e = inv.eps_at(v)
    if r == 2:
        return _local_square(squarefree_part(-d), v)
    if r == 3:
        return _hilbert(-1, -d, v) == e
    if r == 4:
        return (not _local_square(d, v)) or e == _hilbert(-1, -1, v)
    return True


def _q_isotropic(inv: _QInv) -> bool:
    if inv.rank <= 1:
        return False
    if inv.rank == 2:
        return inv.det == -1
    return all(_q_local_isotropic(inv, v) for v in inv.places)


def _q_peel(inv: _QInv) -> _QInv:
    d = squarefree_part(-inv.det)
    eps = {v: s * _hilbert(-1, d, v) for v, s in inv.eps}
    return _QInv(inv.rank - 2, d, inv.neg - 1, _make_eps(eps))


def _q_realizable(inv: _QInv) -> bool:
    r, d, neg = inv.rank, inv.det, inv.neg
    signs = [s for _, s in inv.eps]
    if r == 0:
        return d == 1 and neg == 0 and all(s == 1 for s in signs)
    if not 0 <= neg <= r:
        return False
    if (d < 0) != (neg % 2 == 1):
        return False
    if inv.eps_at(INF) != (-1 if (neg * (neg - 1) // 2) % 2 else 1):
        return False
    prod = 1
    for s in signs:
        prod *= s
    if prod != 1:
        return False
    if r == 1:
        return all(s == 1 for s in signs)
    if r == 2:
        return all(s == 1 for v, s in inv.eps if _local_square(squarefree_part(-d), v))
    return True


def _aux_primes(exclude, count) -> list[int]:
    out = []
    q = 3
    while len(out) < count:
        if q not in exclude and all(q % k for k in range(3, int(q**0.5) + 1, 2)):
            out.append(q)
        q += 2
    return out


def _candidates(inv: _QInv, aux: int) -> list[int]:
    finite = [v for v in inv.places if v != INF]
    pool = finite + _aux_primes(set(finite), aux)
    vals = set()
    for k in range(0, min(len(pool), 4) + 1):
        for combo in itertools.combinations(pool, k):
            m = 1
            for q in combo:
                m *= q
            vals.add(m)
            vals.add(-m)
    return sorted(vals, key=lambda x: (abs(x), x < 0))


def _q_realize(inv: _QInv, aux: int = 2) -> list[int]:
    """A diagonal form (squarefree integers) with the given invariants."""
    if inv.rank == 0:
        return []
    if inv.rank == 1:
        return [inv.det]
    for budget in (aux, aux + 3, aux + 8):
        for a in _candidates(inv, budget):
            if a < 0 and inv.neg == 0 or a > 0 and inv.neg == inv.rank:
                continue
            d1 = squarefree_part(inv.det * a)
            places = set(inv.places) | set(prime_divisors(a))
            eps = {v: inv.eps_at(v) * _hilbert(a, d1, v) for v in places}
            rest = _QInv(inv.rank - 1, d1, inv.neg - (a < 0), _make_eps(eps))
            if _q_realizable(rest):
                return [a] + _q_realize(rest, aux)
    raise RuntimeError(f"could not realize invariants {inv}")


@dataclass(frozen=True)
class _FpInv:
    rank: int
    det: Scalar


def _fp_isotropic(inv: _FpInv, F: Field) -> bool:
    if inv.rank <= 1:
        return False
    if inv.rank == 2:
        return F.is_square(-inv.det)
    return True


# public classification API

def _is_q(d: DiagonalForm) -> bool:
    return d.field.is_rational


def isotropic(d: DiagonalForm) -> bool:
    """Whether the form has a nontrivial zero (equivalently, contains H)."""
    if _is_q(d):
        return _q_isotropic(_q_invariants([_rat_to_int(a) for a in d.entries]))
    return _fp_isotropic(_FpInv(d.rank, d.det()), d.field)


def witt_decompose(d: DiagonalForm) -> tuple[int, DiagonalForm]:
    """Split off hyperbolic planes on invariant tuples; return ``(index, anisotropic part)``."""
    F = d.field
    k = 0
    if _is_q(d):
        inv = _q_invariants([_rat_to_int(a) for a in d.entries])
        while _q_isotropic(inv):
            inv = _q_peel(inv)
            k += 1
        return k, DiagonalForm.of(_q_realize(inv), F)
    inv = _FpInv(d.rank, d.det())
    while _fp_isotropic(inv, F):
        inv = _FpInv(inv.rank - 2, -inv.det)
        k += 1
    if inv.rank == 0:
        entries = []
    elif inv.rank == 1:
        entries = [F.square_class(inv.det).rep]
    else:
        entries = [F.one, F.square_class(inv.det).rep]
    return k, DiagonalForm(tuple(entries), F)


def discriminant(d: DiagonalForm) -> SquareClass:
    """Square class of ``(-1)^(r(r-1)/2) det``."""
    r = d.rank
    sign = -1 if (r * (r - 1) // 2) % 2 else 1
    return d.field.square_class(d.det() * sign)


def signature(d: DiagonalForm) -> int:
    if not _is_q(d):
        raise FieldMismatch("signature is defined over Q only")
    return sum(1 if a > 0 else -1 for a in d.entries)


@dataclass(frozen=True)
class GWInvariants:
    field: Field
    rank: int
    disc: SquareClass
    witt_index: int
    anisotropic_part: DiagonalForm
    signature: int | None = None
    hasse: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "rank": self.rank,
            "disc": str(self.disc),
            "witt_index": self.witt_index,
            "anisotropic": [self.field.format_scalar(a) for a in self.anisotropic_part.entries],
        }
        if self.signature is not None:
            out["signature"] = self.signature
            out["hasse"] = {str(v): s for v, s in sorted(self.hasse.items(), key=lambda t: _place_key(t[0]))}
        return out


def gw_invariants(form) -> GWInvariants:
    d = as_diagonal(form)
    k, aniso = witt_decompose(d)
    if _is_q(d):
        hasse = dict(_q_invariants([_rat_to_int(a) for a in d.entries]).eps)
        return GWInvariants(d.field, d.rank, discriminant(d), k, aniso, signature(d), hasse)
    return GWInvariants(d.field, d.rank, discriminant(d), k, aniso)


def gw_equal(d1, d2) -> bool:
    """Equality of classes in GW(k) via a complete set of invariants."""
    d1, d2 = as_diagonal(d1), as_diagonal(d2)
    _same_field(d1, d2)
    if d1.rank != d2.rank:
        return False
    if discriminant(d1).rep != discriminant(d2).rep:
        return False
    if not _is_q(d1):
        return True
    if signature(d1) != signature(d2):
        return False
    places = set(bad_places(d1)) | set(bad_places(d2))
    return all(hasse_invariant(d1, v) == hasse_invariant(d2, v) for v in places)


# brute-force oracle

def brute_force_isotropic_fp(d: DiagonalForm, p: int | None = None) -> bool:
    """Exhaustive search of F_p^r for a nonzero vector with ``sum a_i x_i^2 = 0``."""
    F = d.field
    if F.is_rational:
        raise FieldMismatch("brute force is for prime fields only")
    if p is not None and p != F.p:
        raise FieldMismatch(f"form is over F{F.p}, not F{p}")
    p = F.p
    if p > BRUTE_FORCE_MAX_P:
        raise FieldTooLarge(f"p = {p} exceeds {BRUTE_FORCE_MAX_P}")
    r = d.rank
    if r > BRUTE_FORCE_MAX_RANK:
        raise RankTooLarge(f"rank {r} exceeds {BRUTE_FORCE_MAX_RANK}")
    if r == 0:
        return False
    a = [x.value for x in d.entries]
    squares = {x * x % p for x in range(p)}
    last_inv = pow(a[-1], -1, p)
    for xs in itertools.product(range(p), repeat=r - 1):
        val = sum(c * x * x for c, x in zip(a, xs)) % p
        if val == 0:
            if any(xs):
                return True
            continue
        if (-val * last_inv) % p in squares:
            return True
    return False


# obstruction

@dataclass(frozen=True)
class ObstructionVerdict:
    obstructed: bool
    reason: str
    rank: int
    witt_index: int
    field: Field
    target: DiagonalForm
    citations: tuple[str, ...]
    field_sensitive: bool = False
    note: str = ""

    @property
    def status(self) -> str:
        return "Obstructed" if self.obstructed else "NotObstructed"

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "reason": self.reason,
            "rank": self.rank,
            "witt_index": self.witt_index,
            "field": str(self.field),
            "target": [self.field.format_scalar(a) for a in self.target.entries],
            "citations": list(self.citations),
            "field_sensitive": self.field_sensitive,
        }
        if self.note:
            out["note"] = self.note
        return out


def ekl_obstruction(target) -> ObstructionVerdict:
    """Decide whether ``target`` can be the local degree of a map with an isolated zero.

    EKL forms of rank at least 2 contain a hyperbolic plane, so an
    anisotropic class of rank >= 2 is never such a degree.
    """
    from .endo import CITE_EKL, CITE_OBSTRUCTION, CITE_QSW

    d = as_diagonal(target)
    k, _ = witt_decompose(d)
    cites = (CITE_EKL, CITE_QSW)
    if d.rank <= 1:
        return ObstructionVerdict(False, "rank <= 1", d.rank, k, d.field, d, cites)
    if k >= 1:
        sensitive = not d.field.is_rational and all(d.field.is_square(a) for a in d.entries)
        note = ""
        if sensitive:
            note = (
                f"over {d.field} a sum of {d.rank} squares is isotropic, so this class "
                "contains H and the hyperbolic-summand criterion does not exclude it"
            )
        return ObstructionVerdict(False, "contains H", d.rank, k, d.field, d, cites, sensitive, note)
    return ObstructionVerdict(
        True,
        "anisotropic of rank >= 2: every EKL form of rank >= 2 contains H",
        d.rank,
        k,
        d.field,
        d,
        cites + (CITE_OBSTRUCTION,),
    )


def parse_form(text: str, field=RATIONALS):
    """Parse a diagonal ``"<a,b,...>"`` or a JSON Gram matrix ``"[[..],[..]]"``."""
    field = make_field(field)
    s = text.strip()
    if s.startswith("["):
        rows = json.loads(s)
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValueError("Gram matrix must be a JSON array of arrays")
        return SymForm.from_rows([[str(x) for x in r] for r in rows], field)
    return DiagonalForm.parse(s, field)
