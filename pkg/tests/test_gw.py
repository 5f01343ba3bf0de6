import itertools
import random
from fractions import Fraction

import pytest

from mdegree.errors import DegenerateForm, FieldMismatch, FieldTooLarge, RankTooLarge
from mdegree.fields import make_field, prime_divisors, squarefree_part
from mdegree.gw import (
    INF,
    DiagonalForm,
    SymForm,
    bad_places,
    brute_force_isotropic_fp,
    diagonalize,
    diagonalize_with_transform,
    ekl_obstruction,
    gw_equal,
    gw_invariants,
    hasse_invariant,
    hilbert_symbol,
    hyperbolic,
    isotropic,
    parse_form,
    witt_decompose,
)
from mdegree.linalg import congruent, det


def D(text, field="Q"):
    return DiagonalForm.parse(text, field)


def sym(rows, field="Q"):
    return SymForm.from_rows(rows, field)


def _hilbert_oracle(a, b, p):
    """Solvability of z^2 = a x^2 + b y^2 by exhaustive search of primitive solutions mod p^k.

    For squarefree a, b a primitive solution mod p^3 (p odd) or 2^5 lifts by Hensel.
    """
    if p == INF:
        return -1 if a < 0 and b < 0 else 1
    M = p ** (5 if p == 2 else 3)
    squares = {x * x % M for x in range(M)}
    for x in range(M):
        for y in range(M):
            if x % p or y % p:
                if (a * x * x + b * y * y) % M in squares:
                    return 1
    return -1


def test_diagonalize_examples():
    d = diagonalize(sym([[0, 1], [1, 0]]))
    assert d.entries == (2, -2)
    assert gw_equal(d, D("<1,-1>"))
    assert diagonalize(sym([[1, 0], [0, 1]])).entries == (1, 1)
    with pytest.raises(DegenerateForm):
        diagonalize(sym([[0, 0], [0, 1]]))


def test_diagonalize_transform():
    rng = random.Random(5)
    for field in ("Q", "F7", "F3"):
        F = make_field(field)
        for _ in range(40):
            n = rng.randint(1, 4)
            g = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    g[i][j] = g[j][i] = rng.randint(-3, 3)
            form = sym(g, field)
            if det(form.gram, F) == 0:
                with pytest.raises(DegenerateForm):
                    diagonalize(form)
                continue
            d, p = diagonalize_with_transform(form)
            assert det(p, F) != 0
            assert congruent(form.gram, p) == d.gram()


@pytest.mark.parametrize("a,b,place,expected", [
    (-1, -1, INF, -1),
    (-1, -1, 2, -1),
    (2, 7, 7, 1),
])
def test_hilbert_examples(a, b, place, expected):
    assert hilbert_symbol(a, b, place) == expected


def test_hilbert_matches_exhaustive_solvability():
    vals = sorted({squarefree_part(v) for v in range(-21, 22) if v})
    for p in (INF, 2, 3, 5, 7):
        for a, b in itertools.product(vals[::2], vals[::3]):
            assert hilbert_symbol(a, b, p) == _hilbert_oracle(a, b, p), (a, b, p)


def test_hilbert_symmetry_bilinearity_product_formula():
    rng = random.Random(9)
    for _ in range(200):
        a, b1, b2 = (Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 20)) for _ in range(3))
        places = {INF, 2}
        for q in (a, b1, b2):
            places.update(prime_divisors(q.numerator * q.denominator))
        prod = 1
        for v in places:
            assert hilbert_symbol(a, b1, v) == hilbert_symbol(b1, a, v)
            assert hilbert_symbol(a, b1 * b2, v) == hilbert_symbol(a, b1, v) * hilbert_symbol(a, b2, v)
            prod *= hilbert_symbol(a, b1, v)
        assert prod == 1


def test_hasse_examples():
    for v in (INF, 2, 3, 7):
        assert hasse_invariant(D("<1,1>"), v) == 1
    assert hasse_invariant(D("<-1,-1>"), INF) == -1
    assert hasse_invariant(D("<2,7>"), 7) == 1
    assert hasse_invariant(D("<5>"), 5) == 1


def test_isotropic_examples():
    assert isotropic(D("<1,-1>"))
    assert not isotropic(D("<1,1>"))
    assert isotropic(D("<1,1>", "F5"))
    assert not isotropic(D("<1,1>", "F3"))
    assert not isotropic(D("<1,1,1>"))
    assert isotropic(D("<1,1,-1>"))
    # sums of four squares over Q_2 are anisotropic, five are not definite-free
    assert not isotropic(D("<1,1,1,1>"))
    assert not isotropic(D("<1,1,1,1,1>"))
    assert isotropic(D("<1,1,1,1,-1>"))
    # x^2 + y^2 = 3 z^2 has no rational solution
    assert not isotropic(D("<1,1,-3>"))
    assert isotropic(D("<1,1,-2>"))


def _small_vector_zero(entries, box=6):
    rng = range(-box, box + 1)
    for v in itertools.product(rng, repeat=len(entries)):
        if any(v) and sum(a * x * x for a, x in zip(entries, v)) == 0:
            return True
    return False


def test_isotropy_over_q_against_search():
    # anisotropic forms admit no small zero; the isotropic ones here all have one
    vals = [1, -1, 2, -2, 3, -3, 5, -5, 6, -7]
    for r in (2, 3):
        for entries in itertools.combinations_with_replacement(vals, r):
            iso = isotropic(DiagonalForm.of(entries))
            assert _small_vector_zero(entries) == iso, entries


def test_witt_decompose_examples():
    k, a = witt_decompose(D("<1,-1>"))
    assert (k, a.entries) == (1, ())
    k, a = witt_decompose(D("<1,1>"))
    assert (k, a.entries) == (0, (1, 1))
    k, a = witt_decompose(D("<1,1>", "F5"))
    assert (k, a.entries) == (1, ())


def test_witt_consistency_random():
    rng = random.Random(12)
    for field in ("Q", "F3", "F5", "F7"):
        for _ in range(60):
            r = rng.randint(1, 7)
            d = DiagonalForm.of([rng.choice([-1, 1]) * rng.randint(1, 40) for _ in range(r)], field) \
                if field == "Q" else DiagonalForm.of([rng.randint(1, int(field[1:]) - 1) for _ in range(r)], field)
            k, aniso = witt_decompose(d)
            assert r == 2 * k + aniso.rank
            assert not isotropic(aniso)
            rebuilt = aniso
            for _ in range(k):
                rebuilt = rebuilt + hyperbolic(field)
            assert gw_equal(d, rebuilt)
            if field == "Q":
                assert abs(gw_invariants(d).signature) <= aniso.rank


def test_gw_equal_examples():
    assert gw_equal(D("<2,-2>"), D("<1,-1>"))
    assert not gw_equal(D("<1,1>"), D("<1,-1>"))
    assert gw_equal(D("<1,1>", "F5"), D("<1,-1>", "F5"))
    with pytest.raises(FieldMismatch):
        gw_equal(D("<1>"), D("<1>", "F5"))


def test_gw_equal_needs_hasse():
    # same rank, signature and discriminant, different Hasse invariant at 3
    a, b = D("<1,1>"), D("<3,3>")
    assert gw_invariants(a).disc.rep == gw_invariants(b).disc.rep
    assert not gw_equal(a, b)
    assert gw_equal(D("<1,1>"), D("<2,2>"))


def _random_form(rng, n):
    while True:
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                g[i][j] = g[j][i] = rng.randint(-4, 4)
        form = sym(g)
        if det(form.gram, form.field):
            return form


def _random_invertible(rng, n, F):
    while True:
        p = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if det(p, F):
            return p


def test_congruence_invariance_and_equivalence():
    rng = random.Random(21)
    F = make_field("Q")
    for _ in range(8):
        form = _random_form(rng, rng.randint(2, 4))
        base = gw_invariants(form)
        d = diagonalize(form)
        for _ in range(15):
            p = _random_invertible(rng, form.size, F)
            moved = sym(congruent(form.gram, p))
            assert gw_invariants(moved).to_dict() == base.to_dict()
            assert gw_equal(d, moved)


def test_gw_equal_is_equivalence():
    rng = random.Random(22)
    forms = [DiagonalForm.of([rng.choice([-1, 1]) * rng.choice([1, 2, 3, 6]) for _ in range(3)]) for _ in range(12)]
    for a, b, c in itertools.product(forms[:6], repeat=3):
        assert gw_equal(a, a)
        assert gw_equal(a, b) == gw_equal(b, a)
        if gw_equal(a, b) and gw_equal(b, c):
            assert gw_equal(a, c)


@pytest.mark.parametrize("text,p,expected", [("<1,1>", 3, False), ("<1,1>", 5, True), ("<1>", 7, False)])
def test_brute_force_examples(text, p, expected):
    assert brute_force_isotropic_fp(D(text, f"F{p}"), p) is expected


def test_brute_force_limits():
    with pytest.raises(FieldTooLarge):
        brute_force_isotropic_fp(D("<1,1>", "F101"))
    with pytest.raises(RankTooLarge):
        brute_force_isotropic_fp(D("<1,1,1,1,1>", "F3"))
    with pytest.raises(FieldMismatch):
        brute_force_isotropic_fp(D("<1,1>"))


def test_fp_isotropy_matches_brute_force():
    rng = random.Random(31)
    for p in (3, 5, 7):
        for _ in range(50):
            r = rng.randint(1, 4)
            d = DiagonalForm.of([rng.randint(1, p - 1) for _ in range(r)], f"F{p}")
            assert isotropic(d) == brute_force_isotropic_fp(d)


def test_obstruction_examples():
    ob = ekl_obstruction(D("<1,1>"))
    assert ob.obstructed and ob.rank == 2 and ob.witt_index == 0
    ob = ekl_obstruction(D("<1,-1>"))
    assert not ob.obstructed and ob.reason == "contains H"
    ob = ekl_obstruction(D("<1,1>", "F5"))
    assert not ob.obstructed and ob.field_sensitive
    assert not ekl_obstruction(D("<7>")).obstructed


def test_remark_classes_not_obstructed():
    for u in (1, -1, 2, -3, 5, Fraction(1, 7), 30):
        assert not ekl_obstruction(DiagonalForm.of([1, -1, u])).obstructed
    assert not ekl_obstruction(hyperbolic()).obstructed


def test_parse_form():
    assert isinstance(parse_form("[[0,1],[1,0]]"), SymForm)
    assert parse_form("<1, -1/2>").entries == (1, Fraction(-1, 2))
    assert parse_form("3,3", "F7").entries == (3, 3)
    assert bad_places(D("<6,-35>")) == [INF, 2, 3, 5, 7]
