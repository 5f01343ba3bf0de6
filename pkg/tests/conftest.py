import random
from fractions import Fraction

import pytest

from mdegree.endo import EndoCandidate, validate
from mdegree.errors import NotPuncturedEndo
from mdegree.poly import PolyRing


@pytest.fixture
def Rxy():
    return PolyRing.make("Q", ["x", "y"])


def random_poly(ring, rng, nterms=4, maxdeg=3, coeffs=range(-5, 6)):
    f = ring.zero()
    for _ in range(nterms):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, maxdeg)):
            e[rng.randrange(ring.nvars)] += 1
        c = rng.choice(list(coeffs))
        if ring.field.is_rational and rng.random() < 0.2:
            c = Fraction(c, rng.randint(1, 4))
        f = f + ring.monomial(e, c)
    return f


BASE_MAPS = [
    ["x", "y"],
    ["x^2", "y"],
    ["x^2 - y^2", "x*y"],
    ["x^3", "y"],
    ["x^2", "y^2"],
    ["x + y^2", "y"],
    ["x", "1 - x"],
    ["1", "y"],
    ["1 + x*y", "x"],
]


def _perturb(polys, ring, rng):
    x, y = ring.gens()
    kind = rng.choice(["right", "left", "term", "term"])
    c = rng.choice([-2, -1, 1, 2, 3])
    k = rng.choice([1, 2])
    if kind == "right":
        # compose with a triangular automorphism fixing the origin
        sub = [x + y**k * c, y] if rng.random() < 0.5 else [x, y + x**k * c]
        return [f.compose(sub) for f in polys]
    if kind == "left":
        i = rng.randrange(2)
        out = list(polys)
        out[i] = out[i] + out[1 - i] ** k * c
        return out
    i = rng.randrange(2)
    e = [0, 0]
    for _ in range(rng.randint(0, 2)):
        e[rng.randrange(2)] += 1
    out = list(polys)
    out[i] = out[i] + ring.monomial(e, c)
    return out


def random_valid_endos(count, seed=0, field="Q"):
    """Random small perturbations of fixture maps that pass validation."""
    rng = random.Random(seed)
    ring = PolyRing.make(field, ["x", "y"])
    out = []
    while len(out) < count:
        base = rng.choice(BASE_MAPS)
        polys = [ring.parse(t) for t in base]
        for _ in range(rng.randint(1, 2)):
            polys = _perturb(polys, ring, rng)
        if any(p.degree() > 6 for p in polys):
            continue
        try:
            out.append(validate(EndoCandidate(ring, tuple(polys))))
        except NotPuncturedEndo:
            continue
    return out
