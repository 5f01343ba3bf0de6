import pytest

from conftest import random_valid_endos
from mdegree.endo import (
    EndoCandidate,
    Flavor,
    classify_flavor,
    local_algebra,
    minimal_powers,
    nullhomotopy_report,
    origin_is_zero,
    validate,
)
from mdegree.errors import NotPuncturedEndo, NotUnimodular, ShapeError, UnimodularInput
from mdegree.groebner import normal_form
from mdegree.pipeline import JobSpec, corpus_files
from mdegree.poly import Order


def endo(*polys, field="Q", vars="xy"):
    return EndoCandidate.from_strings(field, list(vars), list(polys))


def test_validate_examples():
    assert validate(endo("x", "1 - x")).flavor is Flavor.UNIMODULAR
    assert validate(endo("x^2 - y^2", "x*y")).flavor is Flavor.ISOLATED_ZERO
    with pytest.raises(NotPuncturedEndo) as err:
        validate(endo("x", "x*y"))
    assert err.value.witness == "y" and err.value.index == 1


def test_zero_map_rejected():
    with pytest.raises(NotPuncturedEndo):
        validate(endo("0", "0"))


def test_shape_is_checked():
    with pytest.raises(ShapeError):
        endo("x")


def test_validity_over_algebraic_closure():
    # x^2 + y^2 vanishes only at the origin over R but on two lines over C
    with pytest.raises(NotPuncturedEndo):
        validate(endo("x^2 + y^2", "x^2 + y^2"))
    # over F5, x^2 + 1 has roots, over Q it has none, but both fail over the closure
    for field in ("Q", "F5", "F7"):
        with pytest.raises(NotPuncturedEndo):
            validate(endo("x^2 + 1", "y", field=field))


def test_n_equals_one_warns():
    v = validate(endo("x^2", vars="x"))
    assert v.warnings


def test_classify_flavor_examples():
    assert classify_flavor(validate(endo("x", "y"))) is Flavor.ISOLATED_ZERO
    assert classify_flavor(validate(endo("x", "1 - x"))) is Flavor.UNIMODULAR
    v = validate(endo("x^2", "y"))
    assert classify_flavor(v) is Flavor.ISOLATED_ZERO
    assert [str(g) for g in v.gb] == ["x^2", "y"]


@pytest.mark.parametrize("polys,dim,basis", [
    (("x", "y"), 1, [(0, 0)]),
    (("x^2", "y"), 2, [(0, 0), (1, 0)]),
    (("x^2 - y^2", "x*y"), 4, [(0, 0), (1, 0), (0, 1), (0, 2)]),
])
def test_local_algebra_examples(polys, dim, basis):
    alg = local_algebra(validate(endo(*polys)))
    assert alg.dim == dim
    assert list(alg.basis) == basis


def test_local_algebra_rejects_unimodular():
    with pytest.raises(UnimodularInput):
        local_algebra(validate(endo("x", "1 - x")))


def test_nullhomotopy_report():
    rep = nullhomotopy_report(validate(endo("x", "1 - x")))
    assert rep.verdict == "naively null-homotopic"
    assert rep.extends_to_affine_space
    assert nullhomotopy_report(validate(endo("1", "y"))).verdict == "naively null-homotopic"
    with pytest.raises(NotUnimodular):
        nullhomotopy_report(validate(endo("x^2", "y")))


def _corpus_valid():
    out = []
    for p in corpus_files():
        job = JobSpec.load(p)
        try:
            out.append(validate(job.candidate()))
        except NotPuncturedEndo:
            pass
    return out


@pytest.fixture(scope="module")
def valid_maps():
    return _corpus_valid() + random_valid_endos(100, seed=11)


def test_flavor_origin_duality(valid_maps):
    for v in valid_maps:
        assert (v.flavor is Flavor.UNIMODULAR) == (not origin_is_zero(v.candidate))


def test_minimal_powers_bounded(valid_maps):
    for v in valid_maps:
        if v.flavor is Flavor.ISOLATED_ZERO:
            dim = local_algebra(v).dim
            powers = minimal_powers(v)
            assert all(1 <= d <= dim + 1 for d in powers)
            for i, d in enumerate(powers):
                assert not normal_form(v.ring.gen(i) ** d, v.gb)
                assert normal_form(v.ring.gen(i) ** (d - 1), v.gb)


def test_dim_independent_of_order(valid_maps):
    for v in valid_maps:
        if v.flavor is Flavor.ISOLATED_ZERO:
            lex = validate(v.candidate, Order.LEX)
            assert local_algebra(lex).dim == local_algebra(v).dim


def test_multiplication_table_associative_commutative():
    for polys in [("x^2 - y^2", "x*y"), ("x^2 + y^3", "y^2"), ("x^3 - 3*x*y^2", "3*x^2*y - y^3")]:
        v = validate(endo(*polys))
        alg = local_algebra(v)
        B = alg.basis_polys()
        for i in range(alg.dim):
            for j in range(alg.dim):
                assert alg.product(i, j) == alg.coords(B[j] * B[i])
                for k in range(alg.dim):
                    left = alg.reduce(alg.reduce(B[i] * B[j]) * B[k])
                    right = alg.reduce(B[i] * alg.reduce(B[j] * B[k]))
                    assert left == right
