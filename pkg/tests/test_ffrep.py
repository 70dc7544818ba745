import json

import pytest

from oracles import naive_grassmannian
from qca import arcat, ffrep
from qca.arcat import build_data, parse_obj

TD = build_data(2)

SMALL_OBJECTS = ["S(2)", "P(2)", "I(4)", "E(1)", "R(1,2)", "R(2,3)", "H(1)", "H(2)", "M(1,1)", "E(1) + I(2)"]


def test_gaussian_binomials():
    assert ffrep.gaussian_binomial_poly(4, 2) == (1, 1, 2, 1, 1)
    assert ffrep.gaussian_binomial_int(4, 2, 2) == 35
    assert ffrep.gaussian_binomial_int(3, 1, 3) == 13
    assert ffrep.gaussian_binomial_int(3, 4, 3) == 0


@pytest.mark.parametrize("size", [2, 3, 4, 9])
def test_field_axioms(size):
    F = ffrep.small_field(size)
    for a in F.elements():
        assert F.add[a][F.neg[a]] == 0
        if a:
            assert F.mul[a][F.inv[a]] == 1
    assert all(F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]
               for a in range(size) for b in range(size) for c in range(size))


@pytest.mark.parametrize("name", SMALL_OBJECTS)
@pytest.mark.parametrize("p", [2, 3])
def test_count_polynomials_match_naive_enumeration(name, p):
    # the tables are fitted at prime squares; GF(2) and GF(3) are fresh points
    obj = arcat.canon(TD, parse_obj(name))
    rep = ffrep.build_module(TD, obj, ffrep.small_field(p))
    table = ffrep.grassmannian_table(TD, obj)
    for e, poly in table.items():
        assert poly.checked
        expected = naive_grassmannian(p, rep.dims, rep.arrows, rep.maps, e)
        assert poly(p) == expected, (name, e)


def test_fixed_point_and_band_methods_agree_with_brute_force():
    for name in ["T(1,1)", "N(4,1)", "H(2)"]:
        obj = arcat.canon(TD, parse_obj(name))
        table = ffrep.grassmannian_table(TD, obj)
        for e in list(table)[:6]:
            sampled = ffrep.count_polynomial_sampled(TD, obj, e)
            assert sampled.coeffs == table[e].coeffs, (name, e)


def test_x_delta_counts_are_one():
    table = ffrep.grassmannian_table(TD, arcat.HomRegular(1))
    assert len(table) == 5
    assert all(p.is_one() for p in table.values())


def test_frozen_count_polynomials():
    # values confirmed by naive enumeration over GF(2) and GF(3)
    cases = {
        ("H(2)", (1, 1, 1, 1)): (1,),
        ("H(2)", (0, 0, 1, 2)): (1, 1),
        ("M(1,1)", (0, 1, 1, 2)): (1, 1),
        ("N(4,1)", (1, 1, 1, 1)): (1, 1),
        ("I(4) + I(1)", (1, 1, 1, 1)): (1, 1, 1),
    }
    for (name, e), coeffs in cases.items():
        assert ffrep.count_polynomial(TD, parse_obj(name), e).coeffs == coeffs, name


def test_interpolation_detects_non_polynomial_counts():
    with pytest.raises(ffrep.InterpolationMismatch):
        ffrep.fit_counts(lambda s: 2 ** s, 1, "test")
    poly = ffrep.fit_counts(lambda s: s * s + 1, 2, "test")
    assert poly.coeffs == (1, 0, 1) and poly.checked


def test_too_few_fields_is_reported():
    with pytest.raises(ffrep.CapExceeded):
        ffrep.fit_counts(lambda s: s, 3, "test", sizes=[4, 9, 25])


def test_vertex_cap_from_environment(monkeypatch):
    monkeypatch.setenv("QCA_CAPS", json.dumps({"vertex_dim": 1}))
    assert ffrep.get_caps()["vertex_dim"] == 1
    with pytest.raises(ffrep.CapExceeded):
        ffrep._brute_table(TD, arcat.canon(TD, parse_obj("M(1,1)")))


def test_hom_dimension_over_a_small_field():
    F = ffrep.small_field(3)
    P2 = ffrep.build_module(TD, arcat.Proj(2), F)
    I4 = ffrep.build_module(TD, arcat.Inj(4), F)
    assert ffrep.hom_dim(P2, I4) == 1
    assert ffrep.hom_dim(I4, P2) == 0
