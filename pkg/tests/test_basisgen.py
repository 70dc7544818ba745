import itertools

import pytest

from qca import arcat
from qca.arcat import HomRegular, Proj, TubeE, build_data
from qca.basisgen import (
    BoxError,
    NotInSpan,
    atomicity_probe,
    box_points,
    enumerate_basis,
    expansion_shape,
    g_vector,
    parse_box,
    positivity_probe,
    r_weight,
    seeds_within,
    solve_g,
    standard_expand,
    standard_monomial,
)
from qca.character import char_of, x_delta
from qca.chebyshev import cheb_second, eval_at
from qca.torus import ScalarLaurent, TorusElement

TD = build_data(2)
BOX = parse_box("-1..1", 4)


def test_parse_box():
    assert parse_box("-2..2", 4) == ((-2,) * 4, (2,) * 4)
    assert parse_box("-1..1,0..2,0..0,1..1", 4) == ((-1, 0, 0, 1), (1, 2, 0, 1))
    for bad in ["1..0", "a..b", "0..1,0..1"]:
        with pytest.raises(BoxError):
            parse_box(bad, 4)


def test_basis_on_unit_box():
    els = enumerate_basis(TD, BOX, "B")
    assert len(els) == 81
    assert {b.index for b in els} == set(box_points(BOX))
    assert all(b.element.is_bar_invariant() for b in els)
    assert [r_weight(b.index) for b in els] == sorted(r_weight(b.index) for b in els)


def test_x_delta_is_the_basis_element_at_delta():
    els = {b.index: b for b in enumerate_basis(TD, parse_box("0..1", 4), "B")}
    assert els[(1, 1, 1, 1)].element == x_delta(TD)
    assert els[(1, 1, 1, 1)].kind == "chebyshev"
    assert els[(1, 0, 0, 1)].element == char_of(TD, TubeE(1))


def test_bad_which():
    with pytest.raises(ValueError):
        enumerate_basis(TD, BOX, "C")


def test_g_vectors_invert():
    for a in itertools.product(range(-1, 2), repeat=4):
        g = g_vector(TD, a)
        assert solve_g(TD, g) == a
        assert standard_monomial(TD, a).coefficient(g).is_unit()


def test_standard_expansion_reconstructs():
    for x in [x_delta(TD), char_of(TD, Proj(1)), char_of(TD, arcat.DirectSum(TubeE(2), arcat.Inj(1)))]:
        exp = standard_expand(TD, x)
        total = TorusElement.zero(TD.lam)
        for a, c in exp:
            total = total + standard_monomial(TD, a).scale(c)
        assert total == x


def test_expansion_shape_of_rigid_characters():
    for o in [Proj(1), arcat.Inj(4), arcat.TubeRegular(1, 2), arcat.PreInj(4, 1)]:
        rep = expansion_shape(TD, o)
        assert rep.ok, o
        assert rep.top == arcat.object_dim(TD, o)


def test_second_kind_elements_are_band_characters():
    for m in (1, 2, 3):
        assert eval_at(cheb_second(m), x_delta(TD)) == char_of(TD, HomRegular(m))


def test_positivity_probe_reports_witnesses():
    bad = TorusElement.one(TD.lam) - TorusElement.monomial(TD.lam, (0, 1, 0, 0))
    rep = positivity_probe(TD, bad, 1)
    assert not rep.ok and rep.seeds == 5
    good = positivity_probe(TD, x_delta(TD), 2)
    assert good.ok and good.seeds == len(seeds_within(TD, 2))
    assert good.to_json_obj()["negatives"] == []


def test_atomicity_probe_runs():
    els = enumerate_basis(TD, BOX, "B")
    target = next(b for b in els if b.index == (1, 1, 1, 1))
    rep = atomicity_probe(TD, target, seeds_within(TD, 1), els[:20])
    assert len(rep.rows) == 5
    assert "rows" in rep.to_json_obj()


def test_not_in_span():
    with pytest.raises(NotInSpan):
        standard_expand(TD, TorusElement.monomial(TD.lam, (0, 0, 0, 0), ScalarLaurent.v(1)), max_steps=0)
