import functools
from fractions import Fraction

import pytest

from oracles import classical_mutation, laurent_at_point
from qca import arcat
from qca.arcat import HomRegular, Proj, ShiftProj, Transjective, build_data
from qca.character import char_of, character, x_delta
from qca.seed import explore, initial_seed, is_sink_or_source
from qca.torus import TorusElement

TD = build_data(2)


@functools.lru_cache(maxsize=None)
def cluster_variable_seeds(td, depth):
    seeds = explore(initial_seed(td.lam, td.b), depth, is_sink_or_source)
    return {x: s for s in seeds for x in s.vars}


def test_shifted_projectives_are_initial_variables():
    for i in range(1, 5):
        assert char_of(TD, ShiftProj(i)) == TorusElement.monomial(TD.lam, arcat.unit(TD, i))


def test_x_delta_n1_is_the_kronecker_generic_element():
    td = build_data(1)
    assert x_delta(td) == TorusElement(td.lam, {(-1, -1): 1, (-1, 1): 1, (1, -1): 1})


def test_x_delta_n2():
    expected = TorusElement(TD.lam, {(-1, -1, 0, 0): 1, (-1, 0, 0, 1): 1, (0, -1, -1, 0): 1,
                                     (0, 0, -1, -1): 1, (1, 0, 0, -1): 1})
    assert x_delta(TD) == expected
    assert expected.is_bar_invariant()


def test_characters_are_pointed():
    for o in [Proj(1), arcat.Inj(4), arcat.TubeRegular(1, 2), HomRegular(2)]:
        x = char_of(TD, o)
        dim = arcat.object_dim(TD, o)
        low = tuple(-a for a in TD.a_map(dim))
        assert x.coefficient(low) == 1 or x.coefficient(low).is_unit()


@pytest.mark.parametrize("j", [-4, -3, -2, 0, 1, 2])
def test_characters_match_classical_cluster_variables(j):
    # at q = 1, each rigid character is the classical cluster variable reached by
    # mutation; both sides are evaluated exactly at two rational points
    pool = cluster_variable_seeds(TD, 12)
    points = [tuple(Fraction(x) for x in (2, 3, 5, 7)), (Fraction(1, 3), Fraction(-2), Fraction(5, 2), Fraction(11))]
    for i in range(1, 5):
        x = char_of(TD, Transjective(i, j))
        assert x in pool
        for pt in points:
            B, cl = [list(r) for r in TD.b], list(pt)
            for k in pool[x].history:
                B, cl = classical_mutation(B, cl, k - 1)
            assert laurent_at_point(x, pt) in cl


def test_base_convention_fails_the_mutation_oracle():
    pool = cluster_variable_seeds(TD, 12)
    assert char_of(TD, Proj(1)) in pool
    assert char_of(TD, Proj(1), convention="base") not in pool
    # S(2) has only count-1 Grassmannians, so it cannot tell the conventions apart
    assert char_of(TD, arcat.Simple(2)) == char_of(TD, arcat.Simple(2), convention="base")


def test_provenance_json():
    res = character(TD, arcat.parse_obj("N(3,1)"))
    out = res.to_json_obj()
    assert out["object"] == arcat.format_obj(res.object)
    assert len(out["provenance"]) == len(res.terms)
    assert TorusElement.from_json_obj(out, TD.lam) == res.element


def test_unknown_convention():
    with pytest.raises(ValueError):
        character(TD, Proj(1), convention="cubic")
