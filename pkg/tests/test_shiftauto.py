import pytest

from qca import arcat
from qca.arcat import HomRegular, Inj, Proj, ShiftProj, TubeE, build_data
from qca.character import char_of, x_delta
from qca.seed import NotDivisible, initial_seed, mutate_sequence
from qca.shiftauto import locate_sigma_cluster, sigma_apply, sigma_object
from qca.torus import TorusElement


@pytest.mark.parametrize("n", [1, 2, 3])
def test_located_cluster_is_the_injective_cluster(n):
    td = build_data(n)
    data = locate_sigma_cluster(td)
    assert data.sequence == tuple(range(1, td.size + 1))
    assert data.permutation == tuple(range(td.size))
    s = mutate_sequence(initial_seed(td.lam, td.b), data.sequence)
    assert [s.vars[p] for p in data.permutation] == [char_of(td, Inj(i)) for i in range(1, td.size + 1)]
    assert data.seed.pair.lam == td.lam


def test_sigma_object():
    td = build_data(2)
    for i in range(1, 5):
        assert arcat.canon(td, sigma_object(td, ShiftProj(i))) == arcat.canon(td, Inj(i))
        assert arcat.canon(td, sigma_object(td, Proj(i))) == arcat.canon(td, ShiftProj(i))
    assert sigma_object(td, TubeE(3)) == arcat.canon(td, TubeE(1))
    assert sigma_object(td, HomRegular(2)) == HomRegular(2)


@pytest.mark.parametrize("n", [1, 2])
def test_sigma_on_initial_variables_and_x_delta(n):
    td = build_data(n)
    for i in range(1, td.size + 1):
        xi = TorusElement.monomial(td.lam, arcat.unit(td, i))
        assert sigma_apply(td, xi) == char_of(td, Inj(i))
    assert sigma_apply(td, x_delta(td)) == x_delta(td)


def test_sigma_on_products_and_inverses():
    td = build_data(2)
    inv = TorusElement.monomial(td.lam, tuple(-a for a in arcat.unit(td, 1)))
    # the image X_{I_1}^{-1} is not a Laurent polynomial in the initial cluster
    with pytest.raises(NotDivisible):
        sigma_apply(td, inv)
    a, b = char_of(td, Proj(2)), char_of(td, Inj(3))
    assert sigma_apply(td, a * b) == sigma_apply(td, a) * sigma_apply(td, b)
    assert sigma_apply(td, TorusElement.zero(td.lam)).is_zero()
