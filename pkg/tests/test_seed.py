import random

import pytest
import sympy

from oracles import classical_mutation, laurent_at_one
from qca.arcat import build_data
from qca.character import x_delta
from qca.seed import (
    NotCompatible,
    NotDivisible,
    check_compatible,
    cluster_monomial,
    expand_in_cluster,
    explore,
    initial_seed,
    is_positive_in,
    mutate,
    mutate_sequence,
    right_divide,
)
from qca.torus import ScalarLaurent, SkewForm, TorusElement


def seed_for(n):
    td = build_data(n)
    return td, initial_seed(td.lam, td.b)


def test_initial_pair_is_compatible():
    for n in (1, 2, 3):
        td = build_data(n)
        assert check_compatible(td.lam, td.b) == (2,) * td.size


def test_incompatible_pair_rejected():
    lam = SkewForm([[0, 1], [-1, 0]])
    with pytest.raises(NotCompatible):
        check_compatible(lam, [[0, 1], [1, 0]])


@pytest.mark.parametrize("n", [1, 2])
def test_mutation_agrees_with_classical_mutation_at_q_one(n):
    td, s0 = seed_for(n)
    xs = sympy.symbols(f"x1:{td.size + 1}")
    rng = random.Random(7)
    for _ in range(6):
        seq = [rng.randint(1, td.size) for _ in range(4)]
        s = mutate_sequence(s0, seq)
        B = [list(r) for r in td.b]
        cl = list(xs)
        for k in seq:
            B, cl = classical_mutation(B, cl, k - 1)
        assert [list(r) for r in s.pair.b] == B
        for q, c in zip(s.vars, cl):
            assert sympy.simplify(laurent_at_one(q, xs) - c) == 0


def test_kronecker_first_mutation():
    td, s0 = seed_for(1)
    x = mutate(s0, 1).vars[0]
    # (1 + x2^2) / x1 with bar-invariant normalization
    assert x == TorusElement(td.lam, {(-1, 0): 1, (-1, 2): 1})


def test_mutation_is_an_involution():
    td, s0 = seed_for(2)
    for s in explore(s0, 2):
        for k in range(1, 5):
            assert mutate(mutate(s, k), k).same_as(s)


def test_seed_counts():
    # number of distinct clusters within mutation distance d
    _, s2 = seed_for(2)
    assert [len(explore(s2, d)) for d in (1, 2, 3)] == [5, 15, 33]
    _, s1 = seed_for(1)
    assert [len(explore(s1, d)) for d in (1, 2, 3)] == [3, 5, 7]


def test_right_divide_exact_and_not_divisible():
    lam = SkewForm([[0, 1], [-1, 0]])
    one = TorusElement.one(lam)
    a = one + TorusElement.monomial(lam, (0, 2))
    b = one + TorusElement.monomial(lam, (1, 0))
    assert right_divide(a * b, b) == a
    with pytest.raises(NotDivisible):
        right_divide(a, b)


def test_cluster_monomials_are_bar_invariant():
    _, s0 = seed_for(2)
    s = mutate_sequence(s0, [1, 3, 2])
    for a in [(1, 0, 0, 0), (2, 1, 0, 0), (1, 1, 1, 1), (0, 3, 0, 2)]:
        assert cluster_monomial(s, a).is_bar_invariant()


def test_expansion_reconstructs_element():
    td, s0 = seed_for(2)
    s = mutate_sequence(s0, [2, 1])
    xd = x_delta(td)
    exp = expand_in_cluster(xd, s)
    # xd Y^d = sum_b c_b v^{Lambda(b, d)} Y^{b + d}, all exponents nonnegative
    d = tuple(max([0] + [-b[i] for b in exp]) for i in range(4))
    total = TorusElement.zero(td.lam)
    for b, c in exp.items():
        shifted = tuple(x + y for x, y in zip(b, d))
        total = total + cluster_monomial(s, shifted).scale(c).shift(s.pair.lam.pair(b, d))
    assert total == xd * cluster_monomial(s, d)
    assert is_positive_in(xd, s)


def test_negative_element_detected():
    td, s0 = seed_for(2)
    x = TorusElement.one(td.lam) - TorusElement.monomial(td.lam, (1, 0, 0, 0))
    assert not is_positive_in(x, s0)
    assert expand_in_cluster(x, s0)[(1, 0, 0, 0)] == ScalarLaurent.v(0, -1)
