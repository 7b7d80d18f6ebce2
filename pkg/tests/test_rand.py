import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spgame.corpus import random_game
from spgame.det import PureStrategy, StrategyError
from spgame.game import GraphParams, Owner
from spgame.markov import RandStrategy, max_best_response
from spgame.rand import (build_rho_p, check_almost_sure_reach, largest_trap, probability_bound,
                         synthesize_epsilon_optimal)
from spgame.values import finite_subgame, solve_values

TENTH = Fraction(1, 10)


def test_rho_p_fig1(fig1):
    rho = build_rho_p(fig1, PureStrategy({0: 1}), PureStrategy({0: 2}), Fraction(3, 4))
    assert rho.dist == {0: ((1, Fraction(3, 4)), (2, Fraction(1, 4)))}


def test_rho_p_fig2(fig2):
    p = Fraction(9, 10)
    rho = build_rho_p(fig2, PureStrategy({1: 0, 3: 1}), PureStrategy({1: 2, 3: 4}), p)
    assert rho.dist[1] == ((0, p), (2, 1 - p))
    assert rho.dist[3] == ((1, p), (4, 1 - p))


def test_rho_p_without_negative_cycle_is_dirac(fig3):
    s1 = PureStrategy({0: 1, 1: 2})
    rho = build_rho_p(fig3, s1, PureStrategy({0: 2, 1: 2}), Fraction(1, 2))
    assert rho == RandStrategy.dirac(s1.choice)


@pytest.mark.parametrize("p", [0, 1, Fraction(3, 2)])
def test_rho_p_rejects_p(fig1, p):
    with pytest.raises(StrategyError):
        build_rho_p(fig1, PureStrategy({0: 1}), PureStrategy({0: 2}), p)


def test_bound_constants_fig2():
    b = probability_bound(GraphParams(W=15, c=3, w_minus=1, w_plus=3, exact=True), 5, -8, TENTH)
    assert (b.a, b.b) == (12, 257)
    assert b.p_min == 1 - TENTH / (81 * 2 ** 271)


def test_bound_constants_fig1():
    b = probability_bound(GraphParams(W=10, c=2, w_minus=1, w_plus=0, exact=True), 3, -10, TENTH)
    assert (b.a, b.b) == (2, 85)


def test_bound_trivial_a():
    b = probability_bound(GraphParams(W=2, c=1, w_minus=7, w_plus=0, exact=True), 2, 0, TENTH)
    assert b.a == 1
    assert b.p_min >= 1 - Fraction(1, 4)


def test_bound_with_zero_weights():
    b = probability_bound(GraphParams(W=0, c=2, w_minus=1, w_plus=0, exact=True), 2, 0, TENTH)
    assert b.p_min == 1 - Fraction(1, 2 ** (b.a + 1))


def test_bound_rejects_bad_inputs():
    params = GraphParams(W=1, c=1, w_minus=1, w_plus=0, exact=True)
    with pytest.raises(ValueError):
        probability_bound(params, 2, 0, Fraction(0))
    with pytest.raises(ValueError):
        probability_bound(GraphParams(W=1, c=1, w_minus=0, w_plus=0, exact=True), 2, 0, TENTH)


def test_fractional_b_rounds_up():
    b = probability_bound(GraphParams(W=1, c=1, w_minus=2, w_plus=0, exact=True), 2, -1, TENTH)
    assert b.b == Fraction(9, 2)  # (1 + 2 + 2)/2 * 1 + 2, kept exact
    e = 5 + b.a  # ceil(9/2) + a
    assert b.p_min == max(1 - Fraction(1, 4), 1 - TENTH / (2 * 2 * 2 ** (e + 1)), 1 - TENTH / 2 ** (e + 2))


@pytest.mark.parametrize("k,v0,target", [(1, 0, -10), (2, 2, -8)])
def test_synthesis_on_example_games(k, v0, target, request):
    g = request.getfixturevalue(f"fig{k}")
    vals = solve_values(g)
    syn = synthesize_epsilon_optimal(g, vals, -target, TENTH, v0, exact_params=True)
    mval = max_best_response(g, syn.rho).values[v0]
    assert vals[v0] == target
    assert target <= mval <= target + TENTH


def test_synthesis_needs_finite_values():
    from conftest import fig1_minus_inf
    g = fig1_minus_inf()
    with pytest.raises(StrategyError):
        synthesize_epsilon_optimal(g, solve_values(g), 0, TENTH, 0)


def test_largest_trap(fig1):
    stay = RandStrategy.dirac({0: 1})
    assert largest_trap(fig1, stay) == {0, 1}
    assert not check_almost_sure_reach(fig1, stay)
    assert check_almost_sure_reach(fig1, RandStrategy.dirac({0: 2}))


seeds = st.integers(min_value=0, max_value=10 ** 6)


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from([Fraction(1), Fraction(1, 4), Fraction(1, 16)]), st.booleans())
def test_synthesis_is_epsilon_optimal(seed, eps, exact):
    g = random_game(random.Random(seed))
    h, _ = finite_subgame(g)
    vals = solve_values(h)
    for v0 in range(h.n):
        if h.is_target(v0):
            continue
        syn = synthesize_epsilon_optimal(h, vals, max(0, -vals[v0]), eps, v0, exact_params=exact)
        assert check_almost_sure_reach(h, syn.rho)
        mval = max_best_response(h, syn.rho).values[v0]
        assert vals[v0] <= mval <= vals[v0] + eps
        for v in h.vertices(Owner.MIN):
            assert syn.switching.sigma1[v] in syn.rho.support(v)
