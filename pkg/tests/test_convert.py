import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spgame.convert import (conversion_alpha, convert, naive_frequency_strategy,
                            restricted_game, sigma1_from_rho, support_distances)
from spgame.corpus import random_game
from spgame.det import StrategyError, eval_all, eval_deterministic
from spgame.game import Owner
from spgame.markov import RandStrategy, max_best_response
from spgame.rand import check_almost_sure_reach, synthesize_epsilon_optimal
from spgame.values import finite_subgame, solve_values

THIRD = RandStrategy({0: ((1, Fraction(1, 3)), (2, Fraction(2, 3)))})


def test_restricted_game_fig1(fig1):
    mvals = max_best_response(fig1, THIRD).values
    rg = restricted_game(fig1, THIRD, mvals)
    # 0 + mVal(v_Max) = -3/2 beats 0 + mVal(smiley) = 0
    assert rg.allowed == {0: frozenset({1})}
    assert support_distances(fig1, THIRD) == (1, 2, 0)
    assert sigma1_from_rho(rg, support_distances(fig1, THIRD)).choice == {0: 1}


def test_convert_fig1(fig1):
    sw = convert(fig1, THIRD, 0)
    assert sw.alpha == (30 + 1) * 3 + 1
    assert sw.sigma2.choice == {0: 2}
    assert eval_deterministic(fig1, sw, 0) == -10 <= Fraction(-1, 2)


def test_conversion_alpha_floors():
    from spgame.game import make_game
    g = make_game([("a", "min"), ("t", "target")], [("a", "t", 2)])
    assert conversion_alpha(g, Fraction(3, 2)) == (2 * 2 - 1) * 2 + 1
    assert conversion_alpha(g, Fraction(7)) == 1


def test_support_distances_need_almost_sure_reach(fig1):
    with pytest.raises(StrategyError):
        support_distances(fig1, RandStrategy.dirac({0: 1}))


def test_most_likely_successor_is_not_enough(fig1):
    rho = RandStrategy({0: ((1, Fraction(2, 3)), (2, Fraction(1, 3)))})
    mval = max_best_response(fig1, rho).values[0]
    naive = naive_frequency_strategy(fig1, rho)
    assert eval_all(fig1, naive)[0] > mval
    assert eval_deterministic(fig1, convert(fig1, rho, 0), 0) <= mval


def _random_rho(g, rng):
    dist = {}
    for v in g.vertices(Owner.MIN):
        supp = sorted(rng.sample(g.succ[v], rng.randint(1, len(g.succ[v]))))
        raw = [rng.randint(1, 5) for _ in supp]
        dist[v] = tuple((u, Fraction(r, sum(raw))) for u, r in zip(supp, raw))
    return RandStrategy(dist)


seeds = st.integers(min_value=0, max_value=10 ** 6)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_conversion_never_worse_for_random_rho(seed):
    rng = random.Random(seed)
    g = random_game(rng)
    rho = _random_rho(g, rng)
    if not check_almost_sure_reach(g, rho):
        return
    mvals = max_best_response(g, rho).values
    for v0 in range(g.n):
        assert eval_deterministic(g, convert(g, rho, v0, mvals), v0) <= mvals[v0]


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_conversion_never_worse_for_synthesized_rho(seed):
    g = random_game(random.Random(seed))
    h, _ = finite_subgame(g)
    vals = solve_values(h)
    for v0 in range(h.n):
        if h.is_target(v0):
            continue
        rho = synthesize_epsilon_optimal(h, vals, max(0, -vals[v0]), Fraction(1, 4), v0).rho
        mvals = max_best_response(h, rho).values
        assert eval_deterministic(h, convert(h, rho, v0, mvals), v0) <= mvals[v0]
