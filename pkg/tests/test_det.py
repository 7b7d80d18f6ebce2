import random

import pytest
from hypothesis import given, settings, strategies as st

from spgame import oracles
from spgame.corpus import random_game
from spgame.det import (PureStrategy, StrategyError, SwitchingStrategy, attractor, eval_all,
                        eval_deterministic, fake_optimal_nc_strategy, switching_alpha,
                        switching_strategy, verify_nc)
from spgame.game import Owner, make_game
from spgame.values import INF, finite_subgame, is_finite, solve_values


def test_attractor_fig1(fig1):
    res = attractor(fig1)
    # Max joins once all its successors are in: one layer after v_Min
    assert res.distance == (1, 2, 0)
    assert res.strategy.choice == {0: 2}


def test_attractor_misses_trapped_max():
    g = make_game([("m", "max"), ("a", "min"), ("t", "target")],
                  [("m", "m", 0), ("m", "a", 0), ("a", "t", 0)])
    res = attractor(g)
    assert res.distance == (None, 1, 0)
    assert not res.covers(range(3))


def test_attractor_restricted_edges(fig3):
    res = attractor(fig3, {0: (1,), 1: (2,)})
    assert res.distance == (2, 1, 0)
    assert res.strategy.choice == {0: 1, 1: 2}


def test_fake_optimal_nc_fig2(fig2):
    vals = solve_values(fig2)
    s = fake_optimal_nc_strategy(fig2, vals)
    assert s.choice == {1: 0, 3: 1}
    assert verify_nc(fig2, s)


def test_nc_rejects_nonnegative_cycle(fig3):
    # v0 -> v1 -> v0 has weight 0
    assert not verify_nc(fig3, {0: 1, 1: 0})
    assert verify_nc(fig3, {0: 1, 1: 2})


def test_switching_fig1_reaches_value(fig1):
    vals = solve_values(fig1)
    sw = switching_strategy(fig1, vals, 10)
    assert sw.alpha == switching_alpha(fig1, 10) == (2 * 10 * 2 + 10) * 3 + 1
    assert eval_deterministic(fig1, sw, 0) == -10
    assert eval_deterministic(fig1, sw, 1) == -10


def test_fig1_memoryless_strategies_fall_short(fig1):
    # loop forever, or leave immediately for 0
    assert eval_all(fig1, PureStrategy({0: 1}))[0] == INF
    assert eval_all(fig1, PureStrategy({0: 2})) == [0, -1, 0]


def test_short_alpha_switch(fig1):
    # one step of the loop gives Max the choice between -10 and -1 + 0
    s = SwitchingStrategy(PureStrategy({0: 1}), PureStrategy({0: 2}), 2)
    assert eval_all(fig1, s)[0] == -1


def test_switching_rejects_plus_infinity():
    g = make_game([("a", "max"), ("b", "min"), ("t", "target")],
                  [("a", "b", 1), ("b", "a", 1), ("a", "t", 0)])
    with pytest.raises(StrategyError):
        switching_strategy(g, solve_values(g), 0)


def test_alpha_cap(fig1):
    s = SwitchingStrategy(PureStrategy({0: 1}), PureStrategy({0: 2}), 11)
    with pytest.raises(StrategyError):
        eval_all(fig1, s, alpha_cap=10)


def test_validate_strategy(fig1):
    with pytest.raises(StrategyError):
        PureStrategy({}).validate(fig1)
    with pytest.raises(StrategyError):
        PureStrategy({0: 0}).validate(fig1)


seeds = st.integers(min_value=0, max_value=10 ** 6)


def _finite(seed):
    g = random_game(random.Random(seed))
    vals = solve_values(g)
    h, _ = finite_subgame(g, vals)
    return h, solve_values(h)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_fake_optimal_nc_properties(seed):
    h, vals = _finite(seed)
    if not all(is_finite(x) for x in vals):
        return
    s = fake_optimal_nc_strategy(h, vals)
    assert verify_nc(h, s)
    # cross-check NC against explicit cycle enumeration
    cycles = oracles.cycles_in(h, [(s[v],) if h.owners[v] is Owner.MIN else h.succ[v]
                                   for v in range(h.n)])
    assert all(w < 0 for _, w in cycles)
    # fake value of s (plays reaching the target) is at most dValue
    tp = oracles.max_conforming_tp(h, {v: (s[v],) for v in h.vertices(Owner.MIN)}, h.n * h.n)
    assert all(tp[v] <= vals[v] for v in range(h.n))


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=4))
def test_switching_bound(seed, n):
    h, vals = _finite(seed)
    if h.n == 0:
        return
    ev = eval_all(h, switching_strategy(h, vals, n))
    assert all(ev[v] <= max(-n, vals[v]) for v in range(h.n))
    assert all(ev[v] >= vals[v] for v in range(h.n))


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_positional_eval_matches_brute_force(seed):
    g = random_game(random.Random(seed))
    s = attractor(g).strategy
    ev = eval_all(g, s)
    tp = oracles.max_conforming_tp(g, {v: (s[v],) for v in g.vertices(Owner.MIN)}, g.n)
    for v in range(g.n):
        if ev[v] != INF:
            assert ev[v] == tp[v]
