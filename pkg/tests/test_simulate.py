from fractions import Fraction

import pytest

from conftest import fig1_chain
from spgame.markov import MarkovChain, solve_expectations
from spgame.simulate import SimConfig, _resolve, _thresholds, _words, simulate


def test_fig1_half_chain_close_to_exact():
    mc = fig1_chain(Fraction(1, 2), 1)
    exact = solve_expectations(mc)[0]
    assert exact == -1
    rep = simulate(mc, 0, SimConfig(seed=12345, episodes=100_000))
    assert rep.reach_fraction == 1.0 and rep.truncated == 0
    assert abs(rep.mean_tp - float(exact)) <= 3 * rep.stderr


def test_bit_reproducible():
    mc = fig1_chain(Fraction(2, 7), Fraction(5, 11))
    a = simulate(mc, 0, SimConfig(seed=99, episodes=5000))
    b = simulate(mc, 0, SimConfig(seed=99, episodes=5000))
    c = simulate(mc, 0, SimConfig(seed=100, episodes=5000))
    assert a == b
    assert a != c


def test_tiny_probability_is_not_rounded_away():
    # leave with probability 2**-300: in floating point this edge would be 0 or 1
    eps = Fraction(1, 2 ** 300)
    mc = MarkovChain((((0, 1 - eps, 1), (1, eps, 0)), ()))
    thr = _thresholds(mc)[0][2]
    assert thr[0] < 2 ** 512 and thr[1] == 2 ** 512
    rep = simulate(mc, 0, SimConfig(seed=1, episodes=50, step_cap=20))
    assert rep.truncated == 50 and rep.reach_fraction == 0.0


def test_truncation_is_reported():
    mc = MarkovChain((((0, Fraction(1, 2), 1), (1, Fraction(1, 2), 0)), ()))
    rep = simulate(mc, 0, SimConfig(seed=3, episodes=2000, step_cap=2))
    assert rep.truncated > 0
    assert rep.reach_fraction == pytest.approx(1 - rep.truncated / 2000)


class _Words:
    def __init__(self, words):
        self.words = list(words)

    def random_raw(self):
        return self.words.pop(0)


def test_tie_on_leading_word_uses_lower_words():
    half = Fraction(1, 2)
    mc = MarkovChain((((0, half, 0), (1, half, 0)), ()))
    table = _thresholds(mc)
    words = {(0, k): _words(t) for k, t in enumerate(table[0][2])}
    lead = words[(0, 0)][0]
    assert lead == 1 << 63
    # U = 2**511 exactly is not below the threshold, so the second successor is taken
    assert _resolve(_Words([0] * 7), lead, 0, table, words) == 1
    # 1/3 is not dyadic: the second word decides
    third = Fraction(1, 3)
    mc3 = MarkovChain((((0, third, 0), (1, 1 - third, 0)), ()))
    t3 = _thresholds(mc3)
    w3 = {(0, k): _words(t) for k, t in enumerate(t3[0][2])}
    hi = w3[(0, 0)]
    assert _resolve(_Words([hi[1] - 1]), hi[0], 0, t3, w3) == 0
    assert _resolve(_Words([hi[1] + 1]), hi[0], 0, t3, w3) == 1


@pytest.mark.parametrize("kw", [dict(seed=-1, episodes=1), dict(seed=2 ** 64, episodes=1),
                                dict(seed=0, episodes=0)])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        SimConfig(**kw)
