from fractions import Fraction
from importlib import resources

import pytest

from spgame.game import load_game, make_game
from spgame.markov import MarkovChain

DATA = resources.files("spgame") / "data"


def fig_path(k: int) -> str:
    return str(DATA / f"fig{k}.spg")


@pytest.fixture
def fig1():
    return load_game(fig_path(1))


@pytest.fixture
def fig2():
    return load_game(fig_path(2))


@pytest.fixture
def fig3():
    return load_game(fig_path(3))


def fig1_chain(p, q) -> MarkovChain:
    """The fig1 game with Min leaving towards v_Max w.p. p and Max looping back w.p. q."""
    p, q = Fraction(p), Fraction(q)

    def branch(*opts):
        return tuple(o for o in opts if o[1] != 0)

    return MarkovChain((
        branch((1, p, 0), (2, 1 - p, 0)),
        branch((0, q, -1), (2, 1 - q, -10)),
        (),
    ))


def fig1_minus_inf():
    return make_game([("v_Min", "min"), ("v_Max", "max"), ("smiley", "target")],
                     [("v_Min", "v_Max", 0), ("v_Max", "v_Min", -1), ("v_Min", "smiley", 0)])
