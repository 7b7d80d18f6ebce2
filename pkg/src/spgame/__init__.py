"""Shortest-path games: values, switching and randomised Min strategies."""
from .game import GameGraph, GameError, GameParseError, Owner, load_game, make_game, parse_game
from .values import INF, NEG_INF, ValueVector, solve_values
from .det import PureStrategy, SwitchingStrategy, eval_deterministic, switching_strategy
from .markov import RandStrategy, build_mc, max_best_response, solve_expectations
from .rand import check_almost_sure_reach, synthesize_epsilon_optimal
from .convert import convert
from .optimality import check_optimal_memoryless
from .simulate import SimConfig, simulate

__version__ = "0.1.0"

__all__ = [
    "GameGraph", "GameError", "GameParseError", "Owner", "load_game", "make_game", "parse_game",
    "INF", "NEG_INF", "ValueVector", "solve_values",
    "PureStrategy", "SwitchingStrategy", "eval_deterministic", "switching_strategy",
    "RandStrategy", "build_mc", "max_best_response", "solve_expectations",
    "check_almost_sure_reach", "synthesize_epsilon_optimal", "convert",
    "check_optimal_memoryless", "SimConfig", "simulate",
]
