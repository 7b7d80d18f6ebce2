"""From a randomised memoryless strategy to a deterministic switching strategy."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .det import PureStrategy, StrategyError, SwitchingStrategy, attractor
from .game import GameGraph, Owner
from .markov import ExpectationVector, RandStrategy, max_best_response


@dataclass(frozen=True)
class RestrictedGame:
    base: GameGraph
    allowed: Mapping[int, frozenset]  # Min vertex -> successors kept

    def min_allowed(self) -> dict:
        return {v: tuple(sorted(s)) for v, s in self.allowed.items()}

    def arcs(self):
        for v in range(self.base.n):
            if self.base.owners[v] is Owner.MIN:
                succ = sorted(self.allowed[v])
            else:
                succ = self.base.succ[v]
            for u in succ:
                yield v, u, self.base.w(v, u)


def restricted_game(g: GameGraph, rho: RandStrategy, mvals: ExpectationVector) -> RestrictedGame:
    """Keep, at each Min vertex, the support successors minimising w + mVal."""
    if not mvals.defined:
        raise StrategyError("expectations must be defined everywhere")
    allowed = {}
    for v in g.vertices(Owner.MIN):
        scores = {u: g.w(v, u) + mvals[u] for u in rho.support(v)}
        best = min(scores.values())
        allowed[v] = frozenset(u for u, s in scores.items() if s == best)
    return RestrictedGame(g, allowed)


def support_distances(g: GameGraph, rho: RandStrategy) -> tuple:
    """Attractor distances in the support graph of the MDP induced by rho."""
    res = attractor(g, {v: rho.support(v) for v in rho.dist})
    if any(d is None for d in res.distance):
        raise StrategyError("rho does not reach the target almost surely")
    return res.distance


def sigma1_from_rho(rg: RestrictedGame, d) -> PureStrategy:
    return PureStrategy({v: min(s, key=lambda u: (d[u], u)) for v, s in rg.allowed.items()})


def conversion_alpha(g: GameGraph, mval_v0: Fraction) -> int:
    # floor of the rational value can only enlarge alpha
    return max(0, g.n * g.max_weight - math.floor(mval_v0)) * g.n + 1


def convert(g: GameGraph, rho: RandStrategy, v0: int,
            mvals: ExpectationVector | None = None) -> SwitchingStrategy:
    """Switching strategy whose deterministic value at v0 is at most mVal^rho(v0)."""
    if mvals is None:
        mvals = max_best_response(g, rho).values
    rg = restricted_game(g, rho, mvals)
    sigma1 = sigma1_from_rho(rg, support_distances(g, rho))
    sigma2 = attractor(g).strategy
    return SwitchingStrategy(sigma1, sigma2, conversion_alpha(g, mvals[v0]))


def naive_frequency_strategy(g: GameGraph, rho: RandStrategy) -> PureStrategy:
    """Follow the most likely successor of rho (negative-test fixture only)."""
    return PureStrategy({v: max(rho.dist[v], key=lambda up: (up[1], -up[0]))[0]
                         for v in rho.dist})
