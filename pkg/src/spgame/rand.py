"""Randomised memoryless Min strategies mimicking switching strategies."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .det import (PureStrategy, SwitchingStrategy, StrategyError, eval_deterministic,
                  switching_strategy)
from .game import GameGraph, GraphParams, Owner, graph_params, scc_has_negative_cycle, sccs
from .markov import RandStrategy
from .values import ValueVector, is_finite

__all__ = ["RandStrategy", "ProbabilityBound", "build_rho_p", "probability_bound",
           "synthesize_epsilon_optimal", "check_almost_sure_reach", "largest_trap",
           "SynthesisResult"]


def build_rho_p(g: GameGraph, sigma1: PureStrategy, sigma2: PureStrategy, p: Fraction) -> RandStrategy:
    """Mix sigma1 (prob p) and sigma2 (prob 1-p) inside SCCs with a negative cycle.

    Elsewhere, and wherever both strategies agree, Min plays sigma1 surely.
    """
    p = Fraction(p)
    if not 0 < p < 1:
        raise StrategyError("p must lie strictly between 0 and 1")
    negative = set()
    for comp in sccs(g):
        if scc_has_negative_cycle(g, comp):
            negative.update(comp)
    dist = {}
    for v in g.vertices(Owner.MIN):
        a, b = sigma1[v], sigma2[v]
        if v in negative and a != b:
            dist[v] = ((a, p), (b, 1 - p))
        else:
            dist[v] = ((a, Fraction(1)),)
    return RandStrategy(dist)


@dataclass(frozen=True)
class ProbabilityBound:
    a: int
    b: Fraction
    p_min: Fraction
    epsilon: Fraction
    dval_sigma_v0: int


def probability_bound(params: GraphParams, nvertices: int, dval_sigma_v0: int,
                      epsilon: Fraction) -> ProbabilityBound:
    """Lower bound on p making rho_p epsilon-close to the switching strategy.

    a = ceil(c (1 + w+/w-)) and b = (|D| + |V| W + w-) c / w- + |V| with D
    the switching strategy's value at v0; b is rounded up before being used
    as an exponent, which only pushes p towards 1.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if params.w_minus < 1:
        raise ValueError("w_minus must be at least 1")
    c, wm, wp, W = params.c, params.w_minus, params.w_plus, params.W
    a = math.ceil(Fraction(c) * (1 + Fraction(wp, wm)))
    d = abs(dval_sigma_v0)
    b = Fraction(d + nvertices * W + wm, wm) * c + nvertices
    e = math.ceil(b) + a  # exponent b + a
    bounds = [1 - Fraction(1, 2 ** (a + 1))]
    red = 2 * (nvertices * W * 2 ** (e + 1) + wp * 2 ** (e + 2))
    if red:  # zero when every weight is 0: the constraint is vacuous
        bounds.append(1 - epsilon / red)
    if dval_sigma_v0 < 0:
        bounds.append(1 - epsilon / (2 ** (e + 2) * d))
    return ProbabilityBound(a=a, b=b, p_min=max(bounds), epsilon=epsilon,
                            dval_sigma_v0=dval_sigma_v0)


@dataclass(frozen=True)
class SynthesisResult:
    rho: RandStrategy
    bound: ProbabilityBound
    switching: SwitchingStrategy
    params: GraphParams


def synthesize_epsilon_optimal(g: GameGraph, vals: ValueVector, n: int, epsilon: Fraction,
                               v0: int, exact_params: bool = False) -> SynthesisResult:
    """rho_p with p = p_min, whose value at v0 is within epsilon of the switching strategy's."""
    if not all(is_finite(x) for x in vals):
        raise StrategyError("synthesis requires every value to be finite "
                            "(restrict to the finite subgame first)")
    sw = switching_strategy(g, vals, n)
    dval = eval_deterministic(g, sw, v0)
    params = graph_params(g, exact=exact_params)
    bound = probability_bound(params, g.n, int(dval), epsilon)
    rho = build_rho_p(g, sw.sigma1, sw.sigma2, bound.p_min)
    return SynthesisResult(rho, bound, sw, params)


def largest_trap(g: GameGraph, rho: RandStrategy) -> set[int]:
    """Greatest target-free set where Max can stay and Min's support stays inside."""
    trap = {v for v in range(g.n) if not g.is_target(v)}
    changed = True
    while changed:
        changed = False
        for v in list(trap):
            if g.owners[v] is Owner.MAX:
                ok = any(u in trap for u in g.succ[v])
            else:
                ok = all(u in trap for u in rho.support(v))
            if not ok:
                trap.discard(v)
                changed = True
    return trap


def check_almost_sure_reach(g: GameGraph, rho: RandStrategy) -> bool:
    return not largest_trap(g, rho)
