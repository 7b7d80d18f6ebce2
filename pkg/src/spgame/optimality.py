"""Deciding whether Min has an optimal memoryless strategy."""
from __future__ import annotations

from dataclasses import dataclass

from .det import PureStrategy, StrategyError, attractor
from .game import GameGraph, Owner, subgame
from .values import (NEG_INF, ValueVector, classify_plus_infinity, iterate_F,
                     permissive_edges_from, solve_values)


class InfiniteValueError(ValueError):
    pass


REASONS = ("early-stationarity-failed", "attractor-failed", "ok")


@dataclass(frozen=True)
class OptimalityReport:
    exists: bool
    reason: str
    optimal_strategy: PureStrategy | None
    f_prev: ValueVector
    f_last: ValueVector
    applications: int  # applications of F performed
    kept: tuple  # vertices of the +inf-pruned game, as ids of the input game


def check_optimal_memoryless(g: GameGraph) -> OptimalityReport:
    """Value iteration must settle by step |V|-1 and Min must be able to attract
    the target using only the stage-(|V|-1) most permissive edges.

    Runs on the game with its +inf vertices removed; games with -inf values
    are rejected.
    """
    vals = solve_values(g)
    bad = [g.names[v] for v in range(g.n) if vals[v] == NEG_INF]
    if bad:
        raise InfiniteValueError("value -inf at " + ", ".join(bad))
    plus = classify_plus_infinity(g)
    h, old = subgame(g, [v for v in range(g.n) if v not in plus])
    n = h.n
    seq = iterate_F(h, n)
    f_prev, f_last = seq[n - 1], seq[n]
    if f_prev.values != f_last.values:
        return OptimalityReport(False, "early-stationarity-failed", None, f_prev, f_last, n, tuple(old))
    if n >= 2:
        perm = permissive_edges_from(h, seq[n - 2], f_prev)
        res = attractor(h, {v: tuple(sorted(s)) for v, s in perm.allowed.items()})
    else:
        res = attractor(h)
    if not res.covers(range(n)):
        return OptimalityReport(False, "attractor-failed", None, f_prev, f_last, n, tuple(old))
    choice = {}
    for v in g.vertices(Owner.MIN):
        choice[v] = g.succ[v][0]
    for i, v in enumerate(old):
        if h.owners[i] is Owner.MIN:
            choice[v] = old[res.strategy[i]]
    return OptimalityReport(True, "ok", PureStrategy(choice), f_prev, f_last, n, tuple(old))


def extract_optimal(g: GameGraph, report: OptimalityReport) -> PureStrategy:
    if not report.exists:
        raise StrategyError(f"no optimal memoryless strategy ({report.reason})")
    return report.optimal_strategy
