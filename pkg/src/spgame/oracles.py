"""Brute-force oracles for small games.

Each routine here takes a route independent of the solver it checks:
explicit unrolling instead of the operator, enumeration of positional
strategies instead of value iteration or policy iteration, and cycle
enumeration instead of Bellman-Ford.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from .det import PureStrategy, eval_all
from .game import GameGraph, Owner, cycle_weight, elementary_cycles
from .values import INF, NEG_INF, iteration_cap, value_bound


def unrolled_values(g: GameGraph, horizon: int | None = None) -> list:
    """Values of the game cut after ``horizon`` steps, by backward induction
    over the (vertex, steps left) DAG, classified with the usual threshold."""
    if horizon is None:
        horizon = iteration_cap(g)
    bound = value_bound(g)

    @lru_cache(maxsize=None)
    def val(v, left):
        if g.is_target(v):
            return 0
        if left == 0:
            return INF
        outs = [g.w(v, u) + val(u, left - 1) for u in g.succ[v]]
        return min(outs) if g.owners[v] is Owner.MIN else max(outs)

    # iterative warm-up keeps recursion shallow
    for k in range(horizon + 1):
        for v in range(g.n):
            val(v, k)
    out = []
    for v in range(g.n):
        x = val(v, horizon)
        out.append(NEG_INF if x != INF and x < -bound else x)
    return out


def one_player_shortest(g: GameGraph, tau: dict) -> list:
    """Min's optimal total payoff once Max is fixed to ``tau`` (Bellman-Ford).

    -inf where a negative cycle can be pumped before reaching a target,
    +inf where no target is reachable.
    """
    arcs = []
    for v in range(g.n):
        if g.owners[v] is Owner.MIN:
            arcs.extend((v, u, g.w(v, u)) for u in g.succ[v])
        elif g.owners[v] is Owner.MAX:
            arcs.append((v, tau[v], g.w(v, tau[v])))
    dist = [0 if g.is_target(v) else INF for v in range(g.n)]
    # relax backwards: dist[v] = min over arcs of w + dist[u]
    for _ in range(g.n):
        for v, u, w in arcs:
            if w + dist[u] < dist[v]:
                dist[v] = w + dist[u]
    unstable = {v for v, u, w in arcs if dist[u] != INF and w + dist[u] < dist[v]}
    # everything that can reach an unstable vertex also diverges
    changed = True
    while changed:
        changed = False
        for v, u, w in arcs:
            if u in unstable and v not in unstable:
                unstable.add(v)
                changed = True
    return [NEG_INF if v in unstable else dist[v] for v in range(g.n)]


def positional_max_values(g: GameGraph) -> list:
    """dValue as the best over Max positional strategies of Min's shortest path."""
    maxs = g.vertices(Owner.MAX)
    best = [NEG_INF] * g.n
    for combo in itertools.product(*(g.succ[v] for v in maxs)):
        vals = one_player_shortest(g, dict(zip(maxs, combo)))
        best = [max(a, b) for a, b in zip(best, vals)]
    return best


def all_min_strategies(g: GameGraph):
    mins = g.vertices(Owner.MIN)
    for combo in itertools.product(*(g.succ[v] for v in mins)):
        yield PureStrategy(dict(zip(mins, combo)))


def min_strategy_count(g: GameGraph) -> int:
    count = 1
    for v in g.vertices(Owner.MIN):
        count *= len(g.succ[v])
    return count


def brute_force_optimal_memoryless(g: GameGraph, vals) -> PureStrategy | None:
    """Some pure memoryless Min strategy achieving dValue everywhere, or None."""
    for s in all_min_strategies(g):
        if list(eval_all(g, s)) == list(vals):
            return s
    return None


def max_conforming_tp(g: GameGraph, min_allowed: dict, horizon: int) -> list:
    """Largest total payoff over target-reaching plays of length <= horizon
    in which Min only uses ``min_allowed`` edges (-inf if there is none)."""
    best = [0 if g.is_target(v) else NEG_INF for v in range(g.n)]
    for _ in range(horizon):
        nxt = list(best)
        for v in range(g.n):
            if g.is_target(v):
                continue
            succ = min_allowed[v] if g.owners[v] is Owner.MIN else g.succ[v]
            nxt[v] = max(g.w(v, u) + best[u] for u in succ)
        best = nxt
    return best


def cycles_in(g: GameGraph, succ_lists) -> list:
    return [(c, cycle_weight(g, c)) for c in elementary_cycles(g, succ_lists)]


def max_tau_combos(g: GameGraph):
    maxs = g.vertices(Owner.MAX)
    for combo in itertools.product(*(g.succ[v] for v in maxs)):
        yield dict(zip(maxs, combo))
