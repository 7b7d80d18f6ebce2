"""Deterministic Min strategies: attractors, NC-strategies and switching strategies."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .game import GameGraph, Owner, has_negative_cycle
from .values import INF, ValueVector, is_finite, tight_edges

DEFAULT_ALPHA_CAP = 10 ** 6


class StrategyError(ValueError):
    pass


@dataclass(frozen=True)
class PureStrategy:
    """Memoryless deterministic Min strategy: Min vertex -> successor."""
    choice: Mapping[int, int]

    def __getitem__(self, v: int) -> int:
        return self.choice[v]

    def validate(self, g: GameGraph) -> None:
        for v in g.vertices(Owner.MIN):
            if v not in self.choice:
                raise StrategyError(f"no choice for Min vertex {g.names[v]}")
            if self.choice[v] not in g.succ[v]:
                raise StrategyError(
                    f"{g.names[v]}->{g.names[self.choice[v]]} is not an edge")


@dataclass(frozen=True)
class SwitchingStrategy:
    """Play ``sigma1`` for the first ``alpha`` steps, then ``sigma2``."""
    sigma1: PureStrategy
    sigma2: PureStrategy
    alpha: int


@dataclass(frozen=True)
class AttractorResult:
    distance: tuple  # int or None (unreachable)
    strategy: PureStrategy

    def covers(self, vertices) -> bool:
        return all(self.distance[v] is not None for v in vertices)


def attractor(g: GameGraph,
              min_allowed: Sequence[Sequence[int]] | Mapping | None = None,
              max_allowed: Sequence[Sequence[int]] | Mapping | None = None) -> AttractorResult:
    """Backward attractor of the targets for Min.

    Min vertices join as soon as one allowed successor is in; Max vertices
    once all their (allowed) successors are in. Distances follow the layer
    in which a vertex joins. Min choices go to a successor one layer closer,
    smallest id first; outside the attractor Min takes its smallest allowed
    successor.
    """
    def allowed(v):
        table = min_allowed if g.owners[v] is Owner.MIN else max_allowed
        if table is None:
            return g.succ[v]
        if isinstance(table, Mapping):
            return table.get(v, g.succ[v])
        return table[v]

    dist: list = [None] * g.n
    for t in g.targets:
        dist[t] = 0
    layer = 0
    frontier = True
    while frontier:
        layer += 1
        new = []
        for v in range(g.n):
            if dist[v] is not None:
                continue
            succ = allowed(v)
            if g.owners[v] is Owner.MIN:
                ok = any(dist[u] is not None for u in succ)
            else:
                ok = bool(succ) and all(dist[u] is not None for u in succ)
            if ok:
                new.append(v)
        for v in new:
            dist[v] = layer
        frontier = bool(new)
    choice = {}
    for v in g.vertices(Owner.MIN):
        succ = sorted(allowed(v))
        reach = [u for u in succ if dist[u] is not None]
        if dist[v] is not None and reach:
            choice[v] = min(reach, key=lambda u: (dist[u], u))
        else:
            choice[v] = succ[0] if succ else g.succ[v][0]
    return AttractorResult(tuple(dist), PureStrategy(choice))


def fake_optimal_nc_strategy(g: GameGraph, vals: ValueVector) -> PureStrategy:
    """A fake-optimal NC-strategy built from the value vector.

    Both players are restricted to value-tight edges (w(v,u) + val(u) =
    val(v)); Min then follows the attractor of that restricted game. Any
    zero-weight cycle uses tight edges only, and the attractor distance
    strictly decreases along conforming tight edges, so conforming cycles
    are negative.
    """
    if not all(is_finite(x) for x in vals):
        raise StrategyError("fake-optimal NC-strategy requires all values finite")
    tight = tight_edges(g, vals)
    res = attractor(g, tight, tight)
    if not res.covers(range(g.n)):
        raise StrategyError("tight-edge attractor does not cover the game")
    return res.strategy


def restricted_arcs(g: GameGraph, s: PureStrategy | Mapping):
    """Edges of g with Min vertices fixed to ``s``."""
    arcs = []
    for v in range(g.n):
        if g.owners[v] is Owner.MIN:
            arcs.append((v, s[v], g.w(v, s[v])))
        elif g.owners[v] is Owner.MAX:
            arcs.extend((v, u, g.w(v, u)) for u in g.succ[v])
    return arcs


def verify_nc(g: GameGraph, s: PureStrategy | Mapping) -> bool:
    """True iff every cycle conforming to ``s`` has negative weight."""
    # an elementary cycle has weight >= 0 iff its (n+1)*w + 1 sum is positive
    scale = g.n + 1
    arcs = [(a, b, -(w * scale + 1)) for a, b, w in restricted_arcs(g, s)]
    return not has_negative_cycle(range(g.n), arcs)


def switching_alpha(g: GameGraph, n: int) -> int:
    return (2 * g.max_weight * (g.n - 1) + n) * g.n + 1


def switching_strategy(g: GameGraph, vals: ValueVector, n: int) -> SwitchingStrategy:
    if n < 0:
        raise StrategyError("n must be a natural number")
    if any(x == INF for x in vals):
        raise StrategyError("switching strategy requires no +inf values")
    sigma1 = fake_optimal_nc_strategy(g, vals)
    sigma2 = attractor(g).strategy
    return SwitchingStrategy(sigma1, sigma2, switching_alpha(g, n))


def _positional_values(g: GameGraph, s: PureStrategy) -> list:
    """sup over Max of TP when Min follows the memoryless strategy s."""
    # vertices from which every continuation reaches a target, by layers
    val: list = [None] * g.n
    for t in g.targets:
        val[t] = 0
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            if val[v] is not None:
                continue
            succ = (s[v],) if g.owners[v] is Owner.MIN else g.succ[v]
            if all(val[u] is not None for u in succ):
                val[v] = max(g.w(v, u) + val[u] for u in succ)
                changed = True
    return [INF if x is None else x for x in val]


def eval_all(g: GameGraph, s: SwitchingStrategy | PureStrategy,
             alpha_cap: int = DEFAULT_ALPHA_CAP) -> list:
    """dVal^s(v) for every vertex v (exact)."""
    if isinstance(s, PureStrategy):
        return _positional_values(g, s)
    if s.alpha > alpha_cap:
        raise StrategyError(f"alpha={s.alpha} exceeds the evaluation cap {alpha_cap}")
    # after alpha steps the play follows sigma2
    val = _positional_values(g, s.sigma2)
    sigma1 = s.sigma1
    mins = g.vertices(Owner.MIN)
    maxs = g.vertices(Owner.MAX)
    for _ in range(s.alpha):
        nxt = list(val)
        for v in mins:
            u = sigma1[v]
            nxt[v] = g.w(v, u) + val[u]
        for v in maxs:
            nxt[v] = max(g.w(v, u) + val[u] for u in g.succ[v])
        val = nxt
    return val


def eval_deterministic(g: GameGraph, s: SwitchingStrategy | PureStrategy, v0: int,
                       alpha_cap: int = DEFAULT_ALPHA_CAP):
    return eval_all(g, s, alpha_cap)[v0]
