"""Markov chains induced by strategy pairs, exact expectations and Max best responses."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .game import GameGraph, Owner
from .linalg import solve

log = logging.getLogger(__name__)

DEFAULT_ENUM_CAP = 10 ** 5


class MarkovError(ValueError):
    pass


@dataclass(frozen=True)
class RandStrategy:
    """Memoryless randomised Min strategy: Min vertex -> ((succ, prob), ...)."""
    dist: Mapping[int, tuple]

    def support(self, v: int) -> tuple[int, ...]:
        return tuple(u for u, _ in self.dist[v])

    def prob(self, v: int, u: int) -> Fraction:
        for x, p in self.dist[v]:
            if x == u:
                return p
        return Fraction(0)

    def validate(self, g: GameGraph) -> None:
        for v in g.vertices(Owner.MIN):
            if v not in self.dist:
                raise MarkovError(f"no distribution for Min vertex {g.names[v]}")
            total = Fraction(0)
            seen = set()
            for u, p in self.dist[v]:
                if u not in g.succ[v]:
                    raise MarkovError(f"{g.names[v]}->{g.names[u]} is not an edge")
                if u in seen:
                    raise MarkovError(f"successor {g.names[u]} listed twice at {g.names[v]}")
                if not isinstance(p, Fraction) or p <= 0:
                    raise MarkovError(f"probabilities must be positive rationals at {g.names[v]}")
                seen.add(u)
                total += p
            if total != 1:
                raise MarkovError(f"distribution at {g.names[v]} sums to {total}")

    @classmethod
    def dirac(cls, choice: Mapping[int, int]) -> "RandStrategy":
        return cls({v: ((u, Fraction(1)),) for v, u in choice.items()})


@dataclass(frozen=True)
class MarkovChain:
    """transition[v] = ((succ, prob, weight), ...); empty for targets."""
    transition: tuple

    @property
    def n(self) -> int:
        return len(self.transition)

    def support(self, v: int) -> tuple[int, ...]:
        return tuple(u for u, _, _ in self.transition[v])

    def is_absorbing(self, v: int) -> bool:
        return not self.transition[v]


@dataclass(frozen=True)
class ExpectationVector:
    values: tuple  # Fraction, or None where undefined

    def __getitem__(self, v: int):
        return self.values[v]

    @property
    def defined(self) -> bool:
        return all(x is not None for x in self.values)


def build_mc(g: GameGraph, rho: RandStrategy, tau: Mapping[int, int]) -> MarkovChain:
    trans = []
    for v in range(g.n):
        owner = g.owners[v]
        if owner is Owner.TARGET:
            trans.append(())
        elif owner is Owner.MIN:
            trans.append(tuple((u, Fraction(p), g.w(v, u)) for u, p in rho.dist[v]))
        else:
            u = tau[v]
            trans.append(((u, Fraction(1), g.w(v, u)),))
    return MarkovChain(tuple(trans))


def almost_sure_vertices(mc: MarkovChain) -> set[int]:
    """Vertices from which the absorbing (target) set is reached with probability 1.

    These are the vertices that cannot reach any vertex from which the
    targets are unreachable.
    """
    n = mc.n
    preds: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for u in mc.support(v):
            preds[u].append(v)

    def backward(seed):
        seen = set(seed)
        stack = list(seed)
        while stack:
            u = stack.pop()
            for v in preds[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    can_reach_t = backward([v for v in range(n) if mc.is_absorbing(v)])
    bad = [v for v in range(n) if v not in can_reach_t]
    return set(range(n)) - backward(bad)


def solve_expectations(mc: MarkovChain) -> ExpectationVector:
    """Exact expected total payoff from every vertex.

    Vertices that miss the targets with positive probability get ``None``.
    """
    good = almost_sure_vertices(mc)
    unknown = [v for v in range(mc.n) if v in good and not mc.is_absorbing(v)]
    col = {v: i for i, v in enumerate(unknown)}
    a = [[Fraction(0)] * len(unknown) for _ in unknown]
    b = [Fraction(0)] * len(unknown)
    for v in unknown:
        i = col[v]
        a[i][i] += 1
        for u, p, w in mc.transition[v]:
            b[i] += p * w
            if u in col:
                a[i][col[u]] -= p
    x = solve(a, b) if unknown else []
    out = []
    for v in range(mc.n):
        if mc.is_absorbing(v):
            out.append(Fraction(0))
        elif v in col:
            out.append(x[col[v]])
        else:
            out.append(None)
    if len(good) < mc.n:
        log.debug("%d vertices do not reach the target almost surely", mc.n - len(good))
    return ExpectationVector(tuple(out))


def bellman_residual(mc: MarkovChain, e: ExpectationVector) -> list:
    """E_v - sum P(v,u)(w + E_u), per defined vertex (exactly zero for a solution)."""
    res = []
    for v in range(mc.n):
        if e[v] is None:
            res.append(None)
        elif mc.is_absorbing(v):
            res.append(e[v])
        else:
            res.append(e[v] - sum(p * (w + e[u]) for u, p, w in mc.transition[v]))
    return res


def initial_tau(g: GameGraph, rho: RandStrategy) -> dict[int, int]:
    """Max choices from the attractor of the support MDP (closest successor)."""
    from .det import attractor
    res = attractor(g, {v: rho.support(v) for v in rho.dist})
    tau = {}
    for v in g.vertices(Owner.MAX):
        reach = [u for u in g.succ[v] if res.distance[u] is not None]
        tau[v] = min(reach, key=lambda u: (res.distance[u], u)) if reach else g.succ[v][0]
    return tau


@dataclass(frozen=True)
class BestResponse:
    tau: dict
    values: ExpectationVector
    rounds: int
    history: tuple  # expectation vectors, one per round


def max_best_response(g: GameGraph, rho: RandStrategy) -> BestResponse:
    """Policy iteration for Max in the MDP induced by ``rho``.

    Requires that ``rho`` reaches the targets almost surely against every
    Max strategy.
    """
    from .rand import check_almost_sure_reach
    if not check_almost_sure_reach(g, rho):
        raise MarkovError("strategy does not reach the target almost surely against every Max strategy")
    tau = initial_tau(g, rho)
    history = []
    rounds = 0
    while True:
        rounds += 1
        e = solve_expectations(build_mc(g, rho, tau))
        if not e.defined:
            raise MarkovError("induced chain lost almost-sure reachability")
        history.append(e)
        new_tau = dict(tau)
        for v in g.vertices(Owner.MAX):
            best = tau[v]
            best_val = g.w(v, best) + e[best]
            for u in g.succ[v]:
                val = g.w(v, u) + e[u]
                if val > best_val:
                    best, best_val = u, val
            new_tau[v] = best
        if new_tau == tau:
            return BestResponse(tau, e, rounds, tuple(history))
        tau = new_tau


def max_strategy_count(g: GameGraph) -> int:
    count = 1
    for v in g.vertices(Owner.MAX):
        count *= len(g.succ[v])
    return count


def enumerate_max_oracle(g: GameGraph, rho: RandStrategy, cap: int = DEFAULT_ENUM_CAP) -> ExpectationVector:
    """Componentwise max of the expectations over every positional Max strategy.

    Strategies under which some vertex misses the target with positive
    probability contribute +inf there (``None`` in the result).
    """
    if max_strategy_count(g) > cap:
        raise MarkovError(f"more than {cap} Max strategies to enumerate")
    maxs = g.vertices(Owner.MAX)
    best: list = [Fraction(0) if g.is_target(v) else None for v in range(g.n)]
    unbounded = set()
    for combo in itertools.product(*(g.succ[v] for v in maxs)):
        tau = dict(zip(maxs, combo))
        e = solve_expectations(build_mc(g, rho, tau))
        for v in range(g.n):
            if e[v] is None:
                unbounded.add(v)
            elif best[v] is None or e[v] > best[v]:
                best[v] = e[v]
    return ExpectationVector(tuple(None if v in unbounded else best[v] for v in range(g.n)))
