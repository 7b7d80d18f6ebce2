"""Deterministic game values by value iteration.

Values live in Z u {-inf, +inf}; finite values are Python ints and the
infinities are ``math.inf`` / ``-math.inf`` so ordinary ``min``/``max`` and
addition give the extended arithmetic (n + inf = inf).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .game import GameGraph, Owner, subgame

INF = math.inf
NEG_INF = -math.inf


@dataclass(frozen=True)
class ValueVector:
    values: tuple
    iteration: int = 0

    def __getitem__(self, v: int):
        return self.values[v]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class PermissiveEdges:
    allowed: dict  # Min vertex -> frozenset of successors
    stage: int


def initial_vector(g: GameGraph) -> ValueVector:
    """f^(0): 0 on targets, +inf elsewhere."""
    return ValueVector(tuple(0 if g.is_target(v) else INF for v in range(g.n)), 0)


def apply_F(g: GameGraph, x: ValueVector) -> ValueVector:
    out = []
    for v in range(g.n):
        owner = g.owners[v]
        if owner is Owner.TARGET:
            out.append(0)
            continue
        cands = (g.w(v, u) + x[u] for u in g.succ[v])
        out.append(min(cands) if owner is Owner.MIN else max(cands))
    return ValueVector(tuple(out), x.iteration + 1)


def iterate_F(g: GameGraph, steps: int) -> list[ValueVector]:
    """[f^(0), ..., f^(steps)]."""
    seq = [initial_vector(g)]
    for _ in range(steps):
        seq.append(apply_F(g, seq[-1]))
    return seq


def min_attractor(g: GameGraph) -> set[int]:
    """Vertices from which Min can force a visit to a target vertex."""
    attr = set(g.targets)
    preds: list[list[int]] = [[] for _ in range(g.n)]
    for s, d, _ in g.edges:
        preds[d].append(s)
    remaining = [len(g.succ[v]) for v in range(g.n)]
    queue = list(attr)
    while queue:
        u = queue.pop()
        for v in preds[u]:
            if v in attr:
                continue
            if g.owners[v] is Owner.MIN:
                attr.add(v)
                queue.append(v)
            else:
                remaining[v] -= 1
                if remaining[v] == 0:
                    attr.add(v)
                    queue.append(v)
    return attr


def classify_plus_infinity(g: GameGraph) -> set[int]:
    return set(range(g.n)) - min_attractor(g)


def iteration_cap(g: GameGraph) -> int:
    """(2(|V|-1)W + 1)|V| applications of F suffice for the finite part to settle."""
    return (2 * (g.n - 1) * g.max_weight + 1) * g.n


def value_bound(g: GameGraph) -> int:
    return (g.n - 1) * g.max_weight


def solve_values(g: GameGraph) -> ValueVector:
    """dValue for every vertex, with +inf and -inf classified.

    The returned ``iteration`` is the number of applications of F performed.
    """
    plus_inf = classify_plus_infinity(g)
    cap = iteration_cap(g)
    bound = value_bound(g)
    x = initial_vector(g)
    while x.iteration < cap:
        y = apply_F(g, x)
        if y.values == x.values:
            return ValueVector(x.values, x.iteration)
        x = y
    # not stationary: whatever sits below the finite range diverges
    minus_inf = {v for v in range(g.n) if v not in plus_inf and x[v] < -bound}
    vals = [NEG_INF if v in minus_inf else x[v] for v in range(g.n)]
    # settle the finite part with the diverging vertices pinned at -inf
    it = x.iteration
    for _ in range(cap + 1):
        nxt = list(apply_F(g, ValueVector(tuple(vals), it)).values)
        for v in minus_inf:
            nxt[v] = NEG_INF
        it += 1
        if nxt == vals:
            break
        vals = nxt
    else:
        raise RuntimeError("value iteration failed to settle after pinning -inf vertices")
    for v in plus_inf:
        assert vals[v] == INF
    return ValueVector(tuple(vals), it)


def is_finite(x) -> bool:
    return x not in (INF, NEG_INF)


def permissive_edges_from(g: GameGraph, prev: ValueVector, cur: ValueVector) -> PermissiveEdges:
    """Min successors attaining the minimum of F(prev) at ``cur``."""
    allowed = {}
    for v in g.vertices(Owner.MIN):
        if not is_finite(cur[v]):
            continue
        allowed[v] = frozenset(u for u in g.succ[v] if g.w(v, u) + prev[u] == cur[v])
    return PermissiveEdges(allowed, cur.iteration)


def permissive_edges(g: GameGraph, i: int) -> PermissiveEdges:
    """Most-permissive Min edges at stage ``i`` of value iteration."""
    if i < 1:
        raise ValueError("stage must be at least 1")
    seq = iterate_F(g, i)
    return permissive_edges_from(g, seq[i - 1], seq[i])


def tight_edges(g: GameGraph, vals: Sequence) -> list[tuple[int, ...]]:
    """Per vertex, the successors u with w(v,u) + val(u) == val(v)."""
    out = []
    for v in range(g.n):
        if g.is_target(v):
            out.append(())
        else:
            out.append(tuple(u for u in g.succ[v] if g.w(v, u) + vals[u] == vals[v]))
    return out


def finite_subgame(g: GameGraph, vals: ValueVector | None = None):
    """Restrict ``g`` to its finite-valued vertices.

    Removing +inf and -inf vertices keeps the values of all remaining
    vertices: a finite Min vertex has no -inf successor and no need for a
    +inf one, and a finite Max vertex keeps its value-achieving successor.
    Returns (subgame, old ids).
    """
    if vals is None:
        vals = solve_values(g)
    keep = [v for v in range(g.n) if is_finite(vals[v])]
    return subgame(g, keep)


def format_value(x) -> int | str:
    if x == INF:
        return "+inf"
    if x == NEG_INF:
        return "-inf"
    return int(x)
