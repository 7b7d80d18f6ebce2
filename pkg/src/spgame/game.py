"""Game graphs for shortest-path games: data model, parsing and structure.

A game is a directed graph whose vertices are split between the two players
(Min and Max) and a set of target vertices. Edges carry integer weights.
Vertex ids are dense integers ``0..n-1`` assigned in declaration order.
"""
from __future__ import annotations

import enum
import json
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx


class Owner(enum.Enum):
    MIN = "min"
    MAX = "max"
    TARGET = "target"


class GameError(ValueError):
    """Raised for structurally invalid games."""


class GameParseError(GameError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


_NAME = re.compile(r"[A-Za-z0-9_]+\Z")
_INT = re.compile(r"[+-]?[0-9]+\Z")


@dataclass(frozen=True)
class GameGraph:
    names: tuple[str, ...]
    owners: tuple[Owner, ...]
    edges: tuple[tuple[int, int, int], ...]
    succ: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    weight: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.names)
        if len(self.owners) != n:
            raise GameError("owners and names differ in length")
        if len(set(self.names)) != n:
            raise GameError("duplicate vertex name")
        succ: list[list[int]] = [[] for _ in range(n)]
        weight = {}
        for src, dst, w in self.edges:
            if not (0 <= src < n and 0 <= dst < n):
                raise GameError(f"edge ({src}, {dst}) references an unknown vertex")
            if not isinstance(w, int) or isinstance(w, bool):
                raise GameError(f"edge {self.names[src]}->{self.names[dst]} has a non-integer weight")
            if self.owners[src] is Owner.TARGET:
                raise GameError(f"edge out of target vertex {self.names[src]}")
            if (src, dst) in weight:
                raise GameError(f"duplicate edge {self.names[src]}->{self.names[dst]}")
            weight[(src, dst)] = w
            succ[src].append(dst)
        for v in range(n):
            if self.owners[v] is not Owner.TARGET and not succ[v]:
                raise GameError(f"deadlock: non-target vertex {self.names[v]} has no outgoing edge")
        object.__setattr__(self, "succ", tuple(tuple(s) for s in succ))
        object.__setattr__(self, "weight", weight)

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def max_weight(self) -> int:
        """W: the largest absolute edge weight (0 for edgeless games)."""
        return max((abs(w) for _, _, w in self.edges), default=0)

    def is_target(self, v: int) -> bool:
        return self.owners[v] is Owner.TARGET

    def vertices(self, owner: Owner) -> list[int]:
        return [v for v in range(self.n) if self.owners[v] is owner]

    @property
    def targets(self) -> list[int]:
        return self.vertices(Owner.TARGET)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown vertex {name!r}") from None

    def w(self, src: int, dst: int) -> int:
        return self.weight[(src, dst)]


def make_game(vertices: Sequence[tuple[str, Owner | str]],
              edges: Iterable[tuple[str, str, int]]) -> GameGraph:
    """Build a game from ``(name, owner)`` pairs and ``(src, dst, w)`` name triples."""
    names = tuple(name for name, _ in vertices)
    owners = tuple(Owner(o) if isinstance(o, str) else o for _, o in vertices)
    idx = {name: i for i, name in enumerate(names)}
    if len(idx) != len(names):
        raise GameError("duplicate vertex name")
    es = []
    for src, dst, w in edges:
        for name in (src, dst):
            if name not in idx:
                raise GameError(f"unknown vertex {name!r} in edge")
        es.append((idx[src], idx[dst], w))
    return GameGraph(names, owners, tuple(es))


def parse_game(text: str) -> GameGraph:
    """Parse the line-oriented game format.

    Lines are ``min <name>``, ``max <name>``, ``target <name>`` or
    ``edge <src> <dst> <weight>``; ``#`` starts a comment.
    """
    vertices: list[tuple[str, Owner]] = []
    seen: dict[str, int] = {}
    edges: list[tuple[int, int, int]] = []
    pairs: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if not tokens:
            continue
        kw, kwcol = tokens[0]
        if kw in ("min", "max", "target"):
            if len(tokens) != 2:
                raise GameParseError(f"'{kw}' expects exactly one vertex name", lineno, kwcol)
            name, col = tokens[1]
            if not _NAME.match(name):
                raise GameParseError(f"invalid vertex name {name!r}", lineno, col)
            if name in seen:
                raise GameParseError(f"duplicate vertex {name!r}", lineno, col)
            seen[name] = len(vertices)
            vertices.append((name, Owner(kw)))
        elif kw == "edge":
            if len(tokens) != 4:
                raise GameParseError("'edge' expects <src> <dst> <weight>", lineno, kwcol)
            (src, scol), (dst, dcol), (wtok, wcol) = tokens[1:]
            for name, col in ((src, scol), (dst, dcol)):
                if name not in seen:
                    raise GameParseError(f"unknown vertex {name!r} in edge", lineno, col)
            if not _INT.match(wtok):
                raise GameParseError(f"weight {wtok!r} is not an integer", lineno, wcol)
            s, d = seen[src], seen[dst]
            if vertices[s][1] is Owner.TARGET:
                raise GameParseError(f"edge out of target vertex {src!r}", lineno, scol)
            if (s, d) in pairs:
                raise GameParseError(f"duplicate edge {src}->{dst}", lineno, kwcol)
            pairs.add((s, d))
            edges.append((s, d, int(wtok)))
        else:
            raise GameParseError(f"unknown keyword {kw!r}", lineno, kwcol)
    has_succ = {s for s, _, _ in edges}
    for v, (name, owner) in enumerate(vertices):
        if owner is not Owner.TARGET and v not in has_succ:
            raise GameError(f"deadlock: non-target vertex {name!r} has no outgoing edge")
    return GameGraph(tuple(n for n, _ in vertices), tuple(o for _, o in vertices), tuple(edges))


def serialize_game(g: GameGraph) -> str:
    lines = [f"{g.owners[v].value} {g.names[v]}" for v in range(g.n)]
    lines += [f"edge {g.names[s]} {g.names[d]} {w}" for s, d, w in g.edges]
    return "\n".join(lines) + "\n"


def game_to_json(g: GameGraph) -> dict:
    return {
        "vertices": [{"name": g.names[v], "owner": g.owners[v].value} for v in range(g.n)],
        "edges": [{"src": g.names[s], "dst": g.names[d], "w": w} for s, d, w in g.edges],
    }


def game_from_json(doc: dict) -> GameGraph:
    try:
        vertices = [(v["name"], Owner(v["owner"])) for v in doc["vertices"]]
        edges = [(e["src"], e["dst"], e["w"]) for e in doc["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GameError(f"malformed game JSON: {exc}") from None
    for name, _ in vertices:
        if not isinstance(name, str) or not _NAME.match(name):
            raise GameError(f"invalid vertex name {name!r}")
    return make_game(vertices, edges)


def load_game(path: str) -> GameGraph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GameParseError(exc.msg, exc.lineno, exc.colno) from None
        return game_from_json(doc)
    return parse_game(text)


def subgame(g: GameGraph, keep: Iterable[int]) -> tuple[GameGraph, list[int]]:
    """Restrict ``g`` to the vertices in ``keep``.

    Returns the subgame and the list mapping its vertex ids back to ids of
    ``g``. Raises GameError if the restriction leaves a deadlock.
    """
    old = sorted(set(keep))
    new_of = {v: i for i, v in enumerate(old)}
    edges = tuple((new_of[s], new_of[d], w) for s, d, w in g.edges
                  if s in new_of and d in new_of)
    h = GameGraph(tuple(g.names[v] for v in old), tuple(g.owners[v] for v in old), edges)
    return h, old


# ----------------------------------------------------------------------------
# plays

INF = math.inf


def total_payoff(g: GameGraph, play: Sequence[int], infinite: bool = False) -> int | float:
    """Sum of weights along ``play`` up to its first target vertex.

    Plays flagged ``infinite`` (never reaching the target) are worth +inf.
    """
    if not play:
        raise GameError("empty play")
    total = 0
    for i, v in enumerate(play):
        if g.is_target(v):
            if i != len(play) - 1:
                raise GameError("play continues after reaching a target")
            return total
        if i + 1 < len(play):
            nxt = play[i + 1]
            if (v, nxt) not in g.weight:
                raise GameError(f"{g.names[v]}->{g.names[nxt]} is not an edge")
            total += g.weight[(v, nxt)]
    return INF if infinite else total


# ----------------------------------------------------------------------------
# structure

def sccs(g: GameGraph, allowed: Sequence[Sequence[int]] | None = None) -> list[list[int]]:
    """Tarjan's algorithm, iterative. SCCs come out in reverse topological order.

    ``allowed`` optionally replaces the successor lists.
    """
    succ = g.succ if allowed is None else allowed
    index = [-1] * g.n
    low = [0] * g.n
    on_stack = [False] * g.n
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for root in range(g.n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for j in range(i, len(succ[v])):
                u = succ[v][j]
                if index[u] == -1:
                    work.append((v, j + 1))
                    work.append((u, 0))
                    recurse = True
                    break
                if on_stack[u]:
                    low[v] = min(low[v], index[u])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack[u] = False
                    comp.append(u)
                    if u == v:
                        break
                out.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


def has_negative_cycle(nodes: Iterable[int], arcs: Iterable[tuple[int, int, int]]) -> bool:
    """Bellman-Ford from a virtual source connected to every node."""
    nodes = list(nodes)
    arcs = [a for a in arcs]
    dist = {v: 0 for v in nodes}
    for _ in range(len(nodes)):
        changed = False
        for s, d, w in arcs:
            if dist[s] + w < dist[d]:
                dist[d] = dist[s] + w
                changed = True
        if not changed:
            return False
    return True


def scc_has_negative_cycle(g: GameGraph, scc: Iterable[int]) -> bool:
    comp = set(scc)
    arcs = [(s, d, w) for s, d, w in g.edges if s in comp and d in comp]
    return has_negative_cycle(comp, arcs)


def elementary_cycles(g: GameGraph, allowed: Sequence[Sequence[int]] | None = None):
    """Yield every elementary cycle as a vertex list (first vertex not repeated)."""
    succ = g.succ if allowed is None else allowed
    dg = nx.DiGraph()
    dg.add_nodes_from(range(g.n))
    dg.add_edges_from((v, u) for v in range(g.n) for u in succ[v])
    yield from nx.simple_cycles(dg)


def cycle_weight(g: GameGraph, cycle: Sequence[int]) -> int:
    return sum(g.w(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))


@dataclass(frozen=True)
class GraphParams:
    W: int
    c: int
    w_minus: int
    w_plus: int
    exact: bool


EXACT_CAP = 12


def graph_params(g: GameGraph, exact: bool = False, cap: int = EXACT_CAP) -> GraphParams:
    """Cycle parameters used by the probability bound.

    Safe mode returns c = |V|, w_minus = 1, w_plus = |V|*W, which bound the
    exact values from the correct side. Exact mode enumerates elementary
    cycles and refuses graphs with more than ``cap`` vertices.
    """
    W = g.max_weight
    if not exact:
        return GraphParams(W=W, c=g.n, w_minus=1, w_plus=g.n * W, exact=False)
    if g.n > cap:
        raise GameError(f"exact cycle parameters limited to {cap} vertices (got {g.n})")
    c, w_minus, w_plus = 0, None, 0
    for cyc in elementary_cycles(g):
        c = max(c, len(cyc))
        wt = cycle_weight(g, cyc)
        if wt < 0:
            w_minus = -wt if w_minus is None else min(w_minus, -wt)
        else:
            w_plus = max(w_plus, wt)
    return GraphParams(W=W, c=c, w_minus=1 if w_minus is None else w_minus,
                       w_plus=w_plus, exact=True)
