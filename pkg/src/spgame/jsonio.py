"""JSON encodings of values, rationals and strategies.

Rationals are always written as ``"num/den"`` strings. Strategy documents
carry a ``kind`` field (``pure``, ``switching`` or ``rand``) and name
vertices by their names in the game file.
"""
from __future__ import annotations

from fractions import Fraction

from .det import PureStrategy, SwitchingStrategy
from .game import GameGraph, Owner
from .markov import RandStrategy


class StrategyFormatError(ValueError):
    pass


def rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise StrategyFormatError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise StrategyFormatError(f"invalid rational {s!r}") from None


def choice_to_json(g: GameGraph, choice) -> dict:
    return {g.names[v]: g.names[u] for v, u in sorted(choice.items())}


def strategy_to_json(g: GameGraph, s) -> dict:
    if isinstance(s, SwitchingStrategy):
        return {"kind": "switching", "sigma1": choice_to_json(g, s.sigma1.choice),
                "sigma2": choice_to_json(g, s.sigma2.choice), "alpha": str(s.alpha)}
    if isinstance(s, PureStrategy):
        return {"kind": "pure", "choice": choice_to_json(g, s.choice)}
    if isinstance(s, RandStrategy):
        return {"kind": "rand", "dist": {g.names[v]: {g.names[u]: rat(p) for u, p in d}
                                         for v, d in sorted(s.dist.items())}}
    raise TypeError(f"not a strategy: {s!r}")


def _vertex(g: GameGraph, name) -> int:
    try:
        return g.index(name)
    except KeyError as exc:
        raise StrategyFormatError(str(exc)) from None


def _choice(g: GameGraph, doc) -> PureStrategy:
    if not isinstance(doc, dict):
        raise StrategyFormatError("choice map must be an object")
    s = PureStrategy({_vertex(g, v): _vertex(g, u) for v, u in doc.items()})
    try:
        s.validate(g)
    except ValueError as exc:
        raise StrategyFormatError(str(exc)) from None
    extra = [v for v in s.choice if g.owners[v] is not Owner.MIN]
    if extra:
        raise StrategyFormatError(f"choices given for non-Min vertex {g.names[extra[0]]}")
    return s


def strategy_from_json(g: GameGraph, doc: dict):
    kind = doc.get("kind") if isinstance(doc, dict) else None
    if kind == "pure":
        return _choice(g, doc.get("choice"))
    if kind == "switching":
        try:
            alpha = int(doc["alpha"])
        except (KeyError, ValueError, TypeError):
            raise StrategyFormatError("switching strategy needs an integer alpha") from None
        if alpha < 1:
            raise StrategyFormatError("alpha must be at least 1")
        return SwitchingStrategy(_choice(g, doc.get("sigma1")), _choice(g, doc.get("sigma2")), alpha)
    if kind == "rand":
        dist_doc = doc.get("dist")
        if not isinstance(dist_doc, dict):
            raise StrategyFormatError("rand strategy needs a dist object")
        dist = {}
        for v, d in dist_doc.items():
            if not isinstance(d, dict):
                raise StrategyFormatError(f"distribution at {v} must be an object")
            dist[_vertex(g, v)] = tuple((_vertex(g, u), parse_rat(p)) for u, p in d.items())
        rho = RandStrategy(dist)
        try:
            rho.validate(g)
        except ValueError as exc:
            raise StrategyFormatError(str(exc)) from None
        return rho
    raise StrategyFormatError(f"unknown strategy kind {kind!r}")
